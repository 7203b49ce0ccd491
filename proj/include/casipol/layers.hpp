#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "casipol/materials.hpp"

// Planar multilayer geometry and its reflection coefficients, evaluated at
// imaginary frequency omega = i*xi.
//
// Layers are stacked along z and indexed 0..N-1 from left to right. The two
// outermost layers are half-spaces (thickness = kSemiInfinite); interior
// layers have finite positive thickness. A transverse wavevector q and an
// imaginary frequency xi define a spectral point; on the imaginary axis the
// longitudinal decay constant
//
//     kappa_j = sqrt(xi^2 eps_j mu_j / c^2 + q^2)
//
// is real and >= q, so every propagation factor is a decaying exponential
// exp(-2 kappa_j d_j) and the recursion below is numerically benign.

namespace casipol {

inline constexpr double kSemiInfinite = std::numeric_limits<double>::infinity();

struct Layer {
    MaterialModel material;
    double thickness = kSemiInfinite;  // meters

    bool semi_infinite() const { return thickness == kSemiInfinite; }
};

enum class Pol { s, p };

// Which half of the stack a generalized reflection looks into, as seen from
// inside a given layer: right = toward larger z, left = toward smaller z.
enum class Side { left, right };

struct SpectralPoint {
    double xi = 0.0;  // imaginary angular frequency [rad/s]
    double q = 0.0;   // transverse wavenumber [rad/m]
};

class LayerStack {
  public:
    explicit LayerStack(std::vector<Layer> layers);

    std::size_t size() const { return layers_.size(); }
    const Layer& layer(std::size_t j) const;
    const std::vector<Layer>& layers() const { return layers_; }

  private:
    std::vector<Layer> layers_;
};

// Decay constant kappa in a given medium; real, >= q, monotone in both xi
// and q.
double kappa(const MaterialModel& m, SpectralPoint p);
inline double kappa(const Layer& l, SpectralPoint p) { return kappa(l.material, p); }

// One-interface Fresnel amplitude for incidence from medium a onto medium b:
//   s:  (kappa_a mu_b   - kappa_b mu_a)   / (kappa_a mu_b   + kappa_b mu_a)
//   p:  (kappa_a eps_b  - kappa_b eps_a)  / (kappa_a eps_b  + kappa_b eps_a)
// At the degenerate origin xi = q = 0 the amplitude is defined as 0.
double fresnel(const MaterialModel& a, const MaterialModel& b, Pol pol, SpectralPoint p);

// Round-trip attenuation exp(-2 kappa d); 0 for a half-space. Underflow to
// exact 0 at large kappa*d is the correct truncation of a dead channel.
double attenuation(double kappa_val, double thickness);

// Reflection off a single slab embedded in a homogeneous surrounding medium:
//   r (1 - e) / (1 - r^2 e),  r = fresnel(surround, slab),  e = attenuation.
double reflect_slab(const MaterialModel& surround, const Layer& slab, Pol pol,
                    SpectralPoint p);

// Generalized reflection coefficient seen from inside layer j looking toward
// one side of the stack. Built by folding interfaces inward from the far
// half-space:
//
//   r_m = (r_interface + r_next e_next) / (1 + r_interface r_next e_next)
//
// where e_next is the round-trip attenuation of the layer between the two
// interfaces. Looking outward from an outermost layer gives 0.
double reflect_stack(const LayerStack& s, std::size_t j, Side side, Pol pol,
                     SpectralPoint p);

}  // namespace casipol
