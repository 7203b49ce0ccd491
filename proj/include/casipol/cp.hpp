#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "casipol/layers.hpp"
#include "casipol/materials.hpp"
#include "casipol/quad.hpp"
#include "casipol/wall.hpp"

// Casimir-Polder interaction of a ground-state atom with a wall filling
// z < 0, at zero temperature. Two flavours are provided:
//
//  - unscreened: the atom sits in empty space in front of the wall,
//  - screened:   the atom is one constituent of a dilute medium filling
//    the half-space, and the reported potential is the per-atom share of
//    the medium's own field-pressure gradient. It differs from the
//    unscreened result even at vanishing density.
//
// Both potentials are attractive toward the wall; forces are negative
// (toward -z, the wall) under the global sign convention.

namespace casipol {

struct CpResult {
    double potential = 0.0;        // J
    double force = 0.0;            // N, -dV/dz
    double potential_error = 0.0;  // absolute
    double force_error = 0.0;      // absolute
    std::int64_t evaluations = 0;
    bool converged = false;
};

// Full integrands (value per unit dxi dq, constants and polarizability
// included), exposed so the algebraically equivalent forms can be checked
// against each other pointwise.
//
// Wavevector form: alpha * q*kappa * [rs (1 - q^2/kap^2) - rp (1 + q^2/kap^2)]
// * exp(-2 kap z) * hbar/(8 pi^2 eps0), with the first bracket term
// evaluated through the exact identity 1 - q^2/kap^2 = xi^2/(c kap)^2.
double cp_integrand_wavevector(double alpha_xi, double rs, double rp, SpectralPoint p,
                               double z);

// Frequency form: hbar mu0/(8 pi^2) * xi^2 alpha * (q/kap) *
// [rs - rp (1 + 2 q^2 c^2/xi^2)] * exp(-2 kap z). Requires xi > 0 as
// written; at xi == 0 the algebraic limit is used.
double cp_integrand_frequency(double alpha_xi, double rs, double rp, SpectralPoint p,
                              double z);

// Screened form: -hbar mu0/(8 pi^2) * xi^2 alpha * (q/kap) * (rp - rs) *
// exp(-2 kap z).
double cp_integrand_screened(double alpha_xi, double rs, double rp, SpectralPoint p,
                             double z);

CpResult cp_unscreened(const Wall& wall, const AtomModel& atom, double z,
                       const quad::QuadratureSpec& spec);

CpResult cp_screened(const Wall& wall, const AtomModel& atom, double z,
                     const quad::QuadratureSpec& spec);

// Perfect-mirror wall via the reduced one-dimensional form
//   V(z) = -hbar c/(64 pi^2 eps0 z^4) Int_0^inf dy alpha(i c y/(2z)) h(y),
// with kernels h below. The integral is truncated at a Y chosen from the
// analytic remainder bound; the truncation is added to the error estimate.
double mirror_h_unscreened(double y);  // (y^2 + 2y + 2) e^-y, integral 6
double mirror_h_screened(double y);    // y^2 e^-y,            integral 2

quad::QuadResult mirror_potential(const AtomModel& atom, double z, bool screened,
                                  const quad::QuadratureSpec& spec);

// Large-z limits for a perfect mirror:
//   unscreened: -3 hbar c alpha(0) / (32 pi^2 eps0 z^4)
//   screened:     -hbar c alpha(0) / (32 pi^2 eps0 z^4)
double mirror_asymptote(const AtomModel& atom, double z, bool screened);

// Per-volume potential and force density of a weakly polarizable medium
// (susceptibility chi(xi) = eps(i xi) - 1) in front of the wall. The
// per-atom force of a dilute gas with density eta is force_density/eta.
struct ForceDensityPoint {
    double z = 0.0;
    double potential_density = 0.0;  // J/m^3
    double force_density = 0.0;      // N/m^3
    double potential_error = 0.0;
    double force_error = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

std::vector<ForceDensityPoint> force_density_profile(
    const Wall& wall, const std::function<double(double)>& chi,
    const std::vector<double>& z_grid, const quad::QuadratureSpec& spec);

}  // namespace casipol
