#pragma once

#include <optional>
#include <string>
#include <vector>

// Linear response models evaluated on the imaginary frequency axis.
//
// All response functions here are real, positive and monotonically
// decreasing in xi, as required for passive media sampled at omega = i*xi.
// Frequencies are angular frequencies in rad/s throughout.

namespace casipol {

// One oscillator term  strength^2 / (resonance^2 + xi^2 + damping*xi).
// The combination is the imaginary-axis form of a damped resonance, where
// it is free of poles and positive for xi >= 0.
struct Oscillator {
    double strength = 0.0;   // rad/s
    double resonance = 0.0;  // rad/s, must be > 0
    double damping = 0.0;    // rad/s, >= 0
};

class OscillatorSet {
  public:
    OscillatorSet() = default;
    explicit OscillatorSet(std::vector<Oscillator> terms);

    // Sum of all terms at imaginary frequency xi >= 0 (dimensionless).
    double sum_at(double xi) const;

    bool empty() const { return terms_.empty(); }
    const std::vector<Oscillator>& terms() const { return terms_; }

  private:
    std::vector<Oscillator> terms_;
};

// Permittivity/permeability model. Two flavours:
//   - oscillator-based:  eps(i xi) = 1 + sum of oscillator terms  (->1 at
//     large xi),
//   - constant:          eps(i xi) = eps >= 1 for all xi, the usual
//     idealisation for a non-dispersive dielectric.
// Vacuum is the constant model with eps = mu = 1.
class MaterialModel {
  public:
    MaterialModel() = default;  // vacuum

    static MaterialModel vacuum();
    static MaterialModel constant(double eps, double mu = 1.0);
    static MaterialModel oscillators(OscillatorSet eps_terms,
                                     OscillatorSet mu_terms = OscillatorSet());

    double epsilon(double xi) const { return 1.0 + epsilon_minus_one(xi); }
    double mu(double xi) const { return 1.0 + mu_minus_one(xi); }

    // (eps - 1) and (mu - 1) computed without cancellation; weakly polarisable
    // media keep full relative accuracy this way.
    double epsilon_minus_one(double xi) const;
    double mu_minus_one(double xi) const;

    bool is_vacuum() const;

  private:
    MaterialModel(double eps_base_m1, double mu_base_m1, OscillatorSet eps_terms,
                  OscillatorSet mu_terms);

    double eps_base_m1_ = 0.0;  // constant part of eps - 1
    double mu_base_m1_ = 0.0;   // constant part of mu - 1
    OscillatorSet eps_terms_;
    OscillatorSet mu_terms_;
};

// Ground-state atom: polarizability alpha(i xi) plus the number density eta
// used when a dilute gas of such atoms is treated as a continuous medium.
//
//   alpha(i xi) = scale * sum_k strength_k^2 / (resonance_k^2 + xi^2 + damping_k*xi)
//
// An empty oscillator set means a frequency-independent ("static")
// polarizability alpha(i xi) = scale; that idealisation is handy for
// closed-form checks even though a physical alpha decays at large xi.
class AtomModel {
  public:
    AtomModel(OscillatorSet shape, double scale, double eta);

    static AtomModel static_atom(double alpha0, double eta = 0.0);
    // Single resonance with alpha(0) = alpha0.
    static AtomModel single_oscillator(double alpha0, double omega0,
                                       double damping = 0.0, double eta = 0.0);

    // Polarizability at imaginary frequency [C m^2 / V].
    double alpha(double xi) const;
    double alpha_static() const { return alpha(0.0); }

    double eta() const { return eta_; }  // number density [1/m^3]

    // Smallest resonance frequency, or 0 for a static atom. Used to pick
    // integration scales.
    double characteristic_frequency() const;

    // eta*alpha(0)/eps0, the static susceptibility of the dilute medium.
    double coupling_strength() const;

    // Non-fatal diagnostics (currently: dilute-medium coupling > 0.05 means
    // the linear-in-eta formulas are getting strained).
    std::optional<std::string> dilute_limit_warning() const;

  private:
    OscillatorSet shape_;
    double scale_ = 0.0;  // C m^2 / V
    double eta_ = 0.0;    // 1/m^3
};

// Permittivity of a dilute gas of atoms:  1 + eta*alpha(i xi)/eps0.
// Valid to first order in eta; see AtomModel::dilute_limit_warning().
double epsilon_from_atoms(const AtomModel& atom, double xi);

}  // namespace casipol
