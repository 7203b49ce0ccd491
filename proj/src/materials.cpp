#include "casipol/materials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casipol/constants.hpp"

namespace casipol {

namespace {

void check_term(const Oscillator& t) {
    if (!(t.resonance > 0.0) || !std::isfinite(t.resonance))
        throw std::invalid_argument("Oscillator: resonance must be finite and > 0");
    if (t.strength < 0.0 || !std::isfinite(t.strength))
        throw std::invalid_argument("Oscillator: strength must be finite and >= 0");
    if (t.damping < 0.0 || !std::isfinite(t.damping))
        throw std::invalid_argument("Oscillator: damping must be finite and >= 0");
}

}  // namespace

OscillatorSet::OscillatorSet(std::vector<Oscillator> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) check_term(t);
}

double OscillatorSet::sum_at(double xi) const {
    if (!(xi >= 0.0)) throw std::domain_error("OscillatorSet::sum_at: xi must be >= 0");
    double s = 0.0;
    for (const auto& t : terms_)
        s += t.strength * t.strength /
             (t.resonance * t.resonance + xi * xi + t.damping * xi);
    return s;
}

MaterialModel::MaterialModel(double eps_base_m1, double mu_base_m1,
                             OscillatorSet eps_terms, OscillatorSet mu_terms)
    : eps_base_m1_(eps_base_m1),
      mu_base_m1_(mu_base_m1),
      eps_terms_(std::move(eps_terms)),
      mu_terms_(std::move(mu_terms)) {}

MaterialModel MaterialModel::vacuum() { return MaterialModel(); }

MaterialModel MaterialModel::constant(double eps, double mu) {
    if (!(eps >= 1.0) || !std::isfinite(eps))
        throw std::invalid_argument("MaterialModel::constant: eps must be >= 1");
    if (!(mu >= 1.0) || !std::isfinite(mu))
        throw std::invalid_argument("MaterialModel::constant: mu must be >= 1");
    return MaterialModel(eps - 1.0, mu - 1.0, OscillatorSet(), OscillatorSet());
}

MaterialModel MaterialModel::oscillators(OscillatorSet eps_terms, OscillatorSet mu_terms) {
    return MaterialModel(0.0, 0.0, std::move(eps_terms), std::move(mu_terms));
}

double MaterialModel::epsilon_minus_one(double xi) const {
    return eps_base_m1_ + eps_terms_.sum_at(xi);
}

double MaterialModel::mu_minus_one(double xi) const {
    return mu_base_m1_ + mu_terms_.sum_at(xi);
}

bool MaterialModel::is_vacuum() const {
    return eps_base_m1_ == 0.0 && mu_base_m1_ == 0.0 && eps_terms_.empty() &&
           mu_terms_.empty();
}

AtomModel::AtomModel(OscillatorSet shape, double scale, double eta)
    : shape_(std::move(shape)), scale_(scale), eta_(eta) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("AtomModel: polarizability scale must be > 0");
    if (eta < 0.0 || !std::isfinite(eta))
        throw std::invalid_argument("AtomModel: number density eta must be >= 0");
}

AtomModel AtomModel::static_atom(double alpha0, double eta) {
    return AtomModel(OscillatorSet(), alpha0, eta);
}

AtomModel AtomModel::single_oscillator(double alpha0, double omega0, double damping,
                                       double eta) {
    // strength = resonance makes the dimensionless sum equal 1 at xi = 0,
    // so alpha(0) = alpha0 exactly.
    OscillatorSet shape({Oscillator{omega0, omega0, damping}});
    return AtomModel(std::move(shape), alpha0, eta);
}

double AtomModel::alpha(double xi) const {
    if (shape_.empty()) return scale_;
    return scale_ * shape_.sum_at(xi);
}

double AtomModel::characteristic_frequency() const {
    double w = 0.0;
    for (const auto& t : shape_.terms())
        w = (w == 0.0) ? t.resonance : std::min(w, t.resonance);
    return w;
}

double AtomModel::coupling_strength() const {
    return eta_ * alpha(0.0) / constants::eps0;
}

std::optional<std::string> AtomModel::dilute_limit_warning() const {
    double cpl = coupling_strength();
    if (cpl > 0.05)
        return "eta*alpha(0)/eps0 = " + std::to_string(cpl) +
               " exceeds 0.05; first-order-in-density results lose accuracy";
    return std::nullopt;
}

double epsilon_from_atoms(const AtomModel& atom, double xi) {
    return 1.0 + atom.eta() * atom.alpha(xi) / constants::eps0;
}

}  // namespace casipol
