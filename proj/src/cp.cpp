#include "casipol/cp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casipol/constants.hpp"

namespace casipol {

namespace {

using constants::c_light;
using constants::eps0;
using constants::hbar;
using constants::mu0;
using constants::pi;

// Default integration scales for an atom at distance z: the photon decay
// sets c/(2z), the polarizability adds its own falloff at the lowest
// resonance. The smaller of the two places the mass of the xi integrand.
quad::QuadratureSpec resolve_scales(quad::QuadratureSpec spec, const AtomModel* atom,
                                    double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::invalid_argument("atom-wall separation z must be finite and > 0");
    if (spec.xi_scale <= 0.0) {
        spec.xi_scale = c_light / (2.0 * z);
        if (atom != nullptr) {
            double w = atom->characteristic_frequency();
            if (w > 0.0) spec.xi_scale = std::min(spec.xi_scale, w);
        }
    }
    if (spec.q_scale <= 0.0) spec.q_scale = 1.0 / (2.0 * z);
    return spec;
}

struct PotentialIntegrals {
    quad::QuadResult v;
    quad::QuadResult f;
};

// Integrate a potential integrand and its analytic z-derivative. The force
// is -dV/dz; the derivative acts only on exp(-2 kappa z), so the force
// integrand is 2*kappa times the potential integrand (the minus signs
// cancel).
PotentialIntegrals integrate_potential(
    const std::function<double(double, double)>& vint, const quad::QuadratureSpec& spec) {
    PotentialIntegrals out;
    out.v = quad::integrate_quadrant(vint, spec.xi_scale, spec.q_scale, spec);
    auto fint = [&vint](double xi, double q) {
        double v = vint(xi, q);
        if (v == 0.0) return 0.0;
        return 2.0 * std::hypot(xi / c_light, q) * v;
    };
    out.f = quad::integrate_quadrant(fint, spec.xi_scale, spec.q_scale, spec);
    return out;
}

CpResult pack(const PotentialIntegrals& pi_) {
    CpResult r;
    r.potential = pi_.v.value;
    r.potential_error = pi_.v.error_estimate;
    r.force = pi_.f.value;
    r.force_error = pi_.f.error_estimate;
    r.evaluations = pi_.v.evaluations + pi_.f.evaluations;
    r.converged = pi_.v.converged && pi_.f.converged;
    return r;
}

}  // namespace

double cp_integrand_wavevector(double alpha_xi, double rs, double rp, SpectralPoint p,
                               double z) {
    double kap = std::hypot(p.xi / c_light, p.q);
    if (kap == 0.0) return 0.0;
    double e = std::exp(-2.0 * kap * z);
    if (e == 0.0) return 0.0;
    double xi_c = p.xi / c_light;
    double bracket = rs * xi_c * xi_c - rp * (kap * kap + p.q * p.q);
    return hbar / (8.0 * pi * pi * eps0) * alpha_xi * (p.q / kap) * bracket * e;
}

double cp_integrand_frequency(double alpha_xi, double rs, double rp, SpectralPoint p,
                              double z) {
    double kap = std::hypot(p.xi / c_light, p.q);
    if (kap == 0.0) return 0.0;
    double e = std::exp(-2.0 * kap * z);
    if (e == 0.0) return 0.0;
    double pref = hbar * mu0 / (8.0 * pi * pi) * alpha_xi * (p.q / kap) * e;
    if (p.xi == 0.0) {
        // algebraic limit of xi^2 [rs - rp (1 + 2 q^2 c^2 / xi^2)]
        return pref * (-rp * 2.0 * p.q * p.q * c_light * c_light);
    }
    double bracket = rs - rp * (1.0 + 2.0 * (p.q * c_light / p.xi) * (p.q * c_light / p.xi));
    return pref * p.xi * p.xi * bracket;
}

double cp_integrand_screened(double alpha_xi, double rs, double rp, SpectralPoint p,
                             double z) {
    double kap = std::hypot(p.xi / c_light, p.q);
    if (kap == 0.0) return 0.0;
    double e = std::exp(-2.0 * kap * z);
    if (e == 0.0) return 0.0;
    return -hbar * mu0 / (8.0 * pi * pi) * p.xi * p.xi * alpha_xi * (p.q / kap) *
           (rp - rs) * e;
}

CpResult cp_unscreened(const Wall& wall, const AtomModel& atom, double z,
                       const quad::QuadratureSpec& spec0) {
    auto spec = resolve_scales(spec0, &atom, z);
    MaterialModel vac = MaterialModel::vacuum();
    BoundWall r = wall.bind(vac);
    auto vint = [&](double xi, double q) {
        if (xi == 0.0 && q == 0.0) return 0.0;
        SpectralPoint p{xi, q};
        return cp_integrand_wavevector(atom.alpha(xi), r(Pol::s, p), r(Pol::p, p), p, z);
    };
    return pack(integrate_potential(vint, spec));
}

CpResult cp_screened(const Wall& wall, const AtomModel& atom, double z,
                     const quad::QuadratureSpec& spec0) {
    auto spec = resolve_scales(spec0, &atom, z);
    // The medium hosting the atom is dilute: its back-action on the
    // reflection is already first order in density, so the wall is bound
    // against vacuum here.
    MaterialModel vac = MaterialModel::vacuum();
    BoundWall r = wall.bind(vac);
    auto vint = [&](double xi, double q) {
        if (xi == 0.0 && q == 0.0) return 0.0;
        SpectralPoint p{xi, q};
        return cp_integrand_screened(atom.alpha(xi), r(Pol::s, p), r(Pol::p, p), p, z);
    };
    return pack(integrate_potential(vint, spec));
}

double mirror_h_unscreened(double y) { return (y * y + 2.0 * y + 2.0) * std::exp(-y); }

double mirror_h_screened(double y) { return y * y * std::exp(-y); }

quad::QuadResult mirror_potential(const AtomModel& atom, double z, bool screened,
                                  const quad::QuadratureSpec& spec) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::invalid_argument("mirror_potential: z must be finite and > 0");

    // Remainder of the unscreened kernel past Y:
    //   Int_Y^inf (y^2+2y+2) e^-y dy = (Y^2+4Y+6) e^-Y,
    // an upper bound for the screened kernel as well. alpha is
    // non-increasing, so alpha at the cut frequency bounds the tail factor.
    // A crude lower bound for the integral itself is the kernel mass of
    // [0,1] times alpha at the corresponding frequency.
    auto tail_bound = [&](double y) {
        return atom.alpha(c_light * y / (2.0 * z)) * (y * y + 4.0 * y + 6.0) * std::exp(-y);
    };
    double low = atom.alpha(c_light / (2.0 * z)) * (screened ? 0.16 : 1.95);
    double y_max = 20.0;
    while (y_max < 400.0 && tail_bound(y_max) > 0.1 * spec.rel_tol * low) y_max += 4.0;

    auto f = [&](double y) {
        double h = screened ? mirror_h_screened(y) : mirror_h_unscreened(y);
        return atom.alpha(c_light * y / (2.0 * z)) * h;
    };
    quad::QuadResult r = quad::integrate_interval(f, 0.0, y_max, spec);

    double pref = -hbar * c_light / (64.0 * pi * pi * eps0 * z * z * z * z);
    r.value *= pref;
    r.error_estimate = std::abs(pref) * (r.error_estimate + tail_bound(y_max));
    return r;
}

double mirror_asymptote(const AtomModel& atom, double z, bool screened) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::invalid_argument("mirror_asymptote: z must be finite and > 0");
    double base = hbar * c_light * atom.alpha_static() /
                  (32.0 * pi * pi * eps0 * z * z * z * z);
    return screened ? -base : -3.0 * base;
}

std::vector<ForceDensityPoint> force_density_profile(
    const Wall& wall, const std::function<double(double)>& chi,
    const std::vector<double>& z_grid, const quad::QuadratureSpec& spec0) {
    if (!chi) throw std::invalid_argument("force_density_profile: empty chi");

    MaterialModel vac = MaterialModel::vacuum();
    BoundWall r = wall.bind(vac);
    std::vector<ForceDensityPoint> out;
    out.reserve(z_grid.size());

    for (double z : z_grid) {
        auto spec = resolve_scales(spec0, nullptr, z);
        auto vint = [&](double xi, double q) {
            if (xi == 0.0 && q == 0.0) return 0.0;
            SpectralPoint p{xi, q};
            double kap = std::hypot(xi / c_light, q);
            double e = std::exp(-2.0 * kap * z);
            if (e == 0.0) return 0.0;
            double rs = r(Pol::s, p);
            double rp = r(Pol::p, p);
            double xi_c = xi / c_light;
            double bracket = rs * xi_c * xi_c - rp * (kap * kap + q * q);
            return hbar / (8.0 * pi * pi) * chi(xi) * (q / kap) * bracket * e;
        };
        PotentialIntegrals pi_ = integrate_potential(vint, spec);
        ForceDensityPoint pt;
        pt.z = z;
        pt.potential_density = pi_.v.value;
        pt.potential_error = pi_.v.error_estimate;
        pt.force_density = pi_.f.value;
        pt.force_error = pi_.f.error_estimate;
        pt.evaluations = pi_.v.evaluations + pi_.f.evaluations;
        pt.converged = pi_.v.converged && pi_.f.converged;
        out.push_back(pt);
    }
    return out;
}

}  // namespace casipol
