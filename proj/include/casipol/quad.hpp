#pragma once

#include <cstdint>
#include <functional>

// Self-contained adaptive quadrature used by every integral in the library.
//
// The 1D workhorse is a Gauss-Kronrod 7/15 rule with worst-panel-first
// refinement. Semi-infinite integrals are mapped to (0,1] through
// u = scale/(scale + x); the nodes are strictly interior, so neither
// endpoint is ever evaluated. The double (xi,q) integrals are nested 1D
// integrals with the inner tolerance tightened by 10x.
//
// Every result carries an error estimate and an evaluation count, and a
// run that exhausts its budget comes back flagged instead of silently
// wrong.

namespace casipol::quad {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;                // 0 disables the absolute criterion
    std::int64_t max_evals = 10'000'000; // total integrand evaluations
    double xi_scale = 0.0;               // rad/s; 0 = let the caller derive it
    double q_scale = 0.0;                // rad/m; 0 = let the caller derive it

    enum class Strategy { adaptive_nested, fixed_panel };
    Strategy strategy = Strategy::adaptive_nested;
    int fixed_panels = 64;               // panel count for Strategy::fixed_panel
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    std::int64_t evaluations = 0;
    bool converged = false;
};

// Integral of f over the finite interval [a, b].
QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              const QuadratureSpec& spec);

// Integral of f over [0, inf); `scale` sets the substitution
// u = scale/(scale + x) and should sit near the decay length of f.
QuadResult integrate_halfline(const std::function<double(double)>& f, double scale,
                              const QuadratureSpec& spec);

// Double integral of f(xi, q) over the quadrant xi >= 0, q >= 0, evaluated
// as nested half-line integrals (outer xi, inner q).
QuadResult integrate_quadrant(const std::function<double(double, double)>& f,
                              double xi_scale, double q_scale,
                              const QuadratureSpec& spec);

// Double integral of q * g(xi, q) over the same quadrant, but with the
// inner variable changed from q to kappa = sqrt(xi^2/c^2 + q^2), using
// q dq = kappa dkappa. Useful when the integrand decays in kappa; also the
// independent route for substitution-invariance checks.
QuadResult integrate_quadrant_kappa(const std::function<double(double, double)>& g,
                                    double xi_scale, double kappa_scale,
                                    const QuadratureSpec& spec);

}  // namespace casipol::quad
