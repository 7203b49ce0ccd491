#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "battery.hpp"
#include "casipol/quad.hpp"

using namespace casipol::quad;

namespace {

QuadratureSpec tight(double rel) {
    QuadratureSpec s;
    s.rel_tol = rel;
    return s;
}

void check_against_exact(const QuadResult& r, double exact, const std::string& name) {
    INFO(name);
    CHECK(r.converged);
    double true_err = std::abs(r.value - exact);
    double allowed = std::max(10.0 * r.error_estimate, 1e-12 * std::abs(exact));
    CHECK(true_err <= allowed);
}

}  // namespace

TEST_CASE("battery: half-line integrals at tight tolerance") {
    for (const auto& c : battery::halfline_cases()) {
        QuadResult r = integrate_halfline(c.f, c.scale, tight(1e-10));
        check_against_exact(r, c.exact, c.name);
    }
}

TEST_CASE("battery: finite-interval integrals at tight tolerance") {
    for (const auto& c : battery::interval_cases()) {
        QuadResult r = integrate_interval(c.f, c.a, c.b, tight(1e-10));
        check_against_exact(r, c.exact, c.name);
    }
}

TEST_CASE("battery: quadrant integrals") {
    for (const auto& c : battery::quadrant_cases()) {
        QuadResult r = integrate_quadrant(c.f, c.xi_scale, c.q_scale, tight(1e-9));
        check_against_exact(r, c.exact, c.name);
    }
}

TEST_CASE("battery: kappa-substitution route agrees on the physics kernels") {
    for (const auto& c : battery::quadrant_kappa_cases()) {
        QuadResult r = integrate_quadrant_kappa(c.f, c.xi_scale, c.q_scale, tight(1e-9));
        check_against_exact(r, c.exact, c.name);
    }
    // Substitution invariance, directly: same kernel through both routes.
    const auto qc = battery::quadrant_cases();
    const auto kc = battery::quadrant_kappa_cases();
    QuadResult via_q =
        integrate_quadrant(qc[4].f, qc[4].xi_scale, qc[4].q_scale, tight(1e-9));
    QuadResult via_k =
        integrate_quadrant_kappa(kc[0].f, kc[0].xi_scale, kc[0].q_scale, tight(1e-9));
    CHECK(std::abs(via_q.value - via_k.value) <=
          10.0 * (via_q.error_estimate + via_k.error_estimate));
}

TEST_CASE("zeta-series cross-check of the pi^4/15 oracle") {
    // independent route to the same number: 6 * sum 1/n^4, tail below 1e-14
    double s = 0.0;
    for (int n = 100000; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * n * n * n);
    double pi4_15 = battery::kPi * battery::kPi * battery::kPi * battery::kPi / 15.0;
    CHECK(std::abs(6.0 * s - pi4_15) < 1e-12 * pi4_15);
}

TEST_CASE("identically zero integrand converges to exactly zero") {
    auto zero = [](double) { return 0.0; };
    QuadResult r = integrate_halfline(zero, 1.0, tight(1e-10));
    CHECK(r.value == 0.0);
    CHECK(r.error_estimate == 0.0);
    CHECK(r.converged);

    QuadResult r2 = integrate_quadrant([](double, double) { return 0.0; }, 1.0, 1.0,
                                       tight(1e-10));
    CHECK(r2.value == 0.0);
    CHECK(r2.error_estimate == 0.0);
    CHECK(r2.converged);
}

TEST_CASE("budget exhaustion is flagged, never silent") {
    QuadratureSpec s = tight(1e-14);
    s.max_evals = 1000;
    QuadResult r =
        integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, s);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 1000);
    CHECK(r.error_estimate > 0.0);
    // the flagged answer is still a usable estimate
    CHECK(std::abs(r.value - 2.0) < 0.1);
}

TEST_CASE("quadrature settings are validated") {
    auto f = [](double x) { return std::exp(-x); };
    QuadratureSpec s;
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate_halfline(f, 1.0, s), std::invalid_argument);
    s = QuadratureSpec{};
    s.rel_tol = 1.0;
    CHECK_THROWS_AS(integrate_halfline(f, 1.0, s), std::invalid_argument);
    s = QuadratureSpec{};
    s.abs_tol = -1.0;
    CHECK_THROWS_AS(integrate_halfline(f, 1.0, s), std::invalid_argument);
    s = QuadratureSpec{};
    s.max_evals = 999;
    CHECK_THROWS_AS(integrate_halfline(f, 1.0, s), std::invalid_argument);
    s = QuadratureSpec{};
    s.strategy = QuadratureSpec::Strategy::fixed_panel;
    s.fixed_panels = 0;
    CHECK_THROWS_AS(integrate_halfline(f, 1.0, s), std::invalid_argument);

    CHECK_THROWS_AS(integrate_halfline(f, 0.0, tight(1e-8)), std::invalid_argument);
    CHECK_THROWS_AS(integrate_interval(f, 1.0, 1.0, tight(1e-8)), std::invalid_argument);
    CHECK_THROWS_AS(integrate_quadrant([](double, double) { return 0.0; }, 1.0, 0.0,
                                       tight(1e-8)),
                    std::invalid_argument);
}

TEST_CASE("fixed-panel strategy") {
    QuadratureSpec s;
    s.strategy = QuadratureSpec::Strategy::fixed_panel;
    s.fixed_panels = 1;
    // a single Kronrod panel integrates low-degree polynomials exactly
    QuadResult r = integrate_interval([](double x) { return std::pow(x, 13.0); }, 0.0,
                                      1.0, s);
    CHECK(r.value == doctest::Approx(1.0 / 14.0).epsilon(1e-14));
    CHECK(r.evaluations == 15);

    s.fixed_panels = 64;
    QuadResult rh = integrate_halfline([](double x) { return std::exp(-x); }, 1.0, s);
    CHECK(rh.converged);
    CHECK(rh.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rh.evaluations == 64 * 15);
}

TEST_CASE("absolute tolerance path") {
    // a tiny integrand under a generous abs_tol converges on the seed pass
    QuadratureSpec s = tight(1e-10);
    s.abs_tol = 1e-20;
    QuadResult r =
        integrate_halfline([](double x) { return 1e-30 * std::exp(-x); }, 1.0, s);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1e-30).epsilon(1e-6));
}

TEST_CASE("determinism: identical runs give identical bits") {
    auto f = [](double xi, double q) {
        double k = battery::kap_of(xi, q);
        double e = std::exp(-2.0 * k * 1e-6);
        return e == 0.0 ? 0.0 : q * k * e / (1.0 - e);
    };
    QuadResult a = integrate_quadrant(f, battery::kC / 2e-6, 5e5, tight(1e-9));
    QuadResult b = integrate_quadrant(f, battery::kC / 2e-6, 5e5, tight(1e-9));
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("separable quadrant integral with distinct scales") {
    QuadResult r = integrate_quadrant(
        [](double xi, double q) { return std::exp(-xi / 3.0) * std::exp(-q / 5.0); }, 3.0,
        5.0, tight(1e-9));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(15.0).epsilon(1e-8));
}

TEST_CASE("tightening the tolerance does not loosen the answer") {
    // Each 10x tightening of rel_tol may only shrink the true error across
    // the whole battery, up to a roundoff-level slack.
    auto check_monotone = [](const std::string& name,
                             const std::function<QuadResult(double)>& run,
                             double exact) {
        double prev_err = HUGE_VAL;
        for (double rel : {1e-4, 1e-6, 1e-8, 1e-10}) {
            QuadResult r = run(rel);
            INFO(name, " at rel_tol ", rel);
            CHECK(r.converged);
            double err = std::abs(r.value - exact);
            CHECK(err <= prev_err + 1e-13 * std::abs(exact));
            prev_err = err;
        }
    };
    for (const auto& c : battery::halfline_cases())
        check_monotone(c.name,
                       [&](double rel) { return integrate_halfline(c.f, c.scale, tight(rel)); },
                       c.exact);
    for (const auto& c : battery::interval_cases())
        check_monotone(c.name,
                       [&](double rel) { return integrate_interval(c.f, c.a, c.b, tight(rel)); },
                       c.exact);
    for (const auto& c : battery::quadrant_cases())
        check_monotone(c.name,
                       [&](double rel) {
                           return integrate_quadrant(c.f, c.xi_scale, c.q_scale, tight(rel));
                       },
                       c.exact);
    for (const auto& c : battery::quadrant_kappa_cases())
        check_monotone(c.name,
                       [&](double rel) {
                           return integrate_quadrant_kappa(c.f, c.xi_scale, c.q_scale,
                                                           tight(rel));
                       },
                       c.exact);
}
