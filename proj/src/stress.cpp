#include "casipol/stress.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "casipol/constants.hpp"

namespace casipol {

namespace {

using constants::c_light;
using constants::hbar;
using constants::pi;

// Smallest geometric decay length of a stack: the thinnest finite layer.
// Falls back to `fallback` (a position, say) when the stack is two bare
// half-spaces.
double min_finite_thickness(const LayerStack& s, double fallback) {
    double L = 0.0;
    for (const auto& lay : s.layers())
        if (!lay.semi_infinite()) L = (L == 0.0) ? lay.thickness : std::min(L, lay.thickness);
    return L > 0.0 ? L : fallback;
}

quad::QuadratureSpec resolve_scales(quad::QuadratureSpec spec, double length) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("quadrature scale: characteristic length must be > 0");
    if (spec.xi_scale <= 0.0) spec.xi_scale = c_light / (2.0 * length);
    if (spec.q_scale <= 0.0) spec.q_scale = 1.0 / (2.0 * length);
    return spec;
}

void check_context(const StressContext& ctx) {
    if (ctx.stack == nullptr) throw std::invalid_argument("StressContext: null stack");
    const Layer& lay = ctx.stack->layer(ctx.layer);  // throws on bad index
    if (!(ctx.z_local > 0.0))
        throw std::invalid_argument("StressContext: z_local must be > 0");
    if (!lay.semi_infinite() && !(ctx.z_local < lay.thickness))
        throw std::invalid_argument("StressContext: z_local must be < layer thickness");
}

double scaled(double v) { return hbar / (8.0 * pi * pi) * v; }

ForceResult scale_result(quad::QuadResult r) {
    r.value = scaled(r.value);
    r.error_estimate = scaled(r.error_estimate);
    return r;
}

}  // namespace

double g_integrand(const StressContext& ctx, SpectralPoint p) {
    if (p.xi == 0.0 && p.q == 0.0) return 0.0;

    const LayerStack& s = *ctx.stack;
    const std::size_t j = ctx.layer;
    const Layer& lay = s.layer(j);

    const double xi = p.xi;
    const double q2 = p.q * p.q;
    const double em1 = lay.material.epsilon_minus_one(xi);
    const double mm1 = lay.material.mu_minus_one(xi);
    const double n2 = (1.0 + em1) * (1.0 + mm1);
    const double n2m1 = em1 + mm1 + em1 * mm1;  // n^2 - 1 without cancellation
    const double kap = kappa(lay.material, p);
    const double kap2 = kap * kap;
    const double xi2_c2 = (xi / c_light) * (xi / c_light);

    // Distances from the evaluation point to the layer's two faces. A
    // missing face (half-space side) is infinitely far away and its
    // exponential drops out.
    double dist_left, dist_right;
    if (j == 0) {
        dist_left = kSemiInfinite;
        dist_right = ctx.z_local;
    } else if (j + 1 == s.size()) {
        dist_left = ctx.z_local;
        dist_right = kSemiInfinite;
    } else {
        dist_left = ctx.z_local;
        dist_right = lay.thickness - ctx.z_local;
    }

    const double rs_r = reflect_stack(s, j, Side::right, Pol::s, p);
    const double rs_l = reflect_stack(s, j, Side::left, Pol::s, p);
    const double rp_r = reflect_stack(s, j, Side::right, Pol::p, p);
    const double rp_l = reflect_stack(s, j, Side::left, Pol::p, p);

    const double e_d = attenuation(kap, lay.thickness);
    const double e_l = attenuation(kap, dist_left);
    const double e_r = attenuation(kap, dist_right);

    const double ds = 1.0 - rs_r * rs_l * e_d;
    const double dp = 1.0 - rp_r * rp_l * e_d;

    // Round-trip coefficients. With beta^2 = -kappa^2 on the imaginary
    // axis, the raw combinations reduce to the subtraction-free forms
    //   beta^2(1+1/n^2) - q^2(1-1/n^2) = -(kappa^2 + q^2 + xi^2/c^2)
    //   beta^2(1+1/n^2) + q^2(1-1/n^2) = -(xi^2 n^2/c^2 + (kappa^2+q^2)/n^2)
    const double as = -(kap2 + q2 + xi2_c2);
    const double ap = -(xi2_c2 * n2 + (kap2 + q2) / n2);

    // Face-referenced coefficient: -(beta^2+q^2)(1-1/n^2) = +xi^2(n^2-1)/c^2.
    const double b = xi2_c2 * n2m1;

    double g = 0.0;
    if (e_d != 0.0) {
        g += 2.0 * as * rs_r * rs_l * e_d / ds;
        g += 2.0 * ap * rp_r * rp_l * e_d / dp;
    }
    if (b != 0.0) {
        g += b * (rs_l * e_l + rs_r * e_r) / ds;
        g -= b * (rp_l * e_l + rp_r * e_r) / dp;
    }
    return g;
}

ForceResult stress_zz(const StressContext& ctx, const quad::QuadratureSpec& spec0) {
    check_context(ctx);
    const Layer& lay = ctx.stack->layer(ctx.layer);
    auto spec = resolve_scales(spec0, min_finite_thickness(*ctx.stack, ctx.z_local));

    auto f = [&](double xi, double q) {
        if (xi == 0.0 && q == 0.0) return 0.0;
        SpectralPoint p{xi, q};
        double g = g_integrand(ctx, p);
        if (g == 0.0) return 0.0;
        double mu_j = lay.material.mu(xi);
        double kap = kappa(lay.material, p);
        // the frequency-domain 1/(i beta) turns into -1/kappa here
        return q * (-mu_j / kap) * g;
    };
    return scale_result(quad::integrate_quadrant(f, spec.xi_scale, spec.q_scale, spec));
}

ForceResult force_on_layer(const LayerStack& stack, std::size_t j,
                           const quad::QuadratureSpec& spec0) {
    if (j >= stack.size())
        throw std::out_of_range("force_on_layer: layer index out of range");
    if (j == 0 || j + 1 == stack.size())
        throw std::invalid_argument("force_on_layer: need an interior layer");

    auto spec = resolve_scales(spec0, min_finite_thickness(stack, 0.0));
    // One-sided limits: stay a sliver away from each face. For a finite
    // neighbor the sliver is relative to its thickness; for a half-space
    // it is relative to the shortest significant wavelength c/xi_scale.
    auto sliver = [&](const Layer& lay) {
        return lay.semi_infinite() ? 1e-9 * (c_light / spec.xi_scale)
                                   : 1e-9 * lay.thickness;
    };

    const Layer& right = stack.layer(j + 1);
    StressContext right_ctx{&stack, j + 1, sliver(right)};

    const Layer& left = stack.layer(j - 1);
    // Just left of the layer means near the *right* face of the left
    // neighbor; for the leftmost half-space z_local already measures from
    // that face.
    double z_left = (j - 1 == 0) ? sliver(left) : left.thickness - sliver(left);
    StressContext left_ctx{&stack, j - 1, z_left};

    ForceResult t_right = stress_zz(right_ctx, spec);
    ForceResult t_left = stress_zz(left_ctx, spec);

    ForceResult out;
    out.value = t_right.value - t_left.value;
    out.error_estimate = t_right.error_estimate + t_left.error_estimate;
    out.evaluations = t_right.evaluations + t_left.evaluations;
    out.converged = t_right.converged && t_left.converged;
    return out;
}

ForceResult gap_force_vacuum(const BoundWall& left, const BoundWall& right, double d,
                             const quad::QuadratureSpec& spec0) {
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::invalid_argument("gap_force_vacuum: gap width must be finite and > 0");
    auto spec = resolve_scales(spec0, d);

    auto f = [&](double xi, double q) {
        if (xi == 0.0 && q == 0.0) return 0.0;
        SpectralPoint p{xi, q};
        double kap = std::hypot(xi / c_light, q);
        double e = attenuation(kap, d);
        if (e == 0.0) return 0.0;
        double gs = left(Pol::s, p) * right(Pol::s, p) * e;
        double gp = left(Pol::p, p) * right(Pol::p, p) * e;
        double g1 = -4.0 * kap * kap * (gs / (1.0 - gs) + gp / (1.0 - gp));
        return (q / kap) * g1;
    };
    return scale_result(quad::integrate_quadrant(f, spec.xi_scale, spec.q_scale, spec));
}

ForceResult force_plate_vacuum(const Wall& wall, const Layer& plate, double d1,
                               const quad::QuadratureSpec& spec0) {
    if (!(plate.thickness > 0.0))
        throw std::invalid_argument("force_plate_vacuum: plate thickness must be > 0");
    double length = d1;
    if (!plate.semi_infinite()) length = std::min(length, plate.thickness);
    auto spec = resolve_scales(spec0, length);

    MaterialModel vac = MaterialModel::vacuum();
    BoundWall left = wall.bind(vac);
    Wall plate_side = Wall::provider([plate, vac](Pol pol, SpectralPoint p) {
        return reflect_slab(vac, plate, pol, p);
    });
    return gap_force_vacuum(left, plate_side.bind(vac), d1, spec);
}

ForceResult force_plate_vacuum_first_order(const Wall& wall,
                                           const std::function<double(double)>& chi,
                                           double d1, double dz,
                                           const quad::QuadratureSpec& spec0) {
    if (!chi) throw std::invalid_argument("force_plate_vacuum_first_order: empty chi");
    if (!(d1 > 0.0) || !(dz > 0.0))
        throw std::invalid_argument("force_plate_vacuum_first_order: need d1 > 0 and dz > 0");
    auto spec = resolve_scales(spec0, std::min(d1, dz));

    MaterialModel vac = MaterialModel::vacuum();
    BoundWall rwall = wall.bind(vac);

    auto f = [&](double xi, double q) {
        if (xi == 0.0 && q == 0.0) return 0.0;
        SpectralPoint p{xi, q};
        double kap = std::hypot(xi / c_light, q);
        double e1 = attenuation(kap, d1);
        if (e1 == 0.0) return 0.0;
        double rs = rwall(Pol::s, p);
        double rp = rwall(Pol::p, p);
        // q*kappa*[rs(1 - q^2/kap^2) - rp(1 + q^2/kap^2)] regrouped as
        // (q/kap)*[rs*xi^2/c^2 - rp*(kap^2 + q^2)], which costs no
        // cancellation at q >> xi/c.
        double bracket = rs * (xi / c_light) * (xi / c_light) - rp * (kap * kap + q * q);
        return chi(xi) * (q / kap) * e1 * (1.0 - attenuation(kap, dz)) * bracket;
    };
    return scale_result(quad::integrate_quadrant(f, spec.xi_scale, spec.q_scale, spec));
}

ForceResult force_plate_medium(const Wall& wall, const MaterialModel& medium, double z,
                               double dz, const quad::QuadratureSpec& spec0) {
    if (!(z > 0.0) || !(dz > 0.0))
        throw std::invalid_argument("force_plate_medium: need z > 0 and dz > 0");
    auto spec = resolve_scales(spec0, std::min(z, dz));

    BoundWall rwall = wall.bind(medium);

    auto f = [&](double xi, double q) {
        if (xi == 0.0 && q == 0.0) return 0.0;
        SpectralPoint p{xi, q};
        double mu2 = medium.mu(xi);
        double em1 = medium.epsilon_minus_one(xi);
        double mm1 = medium.mu_minus_one(xi);
        double n2m1 = em1 + mm1 + em1 * mm1;
        double kap2 = kappa(medium, p);
        double e_z = attenuation(kap2, z);
        if (e_z == 0.0) return 0.0;
        double rs = rwall(Pol::s, p);
        double rp = rwall(Pol::p, p);
        return (xi / c_light) * (xi / c_light) * mu2 * n2m1 * (q / kap2) * e_z *
               (rp - rs) * (attenuation(kap2, dz) - 1.0);
    };
    return scale_result(quad::integrate_quadrant(f, spec.xi_scale, spec.q_scale, spec));
}

ForceResult force_plate_medium_first_order(const Wall& wall,
                                           const std::function<double(double)>& chi,
                                           double z, double dz,
                                           const quad::QuadratureSpec& spec0) {
    if (!chi) throw std::invalid_argument("force_plate_medium_first_order: empty chi");
    if (!(z > 0.0) || !(dz > 0.0))
        throw std::invalid_argument("force_plate_medium_first_order: need z > 0 and dz > 0");
    auto spec = resolve_scales(spec0, std::min(z, dz));

    MaterialModel vac = MaterialModel::vacuum();
    BoundWall rwall = wall.bind(vac);

    auto f = [&](double xi, double q) {
        if (xi == 0.0 && q == 0.0) return 0.0;
        SpectralPoint p{xi, q};
        double kap = std::hypot(xi / c_light, q);
        double e_z = attenuation(kap, z);
        if (e_z == 0.0) return 0.0;
        double rs = rwall(Pol::s, p);
        double rp = rwall(Pol::p, p);
        return (xi / c_light) * (xi / c_light) * chi(xi) * (q / kap) * e_z * (rp - rs) *
               (attenuation(kap, dz) - 1.0);
    };
    return scale_result(quad::integrate_quadrant(f, spec.xi_scale, spec.q_scale, spec));
}

}  // namespace casipol
