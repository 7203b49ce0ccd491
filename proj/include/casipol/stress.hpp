#pragma once

#include <functional>

#include "casipol/layers.hpp"
#include "casipol/quad.hpp"
#include "casipol/wall.hpp"

// Zero-temperature electromagnetic vacuum stress in planar multilayers and
// the forces it produces, computed from imaginary-frequency integrals over
// the (xi, q) quadrant.
//
// Sign conventions: z grows to the right; forces are per unit area and
// positive when directed toward +z. A plate attracted to a wall on its
// left therefore reports a negative force.

namespace casipol {

using ForceResult = quad::QuadResult;

// Where the zz stress component is evaluated: inside layer `layer` of
// `stack`, at distance z_local from the layer's left face. The leftmost
// layer has no left face, so there (and only there) z_local measures the
// depth from its right face instead.
struct StressContext {
    const LayerStack* stack = nullptr;
    std::size_t layer = 0;
    double z_local = 0.0;  // meters, > 0 and < thickness for finite layers
};

// Spectral kernel of the zz stress inside one layer: two z-independent
// round-trip terms (one per polarization) plus two z-dependent terms that
// vanish in vacuum. The degenerate origin xi = q = 0 evaluates to 0.
double g_integrand(const StressContext& ctx, SpectralPoint p);

// T_zz at a point [Pa]:  hbar/(8 pi^2) Int dxi Int dq q * (-mu/kappa) * g.
ForceResult stress_zz(const StressContext& ctx, const quad::QuadratureSpec& spec);

// Net force per area on an interior layer: T_zz just right of the layer
// minus T_zz just left of it, each taken as a one-sided limit inside the
// neighboring layer.
ForceResult force_on_layer(const LayerStack& stack, std::size_t j,
                           const quad::QuadratureSpec& spec);

// Force per area between two reflectors facing each other across a vacuum
// gap of width d; this is the closed two-mirror geometry every other
// vacuum-spacing force reduces to.
ForceResult gap_force_vacuum(const BoundWall& left, const BoundWall& right, double d,
                             const quad::QuadratureSpec& spec);

// Force per area on a plate (slab) at distance d1 in front of a wall, both
// separated by vacuum.
ForceResult force_plate_vacuum(const Wall& wall, const Layer& plate, double d1,
                               const quad::QuadratureSpec& spec);

// Same force to first order in the plate's susceptibility chi(xi) =
// eps2(i xi) - 1; `dz` is the plate thickness. Valid for |chi| << 1.
ForceResult force_plate_vacuum_first_order(const Wall& wall,
                                           const std::function<double(double)>& chi,
                                           double d1, double dz,
                                           const quad::QuadratureSpec& spec);

// Force per area on a slab of the host medium itself, spanning depths
// [z, z + dz] inside the homogeneous medium that fills z > 0 in front of
// the wall. Exact within the two-region geometry.
ForceResult force_plate_medium(const Wall& wall, const MaterialModel& medium, double z,
                               double dz, const quad::QuadratureSpec& spec);

// First order in the medium susceptibility chi(xi) = eps2(i xi) - 1, with
// the wall reflection taken at vacuum incidence.
ForceResult force_plate_medium_first_order(const Wall& wall,
                                           const std::function<double(double)>& chi,
                                           double z, double dz,
                                           const quad::QuadratureSpec& spec);

}  // namespace casipol
