#pragma once

// Physical constants (CODATA 2018, SI units). Every module pulls its
// constants from here so that numbers agree bit-for-bit across the code.

namespace casipol::constants {

inline constexpr double hbar = 1.054571817e-34;     // reduced Planck constant [J s]
inline constexpr double c_light = 299792458.0;      // speed of light in vacuum [m/s]
inline constexpr double eps0 = 8.8541878128e-12;    // vacuum permittivity [F/m]

// Permeability derived from eps0 and c rather than quoted independently:
// algebraically equivalent integrand forms then agree to roundoff instead
// of to the (looser) experimental consistency of separately quoted values.
inline constexpr double mu0 = 1.0 / (eps0 * c_light * c_light);  // [N/A^2]

inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace casipol::constants
