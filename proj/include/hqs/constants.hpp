#pragma once

// Physical constants, CODATA 2018. All SI.
namespace hqs::constants {

inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double planck_h = 6.62607015e-34;     // J s (exact)
inline constexpr double k_boltzmann = 1.380649e-23;    // J/K (exact)
inline constexpr double eps0 = 8.8541878128e-12;       // F/m
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double electron_mass = 9.1093837015e-31;      // kg
inline constexpr double joule_per_gev = 1.602176634e-10;       // J/GeV (exact)

// amu / m_e, used by the CSL collapse-rate conversion.
inline constexpr double amu_over_electron_mass = atomic_mass_unit / electron_mass;

inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace hqs::constants
