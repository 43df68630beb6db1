#pragma once

// Global physics conventions.
//
// Natural units hbar = c = 1, energies and momenta in units of the electron
// mass (m_e = 1).  Metric signature (+,-,-,-).

namespace irdecoh::constants {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Fine-structure constant (CODATA) and the Fermi-type contact coupling in
// units of m_e^-2.  Both are defaults only; runs may override them.
inline constexpr double alpha_em = 1.0 / 137.035999084;
inline constexpr double g_fermi = 3.0466e-12;

inline constexpr double two_pi_cubed = 8.0 * pi * pi * pi;  // (2*pi)^3

}  // namespace irdecoh::constants
