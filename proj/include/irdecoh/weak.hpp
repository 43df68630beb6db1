#pragma once

#include <array>
#include <complex>

#include "irdecoh/constants.hpp"
#include "irdecoh/kinematics.hpp"

// First-order V-A contact amplitude for e-nu scattering,
//   M_w = (G / sqrt 2) [ubar(e') gamma_mu (1 + gamma_5) u(e)]
//                      [ubar(nu') gamma^mu (1 + gamma_5) u(nu)],
// with helicity eigenspinors in the Dirac representation:
//   gamma^0 = diag(1, 1, -1, -1) blocks, gamma^i = offdiag(sigma_i, -sigma_i),
//   gamma_5 = -i gamma^0 gamma^1 gamma^2 gamma^3  (so (1 + gamma_5)/2 projects
//   onto left-chiral components).

namespace irdecoh {

enum class Helicity : int { left = -1, right = +1 };

struct DiracSpinor {
    std::array<std::complex<double>, 4> c{};
    FourVector p;
    Helicity h = Helicity::left;
    double mass = 0.0;

    // u^dagger u; the chosen normalization makes this 2E.
    double norm2() const;
};

struct HelicityConfig {
    Helicity e_in = Helicity::left;
    Helicity nu_in = Helicity::left;
    Helicity e_out = Helicity::left;
    Helicity nu_out = Helicity::left;
};

struct WeakAmplitude {
    std::complex<double> value{0.0, 0.0};
    double theta = 0.0, phi = 0.0;  // branch label: outgoing electron angles
    HelicityConfig helicities;
};

// Helicity eigenspinor u(p, h) normalized to u^dagger u = 2E.  Throws
// std::invalid_argument if p is off-shell for the given mass.
DiracSpinor dirac_spinor(const FourVector& p, Helicity h, double mass);

// Residual ||(pslash - m) u|| of the Dirac equation, for tests/diagnostics.
double dirac_residual(const DiracSpinor& u);

WeakAmplitude weak_amplitude(const ScatteringEvent& ev, const HelicityConfig& h,
                             double G = constants::g_fermi);

// Helicity-summed |M_w|^2 times the elastic two-body phase-space factor
// 1 / (64 pi^2 s), per unit solid angle.
double differential_rate(const ScatteringEvent& ev, double G = constants::g_fermi);

// sigma_R / sigma_L for incoming-electron helicity eigenstates, integrated
// over outgoing angles at this event's sqrt_s and masses (incoming neutrino
// unpolarized: both its helicities summed).
double helicity_asymmetry(const ScatteringEvent& ev, double G = constants::g_fermi);

}  // namespace irdecoh
