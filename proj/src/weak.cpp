#include "irdecoh/weak.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "irdecoh/radiation.hpp"

namespace irdecoh {

namespace {

using C = std::complex<double>;
using Spinor4 = std::array<C, 4>;

// Two-spinor helicity eigenstates chi_h of sigma.phat.
std::array<C, 2> pauli_helicity(const FourVector& p, Helicity h) {
    const double pt = std::hypot(p.x, p.y);
    const double theta = std::atan2(pt, p.z);
    const double phi = (pt > 0.0) ? std::atan2(p.y, p.x) : 0.0;
    const double ch = std::cos(0.5 * theta), sh = std::sin(0.5 * theta);
    const C eip = std::polar(1.0, phi);
    if (h == Helicity::right) return {C{ch, 0.0}, eip * sh};
    return {-std::conj(eip) * sh, C{ch, 0.0}};
}

}  // namespace

double DiracSpinor::norm2() const {
    double s = 0.0;
    for (const auto& a : c) s += std::norm(a);
    return s;
}

DiracSpinor dirac_spinor(const FourVector& p, Helicity h, double mass) {
    const double shell = std::abs(mdot(p, p) - mass * mass);
    const double scale = std::max(1.0, p.t * p.t);
    if (shell > 1e-8 * scale)
        throw std::invalid_argument("dirac_spinor: momentum off-shell for the mass");
    const double e = p.t;
    const double pmag = p.spatial_norm();
    const double root = std::sqrt(e + mass);
    const double kappa = pmag / (e + mass);
    const auto chi = pauli_helicity(p, h);
    const double hs = (h == Helicity::right) ? 1.0 : -1.0;
    DiracSpinor u;
    u.p = p;
    u.h = h;
    u.mass = mass;
    u.c = {root * chi[0], root * chi[1], root * hs * kappa * chi[0],
           root * hs * kappa * chi[1]};
    return u;
}

double dirac_residual(const DiracSpinor& u) {
    // (pslash - m) u in the Dirac representation, written out in 2x2 blocks:
    // pslash = [[E, -sigma.p], [sigma.p, -E]].
    const FourVector& p = u.p;
    const C sp00{p.z, 0.0}, sp01{p.x, -p.y}, sp10{p.x, p.y}, sp11{-p.z, 0.0};
    const C a0 = (p.t - u.mass) * u.c[0] - (sp00 * u.c[2] + sp01 * u.c[3]);
    const C a1 = (p.t - u.mass) * u.c[1] - (sp10 * u.c[2] + sp11 * u.c[3]);
    const C a2 = (sp00 * u.c[0] + sp01 * u.c[1]) - (p.t + u.mass) * u.c[2];
    const C a3 = (sp10 * u.c[0] + sp11 * u.c[1]) - (p.t + u.mass) * u.c[3];
    return std::sqrt(std::norm(a0) + std::norm(a1) + std::norm(a2) + std::norm(a3));
}

namespace {

// gamma^mu (1 + gamma_5) u, evaluated blockwise.  With gamma_5 as documented,
// (1 + gamma_5) (a, b) = (a - b, b - a) for upper/lower two-spinors a, b.
std::array<Spinor4, 4> left_current_columns(const Spinor4& u) {
    const std::array<C, 2> a{u[0] - u[2], u[1] - u[3]};   // upper of (1+g5)u
    const std::array<C, 2> b{u[2] - u[0], u[3] - u[1]};   // lower of (1+g5)u
    std::array<Spinor4, 4> g;
    // gamma^0 (a,b) = (a,-b)
    g[0] = {a[0], a[1], -b[0], -b[1]};
    // gamma^i (a,b) = (sigma_i b, -sigma_i a)
    g[1] = {b[1], b[0], -a[1], -a[0]};                                    // sigma_x
    g[2] = {C{0, -1} * b[1], C{0, 1} * b[0], C{0, 1} * a[1], C{0, -1} * a[0]};  // sigma_y
    g[3] = {b[0], -b[1], -a[0], a[1]};                                    // sigma_z
    return g;
}

std::array<C, 4> bilinear_current(const DiracSpinor& out, const DiracSpinor& in) {
    // ubar(out) gamma^mu (1 + gamma_5) u(in) for mu = 0..3.
    const auto cols = left_current_columns(in.c);
    std::array<C, 4> j;
    for (int mu = 0; mu < 4; ++mu) {
        // ubar = u^dagger gamma^0: conjugate upper components, negate lower.
        j[mu] = std::conj(out.c[0]) * cols[mu][0] + std::conj(out.c[1]) * cols[mu][1] -
                std::conj(out.c[2]) * cols[mu][2] - std::conj(out.c[3]) * cols[mu][3];
    }
    return j;
}

}  // namespace

WeakAmplitude weak_amplitude(const ScatteringEvent& ev, const HelicityConfig& h,
                             double G) {
    if (event_residual(ev) > 1e-8)
        throw std::invalid_argument("weak_amplitude: event violates shell/conservation");
    const DiracSpinor ue = dirac_spinor(ev.p_e_in, h.e_in, ev.m_e_val);
    const DiracSpinor un = dirac_spinor(ev.p_nu_in, h.nu_in, ev.m_nu_val);
    const DiracSpinor uep = dirac_spinor(ev.p_e_out, h.e_out, ev.m_e_val);
    const DiracSpinor unp = dirac_spinor(ev.p_nu_out, h.nu_out, ev.m_nu_val);
    const auto je = bilinear_current(uep, ue);
    const auto jn = bilinear_current(unp, un);
    WeakAmplitude amp;
    amp.theta = ev.theta;
    amp.phi = ev.phi;
    amp.helicities = h;
    amp.value = (G / std::sqrt(2.0)) *
                (je[0] * jn[0] - je[1] * jn[1] - je[2] * jn[2] - je[3] * jn[3]);
    return amp;
}

namespace {

const std::array<Helicity, 2> both{Helicity::left, Helicity::right};

double summed_m2(const ScatteringEvent& ev, Helicity e_in_fixed, bool fix_e_in,
                 double G) {
    double sum = 0.0;
    for (Helicity he : both) {
        if (fix_e_in && he != e_in_fixed) continue;
        for (Helicity hn : both)
            for (Helicity hep : both)
                for (Helicity hnp : both)
                    sum += std::norm(
                        weak_amplitude(ev, {he, hn, hep, hnp}, G).value);
    }
    return sum;
}

}  // namespace

double differential_rate(const ScatteringEvent& ev, double G) {
    const double s = ev.sqrt_s * ev.sqrt_s;
    const double ps = 1.0 / (64.0 * constants::pi * constants::pi * s);
    return ps * summed_m2(ev, Helicity::left, false, G);
}

double helicity_asymmetry(const ScatteringEvent& ev, double G) {
    // Gauss-Legendre in cos(theta'); the azimuthal integral is flat for the
    // contact interaction (checked by the rotational-invariance tests).
    static thread_local std::vector<double> cx, cw;
    if (cx.empty()) gauss_legendre(32, cx, cw);
    double sig_l = 0.0, sig_r = 0.0;
    for (std::size_t i = 0; i < cx.size(); ++i) {
        const double th = std::acos(cx[i]);
        const ScatteringEvent evi =
            build_cms_event(ev.sqrt_s, th, 0.0, ev.m_e_val, ev.m_nu_val);
        sig_l += cw[i] * summed_m2(evi, Helicity::left, true, G);
        sig_r += cw[i] * summed_m2(evi, Helicity::right, true, G);
    }
    return sig_r / sig_l;
}

}  // namespace irdecoh
