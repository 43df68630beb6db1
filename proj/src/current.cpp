#include "irdecoh/current.hpp"

#include <cmath>
#include <stdexcept>

namespace irdecoh {

namespace {

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void check_transverse_basis(const PhotonMode& m) {
    const double tol = 1e-9;
    if (std::abs(dot3(m.e1, m.e1) - 1.0) > tol ||
        std::abs(dot3(m.e2, m.e2) - 1.0) > tol ||
        std::abs(dot3(m.e1, m.e2)) > tol ||
        std::abs(dot3(m.e1, m.direction)) > tol ||
        std::abs(dot3(m.e2, m.direction)) > tol)
        throw std::invalid_argument("polarization basis not orthonormal-transverse");
}

}  // namespace

PhotonMode make_mode(const std::array<double, 3>& direction, double k0) {
    if (!(k0 > 0.0)) throw std::domain_error("make_mode: k0 must be > 0");
    const double n = std::sqrt(dot3(direction, direction));
    if (!(n > 0.0)) throw std::domain_error("make_mode: zero direction");
    PhotonMode m;
    m.direction = {direction[0] / n, direction[1] / n, direction[2] / n};
    m.k0 = k0;
    // e1 = normalize(z x n) unless n is (anti)parallel to z, then e1 = x.
    const double sxy = std::hypot(m.direction[0], m.direction[1]);
    if (sxy < 1e-14) {
        m.e1 = {1.0, 0.0, 0.0};
    } else {
        m.e1 = {-m.direction[1] / sxy, m.direction[0] / sxy, 0.0};
    }
    m.e2 = {m.direction[1] * m.e1[2] - m.direction[2] * m.e1[1],
            m.direction[2] * m.e1[0] - m.direction[0] * m.e1[2],
            m.direction[0] * m.e1[1] - m.direction[1] * m.e1[0]};
    return m;
}

ComplexFourVector soft_current(const ScatteringEvent& ev, const PhotonMode& mode,
                               double alpha) {
    if (!(mode.k0 > 0.0))
        throw std::domain_error("soft_current: photon energy must be > 0");
    const FourVector k{mode.k0, mode.k0 * mode.direction[0],
                       mode.k0 * mode.direction[1], mode.k0 * mode.direction[2]};
    const double pk = mdot(ev.p_e_in, k);
    const double ppk = mdot(ev.p_e_out, k);
    const double e_charge = std::sqrt(4.0 * constants::pi * alpha);
    const std::complex<double> ie{0.0, e_charge};
    ComplexFourVector j;
    j.t = ie * (ev.p_e_in.t / pk - ev.p_e_out.t / ppk);
    j.x = ie * (ev.p_e_in.x / pk - ev.p_e_out.x / ppk);
    j.y = ie * (ev.p_e_in.y / pk - ev.p_e_out.y / ppk);
    j.z = ie * (ev.p_e_in.z / pk - ev.p_e_out.z / ppk);
    return j;
}

double polarization_sum(const ComplexFourVector& j, const PhotonMode& mode) {
    check_transverse_basis(mode);
    const std::complex<double> je1 =
        j.x * mode.e1[0] + j.y * mode.e1[1] + j.z * mode.e1[2];
    const std::complex<double> je2 =
        j.x * mode.e2[0] + j.y * mode.e2[1] + j.z * mode.e2[2];
    return std::norm(je1) + std::norm(je2);
}

double conservation_residual(const ScatteringEvent& ev, const PhotonMode& mode) {
    const ComplexFourVector j = soft_current(ev, mode);
    const double jn = std::sqrt(std::norm(j.t) + std::norm(j.x) + std::norm(j.y) +
                                std::norm(j.z));
    if (jn == 0.0) return 0.0;
    const FourVector k{mode.k0, mode.k0 * mode.direction[0],
                       mode.k0 * mode.direction[1], mode.k0 * mode.direction[2]};
    const std::complex<double> kj =
        k.t * j.t - k.x * j.x - k.y * j.y - k.z * j.z;
    const double kn = std::sqrt(2.0) * mode.k0;  // |k| for a light-like vector
    return std::abs(kj) / (kn * jn);
}

double reality_check(const ScatteringEvent& ev, const PhotonMode& mode) {
    const ComplexFourVector j = soft_current(ev, mode);
    // J(-k): all four components of k negated inside the denominators.
    const FourVector k{mode.k0, mode.k0 * mode.direction[0],
                       mode.k0 * mode.direction[1], mode.k0 * mode.direction[2]};
    const double pk = -mdot(ev.p_e_in, k);
    const double ppk = -mdot(ev.p_e_out, k);
    const double e_charge = std::sqrt(4.0 * constants::pi * constants::alpha_em);
    const std::complex<double> ie{0.0, e_charge};
    ComplexFourVector jneg;
    jneg.t = ie * (ev.p_e_in.t / pk - ev.p_e_out.t / ppk);
    jneg.x = ie * (ev.p_e_in.x / pk - ev.p_e_out.x / ppk);
    jneg.y = ie * (ev.p_e_in.y / pk - ev.p_e_out.y / ppk);
    jneg.z = ie * (ev.p_e_in.z / pk - ev.p_e_out.z / ppk);
    ComplexFourVector jconj{std::conj(j.t), std::conj(j.x), std::conj(j.y),
                            std::conj(j.z)};
    return (jconj - jneg).norm1();
}

}  // namespace irdecoh
