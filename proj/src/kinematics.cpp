#include "irdecoh/kinematics.hpp"

#include <cmath>
#include <stdexcept>

#include "irdecoh/constants.hpp"

namespace irdecoh {

double FourVector::spatial_norm() const { return std::sqrt(x * x + y * y + z * z); }

double mdot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

FourVector boost(const FourVector& v, const std::array<double, 3>& beta) {
    const double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
    if (b2 >= 1.0) throw std::domain_error("boost: |beta| must be < 1");
    if (b2 == 0.0) return v;
    const double gamma = 1.0 / std::sqrt(1.0 - b2);
    const double bp = beta[0] * v.x + beta[1] * v.y + beta[2] * v.z;
    const double coef = (gamma - 1.0) * bp / b2 + gamma * v.t;
    return {gamma * (v.t + bp),
            v.x + coef * beta[0],
            v.y + coef * beta[1],
            v.z + coef * beta[2]};
}

FourVector rotate_z(const FourVector& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {v.t, c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

FourVector rotate_y(const FourVector& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {v.t, c * v.x + s * v.z, v.y, -s * v.x + c * v.z};
}

bool ScatteringEvent::forward() const {
    const FourVector d = p_e_out - p_e_in;
    return std::abs(d.t) + std::abs(d.x) + std::abs(d.y) + std::abs(d.z) == 0.0;
}

ScatteringEvent build_cms_event(double sqrt_s, double theta, double phi,
                                double m_e_val, double m_nu_val) {
    if (!(sqrt_s > m_e_val + m_nu_val))
        throw std::domain_error("build_cms_event: sqrt_s below threshold");
    if (!(theta >= 0.0 && theta <= constants::pi))
        throw std::domain_error("build_cms_event: theta outside [0, pi]");

    const double s = sqrt_s * sqrt_s;
    const double me2 = m_e_val * m_e_val;
    const double mnu2 = m_nu_val * m_nu_val;
    const double e_e = (s + me2 - mnu2) / (2.0 * sqrt_s);
    const double e_nu = (s - me2 + mnu2) / (2.0 * sqrt_s);
    const double p = std::sqrt(std::max(0.0, e_e * e_e - me2));

    ScatteringEvent ev;
    ev.sqrt_s = sqrt_s;
    ev.theta = theta;
    ev.phi = phi;
    ev.m_e_val = m_e_val;
    ev.m_nu_val = m_nu_val;
    ev.p_e_in = {e_e, 0.0, 0.0, p};
    ev.p_nu_in = {e_nu, 0.0, 0.0, -p};

    // Elastic, equal masses in = out: |p_out| = |p_in| and the energies are
    // unchanged; only the direction rotates.
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    if (theta == 0.0) {
        ev.p_e_out = ev.p_e_in;  // forward fixed point, bitwise
    } else {
        ev.p_e_out = {e_e, p * st * cp, p * st * sp, p * ct};
    }
    ev.p_nu_out = (ev.p_e_in + ev.p_nu_in) - ev.p_e_out;
    return ev;
}

double event_residual(const ScatteringEvent& ev) {
    auto shell = [](const FourVector& v, double m) {
        return std::abs(mdot(v, v) - m * m);
    };
    double r = shell(ev.p_e_in, ev.m_e_val);
    r = std::max(r, shell(ev.p_e_out, ev.m_e_val));
    r = std::max(r, shell(ev.p_nu_in, ev.m_nu_val));
    r = std::max(r, shell(ev.p_nu_out, ev.m_nu_val));
    const FourVector d = (ev.p_e_in + ev.p_nu_in) - (ev.p_e_out + ev.p_nu_out);
    r = std::max(r, std::abs(d.t));
    r = std::max(r, std::abs(d.x));
    r = std::max(r, std::abs(d.y));
    r = std::max(r, std::abs(d.z));
    return r;
}

}  // namespace irdecoh
