#pragma once

#include <array>

// Relativistic four-vector algebra and construction of on-shell
// center-of-mass e-nu scattering events.  Metric (+,-,-,-), m_e = 1.

namespace irdecoh {

struct FourVector {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

    friend FourVector operator+(const FourVector& a, const FourVector& b) {
        return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend FourVector operator-(const FourVector& a, const FourVector& b) {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend FourVector operator*(double s, const FourVector& a) {
        return {s * a.t, s * a.x, s * a.y, s * a.z};
    }
    FourVector operator-() const { return {-t, -x, -y, -z}; }

    std::array<double, 3> spatial() const { return {x, y, z}; }
    double spatial_norm() const;
};

// Minkowski contraction a.b under (+,-,-,-).
double mdot(const FourVector& a, const FourVector& b);

// Active boost with velocity beta (|beta| < 1) and rotations about fixed axes.
FourVector boost(const FourVector& v, const std::array<double, 3>& beta);
FourVector rotate_z(const FourVector& v, double angle);
FourVector rotate_y(const FourVector& v, double angle);

// One elastic e-nu scattering skeleton: on-shell in/out momenta in the
// center-of-mass frame, outgoing-electron angles (theta, phi).
struct ScatteringEvent {
    FourVector p_e_in, p_nu_in, p_e_out, p_nu_out;
    double sqrt_s = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double m_e_val = 1.0;
    double m_nu_val = 0.0;

    bool forward() const;  // outgoing electron momentum equals incoming
};

// Elastic c.m.s. event with the electron incoming along +z and scattered to
// (theta, phi).  The neutrino legs follow from four-momentum conservation.
// Throws std::domain_error below threshold (sqrt_s <= m_e + m_nu) or for
// theta outside [0, pi].
ScatteringEvent build_cms_event(double sqrt_s, double theta, double phi,
                                double m_e_val = 1.0, double m_nu_val = 0.0);

// Largest on-shell / conservation violation of an event, used by tests and
// input validation.
double event_residual(const ScatteringEvent& ev);

}  // namespace irdecoh
