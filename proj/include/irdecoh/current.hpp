#pragma once

#include <array>
#include <complex>

#include "irdecoh/constants.hpp"
#include "irdecoh/kinematics.hpp"

// Classical soft bremsstrahlung current of the scattered electron,
//   J_mu(k) = i e (p_mu / p.k - p'_mu / p'.k),   e = sqrt(4 pi alpha),
// and its polarization-summed intensity over a physical transverse basis.

namespace irdecoh {

struct ComplexFourVector {
    std::complex<double> t, x, y, z;

    friend ComplexFourVector operator-(const ComplexFourVector& a,
                                       const ComplexFourVector& b) {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    // a*.b under (+,-,-,-); real for any single current contracted with itself.
    friend std::complex<double> cmdot(const ComplexFourVector& a,
                                      const ComplexFourVector& b) {
        using std::conj;
        return conj(a.t) * b.t - conj(a.x) * b.x - conj(a.y) * b.y - conj(a.z) * b.z;
    }
    double norm1() const {
        return std::abs(t) + std::abs(x) + std::abs(y) + std::abs(z);
    }
};

// One photon mode: unit propagation direction, energy k0 > 0 (m_e units) and
// an orthonormal transverse polarization pair (e1, e2).
struct PhotonMode {
    std::array<double, 3> direction{0.0, 0.0, 1.0};
    double k0 = 0.0;
    std::array<double, 3> e1{1.0, 0.0, 0.0};
    std::array<double, 3> e2{0.0, 1.0, 0.0};
};

// Builds the transverse basis for a direction; k0 must be > 0.
PhotonMode make_mode(const std::array<double, 3>& direction, double k0);

// J_mu(k) for the event's electron legs.  Throws std::domain_error for
// k0 <= 0 (the IR singularity is handled by cutoffs, never evaluated).
ComplexFourVector soft_current(const ScatteringEvent& ev, const PhotonMode& mode,
                               double alpha = constants::alpha_em);

// Sum over the two transverse polarizations of |J.e^lambda|^2.  Throws
// std::invalid_argument if the mode's basis is not orthonormal-transverse.
double polarization_sum(const ComplexFourVector& j, const PhotonMode& mode);

// |k.J| / (|k||J|); 0 by convention for a vanishing current.
double conservation_residual(const ScatteringEvent& ev, const PhotonMode& mode);

// Componentwise norm of J*(k) - J(-k), where -k negates all four components
// of the photon momentum inside the propagator denominators.
double reality_check(const ScatteringEvent& ev, const PhotonMode& mode);

}  // namespace irdecoh
