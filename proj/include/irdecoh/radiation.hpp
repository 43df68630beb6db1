#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "irdecoh/current.hpp"
#include "irdecoh/kinematics.hpp"

// Coherent-state functionals of the soft radiation field at finite IR/UV
// cutoff: V(J), mean photon number, energy spectrum, vacuum persistence,
// branch overlaps and their divergent phase differences, plus scaling-law
// extraction.  All integrals use the measure dk~ = d^3k / k0.

namespace irdecoh {

struct CutoffWindow {
    double k_min = 0.0;
    double k_max = 0.0;

    CutoffWindow(double k_min_, double k_max_);
    double log_ratio() const;  // ln(k_max / k_min)
};

// Discretized photon-momentum measure: composite Gauss-Legendre panels in
// ln(k0) crossed with a Gauss-Legendre polar x uniform azimuth sphere grid.
struct PhotonQuadrature {
    struct AngularNode {
        std::array<double, 3> n;   // unit direction
        std::array<double, 3> e1;  // transverse basis
        std::array<double, 3> e2;
        double w;                  // solid-angle weight
    };

    std::vector<double> k0;   // energy nodes
    std::vector<double> wu;   // d(ln k0) weights
    std::vector<AngularNode> ang;
    double k_min = 0.0, k_max = 0.0;
    int energy_per_decade = 0, n_polar = 0, n_azimuth = 0;

    static PhotonQuadrature make(const CutoffWindow& window,
                                 int energy_per_decade = 64, int n_polar = 64,
                                 int n_azimuth = 128);

    // sum_i sum_a wu[i] k0[i]^2 ang[a].w f(i,a) approximates the dk~ integral.
    std::size_t nodes() const { return k0.size() * ang.size(); }
};

// Gauss-Legendre nodes/weights on [-1, 1], used by several modules.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

struct SpectrumBin {
    double k_lo = 0.0, k_hi = 0.0, dn = 0.0;
};

struct RadiationReport {
    double v = 0.0;
    double n_bar = 0.0;
    double vacuum_persistence = 1.0;
    double radiated_energy = 0.0;
    double brf_ratio = 0.0;       // radiated energy / |p - p'|
    bool brf_warning = false;     // ratio > 0.1: classical-current regime strained
    std::vector<SpectrumBin> spectrum;
};

// V(J) = 1/(2 (2 pi)^3) * Int dk~ sum_lambda |J.e^lambda|^2 over the window.
double v_functional(const ScatteringEvent& ev, const CutoffWindow& window,
                    const PhotonQuadrature& quad, double alpha = constants::alpha_em);

// Mean radiated photon number, integrated directly from the number density
// (1/(2 pi)^3) sum_lambda |J.e^lambda|^2 through the public current API; a
// code path independent of v_functional.  Equals 2 V(J) analytically.
double mean_photon_number(const ScatteringEvent& ev, const CutoffWindow& window,
                          const PhotonQuadrature& quad,
                          double alpha = constants::alpha_em);

// Per-bin photon numbers on a geometric energy binning of the window.
std::vector<SpectrumBin> energy_spectrum(const ScatteringEvent& ev,
                                         const CutoffWindow& window,
                                         const PhotonQuadrature& quad, int n_bins,
                                         double alpha = constants::alpha_em);

// exp(-V(J)): amplitude modulus for radiating nothing.
double vacuum_persistence(const ScatteringEvent& ev, const CutoffWindow& window,
                          const PhotonQuadrature& quad,
                          double alpha = constants::alpha_em);

// Overlap of the radiation coherent states of two branches sharing incoming
// legs: <gamma_m | gamma_l> = exp(-D_lm / 2 + i (delta_lm + Delta_lm)) with
//   D_lm     = 1/(2 pi)^3 Int dk~ sum_lambda |(J_l - J_m).e^lambda|^2,
//   delta_lm = V(J_l) - V(J_m)   (each branch carries a prefactor e^{i V}),
//   Delta_lm = 1/(2 pi)^3 Int dk~ sum_lambda Im[(J_l.e)(J_m.e)*],
// normalized so that the self-overlap is 1 and the overlap against the
// forward (vacuum-radiation) branch has modulus exp(-V(J_l)).  Delta_lm is
// computed, not assumed; it vanishes identically for the eikonal current.
std::complex<double> branch_overlap(const ScatteringEvent& ev_l,
                                    const ScatteringEvent& ev_m,
                                    const CutoffWindow& window,
                                    const PhotonQuadrature& quad,
                                    double alpha = constants::alpha_em);

// Pair distance D_lm alone (the log of the overlap modulus, times -2).
double pair_distance(const ScatteringEvent& ev_l, const ScatteringEvent& ev_m,
                     const CutoffWindow& window, const PhotonQuadrature& quad,
                     double alpha = constants::alpha_em);

// delta_lm = V(J_l) - V(J_m) at the finite window.
double phase_difference(const ScatteringEvent& ev_l, const ScatteringEvent& ev_m,
                        const CutoffWindow& window, const PhotonQuadrature& quad,
                        double alpha = constants::alpha_em);

// Closed form of the coherent-state overlap on discrete mode amplitudes,
// including each branch's exp(i sum_j |alpha_j|^2 / 2) prefactor (the module's
// fixed phase convention).  This is the same formula branch_overlap realizes
// by quadrature, restated for a finite amplitude list.
std::complex<double> coherent_overlap(const std::vector<std::complex<double>>& a,
                                      const std::vector<std::complex<double>>& b);

// Least-squares fit of value against ln(1/k_min) for a scan; slope is the
// logarithmic divergence coefficient.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double max_residual = 0.0;
    int n = 0;
};

FitResult log_slope(const std::vector<std::pair<double, double>>& scan);

// Radiated-energy estimate over |p - p'| (back-reaction validity measure).
double brf_ratio(const ScatteringEvent& ev, const CutoffWindow& window,
                 const PhotonQuadrature& quad, double alpha = constants::alpha_em);

RadiationReport radiation_report(const ScatteringEvent& ev, const CutoffWindow& window,
                                 const PhotonQuadrature& quad, int spectrum_bins = 10,
                                 double alpha = constants::alpha_em);

}  // namespace irdecoh
