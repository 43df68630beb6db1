#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "irdecoh/radiation.hpp"

// Brute-force verification kernel: a truncated multimode Fock space on which
// the displacement generator sum_j (alpha_j a_j^+ - alpha_j^* a_j) is
// exponentiated exactly (dense eigendecomposition for small bases, Taylor
// scaling-and-squaring applied to the state otherwise).  The truncated a and
// a^+ stay mutual adjoints, so the exponential is exactly unitary on the
// truncated space and the norm is conserved to rounding.

namespace irdecoh {

// One discretized photon mode: a (energy node, angular node, polarization)
// cell of a PhotonQuadrature.
struct ModeCell {
    int energy_index = 0;
    int angular_index = 0;
    int lambda = 0;  // 0 or 1
};

struct ModeAmplitudeSet {
    std::vector<std::complex<double>> alpha;
    std::vector<ModeCell> cells;   // quadrature cell backing each mode
    double window_n_bar = 0.0;     // full quadrature N-bar on the window

    double captured_n_bar() const;           // sum |alpha_j|^2
    double captured_fraction() const;        // captured / windowed N-bar
};

// The M largest-|alpha| cells of the quadrature, with
// alpha_j = i (J.e^lambda)(k_j) sqrt(w_j / (2 pi)^3); the normalization is
// fixed so that sum_j |alpha_j|^2 converges to N-bar and the displaced-vacuum
// overlap reproduces vacuum_persistence.
ModeAmplitudeSet discretize_current(const ScatteringEvent& ev,
                                    const CutoffWindow& window,
                                    const PhotonQuadrature& quad, int m_modes,
                                    double alpha = constants::alpha_em);

// Amplitudes of a (possibly different) event's current on a fixed cell list,
// so two branches can be compared mode by mode.
ModeAmplitudeSet amplitudes_on_cells(const ScatteringEvent& ev,
                                     const CutoffWindow& window,
                                     const PhotonQuadrature& quad,
                                     const std::vector<ModeCell>& cells,
                                     double alpha = constants::alpha_em);

// Occupation-basis state over M modes with per-mode levels 0..N_tr and the
// total occupation capped at N_tr (sparse occupation filtering); basis states
// are enumerated in a fixed lexicographic order.
struct FockStateVector {
    int n_modes = 0;
    int n_tr = 0;
    std::vector<std::complex<double>> amp;

    double norm() const;
    // Probability of the saturated shell sum_j n_j = N_tr (upper bound on the
    // per-mode-cap occupancy).
    double leakage() const;
    // Marginal occupation distribution P(n_j = n) of one mode.
    std::vector<double> mode_distribution(int j) const;
    double mean_occupation(int j) const;
};

// |0> in the truncated occupation basis.
FockStateVector vacuum_state(int n_modes, int n_tr);

// Occupation tuples (n_1..n_M, unused trailing entries zero) in the exact
// enumeration order used by FockStateVector::amp.
std::vector<std::array<int, 4>> basis_occupations(int n_modes, int n_tr);

// exp(sum_j alpha_j a_j^+ - alpha_j^* a_j) applied to an arbitrary state of
// matching layout.  Throws std::domain_error for more than 4 modes or
// N_tr < 2, and std::runtime_error (with the measured value) if the
// truncation leakage of the result exceeds 1e-8.
FockStateVector apply_displacement(const ModeAmplitudeSet& amps,
                                   const FockStateVector& in);

// apply_displacement on |0>.
FockStateVector displaced_vacuum(const ModeAmplitudeSet& amps, int n_tr);

// <a|b> on identical layouts; layout mismatch is an error.
std::complex<double> state_overlap(const FockStateVector& a, const FockStateVector& b);

// Max over modes and low-occupation basis columns (sum n <= N_tr / 2) of
// ||(D^+ a_j D - a_j - alpha_j) |n>||.  Dense-only by design; throws
// std::domain_error when the truncated basis exceeds the dense limit.
double bogoliubov_residual(const ModeAmplitudeSet& amps, int n_tr);

// Number of basis states for M modes with total occupation <= N_tr.
std::int64_t fock_basis_size(int n_modes, int n_tr);

}  // namespace irdecoh
