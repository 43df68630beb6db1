#pragma once

#include "irdecoh/constants.hpp"
#include "irdecoh/kinematics.hpp"
#include "irdecoh/radiation.hpp"

#include <Eigen/Core>

#include <complex>
#include <utility>
#include <vector>

namespace irdecoh {

// C.m.s. angular grid labelling the scattering branches: Gauss-Legendre in
// cos(theta) times a uniform azimuth ring.
struct AngularGrid {
    int n_polar = 16;
    int n_azimuth = 8;
};

// One term of the entangled final state: a definite outgoing pair with its
// amplitude and the radiation descriptor (window + coupling of its soft
// current). Label 0 is the forward/no-scatter branch with vacuum radiation.
struct CoherentBranch {
    int label;
    ScatteringEvent event;
    std::complex<double> c;
    CutoffWindow window;
    double alpha;
};

struct BranchDensityMatrix {
    Eigen::MatrixXcd rho;
    double k_min = 0.0;
    double k_max = 0.0;
};

struct BranchSetParams {
    double m_e_val = 1.0;
    double m_nu_val = 0.0;
    double alpha = constants::alpha_em;
    double g = constants::g_fermi;
};

// Discretize the branch ensemble: c_l = M_w(e'_l, nu'_l) * sqrt(w_l),
// normalized so that sum |c_l|^2 = 1 including the forward branch
// |c_0|^2 = m0_weight.
std::vector<CoherentBranch> build_branch_set(double sqrt_s, const AngularGrid& grid,
                                             const CutoffWindow& window,
                                             double m0_weight,
                                             const BranchSetParams& params = {});

// rho_lm = c_l c_m^* <gamma^m|gamma^l>, radiation traced out with the
// coherent-overlap kernel on the given quadrature.
BranchDensityMatrix reduced_density(const std::vector<CoherentBranch>& branches,
                                    const CutoffWindow& window,
                                    const PhotonQuadrature& quad);

double purity(const BranchDensityMatrix& rho);

double max_offdiagonal(const BranchDensityMatrix& rho);

std::pair<int, int> max_offdiagonal_pair(const BranchDensityMatrix& rho);

double min_eigenvalue(const BranchDensityMatrix& rho);

// sup over pairs of 2 |c_l||c_m| |<gamma^m|gamma^l>| * observable_norm: upper
// bound on any bounded observable's interference term between branches.
double interference_bound(const std::vector<CoherentBranch>& branches,
                          const CutoffWindow& window, double observable_norm);

}  // namespace irdecoh
