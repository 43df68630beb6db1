#include "irdecoh/branches.hpp"

#include "irdecoh/parallel.hpp"
#include "irdecoh/weak.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace irdecoh {

namespace {

void check_branch_set(const std::vector<CoherentBranch>& branches) {
    if (branches.empty())
        throw std::invalid_argument("branch set is empty");
    const auto& ref = branches.front();
    for (const auto& br : branches) {
        const FourVector de = br.event.p_e_in - ref.event.p_e_in;
        const FourVector dn = br.event.p_nu_in - ref.event.p_nu_in;
        if (std::max(de.spatial_norm() + std::abs(de.t),
                     dn.spatial_norm() + std::abs(dn.t)) > 1e-10)
            throw std::invalid_argument("branches do not share incoming legs");
        if (br.alpha != ref.alpha)
            throw std::invalid_argument("branches carry different radiation couplings");
    }
}

// Per-branch angular profile of the eikonal current: for the factorized
// measure, J.e^lambda at (k0, n) = i e R_lambda(n) / k0 with R independent of
// k0, so every energy integral reduces to the shared log factor sum_i wu[i].
// Row l of the returned matrix holds R_lambda(a) * sqrt(w_a) over
// (angular node a, polarization lambda).
Eigen::MatrixXd angular_profiles(const std::vector<CoherentBranch>& branches,
                                 const PhotonQuadrature& quad) {
    const auto nb = static_cast<Eigen::Index>(branches.size());
    const auto na = static_cast<Eigen::Index>(quad.ang.size());
    Eigen::MatrixXd profile(nb, 2 * na);
    parallel_for(branches.size(), [&](std::size_t l) {
        const ScatteringEvent& ev = branches[l].event;
        const double ein = ev.p_e_in.t;
        const double eout = ev.p_e_out.t;
        for (Eigen::Index a = 0; a < na; ++a) {
            const auto& an = quad.ang[static_cast<std::size_t>(a)];
            const double kin = ein - (ev.p_e_in.x * an.n[0] + ev.p_e_in.y * an.n[1] +
                                      ev.p_e_in.z * an.n[2]);
            const double kout = eout - (ev.p_e_out.x * an.n[0] +
                                        ev.p_e_out.y * an.n[1] +
                                        ev.p_e_out.z * an.n[2]);
            const double sw = std::sqrt(an.w);
            for (int lam = 0; lam < 2; ++lam) {
                const auto& e = (lam == 0) ? an.e1 : an.e2;
                const double pe_in = ev.p_e_in.x * e[0] + ev.p_e_in.y * e[1] +
                                     ev.p_e_in.z * e[2];
                const double pe_out = ev.p_e_out.x * e[0] + ev.p_e_out.y * e[1] +
                                      ev.p_e_out.z * e[2];
                profile(static_cast<Eigen::Index>(l), 2 * a + lam) =
                    (pe_in / kin - pe_out / kout) * sw;
            }
        }
    });
    return profile;
}

}  // namespace

std::vector<CoherentBranch> build_branch_set(double sqrt_s, const AngularGrid& grid,
                                             const CutoffWindow& window,
                                             double m0_weight,
                                             const BranchSetParams& params) {
    if (grid.n_polar < 1 || grid.n_azimuth < 1)
        throw std::domain_error("build_branch_set: empty angular grid");
    if (!(m0_weight >= 0.0 && m0_weight < 1.0))
        throw std::domain_error("build_branch_set: M0_weight must lie in [0, 1)");

    std::vector<double> cx, cw;
    gauss_legendre(grid.n_polar, cx, cw);

    std::vector<CoherentBranch> branches;
    branches.reserve(static_cast<std::size_t>(grid.n_polar) * grid.n_azimuth + 1);
    branches.push_back({0,
                        build_cms_event(sqrt_s, 0.0, 0.0, params.m_e_val,
                                        params.m_nu_val),
                        {std::sqrt(m0_weight), 0.0},
                        window,
                        params.alpha});

    double scatter_norm = 0.0;
    int label = 1;
    for (int i = 0; i < grid.n_polar; ++i) {
        const double theta = std::acos(cx[static_cast<std::size_t>(i)]);
        const double w_solid =
            cw[static_cast<std::size_t>(i)] * (2.0 * constants::pi / grid.n_azimuth);
        for (int j = 0; j < grid.n_azimuth; ++j) {
            const double phi = 2.0 * constants::pi * j / grid.n_azimuth;
            ScatteringEvent ev =
                build_cms_event(sqrt_s, theta, phi, params.m_e_val, params.m_nu_val);
            const WeakAmplitude mw = weak_amplitude(ev, HelicityConfig{}, params.g);
            const std::complex<double> c = mw.value * std::sqrt(w_solid);
            scatter_norm += std::norm(c);
            branches.push_back({label++, ev, c, window, params.alpha});
        }
    }
    if (scatter_norm <= 0.0)
        throw std::domain_error("build_branch_set: scattering amplitudes vanish");

    const double rescale = std::sqrt((1.0 - m0_weight) / scatter_norm);
    for (std::size_t l = 1; l < branches.size(); ++l) branches[l].c *= rescale;
    return branches;
}

BranchDensityMatrix reduced_density(const std::vector<CoherentBranch>& branches,
                                    const CutoffWindow& window,
                                    const PhotonQuadrature& quad) {
    check_branch_set(branches);
    if (std::abs(quad.k_min - window.k_min) > 1e-9 * window.k_min ||
        std::abs(quad.k_max - window.k_max) > 1e-9 * window.k_max)
        throw std::invalid_argument("reduced_density: quadrature window mismatch");

    const double alpha = branches.front().alpha;
    const double e2 = 4.0 * constants::pi * alpha;
    double log_factor = 0.0;
    for (const double w : quad.wu) log_factor += w;
    const double kappa = e2 * log_factor / constants::two_pi_cubed;

    const Eigen::MatrixXd profile = angular_profiles(branches, quad);
    const Eigen::VectorXd norms = profile.rowwise().squaredNorm();
    const Eigen::MatrixXd gram = profile * profile.transpose();

    const auto nb = static_cast<Eigen::Index>(branches.size());
    BranchDensityMatrix dm;
    dm.k_min = window.k_min;
    dm.k_max = window.k_max;
    dm.rho.resize(nb, nb);
    for (Eigen::Index l = 0; l < nb; ++l) {
        dm.rho(l, l) = std::norm(branches[static_cast<std::size_t>(l)].c);
        for (Eigen::Index m = l + 1; m < nb; ++m) {
            const double d_lm =
                kappa * std::max(0.0, norms(l) + norms(m) - 2.0 * gram(l, m));
            const double delta_lm = 0.5 * kappa * (norms(l) - norms(m));
            const std::complex<double> overlap =
                std::polar(std::exp(-0.5 * d_lm), delta_lm);
            dm.rho(l, m) = branches[static_cast<std::size_t>(l)].c *
                           std::conj(branches[static_cast<std::size_t>(m)].c) * overlap;
            dm.rho(m, l) = std::conj(dm.rho(l, m));
        }
    }
    return dm;
}

double purity(const BranchDensityMatrix& rho) { return rho.rho.squaredNorm(); }

double max_offdiagonal(const BranchDensityMatrix& rho) {
    const auto [l, m] = max_offdiagonal_pair(rho);
    if (l < 0) return 0.0;
    return std::abs(rho.rho(l, m));
}

std::pair<int, int> max_offdiagonal_pair(const BranchDensityMatrix& rho) {
    std::pair<int, int> best{-1, -1};
    double top = -1.0;
    for (Eigen::Index l = 0; l < rho.rho.rows(); ++l)
        for (Eigen::Index m = l + 1; m < rho.rho.cols(); ++m)
            if (std::abs(rho.rho(l, m)) > top) {
                top = std::abs(rho.rho(l, m));
                best = {static_cast<int>(l), static_cast<int>(m)};
            }
    return best;
}

double min_eigenvalue(const BranchDensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.rho,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double interference_bound(const std::vector<CoherentBranch>& branches,
                          const CutoffWindow& window, double observable_norm) {
    check_branch_set(branches);
    if (branches.size() == 1 || observable_norm == 0.0) return 0.0;

    const PhotonQuadrature quad = PhotonQuadrature::make(window);
    const double alpha = branches.front().alpha;
    const double e2 = 4.0 * constants::pi * alpha;
    double log_factor = 0.0;
    for (const double w : quad.wu) log_factor += w;
    const double kappa = e2 * log_factor / constants::two_pi_cubed;

    const Eigen::MatrixXd profile = angular_profiles(branches, quad);
    const Eigen::VectorXd norms = profile.rowwise().squaredNorm();
    const Eigen::MatrixXd gram = profile * profile.transpose();

    double bound = 0.0;
    const auto nb = static_cast<Eigen::Index>(branches.size());
    for (Eigen::Index l = 0; l < nb; ++l)
        for (Eigen::Index m = l + 1; m < nb; ++m) {
            const double d_lm =
                kappa * std::max(0.0, norms(l) + norms(m) - 2.0 * gram(l, m));
            const double term = 2.0 *
                                std::abs(branches[static_cast<std::size_t>(l)].c) *
                                std::abs(branches[static_cast<std::size_t>(m)].c) *
                                std::exp(-0.5 * d_lm);
            bound = std::max(bound, term);
        }
    return bound * observable_norm;
}

}  // namespace irdecoh
