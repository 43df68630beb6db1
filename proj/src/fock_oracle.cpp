#include "irdecoh/fock_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace irdecoh {

namespace {

constexpr int max_modes = 4;
constexpr std::int64_t dense_limit = 1500;

struct Basis {
    int m = 0, n_tr = 0;
    std::vector<std::array<std::uint8_t, max_modes>> occ;
    // Neighbor indices for a_j^+ (up) and a_j (down); -1 when the target
    // occupation leaves the truncated basis.
    std::vector<std::array<std::int32_t, max_modes>> up, down;
};

std::uint32_t pack_key(const std::array<std::uint8_t, max_modes>& n) {
    return static_cast<std::uint32_t>(n[0]) |
           (static_cast<std::uint32_t>(n[1]) << 8) |
           (static_cast<std::uint32_t>(n[2]) << 16) |
           (static_cast<std::uint32_t>(n[3]) << 24);
}

Basis build_basis(int m, int n_tr) {
    Basis b;
    b.m = m;
    b.n_tr = n_tr;
    std::array<std::uint8_t, max_modes> n{};
    // Lexicographic enumeration of all occupations with sum <= n_tr.
    std::function<void(int, int)> rec = [&](int mode, int budget) {
        if (mode == m) {
            b.occ.push_back(n);
            return;
        }
        for (int v = 0; v <= budget; ++v) {
            n[mode] = static_cast<std::uint8_t>(v);
            rec(mode + 1, budget - v);
        }
        n[mode] = 0;
    };
    rec(0, n_tr);

    std::unordered_map<std::uint32_t, std::int32_t> index;
    index.reserve(2 * b.occ.size());
    for (std::size_t s = 0; s < b.occ.size(); ++s)
        index.emplace(pack_key(b.occ[s]), static_cast<std::int32_t>(s));

    b.up.assign(b.occ.size(), {-1, -1, -1, -1});
    b.down.assign(b.occ.size(), {-1, -1, -1, -1});
    for (std::size_t s = 0; s < b.occ.size(); ++s) {
        for (int j = 0; j < m; ++j) {
            auto nn = b.occ[s];
            if (nn[j] > 0) {
                --nn[j];
                b.down[s][j] = index.at(pack_key(nn));
                ++nn[j];
            }
            int total = 0;
            for (int q = 0; q < m; ++q) total += nn[q];
            if (total < n_tr) {
                ++nn[j];
                auto it = index.find(pack_key(nn));
                if (it != index.end()) b.up[s][j] = it->second;
            }
        }
    }
    return b;
}

const Basis& get_basis(int m, int n_tr) {
    static std::map<std::pair<int, int>, Basis> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto [it, inserted] = cache.try_emplace({m, n_tr});
    if (inserted) it->second = build_basis(m, n_tr);
    return it->second;
}

using CVec = std::vector<std::complex<double>>;

// out[s] = <s| sum_j (alpha_j a_j^+ - alpha_j^* a_j) |in>.
void apply_generator(const Basis& b, const CVec& alphas,
                     const std::vector<double>& sqrt_n, const CVec& in, CVec& out) {
    const std::size_t dim = b.occ.size();
    for (std::size_t s = 0; s < dim; ++s) {
        std::complex<double> acc{0.0, 0.0};
        const auto& n = b.occ[s];
        for (int j = 0; j < b.m; ++j) {
            const std::int32_t d = b.down[s][j];
            if (d >= 0) acc += alphas[j] * sqrt_n[n[j]] * in[d];
            const std::int32_t u = b.up[s][j];
            if (u >= 0) acc -= std::conj(alphas[j]) * sqrt_n[n[j] + 1] * in[u];
        }
        out[s] = acc;
    }
}

Eigen::MatrixXcd dense_unitary(const Basis& b, const CVec& alphas) {
    const auto dim = static_cast<Eigen::Index>(b.occ.size());
    std::vector<double> sqrt_n(static_cast<std::size_t>(b.n_tr) + 2);
    for (std::size_t q = 0; q < sqrt_n.size(); ++q) sqrt_n[q] = std::sqrt(double(q));
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        const auto& n = b.occ[static_cast<std::size_t>(s)];
        for (int j = 0; j < b.m; ++j) {
            const std::int32_t d = b.down[static_cast<std::size_t>(s)][j];
            if (d >= 0) g(s, d) += alphas[j] * sqrt_n[n[j]];
            const std::int32_t u = b.up[static_cast<std::size_t>(s)][j];
            if (u >= 0) g(s, u) -= std::conj(alphas[j]) * sqrt_n[n[j] + 1];
        }
    }
    // G is exactly anti-Hermitian on the truncated basis, so H = iG is
    // Hermitian and exp(G) = exp(-iH) is exactly unitary.
    const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * g;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const auto& lam = es.eigenvalues();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        phases(i) = std::polar(1.0, -lam(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::complex<double> mode_projection(const ScatteringEvent& ev,
                                     const PhotonQuadrature& quad,
                                     const ModeCell& cell, double alpha_em) {
    const auto& an = quad.ang[static_cast<std::size_t>(cell.angular_index)];
    PhotonMode mode;
    mode.direction = an.n;
    mode.e1 = an.e1;
    mode.e2 = an.e2;
    mode.k0 = quad.k0[static_cast<std::size_t>(cell.energy_index)];
    const ComplexFourVector j = soft_current(ev, mode, alpha_em);
    const auto& e = (cell.lambda == 0) ? an.e1 : an.e2;
    // J.e for a purely spatial polarization vector under (+,-,-,-).
    return -(j.x * e[0] + j.y * e[1] + j.z * e[2]);
}

double cell_weight(const PhotonQuadrature& quad, const ModeCell& cell) {
    const double k0 = quad.k0[static_cast<std::size_t>(cell.energy_index)];
    return quad.wu[static_cast<std::size_t>(cell.energy_index)] * k0 * k0 *
           quad.ang[static_cast<std::size_t>(cell.angular_index)].w;
}

}  // namespace

double ModeAmplitudeSet::captured_n_bar() const {
    double s = 0.0;
    for (const auto& a : alpha) s += std::norm(a);
    return s;
}

double ModeAmplitudeSet::captured_fraction() const {
    return window_n_bar > 0.0 ? captured_n_bar() / window_n_bar : 0.0;
}

ModeAmplitudeSet discretize_current(const ScatteringEvent& ev,
                                    const CutoffWindow& window,
                                    const PhotonQuadrature& quad, int m_modes,
                                    double alpha) {
    const std::int64_t n_cells =
        2 * static_cast<std::int64_t>(quad.k0.size()) * quad.ang.size();
    if (m_modes < 1 || m_modes > n_cells)
        throw std::domain_error("discretize_current: mode count outside quadrature size");

    std::vector<ModeCell> cells;
    cells.reserve(static_cast<std::size_t>(n_cells));
    for (std::size_t i = 0; i < quad.k0.size(); ++i)
        for (std::size_t a = 0; a < quad.ang.size(); ++a)
            for (int lam = 0; lam < 2; ++lam)
                cells.push_back({static_cast<int>(i), static_cast<int>(a), lam});

    std::vector<double> weight(cells.size());
    std::vector<std::complex<double>> amp(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::complex<double> je = mode_projection(ev, quad, cells[c], alpha);
        amp[c] = std::complex<double>(0.0, 1.0) * je *
                 std::sqrt(cell_weight(quad, cells[c]) / constants::two_pi_cubed);
        weight[c] = std::norm(amp[c]);
    }
    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (weight[a] != weight[b]) return weight[a] > weight[b];
        return a < b;
    });

    ModeAmplitudeSet set;
    set.window_n_bar = 2.0 * v_functional(ev, window, quad, alpha);
    for (int j = 0; j < m_modes; ++j) {
        set.alpha.push_back(amp[order[static_cast<std::size_t>(j)]]);
        set.cells.push_back(cells[order[static_cast<std::size_t>(j)]]);
    }
    return set;
}

ModeAmplitudeSet amplitudes_on_cells(const ScatteringEvent& ev,
                                     const CutoffWindow& window,
                                     const PhotonQuadrature& quad,
                                     const std::vector<ModeCell>& cells,
                                     double alpha) {
    ModeAmplitudeSet set;
    set.cells = cells;
    set.window_n_bar = 2.0 * v_functional(ev, window, quad, alpha);
    for (const auto& cell : cells) {
        const std::complex<double> je = mode_projection(ev, quad, cell, alpha);
        set.alpha.push_back(std::complex<double>(0.0, 1.0) * je *
                            std::sqrt(cell_weight(quad, cell) / constants::two_pi_cubed));
    }
    return set;
}

double FockStateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

double FockStateVector::leakage() const {
    const Basis& b = get_basis(n_modes, n_tr);
    double p = 0.0;
    for (std::size_t s = 0; s < b.occ.size(); ++s) {
        int total = 0;
        for (int j = 0; j < n_modes; ++j) total += b.occ[s][j];
        if (total == n_tr) p += std::norm(amp[s]);
    }
    return p;
}

std::vector<double> FockStateVector::mode_distribution(int j) const {
    if (j < 0 || j >= n_modes)
        throw std::domain_error("mode_distribution: mode index out of range");
    const Basis& b = get_basis(n_modes, n_tr);
    std::vector<double> p(static_cast<std::size_t>(n_tr) + 1, 0.0);
    for (std::size_t s = 0; s < b.occ.size(); ++s)
        p[b.occ[s][j]] += std::norm(amp[s]);
    return p;
}

double FockStateVector::mean_occupation(int j) const {
    const auto p = mode_distribution(j);
    double m = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) m += static_cast<double>(n) * p[n];
    return m;
}

std::int64_t fock_basis_size(int n_modes, int n_tr) {
    // C(n_tr + n_modes, n_modes)
    std::int64_t r = 1;
    for (int i = 1; i <= n_modes; ++i)
        r = r * (n_tr + i) / i;
    return r;
}

FockStateVector vacuum_state(int n_modes, int n_tr) {
    if (n_modes < 1 || n_modes > max_modes)
        throw std::domain_error("vacuum_state: supports 1..4 modes");
    if (n_tr < 2) throw std::domain_error("vacuum_state: N_tr must be >= 2");
    const Basis& b = get_basis(n_modes, n_tr);
    FockStateVector psi;
    psi.n_modes = n_modes;
    psi.n_tr = n_tr;
    psi.amp.assign(b.occ.size(), {0.0, 0.0});
    psi.amp[0] = {1.0, 0.0};
    return psi;
}

std::vector<std::array<int, 4>> basis_occupations(int n_modes, int n_tr) {
    if (n_modes < 1 || n_modes > max_modes)
        throw std::domain_error("basis_occupations: supports 1..4 modes");
    if (n_tr < 2) throw std::domain_error("basis_occupations: N_tr must be >= 2");
    const Basis& b = get_basis(n_modes, n_tr);
    std::vector<std::array<int, 4>> out(b.occ.size(), {0, 0, 0, 0});
    for (std::size_t s = 0; s < b.occ.size(); ++s)
        for (int j = 0; j < n_modes; ++j) out[s][j] = b.occ[s][j];
    return out;
}

FockStateVector apply_displacement(const ModeAmplitudeSet& amps,
                                   const FockStateVector& in) {
    const int m = static_cast<int>(amps.alpha.size());
    if (m < 1 || m > max_modes)
        throw std::domain_error("apply_displacement: supports 1..4 modes");
    const int n_tr = in.n_tr;
    if (n_tr < 2) throw std::domain_error("apply_displacement: N_tr must be >= 2");
    if (in.n_modes != m)
        throw std::invalid_argument("apply_displacement: state/amplitude mode counts differ");

    const Basis& b = get_basis(m, n_tr);
    const std::size_t dim = b.occ.size();
    if (in.amp.size() != dim)
        throw std::invalid_argument("apply_displacement: state dimension mismatch");
    FockStateVector psi;
    psi.n_modes = m;
    psi.n_tr = n_tr;
    psi.amp.assign(dim, {0.0, 0.0});

    if (static_cast<std::int64_t>(dim) <= dense_limit) {
        const Eigen::MatrixXcd u = dense_unitary(b, amps.alpha);
        Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
        for (std::size_t s = 0; s < dim; ++s)
            v(static_cast<Eigen::Index>(s)) = in.amp[s];
        const Eigen::VectorXcd w = u * v;
        for (std::size_t s = 0; s < dim; ++s)
            psi.amp[s] = w(static_cast<Eigen::Index>(s));
    } else {
        std::vector<double> sqrt_n(static_cast<std::size_t>(n_tr) + 2);
        for (std::size_t q = 0; q < sqrt_n.size(); ++q)
            sqrt_n[q] = std::sqrt(static_cast<double>(q));
        double abs_sum = 0.0;
        for (const auto& a : amps.alpha) abs_sum += std::abs(a);
        const double bound = 2.0 * abs_sum * std::sqrt(static_cast<double>(n_tr) + 1.0);
        int scale_pow = 0;
        while ((bound / std::pow(2.0, scale_pow)) > 0.25 && scale_pow < 40) ++scale_pow;
        const double inv = std::pow(0.5, scale_pow);
        CVec scaled(amps.alpha.size());
        for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] = inv * amps.alpha[j];

        psi.amp = in.amp;
        CVec term(dim), next(dim);
        const long long reps = 1LL << scale_pow;
        for (long long rep = 0; rep < reps; ++rep) {
            term = psi.amp;
            double vnorm2 = 0.0;
            for (const auto& a : psi.amp) vnorm2 += std::norm(a);
            for (int k = 1; k <= 60; ++k) {
                apply_generator(b, scaled, sqrt_n, term, next);
                const double f = 1.0 / k;
                double tnorm2 = 0.0;
                for (std::size_t s = 0; s < dim; ++s) {
                    term[s] = f * next[s];
                    psi.amp[s] += term[s];
                    tnorm2 += std::norm(term[s]);
                }
                if (tnorm2 < 1e-36 * vnorm2) break;
            }
        }
    }

    const double leak = psi.leakage();
    if (leak > 1e-8) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "apply_displacement: truncation leakage %.3e exceeds 1e-8", leak);
        throw std::runtime_error(msg);
    }
    return psi;
}

FockStateVector displaced_vacuum(const ModeAmplitudeSet& amps, int n_tr) {
    const int m = static_cast<int>(amps.alpha.size());
    if (m < 1 || m > max_modes)
        throw std::domain_error("displaced_vacuum: supports 1..4 modes");
    return apply_displacement(amps, vacuum_state(m, n_tr));
}

std::complex<double> state_overlap(const FockStateVector& a, const FockStateVector& b) {
    if (a.n_modes != b.n_modes || a.n_tr != b.n_tr || a.amp.size() != b.amp.size())
        throw std::invalid_argument("state_overlap: mode layouts differ");
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.amp.size(); ++i)
        s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

double bogoliubov_residual(const ModeAmplitudeSet& amps, int n_tr) {
    const int m = static_cast<int>(amps.alpha.size());
    if (m < 1 || m > max_modes)
        throw std::domain_error("bogoliubov_residual: supports 1..4 modes");
    const Basis& b = get_basis(m, n_tr);
    const auto dim = static_cast<Eigen::Index>(b.occ.size());
    if (dim > dense_limit)
        throw std::domain_error("bogoliubov_residual: basis too large for the dense check");

    std::vector<double> sqrt_n(static_cast<std::size_t>(n_tr) + 2);
    for (std::size_t q = 0; q < sqrt_n.size(); ++q) sqrt_n[q] = std::sqrt(double(q));
    const Eigen::MatrixXcd u = dense_unitary(b, amps.alpha);

    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
        Eigen::MatrixXcd aj = Eigen::MatrixXcd::Zero(dim, dim);
        for (Eigen::Index s = 0; s < dim; ++s) {
            const std::int32_t up = b.up[static_cast<std::size_t>(s)][j];
            if (up >= 0)
                aj(s, up) = sqrt_n[b.occ[static_cast<std::size_t>(s)][j] + 1];
        }
        Eigen::MatrixXcd r = u.adjoint() * aj * u - aj;
        r.diagonal().array() -= amps.alpha[static_cast<std::size_t>(j)];
        for (Eigen::Index col = 0; col < dim; ++col) {
            int total = 0;
            for (int q = 0; q < m; ++q)
                total += b.occ[static_cast<std::size_t>(col)][q];
            if (2 * total <= n_tr)
                worst = std::max(worst, r.col(col).norm());
        }
    }
    return worst;
}

}  // namespace irdecoh
