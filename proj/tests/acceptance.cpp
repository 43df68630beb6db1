// Acceptance gate: one binary, nine numbered criteria, one PASS/FAIL line
// each.  Exit code is the number of failed criteria.  Every threshold checked
// here is also covered by the per-module doctest suites; this binary is the
// single place where the project-level guarantees are stated together, at the
// shipped reference configuration.

#include "irdecoh/branches.hpp"
#include "irdecoh/config.hpp"
#include "irdecoh/current.hpp"
#include "irdecoh/fock_oracle.hpp"
#include "irdecoh/kinematics.hpp"
#include "irdecoh/parallel.hpp"
#include "irdecoh/radiation.hpp"
#include "irdecoh/restoration.hpp"
#include "irdecoh/rng.hpp"
#include "irdecoh/weak.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace irdecoh;
namespace fs = std::filesystem;

namespace {

constexpr double pi = constants::pi;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<double> scan_points(double hi, double lo, int per_decade) {
    const int n = static_cast<int>(std::lround(std::log10(hi / lo) * per_decade));
    std::vector<double> ks;
    for (int i = 0; i <= n; ++i)
        ks.push_back(hi * std::pow(10.0, -double(i) / per_decade));
    return ks;
}

PhotonQuadrature quad_for(const RunConfig& cfg, const CutoffWindow& w) {
    return PhotonQuadrature::make(w, cfg.quadrature.energy_per_decade,
                                  cfg.quadrature.n_polar, cfg.quadrature.n_azimuth);
}

// --- criterion 1: mean photon number grows as ln(1/k_min) -------------------

Outcome criterion_ir_logarithm(const RunConfig& cfg) {
    const ScatteringEvent ev =
        build_cms_event(cfg.kinematics.sqrt_s, cfg.kinematics.theta,
                        cfg.kinematics.phi, cfg.kinematics.m_e, cfg.kinematics.m_nu);
    const double k_max = cfg.window.k_max;

    std::vector<std::pair<double, double>> scan;
    for (const double k_min : scan_points(cfg.window.scan_k_min_high,
                                          cfg.window.scan_k_min_low,
                                          cfg.window.scan_per_decade)) {
        const CutoffWindow w(k_min, k_max);
        scan.push_back({k_min, mean_photon_number(ev, w, quad_for(cfg, w))});
    }
    const FitResult fit = log_slope(scan);

    // Slope oracle: two endpoints on a 10x energy-refined, independently
    // chosen angular grid.  The continuum slope is exact, so any disagreement
    // is pure discretization error.
    auto refined = [&](double k_min) {
        const CutoffWindow w(k_min, k_max);
        return mean_photon_number(
            ev, w, PhotonQuadrature::make(w, 10 * cfg.quadrature.energy_per_decade, 96, 192));
    };
    const double lo = cfg.window.scan_k_min_low, hi = cfg.window.scan_k_min_high;
    const double oracle_slope = (refined(lo) - refined(hi)) / std::log(hi / lo);
    const double rel = std::abs(fit.slope - oracle_slope) / std::abs(oracle_slope);

    Outcome out;
    out.pass = fit.r_squared > 0.999 && rel <= 0.005;
    out.detail = fmt("n_bar slope %.8g vs refined-quadrature %.8g (rel %.2e <= 5e-3), "
                     "R^2-1 = %.2e (need > 0.999), %zu scan points",
                     fit.slope, oracle_slope, rel, fit.r_squared - 1.0, scan.size());
    return out;
}

// --- criterion 2: vacuum persistence equals exp(-n_bar/2) --------------------

Outcome criterion_persistence_identity(const RunConfig& cfg) {
    const std::vector<std::pair<double, double>> grid = {
        {3.0, 0.7}, {4.0, pi / 3.0}, {6.0, 2.0}, {10.0, pi / 2.0}, {14.0, 1.0}};
    const CutoffWindow w(cfg.window.k_min, cfg.window.k_max);
    const PhotonQuadrature q_pers = quad_for(cfg, w);
    const PhotonQuadrature q_nbar = PhotonQuadrature::make(w, 48, 96, 192);

    double worst = 0.0;
    for (const auto& [rs, th] : grid) {
        const ScatteringEvent ev =
            build_cms_event(rs, th, 0.0, cfg.kinematics.m_e, cfg.kinematics.m_nu);
        const double pers = vacuum_persistence(ev, w, q_pers);
        const double nbar = mean_photon_number(ev, w, q_nbar);
        worst = std::max(worst, std::abs(pers - std::exp(-0.5 * nbar)) / pers);
    }
    Outcome out;
    out.pass = worst < 1e-6;
    out.detail = fmt("|persistence - exp(-n_bar/2)|/persistence worst %.2e over "
                     "5 kinematics (need < 1e-6; n_bar from an independent "
                     "number integral at different resolution)",
                     worst);
    return out;
}

// --- criterion 3: truncated-Fock oracle reproduces the analytic overlap -----

Outcome criterion_fock_oracle(const RunConfig& cfg) {
    const auto& kin = cfg.kinematics;
    const CutoffWindow w(cfg.oracle.k_min, cfg.oracle.k_max);
    const PhotonQuadrature quad = PhotonQuadrature::make(w, 4, 2, 4);
    const double alpha = cfg.decoherence.alpha;

    const ScatteringEvent ev_l =
        build_cms_event(kin.sqrt_s, kin.theta, kin.phi, kin.m_e, kin.m_nu);
    const ScatteringEvent ev_m =
        build_cms_event(kin.sqrt_s, 0.5 * kin.theta, kin.phi, kin.m_e, kin.m_nu);

    // Consistency of the continuous-kernel overlap with the analytic
    // coherent-state overlap over *all* cells of this quadrature.
    const int n_cells =
        static_cast<int>(quad.k0.size() * quad.ang.size()) * 2;
    const ModeAmplitudeSet all_l = discretize_current(ev_l, w, quad, n_cells, alpha);
    const ModeAmplitudeSet all_m = amplitudes_on_cells(ev_m, w, quad, all_l.cells, alpha);
    const std::complex<double> via_kernel = branch_overlap(ev_l, ev_m, w, quad, alpha);
    const std::complex<double> via_cells = coherent_overlap(all_l.alpha, all_m.alpha);
    const double kernel_err = std::abs(via_kernel - via_cells);

    // Fock-space oracle on the leading modes at the configured truncation.
    const ModeAmplitudeSet amps_l =
        discretize_current(ev_l, w, quad, cfg.oracle.modes, alpha);
    const ModeAmplitudeSet amps_m =
        amplitudes_on_cells(ev_m, w, quad, amps_l.cells, alpha);
    const FockStateVector psi_l = displaced_vacuum(amps_l, cfg.oracle.n_tr);
    const FockStateVector psi_m = displaced_vacuum(amps_m, cfg.oracle.n_tr);

    double s2l = 0.0, s2m = 0.0;
    for (const auto& a : amps_l.alpha) s2l += std::norm(a);
    for (const auto& a : amps_m.alpha) s2m += std::norm(a);
    const std::complex<double> oracle =
        state_overlap(psi_m, psi_l) * std::polar(1.0, 0.5 * (s2l - s2m));
    const std::complex<double> analytic =
        coherent_overlap(amps_l.alpha, amps_m.alpha);

    const double mod_err = std::abs(std::abs(oracle) - std::abs(analytic));
    const double phase_err =
        std::abs(std::remainder(std::arg(oracle) - std::arg(analytic), 2.0 * pi));
    const double norm_err =
        std::max(std::abs(psi_l.norm() - 1.0), std::abs(psi_m.norm() - 1.0));

    double poisson = 0.0;
    for (std::size_t j = 0; j < amps_l.alpha.size(); ++j) {
        const double lambda = std::norm(amps_l.alpha[j]);
        const auto dist = psi_l.mode_distribution(static_cast<int>(j));
        double pmf = std::exp(-lambda);
        for (std::size_t n = 0; n < dist.size(); ++n) {
            poisson = std::max(poisson, std::abs(dist[n] - pmf));
            pmf *= lambda / double(n + 1);
        }
    }

    Outcome out;
    out.pass = kernel_err < 1e-10 && mod_err < 1e-6 && phase_err < 1e-6 &&
               poisson < 1e-8 && norm_err < 1e-10;
    out.detail = fmt("modes=%d n_tr=%d: |overlap| err %.2e, phase err %.2e "
                     "(need < 1e-6); poisson %.2e (< 1e-8); norm err %.2e "
                     "(< 1e-10); kernel-vs-cells %.2e (< 1e-10); captured "
                     "fraction %.3f",
                     cfg.oracle.modes, cfg.oracle.n_tr, mod_err, phase_err, poisson,
                     norm_err, kernel_err, amps_l.captured_fraction());
    return out;
}

// --- criterion 4: phase differences diverge logarithmically -----------------

struct PairProbe {
    const char* name;
    double theta_l, theta_m;
};

Outcome criterion_phase_divergence(const RunConfig& cfg) {
    const auto& kin = cfg.kinematics;
    const double k_max = cfg.window.k_max;
    const std::vector<PairProbe> pairs = {
        {"P1", 1.0, 1.0},  // same polar angle, azimuth split 1.2 (below)
        {"P2", 0.6, 1.4},
        {"P3", 0.2, 1.0},
    };
    const std::vector<double> ks = {1e-3, 1e-4, 1e-5, 1e-6, 1e-7};

    std::vector<double> coeffs, openings, spreads, r2s;
    for (std::size_t ip = 0; ip < pairs.size(); ++ip) {
        const auto& p = pairs[ip];
        const double phi_m = (ip == 0) ? 1.2 : 0.0;
        const ScatteringEvent ev_l =
            build_cms_event(kin.sqrt_s, p.theta_l, 0.0, kin.m_e, kin.m_nu);
        const ScatteringEvent ev_m =
            build_cms_event(kin.sqrt_s, p.theta_m, phi_m, kin.m_e, kin.m_nu);

        const auto a = ev_l.p_e_out.spatial();
        const auto b = ev_m.p_e_out.spatial();
        double c = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) /
                   (ev_l.p_e_out.spatial_norm() * ev_m.p_e_out.spatial_norm());
        openings.push_back(std::acos(std::clamp(c, -1.0, 1.0)));

        std::vector<std::pair<double, double>> scan;
        for (const double k : ks) {
            const CutoffWindow w(k, k_max);
            scan.push_back(
                {k, phase_difference(ev_l, ev_m, w, quad_for(cfg, w), cfg.physics.alpha)});
        }
        std::vector<double> inc;
        for (std::size_t i = 1; i < scan.size(); ++i)
            inc.push_back(scan[i].second - scan[i - 1].second);
        const double mean =
            (inc[0] + inc[1] + inc[2] + inc[3]) / 4.0;
        double spread = 0.0;
        for (const double d : inc) spread = std::max(spread, std::abs(d - mean));
        spreads.push_back(std::abs(mean) > 0.0 ? spread / std::abs(mean) : spread);

        const FitResult fit = log_slope(scan);
        coeffs.push_back(fit.slope);
        r2s.push_back(fit.r_squared);
    }

    // Decade increments must be cutoff-independent for the pairs with a
    // nonzero coefficient (P1's coefficient sits at rounding level, so a
    // relative constancy test is meaningless there).
    const bool constant = spreads[1] <= 0.005 && spreads[2] <= 0.005 &&
                          r2s[1] > 0.999 && r2s[2] > 0.999;

    // P2 and P3 share the same opening angle; an opening-angle-only
    // coefficient law would force their coefficients to coincide.
    const double scale = std::max(std::abs(coeffs[1]), std::abs(coeffs[2]));
    const double split = std::abs(coeffs[1] - coeffs[2]) / scale;
    const bool resolved = split <= 0.005 || split >= 0.05;
    const bool phi_only = split <= 0.005;

    std::printf("  pair   theta_l theta_m opening  coeff(ln 1/k_min)  "
                "increment spread\n");
    for (std::size_t i = 0; i < pairs.size(); ++i)
        std::printf("  %-6s %7.3f %7.3f %7.4f  %17.10g  %.2e\n", pairs[i].name,
                    pairs[i].theta_l, pairs[i].theta_m, openings[i], coeffs[i],
                    spreads[i]);

    Outcome out;
    out.pass = constant && resolved;
    out.detail = fmt("decade increments constant to %.2e / %.2e (need <= 5e-3); "
                     "equal-opening pair coefficients differ by %.0f%% -> "
                     "opening-angle-only coefficient law %s",
                     spreads[1], spreads[2], 100.0 * split,
                     phi_only ? "CONFIRMED" : "REFUTED");
    return out;
}

// --- criterion 5: off-diagonal decay matches the distance log-slope ---------

Outcome criterion_decoherence_scaling(const RunConfig& cfg) {
    const auto& kin = cfg.kinematics;
    const double k_max = cfg.decoherence.k_max;
    BranchSetParams params;
    params.m_e_val = kin.m_e;
    params.m_nu_val = kin.m_nu;
    params.alpha = cfg.decoherence.alpha;
    params.g = cfg.physics.g;
    const CutoffWindow full(cfg.window.scan_k_min_low, k_max);
    const auto branches =
        build_branch_set(kin.sqrt_s, {kin.branch_n_polar, kin.branch_n_azimuth},
                         full, cfg.physics.m0_weight, params);
    double sum_c4 = 0.0;
    for (const auto& br : branches) sum_c4 += std::norm(br.c) * std::norm(br.c);

    const auto ks = scan_points(cfg.window.scan_k_min_high, cfg.window.scan_k_min_low,
                                cfg.window.scan_per_decade);
    std::vector<std::pair<double, double>> ln_off;
    std::vector<double> purities;
    int arg_l = -1, arg_m = -1;
    for (const double k : ks) {
        const CutoffWindow w(k, k_max);
        const BranchDensityMatrix rho = reduced_density(branches, w, quad_for(cfg, w));
        purities.push_back(purity(rho));
        ln_off.push_back({k, std::log(max_offdiagonal(rho))});
        if (arg_l < 0) std::tie(arg_l, arg_m) = max_offdiagonal_pair(rho);
    }

    const FitResult fit_rho = log_slope(ln_off);
    const double exponent = -fit_rho.slope;  // |rho_lm| ~ k_min^exponent

    std::vector<std::pair<double, double>> dscan;
    for (const double k : ks) {
        const CutoffWindow w(k, k_max);
        dscan.push_back({k, pair_distance(branches[arg_l].event, branches[arg_m].event,
                                          w, quad_for(cfg, w), params.alpha)});
    }
    const FitResult fit_d = log_slope(dscan);
    const double slope_rel = std::abs(2.0 * exponent - fit_d.slope) / fit_d.slope;

    bool monotone = true;
    for (std::size_t i = 1; i < purities.size(); ++i)
        monotone = monotone && purities[i] < purities[i - 1];
    const double excess = purities.back() - sum_c4;

    Outcome out;
    out.pass = fit_rho.r_squared > 0.999 && exponent > 0.0 && slope_rel <= 0.02 &&
               monotone && excess >= -1e-12 && excess < 1e-4;
    out.detail = fmt("max|rho_lm| ~ k_min^%.6f (R^2-1 = %.1e), 2*exponent vs "
                     "pair-distance slope %.6f: rel %.2e (need <= 2e-2); purity "
                     "monotone %s; purity(k_min=%.0e) - sum|c|^4 = %.2e "
                     "(need < 1e-4)",
                     exponent, fit_rho.r_squared - 1.0, fit_d.slope, slope_rel,
                     monotone ? "yes" : "NO", ks.back(), excess);
    return out;
}

// --- criterion 6: helicity selection and massless isotropy -------------------

Outcome criterion_helicity(const RunConfig& cfg) {
    const double g = cfg.physics.g;
    const double asym0 = helicity_asymmetry(build_cms_event(10.0, 0.5, 0.0, 0.0, 0.0), g);

    // With an exactly massless neutrino the right-handed rate vanishes
    // identically for any electron mass, so the positivity/decay statement is
    // probed with a small neutrino mass alongside the physical electron mass.
    const double asym_me =
        helicity_asymmetry(build_cms_event(10.0, 0.5, 0.0, cfg.kinematics.m_e, 0.0), g);
    const std::vector<double> roots = {4.0, 6.0, 10.0, 14.0, 20.0};
    std::vector<double> probe;
    bool positive = true, decreasing = true;
    for (const double rs : roots) {
        probe.push_back(
            helicity_asymmetry(build_cms_event(rs, 0.5, 0.0, cfg.kinematics.m_e, 0.05), g));
        positive = positive && probe.back() > 0.0;
        if (probe.size() > 1) decreasing = decreasing && probe.back() < probe[probe.size() - 2];
    }

    double rate_min = 0.0, rate_max = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double r =
            differential_rate(build_cms_event(10.0, (i + 0.5) * pi / 12.0, 0.3, 0.0, 0.0), g);
        rate_min = (i == 0) ? r : std::min(rate_min, r);
        rate_max = (i == 0) ? r : std::max(rate_max, r);
    }
    const double aniso = (rate_max - rate_min) / rate_max;

    Outcome out;
    out.pass = std::abs(asym0) <= 1e-12 && std::abs(asym_me) <= 1e-12 && positive &&
               decreasing && aniso <= 1e-10;
    out.detail = fmt("sigma_R/sigma_L massless %.1e (= 0 to 1e-12; unchanged by m_e "
                     "alone: %.1e); m_nu=0.05 probe positive and decreasing "
                     "%.3e -> %.3e over sqrt_s 4..20: %s; massless rate anisotropy "
                     "%.1e (need <= 1e-10)",
                     asym0, asym_me, probe.front(), probe.back(),
                     (positive && decreasing) ? "yes" : "NO", aniso);
    return out;
}

// --- criterion 7: restoration probability is measure-zero -------------------

Outcome criterion_restoration(const RunConfig& cfg) {
    std::vector<RestorationRun> runs;
    double eps02_dev_sigmas = -1.0;
    for (std::size_t i = 0; i < cfg.mc.epsilon.size(); ++i) {
        runs.push_back(restoration_mc(cfg.kinematics.sqrt_s, cfg.mc.epsilon[i],
                                      cfg.mc.n, cfg.mc.seed + i));
        if (cfg.mc.epsilon[i] == 0.2) {
            const double p_exact = 0.5 * (1.0 - std::cos(0.2));
            eps02_dev_sigmas = std::abs(runs.back().p_hat - p_exact) / runs.back().sigma;
        }
    }
    const RestorationFit fit = restoration_extrapolate(runs);

    Outcome out;
    out.pass = std::abs(fit.exponent - 2.0) <= 0.1 && eps02_dev_sigmas >= 0.0 &&
               eps02_dev_sigmas <= 3.0 && fit.consistent_with_zero && fit.p_zero == 0.0;
    out.detail = fmt("acceptance ~ epsilon^%.4f +- %.4f (need 2.0 +- 0.1); "
                     "epsilon=0.2 estimate %.2f sigma from (1-cos eps)/2 "
                     "(need <= 3); extrapolated P(0) = %g, consistent with "
                     "zero: %s; n = %lld per point",
                     fit.exponent, fit.exponent_err, eps02_dev_sigmas, fit.p_zero,
                     fit.consistent_with_zero ? "yes" : "NO",
                     static_cast<long long>(cfg.mc.n));
    return out;
}

// --- criterion 8: current conservation and gauge invariants ------------------

Outcome criterion_invariants(const RunConfig&) {
    const std::uint64_t seed = 2026081501ULL;
    double worst_cons = 0.0, worst_pol = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto u = [&](std::uint64_t j) { return counter_uniform(seed, 16 * i + j); };
        const ScatteringEvent ev =
            build_cms_event(2.2 + 27.8 * u(0), pi * u(1), 2.0 * pi * u(2), 1.0,
                            u(3) < 0.5 ? 0.0 : 0.05);
        const double ct = 2.0 * u(4) - 1.0;
        const double st = std::sqrt(1.0 - ct * ct);
        const double ph = 2.0 * pi * u(5);
        const PhotonMode mode =
            make_mode({st * std::cos(ph), st * std::sin(ph), ct},
                      std::pow(10.0, -6.0 + 5.0 * u(6)));

        worst_cons = std::max(worst_cons, conservation_residual(ev, mode));
        const ComplexFourVector j = soft_current(ev, mode);
        const double trans = polarization_sum(j, mode);
        const double metric = -cmdot(j, j).real();
        worst_pol = std::max(worst_pol, std::abs(trans - metric) /
                                            std::max({trans, std::abs(metric), 1e-300}));
    }
    Outcome out;
    out.pass = worst_cons < 1e-10 && worst_pol < 1e-10;
    out.detail = fmt("1000 random events/modes: k.J residual worst %.2e, "
                     "transverse-vs-metric polarization sum worst %.2e "
                     "(both need < 1e-10)",
                     worst_cons, worst_pol);
    return out;
}

// --- criterion 9: bit-identical outputs across thread counts -----------------

Outcome criterion_determinism() {
    const std::string cli = IRDECOH_CLI_PATH;
    const std::string ref = IRDECOH_REFERENCE_CONFIG;
    const std::vector<std::pair<int, std::string>> variants = {
        {1, "acceptance_out_t1"}, {4, "acceptance_out_t4"}};

    for (const auto& [threads, dir] : variants) {
        fs::remove_all(dir);
        const std::string cmd = "\"" + cli + "\" --config \"" + ref + "\" --out " +
                                dir + " --threads " + std::to_string(threads) +
                                " all > " + dir + ".log 2>&1";
        const int rc = std::system(cmd.c_str());
        if (rc != 0)
            return {false, fmt("CLI run with %d thread(s) exited with status %d "
                               "(see %s.log)",
                               threads, rc, dir.c_str())};
    }

    auto csv_map = [](const std::string& dir) {
        std::map<std::string, std::string> m;
        for (const auto& e : fs::directory_iterator(dir)) {
            if (e.path().extension() != ".csv") continue;
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            m[e.path().filename().string()] = buf.str();
        }
        return m;
    };
    const auto a = csv_map(variants[0].second);
    const auto b = csv_map(variants[1].second);

    if (a.empty() || a.size() != b.size())
        return {false, fmt("csv sets differ: %zu vs %zu files", a.size(), b.size())};
    std::size_t bytes = 0;
    for (const auto& [name, content] : a) {
        const auto it = b.find(name);
        if (it == b.end()) return {false, "missing in t4 run: " + name};
        if (it->second != content) return {false, "byte mismatch in " + name};
        bytes += content.size();
    }
    return {true, fmt("threads {1,4}: %zu csv files bit-identical (%zu bytes)",
                      a.size(), bytes)};
}

}  // namespace

int main() {
    set_thread_count(4);
    RunConfig cfg;
    try {
        cfg = parse_config(IRDECOH_REFERENCE_CONFIG);
    } catch (const std::exception& e) {
        std::printf("cannot load reference configuration: %s\n", e.what());
        return 9;
    }

    struct Entry {
        int id;
        const char* title;
        std::function<Outcome()> run;
        double budget_s;  // 0 = no runtime requirement
    };
    const std::vector<Entry> entries = {
        {1, "IR logarithm", [&] { return criterion_ir_logarithm(cfg); }, 10.0},
        {2, "persistence identity", [&] { return criterion_persistence_identity(cfg); }, 0.0},
        {3, "Fock oracle equivalence", [&] { return criterion_fock_oracle(cfg); }, 60.0},
        {4, "phase divergence", [&] { return criterion_phase_divergence(cfg); }, 0.0},
        {5, "decoherence scaling", [&] { return criterion_decoherence_scaling(cfg); }, 0.0},
        {6, "helicity selection", [&] { return criterion_helicity(cfg); }, 0.0},
        {7, "restoration measure-zero", [&] { return criterion_restoration(cfg); }, 30.0},
        {8, "conservation/gauge invariants", [&] { return criterion_invariants(cfg); }, 0.0},
        {9, "determinism across threads", [&] { return criterion_determinism(); }, 0.0},
    };

    int failures = 0;
    for (const auto& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, fmt("exception: %s", ex.what())};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (e.budget_s > 0.0 && secs >= e.budget_s) {
            o.pass = false;
            o.detail += fmt("; OVER RUNTIME BUDGET %.0f s", e.budget_s);
        }
        std::printf("CRITERION %d: %s — %s — %s [%.1f s]\n", e.id,
                    o.pass ? "PASS" : "FAIL", e.title, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", entries.size() - failures,
                entries.size());
    return failures;
}
