#include "irdecoh/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "irdecoh/parallel.hpp"

namespace irdecoh {

namespace {

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void validate_quad(const CutoffWindow& window, const PhotonQuadrature& quad) {
    const double tol = 1e-9;
    if (std::abs(quad.k_min - window.k_min) > tol * window.k_min ||
        std::abs(quad.k_max - window.k_max) > tol * window.k_max)
        throw std::invalid_argument("photon quadrature built for a different window");
}

// Per-angular-node projections of one electron leg pair onto the mode frame:
// p.k = k0 * (E - p.n), and the transverse components entering J.e^lambda.
struct LegProjection {
    double pa, pb;          // (p.k)/k0 and (p'.k)/k0
    double pe1, pe2;        // incoming spatial projections on e1, e2
    double pp1, pp2;        // outgoing projections
};

LegProjection project_leg(const ScatteringEvent& ev,
                          const PhotonQuadrature::AngularNode& an) {
    LegProjection lp;
    const auto pi = ev.p_e_in.spatial();
    const auto po = ev.p_e_out.spatial();
    lp.pa = ev.p_e_in.t - dot3(pi, an.n);
    lp.pb = ev.p_e_out.t - dot3(po, an.n);
    lp.pe1 = dot3(pi, an.e1);
    lp.pe2 = dot3(pi, an.e2);
    lp.pp1 = dot3(po, an.e1);
    lp.pp2 = dot3(po, an.e2);
    return lp;
}

void validate_shared_incoming(const ScatteringEvent& l, const ScatteringEvent& m) {
    const double d = (l.p_e_in - m.p_e_in).spatial_norm() +
                     std::abs(l.p_e_in.t - m.p_e_in.t) +
                     (l.p_nu_in - m.p_nu_in).spatial_norm() +
                     std::abs(l.p_nu_in.t - m.p_nu_in.t);
    if (d > 1e-10)
        throw std::invalid_argument("branch pair does not share incoming legs");
}

struct PairIntegrals {
    double d = 0.0;       // |(J_l - J_m).e|^2 measure, 1/(2 pi)^3 normalized
    double v_l = 0.0;     // V(J_l)
    double v_m = 0.0;     // V(J_m)
    double cross_im = 0.0;  // Im part of the mode-by-mode cross term
};

PairIntegrals pair_integrals(const ScatteringEvent& ev_l, const ScatteringEvent& ev_m,
                             const CutoffWindow& window, const PhotonQuadrature& quad,
                             double alpha) {
    validate_quad(window, quad);
    validate_shared_incoming(ev_l, ev_m);
    const double e2 = 4.0 * constants::pi * alpha;
    const std::complex<double> ie{0.0, std::sqrt(e2)};
    const std::size_t na = quad.ang.size();
    std::vector<PairIntegrals> slot(na);
    parallel_for(na, [&](std::size_t a) {
        const auto& an = quad.ang[a];
        const LegProjection ll = project_leg(ev_l, an);
        const LegProjection lm = project_leg(ev_m, an);
        double acc_d = 0.0, acc_vl = 0.0, acc_vm = 0.0, acc_im = 0.0;
        for (std::size_t i = 0; i < quad.k0.size(); ++i) {
            const double k0 = quad.k0[i];
            const double w = quad.wu[i] * k0 * k0;
            const double i0 = 1.0 / (k0 * ll.pa);
            const double il = 1.0 / (k0 * ll.pb);
            const double im = 1.0 / (k0 * lm.pb);
            const double rl1 = ll.pe1 * i0 - ll.pp1 * il;
            const double rl2 = ll.pe2 * i0 - ll.pp2 * il;
            const double rm1 = lm.pe1 * i0 - lm.pp1 * im;
            const double rm2 = lm.pe2 * i0 - lm.pp2 * im;
            const double d1 = rl1 - rm1, d2 = rl2 - rm2;
            acc_d += w * (d1 * d1 + d2 * d2);
            acc_vl += w * (rl1 * rl1 + rl2 * rl2);
            acc_vm += w * (rm1 * rm1 + rm2 * rm2);
            const std::complex<double> c1 = (ie * rl1) * std::conj(ie * rm1);
            const std::complex<double> c2 = (ie * rl2) * std::conj(ie * rm2);
            acc_im += w * (c1.imag() + c2.imag());
        }
        slot[a].d = an.w * acc_d;
        slot[a].v_l = an.w * acc_vl;
        slot[a].v_m = an.w * acc_vm;
        slot[a].cross_im = an.w * acc_im;
    });
    PairIntegrals out;
    for (const auto& s : slot) {
        out.d += s.d;
        out.v_l += s.v_l;
        out.v_m += s.v_m;
        out.cross_im += s.cross_im;
    }
    out.d *= e2 / constants::two_pi_cubed;
    out.v_l *= e2 / (2.0 * constants::two_pi_cubed);
    out.v_m *= e2 / (2.0 * constants::two_pi_cubed);
    out.cross_im /= constants::two_pi_cubed;
    return out;
}

}  // namespace

CutoffWindow::CutoffWindow(double k_min_, double k_max_) : k_min(k_min_), k_max(k_max_) {
    if (!(k_min > 0.0) || !(k_max > k_min))
        throw std::domain_error("cutoff window requires 0 < k_min < k_max");
}

double CutoffWindow::log_ratio() const { return std::log(k_max / k_min); }

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

PhotonQuadrature PhotonQuadrature::make(const CutoffWindow& window,
                                        int energy_per_decade, int n_polar,
                                        int n_azimuth) {
    if (energy_per_decade < 4 || n_polar < 1 || n_azimuth < 1)
        throw std::domain_error("photon quadrature node counts too small");
    PhotonQuadrature q;
    q.k_min = window.k_min;
    q.k_max = window.k_max;
    q.energy_per_decade = energy_per_decade;
    q.n_polar = n_polar;
    q.n_azimuth = n_azimuth;

    // Composite 8-point Gauss-Legendre panels in u = ln k0: exact for the
    // scale-free 1/k0^2 intensity, spectrally accurate otherwise.
    static thread_local std::vector<double> gx8, gw8;
    if (gx8.empty()) gauss_legendre(8, gx8, gw8);
    const double u_lo = std::log(window.k_min);
    const double u_hi = std::log(window.k_max);
    const double decades = (u_hi - u_lo) / std::log(10.0);
    const int panels = std::max(1, static_cast<int>(std::ceil(decades * energy_per_decade / 8.0)));
    const double du = (u_hi - u_lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = u_lo + p * du;
        for (int j = 0; j < 8; ++j) {
            const double u = a + 0.5 * du * (gx8[j] + 1.0);
            q.k0.push_back(std::exp(u));
            q.wu.push_back(0.5 * du * gw8[j]);
        }
    }

    std::vector<double> cx, cw;
    gauss_legendre(n_polar, cx, cw);
    const double dphi = 2.0 * constants::pi / n_azimuth;
    q.ang.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
    for (int i = 0; i < n_polar; ++i) {
        const double ct = cx[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < n_azimuth; ++j) {
            const double phi = dphi * (j + 0.5);
            AngularNode an;
            const std::array<double, 3> dir{st * std::cos(phi), st * std::sin(phi), ct};
            const PhotonMode m = make_mode(dir, 1.0);
            an.n = m.direction;
            an.e1 = m.e1;
            an.e2 = m.e2;
            an.w = cw[i] * dphi;
            q.ang.push_back(an);
        }
    }
    return q;
}

double v_functional(const ScatteringEvent& ev, const CutoffWindow& window,
                    const PhotonQuadrature& quad, double alpha) {
    validate_quad(window, quad);
    const std::size_t na = quad.ang.size();
    std::vector<double> slot(na, 0.0);
    parallel_for(na, [&](std::size_t a) {
        const auto& an = quad.ang[a];
        const LegProjection lp = project_leg(ev, an);
        double acc = 0.0;
        for (std::size_t i = 0; i < quad.k0.size(); ++i) {
            const double k0 = quad.k0[i];
            const double i1 = 1.0 / (k0 * lp.pa);
            const double i2 = 1.0 / (k0 * lp.pb);
            const double r1 = lp.pe1 * i1 - lp.pp1 * i2;
            const double r2 = lp.pe2 * i1 - lp.pp2 * i2;
            acc += quad.wu[i] * k0 * k0 * (r1 * r1 + r2 * r2);
        }
        slot[a] = an.w * acc;
    });
    double sum = 0.0;
    for (double s : slot) sum += s;
    const double e2 = 4.0 * constants::pi * alpha;
    return e2 * sum / (2.0 * constants::two_pi_cubed);
}

double mean_photon_number(const ScatteringEvent& ev, const CutoffWindow& window,
                          const PhotonQuadrature& quad, double alpha) {
    validate_quad(window, quad);
    const std::size_t na = quad.ang.size();
    std::vector<double> slot(na, 0.0);
    parallel_for(na, [&](std::size_t a) {
        const auto& an = quad.ang[a];
        PhotonMode mode;
        mode.direction = an.n;
        mode.e1 = an.e1;
        mode.e2 = an.e2;
        double acc = 0.0;
        for (std::size_t i = 0; i < quad.k0.size(); ++i) {
            mode.k0 = quad.k0[i];
            const ComplexFourVector j = soft_current(ev, mode, alpha);
            acc += quad.wu[i] * mode.k0 * mode.k0 * polarization_sum(j, mode);
        }
        slot[a] = an.w * acc;
    });
    double sum = 0.0;
    for (double s : slot) sum += s;
    return sum / constants::two_pi_cubed;
}

std::vector<SpectrumBin> energy_spectrum(const ScatteringEvent& ev,
                                         const CutoffWindow& window,
                                         const PhotonQuadrature& quad, int n_bins,
                                         double alpha) {
    validate_quad(window, quad);
    if (n_bins < 1) throw std::domain_error("energy_spectrum: n_bins must be >= 1");
    const double ratio = std::pow(window.k_max / window.k_min, 1.0 / n_bins);
    std::vector<SpectrumBin> bins;
    bins.reserve(n_bins);
    for (int b = 0; b < n_bins; ++b) {
        SpectrumBin sb;
        sb.k_lo = window.k_min * std::pow(ratio, b);
        sb.k_hi = (b == n_bins - 1) ? window.k_max : window.k_min * std::pow(ratio, b + 1);
        const CutoffWindow sub(sb.k_lo, sb.k_hi);
        const PhotonQuadrature sq = PhotonQuadrature::make(
            sub, quad.energy_per_decade, quad.n_polar, quad.n_azimuth);
        sb.dn = 2.0 * v_functional(ev, sub, sq, alpha);
        bins.push_back(sb);
    }
    return bins;
}

double vacuum_persistence(const ScatteringEvent& ev, const CutoffWindow& window,
                          const PhotonQuadrature& quad, double alpha) {
    return std::exp(-v_functional(ev, window, quad, alpha));
}

std::complex<double> branch_overlap(const ScatteringEvent& ev_l,
                                    const ScatteringEvent& ev_m,
                                    const CutoffWindow& window,
                                    const PhotonQuadrature& quad, double alpha) {
    const PairIntegrals pi = pair_integrals(ev_l, ev_m, window, quad, alpha);
    const double phase = (pi.v_l - pi.v_m) + pi.cross_im;
    return std::polar(std::exp(-0.5 * pi.d), phase);
}

double pair_distance(const ScatteringEvent& ev_l, const ScatteringEvent& ev_m,
                     const CutoffWindow& window, const PhotonQuadrature& quad,
                     double alpha) {
    return pair_integrals(ev_l, ev_m, window, quad, alpha).d;
}

double phase_difference(const ScatteringEvent& ev_l, const ScatteringEvent& ev_m,
                        const CutoffWindow& window, const PhotonQuadrature& quad,
                        double alpha) {
    validate_shared_incoming(ev_l, ev_m);
    return v_functional(ev_l, window, quad, alpha) -
           v_functional(ev_m, window, quad, alpha);
}

std::complex<double> coherent_overlap(const std::vector<std::complex<double>>& a,
                                      const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("coherent_overlap: amplitude lists differ in size");
    double d = 0.0, va = 0.0, vb = 0.0, cross_im = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        d += std::norm(a[j] - b[j]);
        va += std::norm(a[j]);
        vb += std::norm(b[j]);
        cross_im += (a[j] * std::conj(b[j])).imag();
    }
    return std::polar(std::exp(-0.5 * d), 0.5 * (va - vb) + cross_im);
}

FitResult log_slope(const std::vector<std::pair<double, double>>& scan) {
    if (scan.size() < 3)
        throw std::domain_error("log_slope: need at least 3 scan points");
    FitResult fit;
    fit.n = static_cast<int>(scan.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [k_min, y] : scan) {
        if (!(k_min > 0.0)) throw std::domain_error("log_slope: k_min must be > 0");
        sx += -std::log(k_min);
        sy += y;
    }
    const double xb = sx / fit.n, yb = sy / fit.n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [k_min, y] : scan) {
        const double dx = -std::log(k_min) - xb;
        const double dy = y - yb;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw std::domain_error("log_slope: degenerate k_min values");
    fit.slope = sxy / sxx;
    fit.intercept = yb - fit.slope * xb;
    double ssres = 0.0;
    for (const auto& [k_min, y] : scan) {
        const double r = y - (fit.intercept + fit.slope * (-std::log(k_min)));
        ssres += r * r;
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ssres / syy : 1.0;
    return fit;
}

double brf_ratio(const ScatteringEvent& ev, const CutoffWindow& window,
                 const PhotonQuadrature& quad, double alpha) {
    validate_quad(window, quad);
    const std::size_t na = quad.ang.size();
    std::vector<double> slot(na, 0.0);
    parallel_for(na, [&](std::size_t a) {
        const auto& an = quad.ang[a];
        const LegProjection lp = project_leg(ev, an);
        double acc = 0.0;
        for (std::size_t i = 0; i < quad.k0.size(); ++i) {
            const double k0 = quad.k0[i];
            const double i1 = 1.0 / (k0 * lp.pa);
            const double i2 = 1.0 / (k0 * lp.pb);
            const double r1 = lp.pe1 * i1 - lp.pp1 * i2;
            const double r2 = lp.pe2 * i1 - lp.pp2 * i2;
            acc += quad.wu[i] * k0 * k0 * k0 * (r1 * r1 + r2 * r2);
        }
        slot[a] = an.w * acc;
    });
    double e_rad = 0.0;
    for (double s : slot) e_rad += s;
    e_rad *= 4.0 * constants::pi * alpha / constants::two_pi_cubed;
    const double q = (ev.p_e_in - ev.p_e_out).spatial_norm();
    if (e_rad == 0.0) return 0.0;
    return e_rad / q;
}

RadiationReport radiation_report(const ScatteringEvent& ev, const CutoffWindow& window,
                                 const PhotonQuadrature& quad, int spectrum_bins,
                                 double alpha) {
    RadiationReport rep;
    rep.v = v_functional(ev, window, quad, alpha);
    rep.n_bar = mean_photon_number(ev, window, quad, alpha);
    rep.vacuum_persistence = std::exp(-rep.v);
    rep.brf_ratio = brf_ratio(ev, window, quad, alpha);
    const double q = (ev.p_e_in - ev.p_e_out).spatial_norm();
    rep.radiated_energy = rep.brf_ratio * q;
    rep.brf_warning = rep.brf_ratio > 0.1;
    rep.spectrum = energy_spectrum(ev, window, quad, spectrum_bins, alpha);
    return rep;
}

}  // namespace irdecoh
