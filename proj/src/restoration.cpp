#include "irdecoh/restoration.hpp"

#include <cmath>
#include <stdexcept>

#include "irdecoh/constants.hpp"
#include "irdecoh/parallel.hpp"
#include "irdecoh/rng.hpp"

namespace irdecoh {

namespace {

std::array<double, 3> isotropic_direction(double u_cos, double u_phi) {
    const double ct = 2.0 * u_cos - 1.0;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double phi = 2.0 * constants::pi * u_phi;
    return {st * std::cos(phi), st * std::sin(phi), ct};
}

}  // namespace

RestorationSample restoration_sample(std::uint64_t seed, std::uint64_t index) {
    RestorationSample s;
    s.intermediate = isotropic_direction(counter_uniform(seed, 4 * index + 0),
                                         counter_uniform(seed, 4 * index + 1));
    s.reflected = {-s.intermediate[0], -s.intermediate[1], -s.intermediate[2]};
    s.final_dir = isotropic_direction(counter_uniform(seed, 4 * index + 2),
                                      counter_uniform(seed, 4 * index + 3));
    return s;
}

RestorationRun restoration_mc(double sqrt_s, double epsilon, long long n,
                              std::uint64_t seed) {
    if (!(epsilon > 0.0) || !(epsilon <= constants::pi))
        throw std::domain_error("restoration_mc: epsilon must lie in (0, pi]");
    if (n < 1000) throw std::domain_error("restoration_mc: need n >= 1000");

    const double cos_eps = std::cos(epsilon);
    // Fixed shard layout: acceptance counts are integers, so the reduction is
    // exact and the estimate is identical for any thread count.
    const long long shards = 64;
    const long long per_shard = (n + shards - 1) / shards;
    std::vector<long long> counts(static_cast<std::size_t>(shards), 0);
    parallel_for(static_cast<std::size_t>(shards), [&](std::size_t sh) {
        const long long lo = static_cast<long long>(sh) * per_shard;
        const long long hi = std::min(n, lo + per_shard);
        long long acc = 0;
        for (long long i = lo; i < hi; ++i) {
            const RestorationSample s =
                restoration_sample(seed, static_cast<std::uint64_t>(i));
            if (s.final_dir[2] >= cos_eps) ++acc;
        }
        counts[sh] = acc;
    });
    long long accepted = 0;
    for (long long c : counts) accepted += c;

    RestorationRun run;
    run.sqrt_s = sqrt_s;
    run.epsilon = epsilon;
    run.n = n;
    run.seed = seed;
    run.accepted = accepted;
    run.p_hat = static_cast<double>(accepted) / static_cast<double>(n);
    run.sigma = std::sqrt(run.p_hat * (1.0 - run.p_hat) / static_cast<double>(n));
    return run;
}

RestorationFit restoration_extrapolate(const std::vector<RestorationRun>& runs) {
    if (runs.size() < 3)
        throw std::domain_error("restoration_extrapolate: need at least 3 runs");
    double eps_lo = runs.front().epsilon, eps_hi = runs.front().epsilon;
    for (const auto& r : runs) {
        eps_lo = std::min(eps_lo, r.epsilon);
        eps_hi = std::max(eps_hi, r.epsilon);
        if (!(r.p_hat > 0.0))
            throw std::domain_error("restoration_extrapolate: zero-acceptance run");
    }
    if (eps_hi < 4.0 * eps_lo)
        throw std::domain_error("restoration_extrapolate: tolerances span too little range");

    // Weighted least squares of ln P against ln epsilon; weight 1/sigma_lnP^2.
    // Runs with sigma = 0 (synthetic inputs) fall back to equal weights.
    bool weighted = true;
    for (const auto& r : runs)
        if (!(r.sigma > 0.0)) weighted = false;
    const std::size_t n = runs.size();
    std::vector<double> x(n), y(n), wt(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(runs[i].epsilon);
        y[i] = std::log(runs[i].p_hat);
        const double sy = weighted ? runs[i].sigma / runs[i].p_hat : 1.0;
        wt[i] = 1.0 / (sy * sy);
    }
    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += wt[i];
        swx += wt[i] * x[i];
        swy += wt[i] * y[i];
    }
    const double xb = swx / sw, yb = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += wt[i] * (x[i] - xb) * (x[i] - xb);
        sxy += wt[i] * (x[i] - xb) * (y[i] - yb);
    }
    RestorationFit fit;
    fit.exponent = sxy / sxx;
    const double intercept = yb - fit.exponent * xb;
    fit.amplitude = std::exp(intercept);
    if (weighted) {
        fit.exponent_err = std::sqrt(1.0 / sxx);
    } else {
        double ssres = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (intercept + fit.exponent * x[i]);
            ssres += r * r;
        }
        const double dof = static_cast<double>(n) - 2.0;
        fit.exponent_err = dof > 0.0 ? std::sqrt(ssres / dof / sxx) : 0.0;
    }
    fit.consistent_with_zero = fit.exponent > 2.0 * fit.exponent_err;
    fit.p_zero = fit.consistent_with_zero ? 0.0 : fit.amplitude;
    return fit;
}

}  // namespace irdecoh
