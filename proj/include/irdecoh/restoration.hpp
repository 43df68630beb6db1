#pragma once

#include <array>
#include <cstdint>
#include <vector>

// Monte Carlo for the premeasurement/rescattering restoration probability:
// an electron scatters isotropically, is reflected by a nondispersive mirror
// (momentum reversal, constant phase dropped), rescatters isotropically, and
// "restores" the initial state only if its final direction realigns with the
// initial one within tolerance epsilon.  The continuum limit of that event
// set is a single point of the phase space, so P(epsilon) -> 0.

namespace irdecoh {

struct RestorationRun {
    double sqrt_s = 0.0;
    double epsilon = 0.0;        // radians of final-vs-initial misalignment
    long long n = 0;
    std::uint64_t seed = 0;
    long long accepted = 0;
    double p_hat = 0.0;
    double sigma = 0.0;          // binomial standard error
};

// One sampled three-collision history (directions only; the soft current of
// the composite history depends only on asymptotic momenta).
struct RestorationSample {
    std::array<double, 3> intermediate;  // first-scatter direction
    std::array<double, 3> reflected;     // after mirror reversal
    std::array<double, 3> final_dir;     // after rescattering
};

RestorationSample restoration_sample(std::uint64_t seed, std::uint64_t index);

// Estimates P(final within epsilon of the initial +z direction) from n
// samples.  Deterministic for fixed seed, independent of thread count.
// Throws std::domain_error unless epsilon in (0, pi] and n >= 1000.
RestorationRun restoration_mc(double sqrt_s, double epsilon, long long n,
                              std::uint64_t seed);

struct RestorationFit {
    double exponent = 0.0;
    double exponent_err = 0.0;
    double amplitude = 0.0;      // prefactor of the power law
    double p_zero = 0.0;         // extrapolated P(epsilon -> 0)
    bool consistent_with_zero = false;
};

// Weighted log-log power-law fit over runs at different tolerances; the
// extrapolated P(0) is 0 when the fitted exponent is significantly positive,
// otherwise the fitted constant level is reported and flagged.
RestorationFit restoration_extrapolate(const std::vector<RestorationRun>& runs);

}  // namespace irdecoh
