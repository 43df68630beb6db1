#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Flat sectioned key=value run configuration.  Every key has a reference
// default; unknown sections or keys are rejected with file:line diagnostics.

namespace irdecoh {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    struct Kinematics {
        double sqrt_s = 10.0;
        double theta = 1.5707963267948966;
        double phi = 0.0;
        double m_e = 1.0;
        double m_nu = 0.0;
        int branch_n_polar = 16;
        int branch_n_azimuth = 8;
    } kinematics;

    struct Window {
        double k_min = 1e-6;
        double k_max = 1e-1;
        double scan_k_min_low = 1e-8;
        double scan_k_min_high = 1e-3;
        int scan_per_decade = 2;
    } window;

    struct Quadrature {
        int energy_per_decade = 64;
        int n_polar = 64;
        int n_azimuth = 128;
    } quadrature;

    struct Physics {
        double alpha = 0.0072973525693;  // fine-structure constant
        double g = 3.0466e-12;           // Fermi coupling, electron-mass units
        double m0_weight = 0.5;          // |M0|^2 fraction of the forward branch
    } physics;

    // Coupling and UV cutoff for the decoherence scan alone; the physical
    // alpha leaves the k_min -> 0 plateau numerically out of reach, so the
    // scan exposes its own knob.
    struct Decoherence {
        double alpha = 0.95;
        double k_max = 1e-1;
    } decoherence;

    struct Oracle {
        int modes = 4;
        int n_tr = 40;
        double k_min = 5e-2;
        double k_max = 1e-1;
    } oracle;

    struct Mc {
        std::vector<double> epsilon = {0.4, 0.2, 0.1, 0.05};
        std::int64_t n = 1000000;
        std::uint64_t seed = 20260815;
    } mc;

    struct Output {
        std::string dir = "out";
        int spectrum_bins = 12;
    } output;

    // Runtime options set by CLI flags, not config keys.
    int threads = 1;
    bool verbose = false;
};

// Parse and validate a config file; throws ConfigError with file:line/key
// context on malformed input, unknown keys, or downstream numeric violations.
RunConfig parse_config(const std::string& path);

// Same parser on in-memory text (name used only for diagnostics).
RunConfig parse_config_text(const std::string& text, const std::string& name);

// Enforce the numeric constraints of the downstream modules.
void validate_config(const RunConfig& cfg);

// Deterministic normalized listing of every key=value pair.
std::string config_canonical_string(const RunConfig& cfg);

// FNV-1a 64-bit hash of the canonical string, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace irdecoh
