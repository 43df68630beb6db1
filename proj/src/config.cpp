#include "irdecoh/config.hpp"

#include "irdecoh/constants.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace irdecoh {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& name, int line, const std::string& key,
                    const std::string& v) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        fail(name, line, "key '" + key + "': not a number: '" + v + "'");
    }
    if (used != v.size())
        fail(name, line, "key '" + key + "': trailing characters in '" + v + "'");
    return out;
}

std::int64_t parse_int(const std::string& name, int line, const std::string& key,
                       const std::string& v) {
    std::size_t used = 0;
    std::int64_t out = 0;
    try {
        out = std::stoll(v, &used);
    } catch (const std::exception&) {
        fail(name, line, "key '" + key + "': not an integer: '" + v + "'");
    }
    if (used != v.size())
        fail(name, line, "key '" + key + "': trailing characters in '" + v + "'");
    return out;
}

std::uint64_t parse_uint(const std::string& name, int line, const std::string& key,
                         const std::string& v) {
    std::size_t used = 0;
    std::uint64_t out = 0;
    try {
        out = std::stoull(v, &used);
    } catch (const std::exception&) {
        fail(name, line, "key '" + key + "': not an unsigned integer: '" + v + "'");
    }
    if (used != v.size())
        fail(name, line, "key '" + key + "': trailing characters in '" + v + "'");
    return out;
}

std::vector<double> parse_double_list(const std::string& name, int line,
                                      const std::string& key, std::string v) {
    for (auto& ch : v)
        if (ch == ',') ch = ' ';
    std::istringstream is(v);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) out.push_back(parse_double(name, line, key, tok));
    if (out.empty()) fail(name, line, "key '" + key + "': empty list");
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw, section;
    int line_no = 0;

    // setter per (section, key)
    using Setter = std::function<void(int, const std::string&)>;
    const std::map<std::pair<std::string, std::string>, Setter> schema = {
        {{"kinematics", "sqrt_s"},
         [&](int l, const std::string& v) {
             cfg.kinematics.sqrt_s = parse_double(name, l, "sqrt_s", v);
         }},
        {{"kinematics", "theta"},
         [&](int l, const std::string& v) {
             cfg.kinematics.theta = parse_double(name, l, "theta", v);
         }},
        {{"kinematics", "phi"},
         [&](int l, const std::string& v) {
             cfg.kinematics.phi = parse_double(name, l, "phi", v);
         }},
        {{"kinematics", "m_e"},
         [&](int l, const std::string& v) {
             cfg.kinematics.m_e = parse_double(name, l, "m_e", v);
         }},
        {{"kinematics", "m_nu"},
         [&](int l, const std::string& v) {
             cfg.kinematics.m_nu = parse_double(name, l, "m_nu", v);
         }},
        {{"kinematics", "branch_n_polar"},
         [&](int l, const std::string& v) {
             cfg.kinematics.branch_n_polar =
                 static_cast<int>(parse_int(name, l, "branch_n_polar", v));
         }},
        {{"kinematics", "branch_n_azimuth"},
         [&](int l, const std::string& v) {
             cfg.kinematics.branch_n_azimuth =
                 static_cast<int>(parse_int(name, l, "branch_n_azimuth", v));
         }},
        {{"window", "k_min"},
         [&](int l, const std::string& v) {
             cfg.window.k_min = parse_double(name, l, "k_min", v);
         }},
        {{"window", "k_max"},
         [&](int l, const std::string& v) {
             cfg.window.k_max = parse_double(name, l, "k_max", v);
         }},
        {{"window", "scan_k_min_low"},
         [&](int l, const std::string& v) {
             cfg.window.scan_k_min_low = parse_double(name, l, "scan_k_min_low", v);
         }},
        {{"window", "scan_k_min_high"},
         [&](int l, const std::string& v) {
             cfg.window.scan_k_min_high = parse_double(name, l, "scan_k_min_high", v);
         }},
        {{"window", "scan_per_decade"},
         [&](int l, const std::string& v) {
             cfg.window.scan_per_decade =
                 static_cast<int>(parse_int(name, l, "scan_per_decade", v));
         }},
        {{"quadrature", "energy_per_decade"},
         [&](int l, const std::string& v) {
             cfg.quadrature.energy_per_decade =
                 static_cast<int>(parse_int(name, l, "energy_per_decade", v));
         }},
        {{"quadrature", "n_polar"},
         [&](int l, const std::string& v) {
             cfg.quadrature.n_polar = static_cast<int>(parse_int(name, l, "n_polar", v));
         }},
        {{"quadrature", "n_azimuth"},
         [&](int l, const std::string& v) {
             cfg.quadrature.n_azimuth =
                 static_cast<int>(parse_int(name, l, "n_azimuth", v));
         }},
        {{"physics", "alpha"},
         [&](int l, const std::string& v) {
             cfg.physics.alpha = parse_double(name, l, "alpha", v);
         }},
        {{"physics", "g"},
         [&](int l, const std::string& v) {
             cfg.physics.g = parse_double(name, l, "g", v);
         }},
        {{"physics", "m0_weight"},
         [&](int l, const std::string& v) {
             cfg.physics.m0_weight = parse_double(name, l, "m0_weight", v);
         }},
        {{"decoherence", "alpha"},
         [&](int l, const std::string& v) {
             cfg.decoherence.alpha = parse_double(name, l, "alpha", v);
         }},
        {{"decoherence", "k_max"},
         [&](int l, const std::string& v) {
             cfg.decoherence.k_max = parse_double(name, l, "k_max", v);
         }},
        {{"oracle", "modes"},
         [&](int l, const std::string& v) {
             cfg.oracle.modes = static_cast<int>(parse_int(name, l, "modes", v));
         }},
        {{"oracle", "n_tr"},
         [&](int l, const std::string& v) {
             cfg.oracle.n_tr = static_cast<int>(parse_int(name, l, "n_tr", v));
         }},
        {{"oracle", "k_min"},
         [&](int l, const std::string& v) {
             cfg.oracle.k_min = parse_double(name, l, "k_min", v);
         }},
        {{"oracle", "k_max"},
         [&](int l, const std::string& v) {
             cfg.oracle.k_max = parse_double(name, l, "k_max", v);
         }},
        {{"mc", "epsilon"},
         [&](int l, const std::string& v) {
             cfg.mc.epsilon = parse_double_list(name, l, "epsilon", v);
         }},
        {{"mc", "n"},
         [&](int l, const std::string& v) { cfg.mc.n = parse_int(name, l, "n", v); }},
        {{"mc", "seed"},
         [&](int l, const std::string& v) {
             cfg.mc.seed = parse_uint(name, l, "seed", v);
         }},
        {{"output", "dir"},
         [&](int, const std::string& v) { cfg.output.dir = v; }},
        {{"output", "spectrum_bins"},
         [&](int l, const std::string& v) {
             cfg.output.spectrum_bins =
                 static_cast<int>(parse_int(name, l, "spectrum_bins", v));
         }},
    };

    const std::vector<std::string> known_sections = {
        "kinematics", "window", "quadrature", "physics",
        "decoherence", "oracle", "mc",        "output"};

    while (std::getline(in, raw)) {
        ++line_no;
        std::string s = raw;
        // strip inline comments introduced by whitespace + '#' or ';'
        for (std::size_t i = 0; i < s.size(); ++i) {
            if ((s[i] == '#' || s[i] == ';') &&
                (i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1])))) {
                s = s.substr(0, i);
                break;
            }
        }
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(name, line_no, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            bool known = false;
            for (const auto& k : known_sections) known = known || (k == section);
            if (!known) fail(name, line_no, "unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            fail(name, line_no, "expected key = value, got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty()) fail(name, line_no, "key '" + key + "' outside any section");
        if (key.empty()) fail(name, line_no, "empty key");
        const auto it = schema.find({section, key});
        if (it == schema.end())
            fail(name, line_no, "unknown key '" + key + "' in [" + section + "]");
        it->second(line_no, value);
    }

    validate_config(cfg);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void validate_config(const RunConfig& cfg) {
    const auto bad = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    const auto& k = cfg.kinematics;
    if (!(k.sqrt_s > 0.0)) bad("[kinematics] sqrt_s must be positive");
    if (k.m_e < 0.0 || k.m_nu < 0.0) bad("[kinematics] masses must be nonnegative");
    if (!(k.sqrt_s > k.m_e + k.m_nu))
        bad("[kinematics] sqrt_s must exceed the mass threshold");
    if (!(k.theta >= 0.0 && k.theta <= constants::pi))
        bad("[kinematics] theta must lie in [0, pi]");
    if (k.branch_n_polar < 1 || k.branch_n_azimuth < 1)
        bad("[kinematics] branch grid must be nonempty");
    const auto& w = cfg.window;
    if (!(w.k_min > 0.0 && w.k_min < w.k_max))
        bad("[window] requires 0 < k_min < k_max");
    if (!(w.scan_k_min_low > 0.0 && w.scan_k_min_low < w.scan_k_min_high))
        bad("[window] requires 0 < scan_k_min_low < scan_k_min_high");
    if (!(w.scan_k_min_high <= w.k_max)) bad("[window] scan_k_min_high must be <= k_max");
    if (w.scan_per_decade < 1) bad("[window] scan_per_decade must be >= 1");
    const auto& q = cfg.quadrature;
    if (q.energy_per_decade < 4) bad("[quadrature] energy_per_decade must be >= 4");
    if (q.n_polar < 2 || q.n_azimuth < 2)
        bad("[quadrature] angular node counts must be >= 2");
    const auto& p = cfg.physics;
    if (!(p.alpha > 0.0)) bad("[physics] alpha must be positive");
    if (!(p.g > 0.0)) bad("[physics] g must be positive");
    if (!(p.m0_weight >= 0.0 && p.m0_weight < 1.0))
        bad("[physics] m0_weight must lie in [0, 1)");
    const auto& d = cfg.decoherence;
    if (!(d.alpha > 0.0)) bad("[decoherence] alpha must be positive");
    if (!(d.k_max > 0.0)) bad("[decoherence] k_max must be positive");
    if (!(cfg.window.scan_k_min_high < d.k_max))
        bad("[decoherence] k_max must exceed the scan range");
    const auto& o = cfg.oracle;
    if (o.modes < 1 || o.modes > 4) bad("[oracle] modes must lie in 1..4");
    if (o.n_tr < 2) bad("[oracle] n_tr must be >= 2");
    if (!(o.k_min > 0.0 && o.k_min < o.k_max))
        bad("[oracle] requires 0 < k_min < k_max");
    const auto& m = cfg.mc;
    if (m.epsilon.empty()) bad("[mc] epsilon list must be nonempty");
    for (const double e : m.epsilon)
        if (!(e > 0.0 && e <= constants::pi))
            bad("[mc] epsilon values must lie in (0, pi]");
    if (m.n < 1000) bad("[mc] n must be >= 1000");
    if (cfg.output.spectrum_bins < 1) bad("[output] spectrum_bins must be >= 1");
    if (cfg.output.dir.empty()) bad("[output] dir must be nonempty");
}

std::string config_canonical_string(const RunConfig& cfg) {
    char buf[64];
    std::string s;
    const auto add_d = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g\n", key, v);
        s += buf;
    };
    const auto add_i = [&](const char* key, std::int64_t v) {
        std::snprintf(buf, sizeof buf, "%s=%" PRId64 "\n", key, v);
        s += buf;
    };
    add_d("kinematics.sqrt_s", cfg.kinematics.sqrt_s);
    add_d("kinematics.theta", cfg.kinematics.theta);
    add_d("kinematics.phi", cfg.kinematics.phi);
    add_d("kinematics.m_e", cfg.kinematics.m_e);
    add_d("kinematics.m_nu", cfg.kinematics.m_nu);
    add_i("kinematics.branch_n_polar", cfg.kinematics.branch_n_polar);
    add_i("kinematics.branch_n_azimuth", cfg.kinematics.branch_n_azimuth);
    add_d("window.k_min", cfg.window.k_min);
    add_d("window.k_max", cfg.window.k_max);
    add_d("window.scan_k_min_low", cfg.window.scan_k_min_low);
    add_d("window.scan_k_min_high", cfg.window.scan_k_min_high);
    add_i("window.scan_per_decade", cfg.window.scan_per_decade);
    add_i("quadrature.energy_per_decade", cfg.quadrature.energy_per_decade);
    add_i("quadrature.n_polar", cfg.quadrature.n_polar);
    add_i("quadrature.n_azimuth", cfg.quadrature.n_azimuth);
    add_d("physics.alpha", cfg.physics.alpha);
    add_d("physics.g", cfg.physics.g);
    add_d("physics.m0_weight", cfg.physics.m0_weight);
    add_d("decoherence.alpha", cfg.decoherence.alpha);
    add_d("decoherence.k_max", cfg.decoherence.k_max);
    add_i("oracle.modes", cfg.oracle.modes);
    add_i("oracle.n_tr", cfg.oracle.n_tr);
    add_d("oracle.k_min", cfg.oracle.k_min);
    add_d("oracle.k_max", cfg.oracle.k_max);
    for (std::size_t i = 0; i < cfg.mc.epsilon.size(); ++i) {
        std::snprintf(buf, sizeof buf, "mc.epsilon.%zu=%.17g\n", i, cfg.mc.epsilon[i]);
        s += buf;
    }
    add_i("mc.n", cfg.mc.n);
    std::snprintf(buf, sizeof buf, "mc.seed=%" PRIu64 "\n",
                  static_cast<std::uint64_t>(cfg.mc.seed));
    s += buf;
    // output.dir is deliberately omitted: the hash identifies the experiment,
    // not where its files land.
    add_i("output.spectrum_bins", cfg.output.spectrum_bins);
    return s;
}

std::string config_hash(const RunConfig& cfg) {
    const std::string s = config_canonical_string(cfg);
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace irdecoh
