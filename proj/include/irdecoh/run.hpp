#pragma once

#include "irdecoh/config.hpp"

#include <string>

namespace irdecoh {

// Execute one subcommand (spectrum, overlap, decoherence-scan, fock-verify,
// weak-xsec, restoration-mc, all) into cfg.output.dir: CSV tables plus a JSON
// run manifest.  Returns 0 on success; contract violations throw.
int run_subcommand(const std::string& name, const RunConfig& cfg);

}  // namespace irdecoh
