#ifndef CHSYS_OUTPUT_HPP
#define CHSYS_OUTPUT_HPP

#include <string>

#include "chsys/experiment.hpp"

namespace chsys {

// Shortest decimal representation that round-trips the 64-bit value.
std::string format_double(double v);

// Writes one CSV per snapshot (header x,u,rho,mu_density), atoms.csv,
// diagnostics.csv, and a plain-text run manifest. Reruns with the same
// config are byte-identical except the manifest timestamp.
void write_outputs(const RunResult& result, const ScenarioConfig& cfg,
                   const std::string& out_dir);

// Appends the vanishing-density comparison table (vanishing.csv).
void write_vanishing(const VanishingResult& result, const std::string& out_dir);

} // namespace chsys

#endif
