#pragma once

#include "cbloch/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cbloch {

// YAML scenario/sweep documents. Doubles are written in shortest
// round-trip form, so parse_experiment(to_yaml(x)) == x exactly.
//
//   kind: scenario            kind: sweep
//   name: fig1a               name: fig2_ratio1
//   seed: 2012                axis: omega
//   hamiltonian: h1d          ratio: 1
//   params: {...}             values: [1, 2, 4, 8]
//   initial: {...}            horizon: {rule: scaled, min_tj: 300, factor: 20}
//   grid: {...}               base: {<scenario fields>}
//   lattice: {...}
//   outputs: [...]
std::string to_yaml(const Scenario& scenario);
std::string to_yaml(const Sweep& sweep);
std::string to_yaml(const Experiment& experiment);

// Throws ConfigError on malformed documents, unknown keys or invalid values.
Experiment parse_experiment(std::string_view text);
Experiment load_experiment(const std::filesystem::path& path);

void save_experiment(const Experiment& experiment, const std::filesystem::path& path);

} // namespace cbloch
