#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tregsim/cohort.hpp"
#include "tregsim/engine.hpp"
#include "tregsim/parameters.hpp"

namespace tregsim {

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
};

// Everything a command needs: the scenario plus run-level settings. Built
// from defaults, overlaid by a config file, overlaid by CLI flags.
struct RunConfig {
    ScenarioParameters params;
    std::vector<std::uint64_t> seeds = {45};
    std::string out_dir = "out";
    std::optional<std::string> lab_path;
    std::optional<InterventionSpec> intervention;
    std::optional<SweepSpec> sweep;
    TableStyle format = TableStyle::Text;
    bool pool_replications = false;
};

// Plain-text `key = value` file with [model], [engine], [run], [intervention]
// and [sweep] sections; '#' starts a comment. Unknown sections or keys throw
// ConfigError (typo safety). Every key has a default, so {} is a valid file.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig load_config_file(const std::string& path);

// The documented key list, used by error messages and the README generator.
std::string config_key_reference();

}  // namespace tregsim
