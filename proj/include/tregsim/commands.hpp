#pragma once

#include "tregsim/config.hpp"

namespace tregsim {

// Each command writes its primary outputs plus a manifest.json into
// config.out_dir. Manifests are written even when the command fails, with the
// failure recorded; outputs carry no timestamps so reruns are byte-identical.
void cmd_simulate(const RunConfig& config);
void cmd_ensemble(const RunConfig& config);
void cmd_validate(const RunConfig& config);
void cmd_intervene(const RunConfig& config);
void cmd_sweep(const RunConfig& config);

// Full CLI entry point (argument parsing, dispatch, error-to-exit-code
// mapping: 0 ok, 2 config, 3 data, 4 numeric). Used by main() and callable
// in-process from tests.
int cli_main(int argc, const char* const* argv);

}  // namespace tregsim
