#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tregsim/model.hpp"
#include "tregsim/parameters.hpp"
#include "tregsim/rng.hpp"
#include "tregsim/state.hpp"
#include "tregsim/trajectory.hpp"

namespace tregsim {

// Instantaneous depletion: each stock is multiplied by (1 - fraction) across
// the nonspecific pool and every clone.
struct InterventionSpec {
    double time_days = 0.0;
    double fraction_p = 0.0;
    double fraction_r = 0.0;
    double fraction_q = 0.0;
};

// Discrete events pending during a run. Times are nominal (pre-snap); each
// event fires at the first step-grid point at or after its scheduled time.
struct EventSchedule {
    double next_onset_time = 0.0;                    // k*inter_response_interval
    std::optional<double> phase_switch_time;         // expansion -> contraction
    std::vector<InterventionSpec> interventions;     // sorted by time
};

// One classical RK4 step of length h at fixed coefficients. Stocks pushed
// below zero are clamped to zero and counted on the state. Non-finite results
// throw NumericError with the time and a state snapshot in the message.
SystemState advance_step(const SystemState& state,
                         const EffectiveCoefficients& coeffs,
                         const ScenarioParameters& params,
                         double h);

// Draws the next response at an onset: primary with probability q(t),
// otherwise secondary, except that a secondary draw against a clone with no
// memory is promoted to primary. Selects the clone per clone_selection
// (last_clone is the previously engaged clone, 0 initially). Pure in (rng,
// state); does not schedule anything.
RegimePhase next_response(const SystemState& state,
                          const ScenarioParameters& params,
                          Rng& rng,
                          int last_clone);

SystemState apply_intervention(const SystemState& state,
                               const InterventionSpec& spec);

// Full hybrid run from t = 0 to the horizon: RK4 between grid-aligned events,
// onsets every inter_response_interval, sampled every output_interval_days.
// Deterministic in (params, seed).
Trajectory run_simulation(const ScenarioParameters& params,
                          std::uint64_t seed,
                          const std::vector<InterventionSpec>& interventions = {});

struct EnsembleResult {
    std::vector<Trajectory> runs;
    // Per-sample cross-run sample SD, one entry per trajectory row.
    std::vector<double> sd_p_total;
    std::vector<double> sd_r_total;
    std::vector<double> sd_q_total;
    double max_sd_p_total = 0.0;
    double max_sd_r_total = 0.0;
    double max_sd_q_total = 0.0;
};

// Independent replications, one per listed seed. Requires >= 2 seeds.
EnsembleResult run_ensemble(const ScenarioParameters& params,
                            const std::vector<std::uint64_t>& seeds);

struct SweepRow {
    double value = 0.0;
    double inversion_time_years = 0.0;  // NaN when the crossing never happens
    int crossings = 0;
    double final_precursor_prop = 0.0;
    double final_active_prop = 0.0;
    double final_quiescent_prop = 0.0;
    double max_p_total = 0.0;
    double max_r_total = 0.0;
    double max_q_total = 0.0;
    bool p_total_non_increasing = false;
    std::uint64_t clamp_warnings = 0;
};

// One run per grid value with the named parameter overridden, same seed for
// every value. Unknown names throw ConfigError listing the valid ones.
std::vector<SweepRow> sweep(const ScenarioParameters& base,
                            const std::string& parameter,
                            const std::vector<double>& grid,
                            std::uint64_t seed);

// Names accepted by sweep(), comma-separated (also the error-message list).
std::string sweep_parameter_names();

// First sample time where precursor_prop drops below 0.5, in years, plus the
// number of 0.5 boundary crossings over the whole trajectory.
struct InversionSummary {
    double inversion_time_years;  // NaN if never
    int crossings;
};
InversionSummary find_inversion(const Trajectory& traj);

}  // namespace tregsim
