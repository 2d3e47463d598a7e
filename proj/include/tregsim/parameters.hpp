#pragma once

#include <cstdint>
#include <string>

namespace tregsim {

enum class CloneSelection { Fixed, Cycle, Random };

const char* to_string(CloneSelection sel);
CloneSelection clone_selection_from_string(const std::string& text);

// All model rates, cadences, initial conditions, horizon and integration
// controls for one scenario. Rates are per day, stocks are cells, times are
// days unless the name says otherwise.
//
// The default values are a calibration choice made for this repository so the
// headline behaviours (precursor/mature inversion in early adulthood,
// response spikes, near-deterministic precursor path) appear out of the box.
// They are NOT fitted literature values; treat them as a demonstration
// scenario and override via config for real studies.
struct ScenarioParameters {
    double b = 0.1;       // active-mature proliferation during expansion
    double f = 0.02;      // quiescent->active reactivation during secondary expansion
    double c = 0.1;       // active->quiescent reversion during contraction
    double dR = 1e-3;     // active-mature death during contraction
    double dQ = 1e-5;     // quiescent death during contraction
    double m = 0.02;      // precursor->active maturation during expansion
    double piN = 0.04;    // antigen-specific fraction engaged per response

    // Primary-response probability schedule q(t) = clamp(q0*exp(-lambda_q*t), 0, 1).
    double q0 = 0.5;
    double lambda_q = 0.0;

    // Thymic input schedule sigma(t) = sigma0*exp(-nu*t), cells/day.
    double sigma0 = 10.0;
    double nu = 5e-4;

    double inter_response_interval = 100.95;  // days between response onsets
    double expansion_duration = 7.0;          // days in expansion before contraction

    double P0 = 1e6;  // initial nonspecific precursors
    double R0 = 0.0;  // initial nonspecific active matures
    double Q0 = 0.0;  // initial nonspecific quiescent matures

    int n_clones = 1;
    CloneSelection clone_selection = CloneSelection::Fixed;

    // When set, dQ drains every quiescent pool during any contraction instead
    // of only the responding clone's pool.
    bool global_quiescent_decay = false;

    double horizon_years = 85.0;
    double days_per_year = 365.0;
    double step_days = 0.1;           // RK4 step h
    double output_interval_days = 30.0;

    double horizon_days() const { return horizon_years * days_per_year; }

    double sigma(double t_days) const;
    double q(double t_days) const;  // always in [0, 1]

    // Throws ConfigError naming the offending field.
    void validate() const;

    // FNV-1a over the canonical text of every field; stable across reruns,
    // used to tie outputs back to the exact scenario that produced them.
    std::string fingerprint() const;
};

}  // namespace tregsim
