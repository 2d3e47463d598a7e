#include "tregsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "tregsim/errors.hpp"
#include "tregsim/format.hpp"
#include "tregsim/stats.hpp"

namespace tregsim {

namespace {

// Events fire at the first grid point at or after their scheduled time. The
// tolerance absorbs representation error in s/h (100.95 is not a multiple of
// 0.1 in binary) so times that are grid points up to rounding stay put.
constexpr double kGridTol = 1e-9;

long long grid_index(double t, double h) {
    const double idx = std::ceil(t / h - kGridTol);
    return idx <= 0.0 ? 0 : static_cast<long long>(idx);
}

SystemState shifted(const SystemState& base, const StockDerivatives& k,
                    double scale, double t) {
    SystemState s = base;
    s.t = t;
    const std::size_t n = base.P.size();
    for (std::size_t i = 0; i < n; ++i) {
        s.P[i] = base.P[i] + scale * k.dP[i];
        s.R[i] = base.R[i] + scale * k.dR[i];
        s.Q[i] = base.Q[i] + scale * k.dQ[i];
    }
    return s;
}

[[noreturn]] void throw_non_finite(const SystemState& state, double h) {
    throw NumericError("integration produced a non-finite stock near t=" +
                       fmt17(state.t) + " days (step " + fmt17(h) +
                       "); totals P=" + fmt17(state.p_total()) +
                       " R=" + fmt17(state.r_total()) +
                       " Q=" + fmt17(state.q_total()));
}

}  // namespace

SystemState advance_step(const SystemState& state,
                         const EffectiveCoefficients& coeffs,
                         const ScenarioParameters& params,
                         double h) {
    const StockDerivatives k1 = derivatives(state, coeffs, params);
    const SystemState s2 = shifted(state, k1, h / 2, state.t + h / 2);
    const StockDerivatives k2 = derivatives(s2, coeffs, params);
    const SystemState s3 = shifted(state, k2, h / 2, state.t + h / 2);
    const StockDerivatives k3 = derivatives(s3, coeffs, params);
    const SystemState s4 = shifted(state, k3, h, state.t + h);
    const StockDerivatives k4 = derivatives(s4, coeffs, params);

    SystemState out = state;
    out.t = state.t + h;
    const std::size_t n = state.P.size();
    auto combine = [&](double y, double a, double b2, double b3, double a4) {
        return y + h / 6 * (a + 2.0 * b2 + 2.0 * b3 + a4);
    };
    for (std::size_t i = 0; i < n; ++i) {
        out.P[i] = combine(state.P[i], k1.dP[i], k2.dP[i], k3.dP[i], k4.dP[i]);
        out.R[i] = combine(state.R[i], k1.dR[i], k2.dR[i], k3.dR[i], k4.dR[i]);
        out.Q[i] = combine(state.Q[i], k1.dQ[i], k2.dQ[i], k3.dQ[i], k4.dQ[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (double* v : {&out.P[i], &out.R[i], &out.Q[i]}) {
            if (!std::isfinite(*v)) {
                throw_non_finite(out, h);
            }
            if (*v <= 0.0) {  // also normalizes -0.0
                if (*v < 0.0) {
                    ++out.clamp_warnings;
                }
                *v = 0.0;
            }
        }
    }
    return out;
}

RegimePhase next_response(const SystemState& state,
                          const ScenarioParameters& params,
                          Rng& rng,
                          int last_clone) {
    const double u = rng.uniform01();
    bool primary = u < params.q(state.t);

    int clone = 1;
    switch (params.clone_selection) {
        case CloneSelection::Fixed:
            clone = 1;
            break;
        case CloneSelection::Cycle:
            clone = (last_clone < 1 || last_clone >= params.n_clones) ? 1 : last_clone + 1;
            break;
        case CloneSelection::Random:
            clone = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.n_clones)));
            break;
    }

    // A secondary response needs memory; an unprimed clone mounts a primary
    // response instead.
    if (!primary && !state.primed[static_cast<std::size_t>(clone)]) {
        primary = true;
    }

    RegimePhase next;
    next.phase = primary ? Phase::PrimaryExpansion : Phase::SecondaryExpansion;
    next.active_clone = clone;
    return next;
}

SystemState apply_intervention(const SystemState& state, const InterventionSpec& spec) {
    for (double f : {spec.fraction_p, spec.fraction_r, spec.fraction_q}) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw ConfigError("intervention fractions must lie in [0, 1]; got " + fmt17(f));
        }
    }
    SystemState out = state;
    const std::size_t n = state.P.size();
    for (std::size_t i = 0; i < n; ++i) {
        out.P[i] = state.P[i] * (1.0 - spec.fraction_p);
        out.R[i] = state.R[i] * (1.0 - spec.fraction_r);
        out.Q[i] = state.Q[i] * (1.0 - spec.fraction_q);
    }
    return out;
}

namespace {

void record_sample(Trajectory& traj, const SystemState& state,
                   const ScenarioParameters& params) {
    const double pt = state.p_total();
    const double rt = state.r_total();
    const double qt = state.q_total();
    const double total = pt + rt + qt;
    traj.time_days.push_back(state.t);
    traj.time_years.push_back(state.t / params.days_per_year);
    traj.p_total.push_back(pt);
    traj.r_total.push_back(rt);
    traj.q_total.push_back(qt);
    if (total > 0.0) {
        traj.precursor_prop.push_back(pt / total);
        traj.active_prop.push_back(rt / total);
        traj.quiescent_prop.push_back(qt / total);
    } else {
        traj.precursor_prop.push_back(0.0);
        traj.active_prop.push_back(0.0);
        traj.quiescent_prop.push_back(0.0);
    }
    traj.phase.push_back(to_string(state.phase.phase));
}

}  // namespace

Trajectory run_simulation(const ScenarioParameters& params,
                          std::uint64_t seed,
                          const std::vector<InterventionSpec>& interventions) {
    params.validate();
    const double h = params.step_days;
    const double horizon = params.horizon_days();
    for (const auto& iv : interventions) {
        for (double f : {iv.fraction_p, iv.fraction_r, iv.fraction_q}) {
            if (!(f >= 0.0 && f <= 1.0)) {
                throw ConfigError("intervention fractions must lie in [0, 1]; got " + fmt17(f));
            }
        }
        if (!(iv.time_days >= 0.0) || iv.time_days > horizon) {
            throw ConfigError("intervention time " + fmt17(iv.time_days) +
                              " days is outside the simulated horizon of " + fmt17(horizon) + " days");
        }
    }
    std::vector<InterventionSpec> pending = interventions;
    std::stable_sort(pending.begin(), pending.end(),
                     [](const InterventionSpec& a, const InterventionSpec& b) {
                         return a.time_days < b.time_days;
                     });

    const long long n_steps = grid_index(horizon, h);
    SystemState state = SystemState::initial(params);
    Rng rng(seed);

    Trajectory traj;
    traj.seed = seed;
    traj.parameter_fingerprint = params.fingerprint();

    long long onset_k = 1;
    long long onset_idx = grid_index(static_cast<double>(onset_k) * params.inter_response_interval, h);
    long long switch_idx = -1;
    int last_clone = 0;
    std::size_t next_intervention = 0;

    long long sample_k = 0;
    long long next_sample_idx = 0;

    for (long long n = 0; n <= n_steps; ++n) {
        state.t = static_cast<double>(n) * h;

        // Same-grid-point order: phase switch, onset, interventions, sample.
        if (switch_idx == n) {
            state.phase.phase = is_primary(state.phase.phase) ? Phase::PrimaryContraction
                                                              : Phase::SecondaryContraction;
            switch_idx = -1;
        }
        if (onset_idx == n) {
            // Close out the ongoing response: a finished primary response
            // leaves memory behind.
            if (is_primary(state.phase.phase)) {
                state.primed[static_cast<std::size_t>(state.phase.active_clone)] = true;
            }
            const RegimePhase next = next_response(state, params, rng, last_clone);
            state.phase = next;
            last_clone = next.active_clone;
            traj.responses.push_back({state.t, next.active_clone, is_primary(next.phase)});
            switch_idx = grid_index(state.t + params.expansion_duration, h);
            ++onset_k;
            onset_idx = grid_index(static_cast<double>(onset_k) * params.inter_response_interval, h);
        }
        while (next_intervention < pending.size() &&
               grid_index(pending[next_intervention].time_days, h) == n) {
            state = apply_intervention(state, pending[next_intervention]);
            ++next_intervention;
        }
        if (next_sample_idx == n) {
            record_sample(traj, state, params);
            ++sample_k;
            next_sample_idx = -1;
            for (;;) {
                const double st = static_cast<double>(sample_k) * params.output_interval_days;
                if (st > horizon * (1.0 + 1e-12)) {
                    break;
                }
                const long long idx = grid_index(st, h);
                if (idx > n) {
                    next_sample_idx = idx;
                    break;
                }
                ++sample_k;
            }
        }

        if (n < n_steps) {
            const EffectiveCoefficients coeffs = regime_coefficients(state.phase, params);
            state = advance_step(state, coeffs, params, h);
        }
    }

    traj.clamp_warnings = state.clamp_warnings;
    return traj;
}

EnsembleResult run_ensemble(const ScenarioParameters& params,
                            const std::vector<std::uint64_t>& seeds) {
    if (seeds.size() < 2) {
        throw ConfigError("ensemble needs at least two seeds");
    }
    EnsembleResult out;
    out.runs.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        out.runs.push_back(run_simulation(params, seed));
    }
    const std::size_t rows = out.runs.front().size();
    out.sd_p_total.reserve(rows);
    out.sd_r_total.reserve(rows);
    out.sd_q_total.reserve(rows);
    std::vector<double> column(seeds.size());
    const auto sd_at = [&](const std::vector<double> Trajectory::* member, std::size_t i) {
        for (std::size_t r = 0; r < out.runs.size(); ++r) {
            column[r] = (out.runs[r].*member)[i];
        }
        return sample_sd(column);
    };
    for (std::size_t i = 0; i < rows; ++i) {
        out.sd_p_total.push_back(sd_at(&Trajectory::p_total, i));
        out.sd_r_total.push_back(sd_at(&Trajectory::r_total, i));
        out.sd_q_total.push_back(sd_at(&Trajectory::q_total, i));
        out.max_sd_p_total = std::max(out.max_sd_p_total, out.sd_p_total.back());
        out.max_sd_r_total = std::max(out.max_sd_r_total, out.sd_r_total.back());
        out.max_sd_q_total = std::max(out.max_sd_q_total, out.sd_q_total.back());
    }
    return out;
}

InversionSummary find_inversion(const Trajectory& traj) {
    InversionSummary out{std::numeric_limits<double>::quiet_NaN(), 0};
    int prev = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double total = traj.p_total[i] + traj.r_total[i] + traj.q_total[i];
        if (!(total > 0.0)) {
            continue;
        }
        const int sign = traj.precursor_prop[i] > 0.5 ? 1 : -1;
        if (prev != 0 && sign != prev) {
            ++out.crossings;
            if (sign < 0 && std::isnan(out.inversion_time_years)) {
                out.inversion_time_years = traj.time_years[i];
            }
        }
        prev = sign;
    }
    return out;
}

namespace {

using Setter = std::function<void(ScenarioParameters&, double)>;

const std::map<std::string, Setter>& sweep_setters() {
    static const std::map<std::string, Setter> setters = {
        {"b", [](ScenarioParameters& p, double v) { p.b = v; }},
        {"f", [](ScenarioParameters& p, double v) { p.f = v; }},
        {"c", [](ScenarioParameters& p, double v) { p.c = v; }},
        {"dR", [](ScenarioParameters& p, double v) { p.dR = v; }},
        {"dQ", [](ScenarioParameters& p, double v) { p.dQ = v; }},
        {"m", [](ScenarioParameters& p, double v) { p.m = v; }},
        {"piN", [](ScenarioParameters& p, double v) { p.piN = v; }},
        {"q0", [](ScenarioParameters& p, double v) { p.q0 = v; }},
        {"lambda_q", [](ScenarioParameters& p, double v) { p.lambda_q = v; }},
        {"sigma0", [](ScenarioParameters& p, double v) { p.sigma0 = v; }},
        {"nu", [](ScenarioParameters& p, double v) { p.nu = v; }},
        {"inter_response_interval",
         [](ScenarioParameters& p, double v) { p.inter_response_interval = v; }},
        {"expansion_duration",
         [](ScenarioParameters& p, double v) { p.expansion_duration = v; }},
        {"P0", [](ScenarioParameters& p, double v) { p.P0 = v; }},
        {"R0", [](ScenarioParameters& p, double v) { p.R0 = v; }},
        {"Q0", [](ScenarioParameters& p, double v) { p.Q0 = v; }},
        {"horizon_years", [](ScenarioParameters& p, double v) { p.horizon_years = v; }},
        {"days_per_year", [](ScenarioParameters& p, double v) { p.days_per_year = v; }},
        {"step_days", [](ScenarioParameters& p, double v) { p.step_days = v; }},
        {"output_interval_days",
         [](ScenarioParameters& p, double v) { p.output_interval_days = v; }},
    };
    return setters;
}

}  // namespace

std::string sweep_parameter_names() {
    std::string names;
    for (const auto& [name, setter] : sweep_setters()) {
        if (!names.empty()) {
            names += ", ";
        }
        names += name;
    }
    return names;
}

std::vector<SweepRow> sweep(const ScenarioParameters& base,
                            const std::string& parameter,
                            const std::vector<double>& grid,
                            std::uint64_t seed) {
    if (grid.empty()) {
        throw ConfigError("sweep grid must be non-empty");
    }
    const auto& setters = sweep_setters();
    const auto it = setters.find(parameter);
    if (it == setters.end()) {
        throw ConfigError("unknown sweep parameter '" + parameter +
                          "'; valid names: " + sweep_parameter_names());
    }

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double value : grid) {
        ScenarioParameters params = base;
        it->second(params, value);
        const Trajectory traj = run_simulation(params, seed);

        SweepRow row;
        row.value = value;
        const InversionSummary inv = find_inversion(traj);
        row.inversion_time_years = inv.inversion_time_years;
        row.crossings = inv.crossings;
        if (traj.size() > 0) {
            const std::size_t last = traj.size() - 1;
            row.final_precursor_prop = traj.precursor_prop[last];
            row.final_active_prop = traj.active_prop[last];
            row.final_quiescent_prop = traj.quiescent_prop[last];
        }
        row.p_total_non_increasing = true;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            row.max_p_total = std::max(row.max_p_total, traj.p_total[i]);
            row.max_r_total = std::max(row.max_r_total, traj.r_total[i]);
            row.max_q_total = std::max(row.max_q_total, traj.q_total[i]);
            if (i > 0 && traj.p_total[i] > traj.p_total[i - 1]) {
                row.p_total_non_increasing = false;
            }
        }
        row.clamp_warnings = traj.clamp_warnings;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace tregsim
