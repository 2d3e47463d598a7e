#include "tregsim/parameters.hpp"

#include <cmath>
#include <cstdint>

#include "tregsim/errors.hpp"
#include "tregsim/format.hpp"

namespace tregsim {

const char* to_string(CloneSelection sel) {
    switch (sel) {
        case CloneSelection::Fixed: return "fixed";
        case CloneSelection::Cycle: return "cycle";
        case CloneSelection::Random: return "random";
    }
    return "?";
}

CloneSelection clone_selection_from_string(const std::string& text) {
    if (text == "fixed") return CloneSelection::Fixed;
    if (text == "cycle") return CloneSelection::Cycle;
    if (text == "random") return CloneSelection::Random;
    throw ConfigError("clone_selection must be one of fixed, cycle, random; got '" + text + "'");
}

double ScenarioParameters::sigma(double t_days) const {
    return sigma0 * std::exp(-nu * t_days);
}

double ScenarioParameters::q(double t_days) const {
    const double raw = q0 * std::exp(-lambda_q * t_days);
    return std::min(1.0, std::max(0.0, raw));
}

namespace {

void require(bool ok, const char* message) {
    if (!ok) {
        throw ConfigError(message);
    }
}

}  // namespace

void ScenarioParameters::validate() const {
    require(std::isfinite(b) && b >= 0.0, "b must be a finite rate >= 0");
    require(std::isfinite(f) && f >= 0.0, "f must be a finite rate >= 0");
    require(std::isfinite(c) && c >= 0.0, "c must be a finite rate >= 0");
    require(std::isfinite(dR) && dR >= 0.0, "dR must be a finite rate >= 0");
    require(std::isfinite(dQ) && dQ >= 0.0, "dQ must be a finite rate >= 0");
    require(std::isfinite(m) && m >= 0.0, "m must be a finite rate >= 0");
    require(std::isfinite(piN) && piN >= 0.0 && piN <= 1.0, "piN must lie in [0, 1]");
    require(std::isfinite(q0) && q0 >= 0.0, "q0 must be >= 0");
    require(std::isfinite(lambda_q) && lambda_q >= 0.0, "lambda_q must be >= 0");
    require(std::isfinite(sigma0) && sigma0 >= 0.0, "sigma0 must be >= 0");
    require(std::isfinite(nu) && nu >= 0.0, "nu must be >= 0");
    require(std::isfinite(inter_response_interval) && inter_response_interval > 0.0,
            "inter_response_interval must be > 0");
    require(std::isfinite(expansion_duration) && expansion_duration > 0.0 &&
            expansion_duration < inter_response_interval,
            "expansion_duration must lie in (0, inter_response_interval)");
    require(std::isfinite(P0) && P0 >= 0.0, "P0 must be >= 0");
    require(std::isfinite(R0) && R0 >= 0.0, "R0 must be >= 0");
    require(std::isfinite(Q0) && Q0 >= 0.0, "Q0 must be >= 0");
    require(n_clones >= 1, "n_clones must be >= 1");
    require(std::isfinite(horizon_years) && horizon_years >= 0.0, "horizon_years must be >= 0");
    require(std::isfinite(days_per_year) && days_per_year > 0.0, "days_per_year must be > 0");
    require(std::isfinite(step_days) && step_days > 0.0, "step_days must be > 0");
    require(std::isfinite(output_interval_days) && output_interval_days > 0.0,
            "output_interval_days must be > 0");

    // Grid feasibility: an expansion must span at least one step, and the
    // contraction must regain the grid before the next onset fires.
    require(step_days <= expansion_duration,
            "step_days must not exceed expansion_duration (expansion would vanish on the grid)");
    require(expansion_duration + 2.0 * step_days <= inter_response_interval,
            "expansion_duration + 2*step_days must not exceed inter_response_interval");
    require(output_interval_days >= step_days,
            "output_interval_days must be >= step_days");

    // q(t) in [0,1] for all t >= 0 reduces to the t = 0 endpoint since the
    // schedule is non-increasing; the clamp covers q0 > 1 by policy, but an
    // explicit q0 > 1 is almost surely a typo.
    require(q0 <= 1.0, "q0 must lie in [0, 1]");
}

std::string ScenarioParameters::fingerprint() const {
    std::string canon;
    const double numeric[] = {
        b, f, c, dR, dQ, m, piN, q0, lambda_q, sigma0, nu,
        inter_response_interval, expansion_duration, P0, R0, Q0,
        horizon_years, days_per_year, step_days, output_interval_days,
    };
    for (double v : numeric) {
        canon += fmt17(v);
        canon += ';';
    }
    canon += std::to_string(n_clones);
    canon += ';';
    canon += to_string(clone_selection);
    canon += ';';
    canon += global_quiescent_decay ? '1' : '0';

    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace tregsim
