#pragma once

#include <cstdint>
#include <vector>

#include "tregsim/regime.hpp"

namespace tregsim {

// Full hybrid state: continuous stocks plus the discrete regime. Index 0 of
// each stock vector is the nonspecific pool; indices 1..n_clones are the
// antigen-specific clones. primed[i] marks clones that have completed a
// primary response and therefore hold memory.
struct SystemState {
    double t = 0.0;  // days
    std::vector<double> P;
    std::vector<double> R;
    std::vector<double> Q;
    RegimePhase phase;
    std::vector<bool> primed;

    // Stocks clamped to zero after an undershoot; carried with the state so
    // callers can report how often the integrator was pushed negative.
    std::uint64_t clamp_warnings = 0;

    static SystemState initial(const ScenarioParameters& params);

    double p_total() const;
    double r_total() const;
    double q_total() const;
    double total() const { return p_total() + r_total() + q_total(); }
};

// d/dt of every stock, same layout as SystemState.
struct StockDerivatives {
    std::vector<double> dP;
    std::vector<double> dR;
    std::vector<double> dQ;
};

}  // namespace tregsim
