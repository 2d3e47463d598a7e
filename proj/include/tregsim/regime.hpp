#pragma once

#include <string>

#include "tregsim/parameters.hpp"

namespace tregsim {

enum class Phase {
    NoResponse,
    PrimaryExpansion,
    PrimaryContraction,
    SecondaryExpansion,
    SecondaryContraction,
};

const char* to_string(Phase phase);

bool is_expansion(Phase phase);
bool is_contraction(Phase phase);
bool is_primary(Phase phase);

// Current regime of the state machine. active_clone is the 1-based clone
// index engaged by the ongoing response; 0 means none, which holds exactly
// when phase == NoResponse.
struct RegimePhase {
    Phase phase = Phase::NoResponse;
    int active_clone = 0;
};

// Per-day rates actually applied in the current phase; each is either zero or
// its ScenarioParameters counterpart.
struct EffectiveCoefficients {
    double b_eff = 0.0;
    double f_eff = 0.0;
    double m_eff = 0.0;
    double c_eff = 0.0;
    double dR_eff = 0.0;
    double dQ_eff = 0.0;
};

// Expansion applies growth rates (b, m, and f when secondary); contraction
// applies reversion and death (c, dR, dQ); no response applies nothing.
EffectiveCoefficients regime_coefficients(const RegimePhase& phase,
                                          const ScenarioParameters& params);

}  // namespace tregsim
