#include "tregsim/regime.hpp"

namespace tregsim {

const char* to_string(Phase phase) {
    switch (phase) {
        case Phase::NoResponse: return "no_response";
        case Phase::PrimaryExpansion: return "primary_expansion";
        case Phase::PrimaryContraction: return "primary_contraction";
        case Phase::SecondaryExpansion: return "secondary_expansion";
        case Phase::SecondaryContraction: return "secondary_contraction";
    }
    return "?";
}

bool is_expansion(Phase phase) {
    return phase == Phase::PrimaryExpansion || phase == Phase::SecondaryExpansion;
}

bool is_contraction(Phase phase) {
    return phase == Phase::PrimaryContraction || phase == Phase::SecondaryContraction;
}

bool is_primary(Phase phase) {
    return phase == Phase::PrimaryExpansion || phase == Phase::PrimaryContraction;
}

EffectiveCoefficients regime_coefficients(const RegimePhase& phase,
                                          const ScenarioParameters& params) {
    EffectiveCoefficients out;
    switch (phase.phase) {
        case Phase::NoResponse:
            break;
        case Phase::PrimaryExpansion:
            out.b_eff = params.b;
            out.m_eff = params.m;
            break;
        case Phase::SecondaryExpansion:
            out.b_eff = params.b;
            out.f_eff = params.f;
            out.m_eff = params.m;
            break;
        case Phase::PrimaryContraction:
        case Phase::SecondaryContraction:
            out.c_eff = params.c;
            out.dR_eff = params.dR;
            out.dQ_eff = params.dQ;
            break;
    }
    return out;
}

}  // namespace tregsim
