#include "tregsim/model.hpp"

namespace tregsim {

StockDerivatives derivatives(const SystemState& state,
                             const EffectiveCoefficients& coeffs,
                             const ScenarioParameters& params) {
    const std::size_t n = state.P.size();
    StockDerivatives d;
    d.dP.assign(n, 0.0);
    d.dR.assign(n, 0.0);
    d.dQ.assign(n, 0.0);

    const double maturation = coeffs.m_eff * params.piN * state.P[0];
    d.dP[0] = params.sigma(state.t) - maturation;

    const int s = state.phase.active_clone;
    if (s > 0) {
        const double Rs = state.R[s];
        const double Qs = state.Q[s];
        const double reactivation = coeffs.f_eff * Qs;
        const double quiescence = coeffs.c_eff * Rs;
        d.dR[s] = maturation + coeffs.b_eff * Rs + reactivation - quiescence - coeffs.dR_eff * Rs;
        d.dQ[s] = quiescence - reactivation - coeffs.dQ_eff * Qs;
    }

    if (params.global_quiescent_decay && is_contraction(state.phase.phase)) {
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<int>(i) == s) {
                continue;  // already carries its own dQ term
            }
            d.dQ[i] -= coeffs.dQ_eff * state.Q[i];
        }
    }

    return d;
}

}  // namespace tregsim
