#pragma once

#include "tregsim/parameters.hpp"
#include "tregsim/regime.hpp"
#include "tregsim/state.hpp"

namespace tregsim {

// Flow semantics, with s the responding clone:
//   dP0 = sigma(t) - m_eff*piN*P0
//   dRs = m_eff*piN*P0 + b_eff*Rs + f_eff*Qs - c_eff*Rs - dR_eff*Rs
//   dQs = c_eff*Rs - f_eff*Qs - dQ_eff*Qs
// Every other stock is frozen (zero derivative), except that
// global_quiescent_decay extends the dQ drain to all quiescent pools during
// any contraction. Maturation drains the shared precursor pool scaled by piN,
// identically for primary and secondary responses, which is what makes the
// precursor path independent of the stochastic draws.
StockDerivatives derivatives(const SystemState& state,
                             const EffectiveCoefficients& coeffs,
                             const ScenarioParameters& params);

}  // namespace tregsim
