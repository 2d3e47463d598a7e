#include "tregsim/state.hpp"

#include <numeric>

namespace tregsim {

SystemState SystemState::initial(const ScenarioParameters& params) {
    SystemState state;
    const std::size_t n = static_cast<std::size_t>(params.n_clones) + 1;
    state.P.assign(n, 0.0);
    state.R.assign(n, 0.0);
    state.Q.assign(n, 0.0);
    state.P[0] = params.P0;
    state.R[0] = params.R0;
    state.Q[0] = params.Q0;
    state.primed.assign(n, false);
    return state;
}

double SystemState::p_total() const {
    return std::accumulate(P.begin(), P.end(), 0.0);
}

double SystemState::r_total() const {
    return std::accumulate(R.begin(), R.end(), 0.0);
}

double SystemState::q_total() const {
    return std::accumulate(Q.begin(), Q.end(), 0.0);
}

}  // namespace tregsim
