#include <cmath>

#include "doctest.h"
#include "tregsim/errors.hpp"
#include "tregsim/model.hpp"
#include "tregsim/rng.hpp"

using namespace tregsim;

namespace {

ScenarioParameters nonzero_params() {
    ScenarioParameters p;
    p.b = 0.11;
    p.f = 0.3;
    p.c = 0.21;
    p.dR = 0.031;
    p.dQ = 0.011;
    p.m = 0.051;
    p.piN = 0.7;
    return p;
}

SystemState one_clone_state(double P0, double R1, double Q1, Phase phase) {
    ScenarioParameters p;
    SystemState s = SystemState::initial(p);
    s.P[0] = P0;
    s.R[1] = R1;
    s.Q[1] = Q1;
    s.phase.phase = phase;
    s.phase.active_clone = phase == Phase::NoResponse ? 0 : 1;
    return s;
}

}  // namespace

TEST_CASE("regime coefficients per phase") {
    const ScenarioParameters p = nonzero_params();

    SUBCASE("no response applies nothing") {
        const auto c = regime_coefficients({Phase::NoResponse, 0}, p);
        CHECK(c.b_eff == 0.0);
        CHECK(c.f_eff == 0.0);
        CHECK(c.m_eff == 0.0);
        CHECK(c.c_eff == 0.0);
        CHECK(c.dR_eff == 0.0);
        CHECK(c.dQ_eff == 0.0);
    }
    SUBCASE("primary expansion applies b and m only") {
        const auto c = regime_coefficients({Phase::PrimaryExpansion, 1}, p);
        CHECK(c.b_eff == p.b);
        CHECK(c.m_eff == p.m);
        CHECK(c.f_eff == 0.0);
        CHECK(c.c_eff == 0.0);
        CHECK(c.dR_eff == 0.0);
        CHECK(c.dQ_eff == 0.0);
    }
    SUBCASE("primary contraction zeroes b and applies c, dR, dQ") {
        const auto c = regime_coefficients({Phase::PrimaryContraction, 1}, p);
        CHECK(c.b_eff == 0.0);
        CHECK(c.m_eff == 0.0);
        CHECK(c.c_eff == p.c);
        CHECK(c.dR_eff == p.dR);
        CHECK(c.dQ_eff == p.dQ);
    }
    SUBCASE("secondary expansion adds f") {
        const auto c = regime_coefficients({Phase::SecondaryExpansion, 1}, p);
        CHECK(c.b_eff == p.b);
        CHECK(c.f_eff == 0.3);
        CHECK(c.m_eff == p.m);
        CHECK(c.c_eff == 0.0);
        CHECK(c.dR_eff == 0.0);
        CHECK(c.dQ_eff == 0.0);
    }
    SUBCASE("secondary contraction matches primary contraction") {
        const auto a = regime_coefficients({Phase::PrimaryContraction, 1}, p);
        const auto b = regime_coefficients({Phase::SecondaryContraction, 1}, p);
        CHECK(a.c_eff == b.c_eff);
        CHECK(a.dR_eff == b.dR_eff);
        CHECK(a.dQ_eff == b.dQ_eff);
        CHECK(b.b_eff == 0.0);
        CHECK(b.f_eff == 0.0);
    }
    SUBCASE("pure function: repeated calls agree") {
        const auto a = regime_coefficients({Phase::SecondaryExpansion, 1}, p);
        const auto b = regime_coefficients({Phase::SecondaryExpansion, 1}, p);
        CHECK(a.b_eff == b.b_eff);
        CHECK(a.f_eff == b.f_eff);
    }
}

TEST_CASE("derivatives implement the stated flows") {
    SUBCASE("no rates, no input: everything still") {
        ScenarioParameters p;
        p.b = p.f = p.c = p.dR = p.dQ = p.m = 0.0;
        p.sigma0 = 0.0;
        SystemState s = one_clone_state(100.0, 10.0, 5.0, Phase::PrimaryExpansion);
        const auto d = derivatives(s, regime_coefficients(s.phase, p), p);
        for (std::size_t i = 0; i < d.dP.size(); ++i) {
            CHECK(d.dP[i] == 0.0);
            CHECK(d.dR[i] == 0.0);
            CHECK(d.dQ[i] == 0.0);
        }
    }
    SUBCASE("maturation moves rate times stock from P0 to the active clone") {
        ScenarioParameters p;
        p.b = p.f = p.c = p.dR = p.dQ = 0.0;
        p.m = 0.1;
        p.piN = 1.0;
        p.sigma0 = 0.0;
        SystemState s = one_clone_state(100.0, 0.0, 0.0, Phase::PrimaryExpansion);
        const auto d = derivatives(s, regime_coefficients(s.phase, p), p);
        CHECK(d.dP[0] == -10.0);
        CHECK(d.dR[1] == 10.0);
        CHECK(d.dQ[1] == 0.0);
    }
    SUBCASE("contraction drains actives into quiescents and deaths") {
        ScenarioParameters p;
        p.b = p.f = p.m = p.dQ = 0.0;
        p.c = 0.2;
        p.dR = 0.1;
        p.sigma0 = 0.0;
        SystemState s = one_clone_state(0.0, 50.0, 0.0, Phase::PrimaryContraction);
        const auto d = derivatives(s, regime_coefficients(s.phase, p), p);
        CHECK(d.dR[1] == -15.0);
        CHECK(d.dQ[1] == 10.0);
    }
    SUBCASE("inactive clones are frozen") {
        ScenarioParameters p = nonzero_params();
        p.n_clones = 3;
        SystemState s = SystemState::initial(p);
        s.P[0] = 64.0;
        s.R[1] = 8.0;
        s.Q[1] = 4.0;
        s.R[2] = 16.0;
        s.Q[2] = 32.0;
        s.phase = {Phase::SecondaryContraction, 2};
        const auto d = derivatives(s, regime_coefficients(s.phase, p), p);
        CHECK(d.dR[1] == 0.0);
        CHECK(d.dQ[1] == 0.0);
        CHECK(d.dP[1] == 0.0);
        CHECK(d.dR[3] == 0.0);
        CHECK(d.dQ[2] != 0.0);
    }
    SUBCASE("global quiescent decay reaches every quiescent pool in contraction") {
        ScenarioParameters p = nonzero_params();
        p.n_clones = 2;
        p.global_quiescent_decay = true;
        SystemState s = SystemState::initial(p);
        s.Q[0] = 100.0;
        s.Q[1] = 50.0;
        s.Q[2] = 10.0;
        s.phase = {Phase::PrimaryContraction, 1};
        const auto d = derivatives(s, regime_coefficients(s.phase, p), p);
        CHECK(d.dQ[0] == doctest::Approx(-p.dQ * 100.0));
        CHECK(d.dQ[2] == doctest::Approx(-p.dQ * 10.0));
        // Expansion phases stay untouched by the flag.
        s.phase = {Phase::SecondaryExpansion, 1};
        const auto e = derivatives(s, regime_coefficients(s.phase, p), p);
        CHECK(e.dQ[0] == 0.0);
        CHECK(e.dQ[2] == 0.0);
    }
}

TEST_CASE("mass transfer conserves the total") {
    // With growth and death off and no thymic input the flows only move cells
    // between stocks.
    ScenarioParameters p = nonzero_params();
    p.b = p.dR = p.dQ = 0.0;
    p.sigma0 = 0.0;

    SUBCASE("dyadic stocks: the derivative sum is exactly zero") {
        // Values of the form k/2^j make every product and sum exact in
        // binary floating point, so conservation can be asserted bitwise.
        p.f = 0.25;
        p.c = 0.5;
        p.m = 0.125;
        p.piN = 0.5;
        Rng rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            const double P0 = static_cast<double>(rng.below(1 << 20)) / 16.0;
            const double R1 = static_cast<double>(rng.below(1 << 20)) / 32.0;
            const double Q1 = static_cast<double>(rng.below(1 << 20)) / 64.0;
            const Phase phase = trial % 2 == 0 ? Phase::SecondaryExpansion
                                               : Phase::SecondaryContraction;
            SystemState s = one_clone_state(P0, R1, Q1, phase);
            const auto d = derivatives(s, regime_coefficients(s.phase, p), p);
            double sum = 0.0;
            for (std::size_t i = 0; i < d.dP.size(); ++i) {
                sum += d.dP[i] + d.dR[i] + d.dQ[i];
            }
            CHECK(sum == 0.0);
        }
    }
    SUBCASE("arbitrary stocks: the derivative sum vanishes to rounding") {
        Rng rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const double P0 = rng.uniform01() * 1e6;
            const double R1 = rng.uniform01() * 1e5;
            const double Q1 = rng.uniform01() * 1e5;
            const Phase phase = trial % 2 == 0 ? Phase::SecondaryExpansion
                                               : Phase::SecondaryContraction;
            SystemState s = one_clone_state(P0, R1, Q1, phase);
            const auto d = derivatives(s, regime_coefficients(s.phase, p), p);
            double sum = 0.0;
            double scale = 1.0;
            for (std::size_t i = 0; i < d.dP.size(); ++i) {
                sum += d.dP[i] + d.dR[i] + d.dQ[i];
                scale += std::abs(d.dP[i]) + std::abs(d.dR[i]) + std::abs(d.dQ[i]);
            }
            CHECK(std::abs(sum) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("derivatives are linear in the stocks") {
    // Doubling is exact in floating point, so the check is bitwise.
    ScenarioParameters p = nonzero_params();
    p.sigma0 = 0.0;  // the inhomogeneous term is excluded from linearity
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        SystemState s = one_clone_state(rng.uniform01() * 1e6, rng.uniform01() * 1e4,
                                        rng.uniform01() * 1e4, Phase::SecondaryExpansion);
        SystemState doubled = s;
        for (std::size_t i = 0; i < s.P.size(); ++i) {
            doubled.P[i] = 2.0 * s.P[i];
            doubled.R[i] = 2.0 * s.R[i];
            doubled.Q[i] = 2.0 * s.Q[i];
        }
        const auto coeffs = regime_coefficients(s.phase, p);
        const auto d1 = derivatives(s, coeffs, p);
        const auto d2 = derivatives(doubled, coeffs, p);
        for (std::size_t i = 0; i < d1.dP.size(); ++i) {
            CHECK(d2.dP[i] == 2.0 * d1.dP[i]);
            CHECK(d2.dR[i] == 2.0 * d1.dR[i]);
            CHECK(d2.dQ[i] == 2.0 * d1.dQ[i]);
        }
    }
}

TEST_CASE("parameter validation") {
    SUBCASE("defaults are valid") {
        ScenarioParameters p;
        CHECK_NOTHROW(p.validate());
    }
    SUBCASE("negative rate") {
        ScenarioParameters p;
        p.dR = -0.1;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("piN outside the unit interval") {
        ScenarioParameters p;
        p.piN = 1.5;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p.piN = -0.1;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("expansion must fit inside the response interval") {
        ScenarioParameters p;
        p.expansion_duration = p.inter_response_interval;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p.expansion_duration = 0.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("step must resolve the expansion") {
        ScenarioParameters p;
        p.step_days = 8.0;  // > expansion_duration = 7
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("output interval at least one step") {
        ScenarioParameters p;
        p.output_interval_days = 0.01;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("clone count") {
        ScenarioParameters p;
        p.n_clones = 0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("q0 beyond 1") {
        ScenarioParameters p;
        p.q0 = 1.2;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
}

TEST_CASE("response probability schedule stays a probability") {
    ScenarioParameters p;
    p.q0 = 1.0;
    p.lambda_q = 0.01;
    for (double t : {0.0, 1.0, 10.0, 100.0, 1e4, 1e6}) {
        const double q = p.q(t);
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
    }
    p.lambda_q = 0.0;
    CHECK(p.q(0.0) == 1.0);
    CHECK(p.q(5000.0) == 1.0);
}

TEST_CASE("thymic schedule decays exponentially") {
    ScenarioParameters p;
    p.sigma0 = 10.0;
    p.nu = 5e-4;
    CHECK(p.sigma(0.0) == 10.0);
    CHECK(p.sigma(1000.0) == doctest::Approx(10.0 * std::exp(-0.5)).epsilon(1e-14));
    CHECK(p.sigma(1e6) > 0.0);
}

TEST_CASE("parameter fingerprint tracks values") {
    ScenarioParameters a;
    ScenarioParameters b;
    CHECK(a.fingerprint() == b.fingerprint());
    b.dQ = 2e-5;
    CHECK(a.fingerprint() != b.fingerprint());
}
