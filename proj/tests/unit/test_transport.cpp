#include "fano/steadystate.hpp"
#include "fano/transport.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fano;

namespace {

TwoBathParams polarized(double nbar_L, double gl, double gr, double delta) {
    TwoBathParams tp;
    tp.eps_a = delta;
    tp.eps_b = 0.0;
    tp.g = delta / 2;
    tp.nbar_L = nbar_L;
    tp.gamma_L_aa = gl;
    tp.gamma_L_bb = gl;
    tp.gamma_R_aa = gr;
    tp.gamma_R_bb = gr;
    tp.f_L = 1.0;
    return tp;
}

ErrorCode code_of(const TwoBathParams& tp) {
    try {
        validate(tp);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::IoFailure;
}

double max_deviation(const Generator& a, const Generator& b) {
    return std::max((a.a_matrix - b.a_matrix).cwiseAbs().maxCoeff(),
                    (a.drive - b.drive).cwiseAbs().maxCoeff());
}

} // namespace

TEST(TwoBathValidate, Errors) {
    TwoBathParams tp = polarized(1, 1, 0, 1);
    tp.nbar_R = -1;
    EXPECT_EQ(code_of(tp), ErrorCode::NegativeRate);
    tp = polarized(1, 1, 0, 1);
    tp.f_L = 1.5;
    EXPECT_EQ(code_of(tp), ErrorCode::InvalidParameter);
    tp = polarized(1, 1, 0, 1);
    tp.g = 0.7;
    EXPECT_EQ(code_of(tp), ErrorCode::InvalidParameter);
    tp = polarized(1, 1, 0, 1);
    tp.eps_a = -1;
    tp.g = -0.5;
    EXPECT_EQ(code_of(tp), ErrorCode::NegativeRate);
    tp = polarized(1, 0, 0, 1);
    EXPECT_EQ(code_of(tp), ErrorCode::NonpositiveDecay);
}

TEST(TransportGenerator, NoInterferenceDecouplesCoherences) {
    TwoBathParams tp = polarized(2, 1, 0.5, 1);
    tp.f_L = 0;
    const Generator g = build_transport_generator(tp);
    EXPECT_EQ(g.a_matrix(0, 2), 0.0);
    EXPECT_EQ(g.a_matrix(1, 2), 0.0);
    EXPECT_EQ(g.a_matrix(2, 0), 0.0);
    EXPECT_EQ(g.a_matrix(2, 1), 0.0);
    EXPECT_EQ(g.drive(2), 0.0);
}

TEST(TransportGenerator, ZeroTemperatureHasNoDrive) {
    TwoBathParams tp = polarized(0, 1, 0.5, 1);
    tp.f_R = 0.5;
    const Generator g = build_transport_generator(tp);
    EXPECT_EQ(g.drive.cwiseAbs().maxCoeff(), 0.0);
}

TEST(TransportGenerator, HalfSplitCouplingExample) {
    // gamma^L = gamma^R = gamma / 2, nbar_L = nbar: gamma_i = gamma, r_i = nbar gamma / 2.
    const double nbar = 3.0;
    const TwoBathParams tp = polarized(nbar, 0.5, 0.5, 1.2);
    VParams v;
    v.explicit_pump = true;
    v.r_a = v.r_b = nbar / 2;
    v.delta = 1.2;
    const Generator a = build_transport_generator(tp);
    const Generator b = build_general(validate(v));
    EXPECT_LE(max_deviation(a, b), 1e-14);
}

TEST(TransportGenerator, MatchesOracleForAsymmetricCoupling) {
    TwoBathParams tp = polarized(1.5, 0.7, 0.2, 2.0);
    tp.gamma_L_bb = 0.4;
    tp.gamma_R_bb = 0.9;
    const Generator g = build_transport_generator(tp);
    const oracle::Gen o{0.9, 1.3, 1.05, 0.6, 0, 0, 2.0};
    const auto m = oracle::gen_matrix(o);
    const auto d = oracle::gen_drive(o);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(g.drive(i), static_cast<double>(d[i]), 1e-14);
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(g.a_matrix(i, j), static_cast<double>(m[i][j]), 1e-14);
    }
    ASSERT_TRUE(g.params.has_value());
    EXPECT_FALSE(g.params->is_symmetric());
}

TEST(TransportGenerator, SpontaneousInterferenceAddsVacuumCrossRate) {
    TwoBathParams tp = polarized(1.0, 1.0, 0.0, 1.0);
    const Generator off = build_transport_generator(tp);
    tp.spontaneous_interference = true;
    const Generator on = build_transport_generator(tp);
    EXPECT_NEAR(on.a_matrix(0, 2) - off.a_matrix(0, 2), -1.0, 1e-15);
    EXPECT_NEAR(on.a_matrix(2, 0) - off.a_matrix(2, 0), -0.5, 1e-15);
    EXPECT_EQ(on.drive, off.drive);
    EXPECT_FALSE(on.params.has_value());
}

TEST(ReduceToVSystem, MappingExample) {
    const VParams v = reduce_to_vsystem(polarized(2.0, 0.5, 0.5, 1.0));
    EXPECT_DOUBLE_EQ(v.gamma_a, 1.0);
    EXPECT_DOUBLE_EQ(v.r_a, 1.0);
    EXPECT_DOUBLE_EQ(v.r_a / v.gamma_a, 1.0);
    EXPECT_TRUE(v.explicit_pump);
}

TEST(ReduceToVSystem, AsymmetricCouplingGivesAsymmetricParams) {
    TwoBathParams tp = polarized(1.0, 1.0, 0.0, 1.0);
    tp.gamma_L_bb = 2.0;
    const VParams v = reduce_to_vsystem(tp);
    EXPECT_FALSE(v.is_symmetric());
    EXPECT_DOUBLE_EQ(v.r_b, 2.0);
}

TEST(ReduceToVSystem, ConfigMismatch) {
    for (auto mutate : {+[](TwoBathParams& t) { t.f_R = 0.3; }, +[](TwoBathParams& t) { t.nbar_R = 0.1; },
                        +[](TwoBathParams& t) { t.f_L = 0.9; },
                        +[](TwoBathParams& t) { t.spontaneous_interference = true; }}) {
        TwoBathParams tp = polarized(1, 1, 0.2, 1);
        mutate(tp);
        try {
            reduce_to_vsystem(tp);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ConfigMismatch);
        }
    }
}

TEST(TransportFromVSystem, GeneratorEquivalenceOnGrid) {
    for (int i = 0; i <= 12; ++i) {
        for (int j = 0; j <= 8; ++j) {
            const double nbar = std::pow(10.0, -3.0 + 0.25 * i);
            const double delta = std::pow(10.0, -2.0 + 0.375 * j);
            const VParams p = VParams::symmetric(nbar, delta);
            for (double scale : {1.0, 2.0, 10.0}) {
                const TwoBathParams tp = transport_from_vsystem(p, scale * nbar);
                const double dev = max_deviation(build_transport_generator(tp), build_general(p));
                EXPECT_LE(dev, 1e-14) << nbar << " " << delta << " " << scale;
            }
        }
    }
}

TEST(TransportFromVSystem, Infeasible) {
    try {
        transport_from_vsystem(VParams::symmetric(2.0, 1.0), 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConfigMismatch);
    }
}

TEST(TransportSteadyState, DetailedBalanceRestorationInSingleBath) {
    for (double nbar : {0.01, 1.0, 50.0}) {
        for (double delta : {0.1, 3.0}) {
            const TwoBathParams tp = polarized(nbar, 1.0, 0.0, delta);
            const VParams v = reduce_to_vsystem(tp);
            EXPECT_DOUBLE_EQ(v.r_a / v.gamma_a, nbar);
            const SteadyState a = solve_linear(build_transport_generator(tp));
            const SteadyState b = closed_form(VParams::symmetric(nbar, delta));
            EXPECT_NEAR(a.rho_aa, b.rho_aa, 1e-13 * std::max(1.0, b.rho_aa));
            EXPECT_NEAR(a.re_ab, b.re_ab, 1e-13);
            EXPECT_NEAR(a.im_ab, b.im_ab, 1e-13);
        }
    }
}

TEST(HeatFlux, UnitExample) {
    const TwoBathParams tp = polarized(1.0, 1.0, 0.0, 1.0);
    const SteadyState ss = solve_linear(build_transport_generator(tp));
    EXPECT_NEAR(heat_flux(ss.state(), tp.g), -1.0 / 7.0, 1e-12);
}

TEST(HeatFlux, LinearInCouplingAndZeroWithoutCoherence) {
    const DensityState s{0.5, 0.2, 0.2, 0.1, -0.05};
    EXPECT_DOUBLE_EQ(heat_flux(s, 1.0), 2 * heat_flux(s, 0.5));
    EXPECT_EQ(heat_flux(DensityState{0.6, 0.2, 0.2, 0.1, 0.0}, 3.0), 0.0);
}

TEST(HeatFlux, SteadyStateFluxFormulaAndLimits) {
    for (double nbar : {0.01, 1.0, 30.0}) {
        for (double delta : {0.05, 2.0, 20.0}) {
            const TwoBathParams tp = polarized(nbar, 1.0, 0.0, delta);
            const SteadyState ss = solve_linear(build_transport_generator(tp));
            const double j = heat_flux(ss.state(), tp.g);
            const double re = closed_form(VParams::symmetric(nbar, delta)).re_ab;
            EXPECT_LT(j, 0.0);
            EXPECT_NEAR(j, 4 * tp.g * (-delta / (nbar + 1.0)) * re, 1e-13 * std::max(1.0, std::abs(j)));
        }
    }
    const auto flux_at = [](double nbar, double delta) {
        const TwoBathParams tp = polarized(nbar, 1.0, 0.0, delta);
        return heat_flux(solve_linear(build_transport_generator(tp)).state(), tp.g);
    };
    EXPECT_LT(std::abs(flux_at(1.0, 1e-4)), 1e-8);
    EXPECT_LT(std::abs(flux_at(1e-6, 1.0)), 1e-6);
}

TEST(TransportGenerator, RandomReducibleDrawsMatchVSystem) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        TwoBathParams tp = polarized(5 * u(rng), 0.1 + u(rng), u(rng), 4 * u(rng));
        tp.gamma_L_bb = 0.1 + u(rng);
        tp.gamma_R_bb = u(rng);
        const double dev = max_deviation(build_transport_generator(tp), build_general(reduce_to_vsystem(tp)));
        EXPECT_LE(dev, 1e-14);
    }
}
