#include "fano/steadystate.hpp"
#include "fano/sweep.hpp"
#include "fano/table.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

using namespace fano;

namespace {

std::string csv_of(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::IoFailure;
}

} // namespace

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0 / 7.0), "0.14285714285714285");
    EXPECT_EQ(format_double(1e-300), "1e-300");
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-30, 30);
    for (int k = 0; k < 1000; ++k) {
        const double v = std::pow(10.0, u(rng)) * (k % 2 ? -1 : 1);
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
}

TEST(ParseDouble, RejectsGarbage) {
    EXPECT_EQ(code_of([] { parse_double("1.0x"); }), ErrorCode::InvalidParameter);
    EXPECT_EQ(code_of([] { parse_double(""); }), ErrorCode::InvalidParameter);
    EXPECT_DOUBLE_EQ(parse_double(" +2.5 "), 2.5);
}

TEST(Csv, LayoutAndRoundTrip) {
    Table t;
    t.add_meta("figure", "x");
    t.add_meta("nbar", 0.001);
    t.columns = {"a", "b"};
    t.rows = {{1.0, 0.1}, {std::numeric_limits<double>::quiet_NaN(), -2.5e-20}};
    const std::string text = csv_of(t);
    EXPECT_EQ(text, "# figure=x,nbar=0.001\na,b\n1,0.1\nnan,-2.5e-20\n");
    std::istringstream is(text);
    const Table back = read_csv(is);
    EXPECT_EQ(back.metadata, t.metadata);
    EXPECT_EQ(back.columns, t.columns);
    ASSERT_EQ(back.rows.size(), 2u);
    EXPECT_EQ(back.rows[0], t.rows[0]);
    EXPECT_TRUE(std::isnan(back.rows[1][0]));
    EXPECT_EQ(back.rows[1][1], -2.5e-20);
}

TEST(Csv, UnwritablePathIsIoFailure) {
    EXPECT_EQ(code_of([] { write_csv_file("/nonexistent-dir/x.csv", Table{}); }), ErrorCode::IoFailure);
}

TEST(Axis, Values) {
    const auto lin = Axis{"delta", 0.0, 1.0, 5, Spacing::Linear}.values();
    EXPECT_EQ(lin, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    const auto lg = Axis{"nbar", 1e-3, 1e3, 7, Spacing::Log}.values();
    ASSERT_EQ(lg.size(), 7u);
    EXPECT_EQ(lg.front(), 1e-3);
    EXPECT_EQ(lg.back(), 1e3);
    EXPECT_NEAR(lg[3], 1.0, 1e-15);
    EXPECT_EQ(Axis("gamma_d", 2.0, 2.0, 1).values(), std::vector<double>{2.0});
}

TEST(Axis, Errors) {
    EXPECT_EQ(code_of([] { Axis{"temperature", 0, 1, 3}.values(); }), ErrorCode::UnknownAxis);
    EXPECT_EQ(code_of([] { Axis{"nbar", 0, 1, 0}.values(); }), ErrorCode::InvalidAxis);
    EXPECT_EQ(code_of([] { Axis{"nbar", 0, 1, 1}.values(); }), ErrorCode::InvalidAxis);
    EXPECT_EQ(code_of([] { Axis{"nbar", 2, 1, 3}.values(); }), ErrorCode::InvalidAxis);
    EXPECT_EQ(code_of([] { Axis{"nbar", 0, 1, 3, Spacing::Log}.values(); }), ErrorCode::InvalidAxis);
}

TEST(Sweep, SinglePointMatchesClosedForm) {
    const SweepGrid g = run_sweep(VParams::symmetric(0, 0), {{"nbar", 1, 1, 1}, {"delta", 1, 1, 1}},
                                  {"rho_aa", "rho_bb", "rho_gg", "re_ab", "im_ab", "c_ratio",
                                   "canonical_rho_aa", "rel_intensity_diff", "flux"});
    const SteadyState ss = closed_form(VParams::symmetric(1, 1));
    ASSERT_EQ(g.values.size(), 9u);
    EXPECT_EQ(g.values[0], ss.rho_aa);
    EXPECT_EQ(g.values[1], ss.rho_bb);
    EXPECT_EQ(g.values[2], ss.rho_gg);
    EXPECT_EQ(g.values[3], ss.re_ab);
    EXPECT_EQ(g.values[4], ss.im_ab);
    EXPECT_NEAR(g.values[5], 2.0 / 3.0, 1e-15);
    EXPECT_EQ(g.values[6], 0.25);
    EXPECT_NEAR(g.values[7], ss.re_ab, 1e-15);
    EXPECT_NEAR(g.values[8], -1.0 / 7.0, 1e-15);
}

TEST(Sweep, RowOrderFirstAxisSlowest) {
    const SweepGrid g = run_sweep(VParams::symmetric(0, 0),
                                  {{"nbar", 0.1, 1.0, 2}, {"delta", 0.0, 2.0, 3}}, {"re_ab"}, 1);
    ASSERT_EQ(g.point_count(), 6u);
    ASSERT_EQ(g.values.size(), 6u);
    const Table t = g.to_table();
    ASSERT_EQ(t.rows.size(), 6u);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"nbar", "delta", "re_ab"}));
    EXPECT_EQ(t.rows[1][0], 0.1);
    EXPECT_EQ(t.rows[1][1], 1.0);
    EXPECT_EQ(t.rows[3][0], 1.0);
    EXPECT_EQ(t.rows[3][1], 0.0);
    for (const auto& row : t.rows) {
        EXPECT_EQ(row[2], closed_form(VParams::symmetric(row[0], row[1])).re_ab);
    }
}

TEST(Sweep, AsymmetricBaseUsesLinearSolve) {
    VParams base;
    base.gamma_b = 2.0;
    const SweepGrid g = run_sweep(base, {{"nbar", 0.5, 0.5, 1}, {"delta", 1, 1, 1}},
                                  {"rho_aa", "rho_bb", "canonical_rho_aa"});
    VParams p = base;
    p.nbar = 0.5;
    p.delta = 1;
    const SteadyState ss = solve_linear(build_general(validate(p)));
    EXPECT_EQ(g.values[0], ss.rho_aa);
    EXPECT_EQ(g.values[1], ss.rho_bb);
    EXPECT_TRUE(std::isnan(g.values[2]));
}

TEST(Sweep, Errors) {
    const VParams base = VParams::symmetric(0, 0);
    EXPECT_EQ(code_of([&] { run_sweep(base, {{"nbar", 0, 1, 2}}, {"entropy"}); }), ErrorCode::UnknownObservable);
    EXPECT_EQ(code_of([&] { run_sweep(base, {{"omega", 0, 1, 2}}, {"re_ab"}); }), ErrorCode::UnknownAxis);
    EXPECT_EQ(code_of([&] { run_sweep(base, {{"delta", -1, 1, 2}}, {"re_ab"}); }), ErrorCode::NegativeRate);
}

TEST(Sweep, SerialAndParallelAreByteIdentical) {
    const VParams base = VParams::symmetric(0, 0, 0.5);
    const std::vector<Axis> axes{{"nbar", 1e-3, 1e3, 31, Spacing::Log}, {"delta", 1e-2, 1e2, 29, Spacing::Log}};
    const std::vector<std::string> obs{"rho_aa", "re_ab", "im_ab", "c_ratio", "flux"};
    const std::string serial = csv_of(run_sweep(base, axes, obs, 1).to_table());
    EXPECT_EQ(serial, csv_of(run_sweep(base, axes, obs, 1).to_table()));
    for (unsigned threads : {2u, 3u, 8u}) {
        EXPECT_EQ(serial, csv_of(run_sweep(base, axes, obs, threads).to_table())) << threads;
    }
}

TEST(Sweep, ThreadCountFromEnvironment) {
    ::setenv("FANO_THREADS", "3", 1);
    EXPECT_EQ(default_thread_count(), 3u);
    ::setenv("FANO_THREADS", "zero", 1);
    EXPECT_GE(default_thread_count(), 1u);
    ::unsetenv("FANO_THREADS");
}

TEST(Sweep, CommonStrongPumpingLimitAlongNbar) {
    const SweepGrid g = run_sweep(VParams::symmetric(0, 0),
                                  {{"delta", 0.01, 1.0, 3, Spacing::Log}, {"nbar", 1e5, 1e5, 1}}, {"re_ab"});
    for (double v : g.values) EXPECT_NEAR(v, 0.25, 1e-4);
}

TEST(Sweep, OptimalDephasingRidge) {
    // Weak pumping: the maximum over gamma_d sits at gamma_d ~ Delta.
    const SweepGrid g = run_sweep(VParams::symmetric(0.01, 0),
                                  {{"delta", 4, 16, 4}, {"gamma_d", 0, 20, 2001}}, {"re_ab"});
    const auto deltas = Axis{"delta", 4, 16, 4}.values();
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const auto begin = g.values.begin() + static_cast<std::ptrdiff_t>(i * 2001);
        const auto best = std::max_element(begin, begin + 2001) - begin;
        EXPECT_NEAR(0.01 * static_cast<double>(best), deltas[i] - 1.01, 0.011);
    }
}
