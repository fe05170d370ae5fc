#include "fano/fano.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

void BM_ClosedForm(benchmark::State& state) {
    const fano::VParams p = fano::VParams::symmetric(1e3, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(fano::closed_form(p));
}
BENCHMARK(BM_ClosedForm);

void BM_SolveLinearSymmetric(benchmark::State& state) {
    const fano::Generator g = fano::build_symmetric(fano::VParams::symmetric(1e3, 10.0));
    for (auto _ : state) benchmark::DoNotOptimize(fano::solve_linear(g));
}
BENCHMARK(BM_SolveLinearSymmetric);

void BM_SolveLinearGeneral(benchmark::State& state) {
    fano::VParams p;
    p.gamma_b = 1.5;
    p.nbar = 2.0;
    p.delta = 3.0;
    const fano::Generator g = fano::build_general(fano::validate(p));
    for (auto _ : state) benchmark::DoNotOptimize(fano::solve_linear(g));
}
BENCHMARK(BM_SolveLinearGeneral);

void BM_Propagate(benchmark::State& state) {
    const double nbar = std::pow(10.0, static_cast<double>(state.range(0)));
    const fano::Generator g = fano::build_symmetric(fano::VParams::symmetric(nbar, 10.0));
    const double t_end = fano::steady_state_horizon(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fano::propagate(g, fano::DensityState::ground(), t_end, 201));
    }
}
BENCHMARK(BM_Propagate)->DenseRange(-3, 3, 3)->Unit(benchmark::kMillisecond);

void BM_EigenAnalysis(benchmark::State& state) {
    const fano::Generator g = fano::build_general(fano::VParams::symmetric(1.0, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(fano::eigen_analysis(g));
}
BENCHMARK(BM_EigenAnalysis);

void BM_Sweep(benchmark::State& state) {
    const std::vector<fano::Axis> axes{{"nbar", 1e-3, 1e3, 61, fano::Spacing::Log},
                                       {"delta", 1e-2, 1e2, 61, fano::Spacing::Log}};
    const std::vector<std::string> obs{"rho_aa", "re_ab", "im_ab", "c_ratio"};
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fano::run_sweep(fano::VParams::symmetric(0, 0), axes, obs, threads));
    }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
