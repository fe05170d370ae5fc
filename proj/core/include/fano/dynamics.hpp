// dynamics.hpp — time propagation and spectral analysis of x' = A x + d.

#pragma once

#include "fano/core.hpp"
#include "fano/generator.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace fano {

struct IntegratorInfo {
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    std::size_t steps = 0;
};

struct TimeSeries {
    std::vector<double> times; // units of 1/gamma, strictly increasing
    std::vector<DensityState> states;
    std::optional<VParams> params;
    IntegratorInfo integrator;

    std::size_t size() const noexcept { return times.size(); }
};

struct PropagateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_steps = 50'000'000;
};

// Integrates x' = A x + d from t = 0 to t_end with an adaptive Dormand-Prince
// 5(4) scheme and samples the dense output on n_points equally spaced times
// (t = 0 and t = t_end included).
// Throws Error{InvalidInitial} for an invalid initial state or t_end <= 0,
// Error{StepFailure} when the tolerance cannot be met within max_steps.
TimeSeries propagate(const Generator& gen, const DensityState& initial, double t_end,
                     std::size_t n_points, const PropagateOptions& options = {});

enum class Regime { Underdamped, Overdamped };

std::string_view to_string(Regime regime) noexcept;

struct EigenReport {
    std::vector<std::complex<double>> eigenvalues;
    double slowest_timescale = 0.0; // 1 / min |Re lambda|
    Regime regime = Regime::Overdamped;
};

// Regime is underdamped iff Delta > r + gamma (mean rates for asymmetric
// params). Generators without a parameter echo are classified from the spectrum.
EigenReport eigen_analysis(const Generator& gen);

// Heuristic end time for "run to steady state": 40 slowest timescales.
double steady_state_horizon(const Generator& gen);

// Isotropic-drive quasi-steady coherence lifetime 2 gamma / Delta^2 (units of
// 1/gamma). Quoted for isotropic driving; an estimate only. Throws
// Error{RegimeMismatch} for Delta > gamma; +inf at Delta = 0.
double quasi_steady_lifetime(const VParams& params);

// First sampled time at which ||x(t) - target||_2 < rel_threshold * ||target||_2
// and stays below for the rest of the series; empty if never.
std::optional<double> settling_time(const Generator& gen, const TimeSeries& series,
                                    const DensityState& target, double rel_threshold);

} // namespace fano
