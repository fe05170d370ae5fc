// sweep.hpp — steady-state observables over parameter grids.

#pragma once

#include "fano/core.hpp"
#include "fano/steadystate.hpp"
#include "fano/table.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fano {

enum class Spacing { Linear, Log };

struct Axis {
    std::string name; // nbar | delta | gamma_d | gamma_rel
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 2;
    Spacing spacing = Spacing::Linear;

    // Throws Error{InvalidAxis}: count == 0, count == 1 with min != max,
    // min > max, non-positive bounds on a log axis.
    std::vector<double> values() const;
};

std::span<const std::string_view> sweep_axes() noexcept;
std::span<const std::string_view> sweep_observables() noexcept;

// Observable of a steady state. flux is 4 g Im rho_ab with g = Delta / 2.
// Throws Error{UnknownObservable}.
double observable_value(std::string_view name, const VParams& params, const SteadyState& ss);

// Applies an axis value to a parameter set. Throws Error{UnknownAxis}.
void set_parameter(VParams& params, std::string_view name, double value);

struct SweepGrid {
    VParams base;
    std::vector<Axis> axes;
    std::vector<std::string> observables;
    // Row-major over the axis product (first axis slowest), one entry per
    // observable within a point.
    std::vector<double> values;

    std::size_t point_count() const noexcept;
    // Columns: one per axis, then one per observable.
    Table to_table() const;
};

// Worker count from FANO_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1).
unsigned default_thread_count();

// Evaluates every grid point with the closed form for symmetric params and the
// linear solve otherwise (NaN where that solve is singular). threads == 0 means
// default_thread_count(). Output does not depend on the thread count.
SweepGrid run_sweep(const VParams& base, const std::vector<Axis>& axes,
                    const std::vector<std::string>& observables, unsigned threads = 0);

} // namespace fano
