#include "fano/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

namespace fano {

namespace {

constexpr std::array<std::string_view, 4> kAxes = {"nbar", "delta", "gamma_d", "gamma_rel"};
constexpr std::array<std::string_view, 9> kObservables = {
    "rho_aa", "rho_bb", "rho_gg", "re_ab", "im_ab",
    "c_ratio", "canonical_rho_aa", "rel_intensity_diff", "flux"};

bool known(std::span<const std::string_view> names, std::string_view name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::span<const std::string_view> sweep_axes() noexcept { return kAxes; }
std::span<const std::string_view> sweep_observables() noexcept { return kObservables; }

std::vector<double> Axis::values() const {
    if (!known(kAxes, name)) throw Error(ErrorCode::UnknownAxis, "unknown axis '" + name + "'");
    if (count == 0 || !(min <= max) || !std::isfinite(min) || !std::isfinite(max)) {
        throw Error(ErrorCode::InvalidAxis, "axis '" + name + "' needs finite min <= max and count >= 1");
    }
    if (count == 1) {
        if (min != max) throw Error(ErrorCode::InvalidAxis, "single-point axis '" + name + "' needs min == max");
        return {min};
    }
    if (spacing == Spacing::Log && !(min > 0.0)) {
        throw Error(ErrorCode::InvalidAxis, "log axis '" + name + "' needs positive bounds");
    }
    std::vector<double> v(count);
    const double steps = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = static_cast<double>(i) / steps;
        if (spacing == Spacing::Log) {
            const double lo = std::log10(min);
            const double hi = std::log10(max);
            v[i] = std::pow(10.0, lo + (hi - lo) * u);
        } else {
            v[i] = min + (max - min) * u;
        }
    }
    v.front() = min;
    v.back() = max;
    return v;
}

void set_parameter(VParams& p, std::string_view name, double value) {
    if (name == "nbar") {
        p.nbar = value;
        p.explicit_pump = false;
    } else if (name == "delta") {
        p.delta = value;
    } else if (name == "gamma_d") {
        p.gamma_d = value;
    } else if (name == "gamma_rel") {
        p.gamma_rel = value;
    } else {
        throw Error(ErrorCode::UnknownAxis, "unknown axis '" + std::string(name) + "'");
    }
}

double observable_value(std::string_view name, const VParams& p, const SteadyState& ss) {
    if (name == "rho_aa") return ss.rho_aa;
    if (name == "rho_bb") return ss.rho_bb;
    if (name == "rho_gg") return ss.rho_gg;
    if (name == "re_ab") return ss.re_ab;
    if (name == "im_ab") return ss.im_ab;
    if (name == "flux") return 4.0 * (0.5 * p.delta) * ss.im_ab;
    if (name == "c_ratio") return p.is_symmetric() ? c_ratio(p) : ss.re_ab / ss.rho_aa;
    if (name == "canonical_rho_aa") return p.is_symmetric() ? canonical_population(p) : kNaN;
    if (name == "rel_intensity_diff") {
        if (!p.is_symmetric()) return kNaN;
        const double rho_c = canonical_population(p);
        return rho_c > 0.0 ? (rho_c - ss.rho_aa) / rho_c : 0.0;
    }
    throw Error(ErrorCode::UnknownObservable, "unknown observable '" + std::string(name) + "'");
}

std::size_t SweepGrid::point_count() const noexcept {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.count;
    return n;
}

Table SweepGrid::to_table() const {
    Table t;
    t.add_meta("gamma_a", base.gamma_a);
    t.add_meta("gamma_b", base.gamma_b);
    t.add_meta("nbar", base.nbar);
    t.add_meta("delta", base.delta);
    t.add_meta("gamma_d", base.gamma_d);
    t.add_meta("gamma_rel", base.gamma_rel);
    for (const auto& a : axes) {
        t.add_meta("axis_" + a.name,
                   format_double(a.min) + ":" + format_double(a.max) + ":" + std::to_string(a.count) +
                       (a.spacing == Spacing::Log ? ":log" : ":lin"));
    }
    for (const auto& a : axes) t.columns.push_back(a.name);
    for (const auto& o : observables) t.columns.push_back(o);

    std::vector<std::vector<double>> axis_values;
    for (const auto& a : axes) axis_values.push_back(a.values());

    const std::size_t n_obs = observables.size();
    const std::size_t n_points = point_count();
    t.rows.reserve(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        std::vector<double> row;
        row.reserve(axes.size() + n_obs);
        std::size_t rem = k;
        std::vector<double> coords(axes.size());
        for (std::size_t ai = axes.size(); ai-- > 0;) {
            coords[ai] = axis_values[ai][rem % axes[ai].count];
            rem /= axes[ai].count;
        }
        row.insert(row.end(), coords.begin(), coords.end());
        row.insert(row.end(), values.begin() + static_cast<std::ptrdiff_t>(k * n_obs),
                   values.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_obs));
        t.rows.push_back(std::move(row));
    }
    return t;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("FANO_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SweepGrid run_sweep(const VParams& base, const std::vector<Axis>& axes,
                    const std::vector<std::string>& observables, unsigned threads) {
    SweepGrid grid;
    grid.base = validate(base);
    grid.axes = axes;
    grid.observables = observables;

    for (const auto& o : observables) {
        if (!known(kObservables, o)) throw Error(ErrorCode::UnknownObservable, "unknown observable '" + o + "'");
    }
    std::vector<std::vector<double>> axis_values;
    for (const auto& a : axes) axis_values.push_back(a.values());

    const std::size_t n_points = grid.point_count();
    const std::size_t n_obs = observables.size();
    grid.values.assign(n_points * n_obs, kNaN);

    // Validation errors (e.g. a negative axis value) are reported before any
    // worker starts.
    std::vector<VParams> points(n_points, grid.base);
    for (std::size_t k = 0; k < n_points; ++k) {
        std::size_t rem = k;
        for (std::size_t ai = axes.size(); ai-- > 0;) {
            set_parameter(points[k], axes[ai].name, axis_values[ai][rem % axes[ai].count]);
            rem /= axes[ai].count;
        }
        points[k] = validate(points[k]);
    }

    auto evaluate = [&](std::size_t k) {
        const VParams& p = points[k];
        SteadyState ss;
        if (p.is_symmetric()) {
            ss = closed_form(p);
        } else {
            try {
                ss = solve_linear(build_general(p));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SingularGenerator) throw;
                return;
            }
        }
        for (std::size_t oi = 0; oi < n_obs; ++oi) {
            grid.values[k * n_obs + oi] = observable_value(observables[oi], p, ss);
        }
    };

    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(threads == 0 ? default_thread_count() : threads, std::max<std::size_t>(n_points, 1)));
    if (workers <= 1) {
        for (std::size_t k = 0; k < n_points; ++k) evaluate(k);
        return grid;
    }
    // Contiguous blocks; each slot of grid.values is written by exactly one worker.
    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = n_points * w / workers;
            const std::size_t end = n_points * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    for (std::size_t k = begin; k < end; ++k) evaluate(k);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return grid;
}

} // namespace fano
