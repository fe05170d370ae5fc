#include "fano/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fano {

namespace odeint = boost::numeric::odeint;

std::string_view to_string(Regime regime) noexcept {
    return regime == Regime::Underdamped ? "underdamped" : "overdamped";
}

namespace {

using State = std::vector<double>;

struct AffineSystem {
    const Eigen::MatrixXd& a;
    const Eigen::VectorXd& d;

    void operator()(const State& x, State& dxdt, double /*t*/) const {
        const auto n = static_cast<Eigen::Index>(x.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            double acc = d(i);
            for (Eigen::Index j = 0; j < n; ++j) acc += a(i, j) * x[static_cast<std::size_t>(j)];
            dxdt[static_cast<std::size_t>(i)] = acc;
        }
    }
};

} // namespace

TimeSeries propagate(const Generator& gen, const DensityState& initial, double t_end,
                     std::size_t n_points, const PropagateOptions& options) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorCode::InvalidInitial, "t_end must be finite and > 0");
    }
    if (n_points < 2) {
        throw Error(ErrorCode::InvalidInitial, "n_points must be >= 2");
    }
    if (!check_state(initial, 1e-10).ok) {
        throw Error(ErrorCode::InvalidInitial,
                    "initial state violates trace, positivity or Cauchy-Schwarz bounds");
    }
    const Eigen::VectorXd x0 = gen.to_vector(initial);

    TimeSeries series;
    series.params = gen.params;
    series.integrator.rel_tol = options.rel_tol;
    series.integrator.abs_tol = options.abs_tol;
    series.times.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        series.times[i] = t_end * static_cast<double>(i) / static_cast<double>(n_points - 1);
    }
    series.times.back() = t_end;
    series.states.reserve(n_points);

    State x(x0.data(), x0.data() + x0.size());
    AffineSystem system{gen.a_matrix, gen.drive};
    auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol,
                                             odeint::runge_kutta_dopri5<State>());

    auto observer = [&](const State& xs, double /*t*/) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
        series.states.push_back(gen.to_state(v));
    };

    const double dt0 = std::min(1e-3, t_end / static_cast<double>(n_points));
    try {
        series.integrator.steps = odeint::integrate_times(
            stepper, system, x, series.times.begin(), series.times.end(), dt0, observer,
            odeint::max_step_checker(static_cast<int>(
                std::min<std::size_t>(options.max_steps, std::numeric_limits<int>::max()))));
    } catch (const std::exception& e) {
        throw Error(ErrorCode::StepFailure, e.what());
    }
    for (const DensityState& s : series.states) {
        if (!std::isfinite(s.rho_aa) || !std::isfinite(s.re_ab) || !std::isfinite(s.im_ab)) {
            throw Error(ErrorCode::StepFailure, "integration produced non-finite values");
        }
    }
    return series;
}

EigenReport eigen_analysis(const Generator& gen) {
    EigenReport report;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(gen.a_matrix, false);
    const Eigen::VectorXcd ev = solver.eigenvalues();
    report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
              [](const auto& l, const auto& r) {
                  if (l.real() != r.real()) return l.real() > r.real();
                  return l.imag() < r.imag();
              });

    double slowest_rate = std::numeric_limits<double>::infinity();
    for (const auto& l : report.eigenvalues) slowest_rate = std::min(slowest_rate, std::abs(l.real()));
    report.slowest_timescale =
        slowest_rate > 0.0 ? 1.0 / slowest_rate : std::numeric_limits<double>::infinity();

    if (gen.params) {
        const VParams& p = *gen.params;
        const double r = 0.5 * (p.r_a + p.r_b);
        const double g = 0.5 * (p.gamma_a + p.gamma_b);
        report.regime = p.delta > r + g ? Regime::Underdamped : Regime::Overdamped;
    } else {
        // Oscillation faster than the decay of the same mode.
        report.regime = Regime::Overdamped;
        for (const auto& l : report.eigenvalues) {
            if (std::abs(l.imag()) > std::abs(l.real())) report.regime = Regime::Underdamped;
        }
    }
    return report;
}

double steady_state_horizon(const Generator& gen) {
    return 40.0 * eigen_analysis(gen).slowest_timescale;
}

double quasi_steady_lifetime(const VParams& params) {
    const VParams p = validate(params);
    const double g = p.gamma_a;
    if (p.delta > g) {
        throw Error(ErrorCode::RegimeMismatch,
                    "quasi-steady lifetime applies to the overdamped regime Delta <= gamma");
    }
    if (p.delta == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * g / (p.delta * p.delta);
}

std::optional<double> settling_time(const Generator& gen, const TimeSeries& series,
                                    const DensityState& target, double rel_threshold) {
    const Eigen::VectorXd xt = gen.to_vector(target);
    const double bound = rel_threshold * xt.norm();
    std::optional<double> first;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double err = (gen.to_vector(series.states[i]) - xt).norm();
        if (err < bound) {
            if (!first) first = series.times[i];
        } else {
            first.reset();
        }
    }
    return first;
}

} // namespace fano
