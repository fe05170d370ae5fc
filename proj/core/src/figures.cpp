#include "fano/figures.hpp"

#include "fano/dynamics.hpp"
#include "fano/generator.hpp"
#include "fano/observables.hpp"
#include "fano/steadystate.hpp"
#include "fano/sweep.hpp"

#include <algorithm>
#include <array>
#include <system_error>

namespace fano {

namespace {

constexpr std::array<std::string_view, 12> kFigureIds = {
    "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b",
    "fig3c", "fig4a", "fig4b", "fig4c", "fig5",  "fig6"};

constexpr std::size_t kTracePoints = 2001;

void add_param_meta(Table& t, std::string_view figure, const VParams& p) {
    t.add_meta("figure", std::string(figure));
    t.add_meta("gamma", p.gamma_a);
    t.add_meta("nbar", p.nbar);
    t.add_meta("delta", p.delta);
    t.add_meta("gamma_d", p.gamma_d);
    t.add_meta("gamma_rel", p.gamma_rel);
}

// Populations and coherences from the ground state, with the closed-form steady
// state repeated on every row (the dashed reference lines).
FigurePanel time_trace(std::string_view name, double nbar, double delta) {
    const VParams p = VParams::symmetric(nbar, delta);
    const Generator gen = build_symmetric(p);
    const double t_end = steady_state_horizon(gen);
    const TimeSeries ts = propagate(gen, DensityState::ground(), t_end, kTracePoints);
    const SteadyState ss = closed_form(p);

    FigurePanel panel{std::string(name), {}};
    Table& t = panel.table;
    add_param_meta(t, name, p);
    t.add_meta("initial", "ground");
    t.add_meta("t_end", t_end);
    t.add_meta("rel_tol", ts.integrator.rel_tol);
    t.add_meta("abs_tol", ts.integrator.abs_tol);
    t.columns = {"t", "rho_aa", "rho_bb", "re_ab", "im_ab", "rho_gg",
                 "ss_rho_aa", "ss_re_ab", "ss_im_ab"};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const DensityState& s = ts.states[i];
        t.rows.push_back({ts.times[i], s.rho_aa, s.rho_bb, s.re_ab, s.im_ab, s.rho_gg,
                          ss.rho_aa, ss.re_ab, ss.im_ab});
    }
    return panel;
}

FigurePanel grid_panel(std::string_view name, const VParams& base, std::vector<Axis> axes,
                       unsigned threads) {
    const std::vector<std::string> obs = {"rho_aa", "re_ab", "im_ab", "c_ratio"};
    FigurePanel panel{std::string(name), run_sweep(base, axes, obs, threads).to_table()};
    panel.table.metadata.insert(panel.table.metadata.begin(), {"figure", std::string(name)});
    return panel;
}

Axis log_axis(std::string name, double lo, double hi, std::size_t n) {
    return {std::move(name), lo, hi, n, Spacing::Log};
}

Axis lin_axis(std::string name, double lo, double hi, std::size_t n) {
    return {std::move(name), lo, hi, n, Spacing::Linear};
}

FigurePanel c_ratio_panel(std::string_view name, double nbar, double delta, double gd_max,
                          unsigned threads) {
    const VParams base = VParams::symmetric(nbar, delta);
    FigurePanel panel = grid_panel(name, base, {lin_axis("gamma_d", 0.0, gd_max, 401)}, threads);
    const auto opt = optimal_dephasing(base);
    panel.table.add_meta("optimal_gamma_d", opt ? format_double(*opt) : std::string("none"));
    return panel;
}

FigurePanel fluorescence_panel(std::string_view name, double nbar, double delta) {
    const VParams p = VParams::symmetric(nbar, delta);
    const Generator gen = build_symmetric(p);
    const double t_end = steady_state_horizon(gen);
    const TimeSeries pol = propagate(gen, DensityState::ground(), t_end, kTracePoints);
    const TimeSeries ref = coherence_free_reference(p, DensityState::ground(), t_end, kTracePoints);
    const std::vector<double> ratio = fluorescence_ratio(pol, ref);
    const SteadyState ss = closed_form(p);

    FigurePanel panel{std::string(name), {}};
    Table& t = panel.table;
    add_param_meta(t, name, p);
    t.add_meta("reference", "coherence-free-equal-pump");
    t.add_meta("t_end", t_end);
    t.columns = {"t", "rho_aa", "rho_aa_ref", "intensity_ratio", "rel_intensity_diff",
                 "ss_intensity_ratio", "ss_re_ab"};
    for (std::size_t i = 0; i < pol.size(); ++i) {
        t.rows.push_back({pol.times[i], pol.states[i].rho_aa, ref.states[i].rho_aa, ratio[i],
                          1.0 - ratio[i], 1.0 - ss.re_ab, ss.re_ab});
    }
    return panel;
}

} // namespace

std::span<const std::string_view> figure_ids() noexcept { return kFigureIds; }

std::vector<FigurePanel> build_figure(std::string_view id, unsigned threads) {
    // Time traces from the ground state.
    if (id == "fig2a") return {time_trace(id, 1e-3, 0.1)};
    if (id == "fig2b") return {time_trace(id, 1e-3, 10.0)};
    if (id == "fig2c") return {time_trace(id, 1e3, 1e2)};
    if (id == "fig2d") return {time_trace(id, 1e2, 2e2)};

    // Steady-state coherence versus pumping and splitting.
    if (id == "fig3a") {
        return {grid_panel(id, VParams::symmetric(0.0, 0.0),
                           {log_axis("delta", 1e-2, 1e2, 5), log_axis("nbar", 1e-3, 1e3, 61)}, threads)};
    }
    if (id == "fig3b") {
        return {grid_panel(id, VParams::symmetric(0.0, 0.0),
                           {log_axis("nbar", 1e-2, 1e2, 3), log_axis("delta", 1e-2, 1e2, 61)}, threads)};
    }
    if (id == "fig3c") {
        return {grid_panel(id, VParams::symmetric(0.0, 0.0),
                           {log_axis("nbar", 1e-3, 1e3, 61), log_axis("delta", 1e-2, 1e2, 61)}, threads)};
    }

    // Dephasing maps.
    if (id == "fig4a" || id == "fig4b") {
        const double nbar = id == "fig4a" ? 0.01 : 100.0;
        return {grid_panel(id, VParams::symmetric(nbar, 0.0),
                           {lin_axis("delta", 0.0, 20.0, 81), lin_axis("gamma_d", 0.0, 20.0, 81)}, threads)};
    }
    if (id == "fig4c") {
        return {grid_panel(id, VParams::symmetric(0.0, 10.0),
                           {log_axis("nbar", 1e-3, 1e3, 61), lin_axis("gamma_d", 0.0, 20.0, 81)}, threads)};
    }

    // C ratio versus dephasing; weak pumping in (a), (c), strong in (b), (d).
    if (id == "fig5") {
        return {c_ratio_panel("fig5a", 0.01, 10.0, 20.0, threads),
                c_ratio_panel("fig5b", 100.0, 200.0, 400.0, threads),
                c_ratio_panel("fig5c", 0.01, 0.5, 20.0, threads),
                c_ratio_panel("fig5d", 100.0, 0.5, 20.0, threads)};
    }

    // Polarized over coherence-free fluorescence.
    if (id == "fig6") {
        return {fluorescence_panel("fig6a", 1e-2, 0.1), fluorescence_panel("fig6b", 1e-2, 10.0),
                fluorescence_panel("fig6c", 1e3, 10.0), fluorescence_panel("fig6d", 10.0, 1e2)};
    }
    throw Error(ErrorCode::InvalidParameter, "unknown figure id '" + std::string(id) + "'");
}

std::vector<std::filesystem::path> figure_driver(std::string_view id,
                                                 const std::filesystem::path& out_dir,
                                                 unsigned threads) {
    const std::vector<FigurePanel> panels = build_figure(id, threads);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + out_dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    for (const auto& panel : panels) {
        const auto path = out_dir / (panel.name + ".csv");
        write_csv_file(path, panel.table);
        written.push_back(path);
    }
    return written;
}

} // namespace fano
