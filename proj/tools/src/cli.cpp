#include "fano/cli.hpp"

#include "fano/fano.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace fano {

namespace {

using json = nlohmann::json;

enum class Format { Csv, Json };

// A numeric flag that can also come from the config file.
struct Field {
    std::string key;
    double* target = nullptr;
    CLI::Option* option = nullptr;
};

struct Common {
    std::string config;
    std::string output;
    Format format = Format::Csv;
    std::vector<Field> fields;
};

std::string normalize_key(std::string key) {
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
        return c == '-' ? '_' : static_cast<char>(std::tolower(c));
    });
    return key;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// `key = value` lines; blank lines and `#` comments ignored.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot read config " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::InvalidParameter,
                        path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        entries[normalize_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
    }
    return entries;
}

// Config values fill every field whose flag was not given on the command line.
void apply_config(const Common& common) {
    if (common.config.empty()) return;
    for (const auto& [key, value] : read_config(common.config)) {
        const auto it = std::find_if(common.fields.begin(), common.fields.end(),
                                     [&](const Field& f) { return f.key == key; });
        if (it == common.fields.end()) {
            throw Error(ErrorCode::InvalidParameter, "unknown config key '" + key + "'");
        }
        if (it->option->count() == 0) *it->target = parse_double(value);
    }
}

void add_field(CLI::App* app, Common& common, const std::string& flag, double& target,
               const std::string& help) {
    CLI::Option* opt = app->add_option(flag, target, help)->capture_default_str();
    common.fields.push_back({normalize_key(flag.substr(2)), &target, opt});
}

void add_common(CLI::App* app, Common& common) {
    app->add_option("--config", common.config, "File of `key = value` parameter lines");
    app->add_option("--output,-o", common.output, "Write the record here instead of stdout");
    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
    app->add_option("--format", common.format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

void add_vparams(CLI::App* app, Common& common, VParams& p) {
    add_field(app, common, "--nbar", p.nbar, "Mean photon occupation of the pump");
    add_field(app, common, "--delta", p.delta, "Excited-state splitting (units of gamma)");
    add_field(app, common, "--gamma-d", p.gamma_d, "Pure dephasing rate");
    add_field(app, common, "--gamma-rel", p.gamma_rel, "Excited-state relaxation rate");
    add_field(app, common, "--gamma-a", p.gamma_a, "Radiative decay of |a>");
    add_field(app, common, "--gamma-b", p.gamma_b, "Radiative decay of |b>");
}

void add_param_meta(Table& t, const VParams& p) {
    t.add_meta("gamma_a", p.gamma_a);
    t.add_meta("gamma_b", p.gamma_b);
    t.add_meta("nbar", p.nbar);
    t.add_meta("delta", p.delta);
    t.add_meta("gamma_d", p.gamma_d);
    t.add_meta("gamma_rel", p.gamma_rel);
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_json(std::ostream& os, const Table& t) {
    json meta = json::object();
    for (const auto& [k, v] : t.metadata) meta[k] = v;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (double v : row) r.push_back(number(v));
        rows.push_back(std::move(r));
    }
    json doc = {{"metadata", meta}, {"columns", t.columns}, {"rows", rows}};
    os << doc.dump(2) << '\n';
}

void emit(const Common& common, const Table& t, std::ostream& out) {
    auto write = [&](std::ostream& os) {
        if (common.format == Format::Json) {
            write_json(os, t);
        } else {
            write_csv(os, t);
        }
    };
    if (common.output.empty()) {
        write(out);
        return;
    }
    std::ofstream file(common.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::IoFailure, "cannot open " + common.output + " for writing");
    write(file);
    file.flush();
    if (!file) throw Error(ErrorCode::IoFailure, "failed writing " + common.output);
}

Generator generator_for(const VParams& p) {
    return p.is_symmetric() ? build_symmetric(p) : build_general(p);
}

// Residual bound relative to the drive scale.
bool residual_ok(double residual, const VParams& p) {
    return residual <= 1e-9 * std::max({1.0, p.r_a, p.r_b, p.delta});
}

int cmd_steady(const Common& common, const VParams& raw, double singular_tol, std::ostream& out,
               std::ostream& err) {
    const VParams p = validate(raw);
    const SteadyState ss = steady_state(p, singular_tol);

    Table t;
    t.add_meta("command", "steady");
    add_param_meta(t, p);
    t.add_meta("method", std::string(to_string(ss.method)));
    t.columns = {"rho_aa", "rho_bb", "re_ab", "im_ab", "rho_gg", "c_ratio",
                 "canonical_rho_aa", "rel_intensity_diff", "residual"};
    t.rows.push_back({ss.rho_aa, ss.rho_bb, ss.re_ab, ss.im_ab, ss.rho_gg,
                      observable_value("c_ratio", p, ss), observable_value("canonical_rho_aa", p, ss),
                      observable_value("rel_intensity_diff", p, ss), ss.residual});
    emit(common, t, out);

    const StateCheck check = check_state(ss.state());
    if (!check.ok || !residual_ok(ss.residual, p)) {
        err << "steady state failed its checks (trace error " << check.trace_error
            << ", residual " << ss.residual << ")\n";
        return kExitFailure;
    }
    return kExitOk;
}

struct EvolveOptions {
    double t_end = 0.0;
    std::size_t points = 201;
    PropagateOptions integrator;
};

int cmd_evolve(const Common& common, const VParams& raw, const EvolveOptions& opts,
               std::ostream& out, std::ostream& err) {
    const VParams p = validate(raw);
    const Generator gen = generator_for(p);
    const double t_end = opts.t_end > 0.0 ? opts.t_end : steady_state_horizon(gen);
    const TimeSeries ts = propagate(gen, DensityState::ground(), t_end, opts.points, opts.integrator);

    Table t;
    t.add_meta("command", "evolve");
    add_param_meta(t, p);
    t.add_meta("initial", "ground");
    t.add_meta("t_end", t_end);
    t.add_meta("rel_tol", ts.integrator.rel_tol);
    t.add_meta("abs_tol", ts.integrator.abs_tol);
    t.add_meta("regime", std::string(to_string(eigen_analysis(gen).regime)));
    t.columns = {"t", "rho_aa", "rho_bb", "re_ab", "im_ab", "rho_gg"};
    bool ok = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const DensityState& s = ts.states[i];
        t.rows.push_back({ts.times[i], s.rho_aa, s.rho_bb, s.re_ab, s.im_ab, s.rho_gg});
        ok = ok && check_state(s, 1e-8).ok;
    }
    emit(common, t, out);
    if (!ok) {
        err << "trajectory violates trace or positivity bounds\n";
        return kExitFailure;
    }
    return kExitOk;
}

// name:min:max:count[:log|:lin]
Axis parse_axis(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5) {
        throw Error(ErrorCode::InvalidAxis, "axis '" + spec + "' must be name:min:max:count[:log]");
    }
    Axis a;
    a.name = normalize_key(parts[0]);
    a.min = parse_double(parts[1]);
    a.max = parse_double(parts[2]);
    const double count = parse_double(parts[3]);
    if (!(count >= 1.0) || count != std::floor(count) || count > 1e7) {
        throw Error(ErrorCode::InvalidAxis, "axis '" + spec + "' needs a positive integer count");
    }
    a.count = static_cast<std::size_t>(count);
    if (parts.size() == 5) {
        if (parts[4] == "log") {
            a.spacing = Spacing::Log;
        } else if (parts[4] != "lin") {
            throw Error(ErrorCode::InvalidAxis, "axis spacing must be log or lin");
        }
    }
    return a;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_sweep(const Common& common, const VParams& raw, const std::vector<std::string>& axis_specs,
              const std::string& observables, unsigned threads, std::ostream& out) {
    std::vector<Axis> axes;
    for (const auto& s : axis_specs) axes.push_back(parse_axis(s));
    const SweepGrid grid = run_sweep(raw, axes, split_list(observables), threads);
    Table t = grid.to_table();
    t.metadata.insert(t.metadata.begin(), {"command", "sweep"});
    emit(common, t, out);
    return kExitOk;
}

struct TransportOptions {
    TwoBathParams tp{.eps_a = 1.0,
                     .eps_b = 0.0,
                     .g = std::numeric_limits<double>::quiet_NaN(),
                     .nbar_L = 1.0,
                     .nbar_R = 0.0,
                     .gamma_L_aa = 1.0,
                     .gamma_L_bb = 1.0,
                     .gamma_R_aa = 0.0,
                     .gamma_R_bb = 0.0,
                     .f_L = 1.0,
                     .f_R = 0.0};
    double singular_tol = kDefaultSingularTol;
    bool check_equivalence = false;
};

int cmd_transport(const Common& common, const TransportOptions& opts, std::ostream& out,
                  std::ostream& err) {
    TwoBathParams tp = opts.tp;
    if (std::isnan(tp.g)) tp.g = 0.5 * tp.splitting();
    tp = validate(tp);
    const Generator gen = build_transport_generator(tp);
    const SteadyState ss = solve_linear(gen, opts.singular_tol);

    Table t;
    t.add_meta("command", "transport");
    t.add_meta("eps_a", tp.eps_a);
    t.add_meta("eps_b", tp.eps_b);
    t.add_meta("g", tp.g);
    t.add_meta("nbar_L", tp.nbar_L);
    t.add_meta("nbar_R", tp.nbar_R);
    t.add_meta("gamma_L_aa", tp.gamma_L_aa);
    t.add_meta("gamma_L_bb", tp.gamma_L_bb);
    t.add_meta("gamma_R_aa", tp.gamma_R_aa);
    t.add_meta("gamma_R_bb", tp.gamma_R_bb);
    t.add_meta("f_L", tp.f_L);
    t.add_meta("f_R", tp.f_R);
    t.add_meta("spontaneous_interference", tp.spontaneous_interference ? "true" : "false");
    t.columns = {"rho_aa", "rho_bb", "re_ab", "im_ab", "rho_gg", "flux", "residual"};
    std::vector<double> row{ss.rho_aa, ss.rho_bb, ss.re_ab, ss.im_ab, ss.rho_gg,
                            heat_flux(ss.state(), tp.g), ss.residual};

    if (opts.check_equivalence) {
        const Generator v = build_general(reduce_to_vsystem(tp));
        const double dev = std::max((gen.a_matrix - v.a_matrix).cwiseAbs().maxCoeff(),
                                    (gen.drive - v.drive).cwiseAbs().maxCoeff());
        t.columns.push_back("max_deviation");
        row.push_back(dev);
    }
    t.rows.push_back(std::move(row));
    emit(common, t, out);

    if (!check_state(ss.state()).ok) {
        err << "transport steady state failed its checks\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_figures(const std::string& id, const std::string& out_dir, unsigned threads,
                std::ostream& out) {
    std::vector<std::string_view> ids;
    if (id == "all") {
        const auto all = figure_ids();
        ids.assign(all.begin(), all.end());
    } else {
        ids.push_back(id);
    }
    for (const auto fid : ids) {
        for (const auto& path : figure_driver(fid, out_dir, threads)) out << path.string() << '\n';
    }
    return kExitOk;
}

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::SingularGenerator:
        return kExitSingular;
    case ErrorCode::IoFailure:
        return kExitIo;
    case ErrorCode::StepFailure:
        return kExitFailure;
    default:
        return kExitInvalid;
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steady-state Fano coherences of a V-system under polarized incoherent pumping",
                 "fano"};
    app.require_subcommand(1);

    VParams params;
    double singular_tol = kDefaultSingularTol;

    Common steady_common;
    CLI::App* steady = app.add_subcommand("steady", "Steady state and derived observables");
    add_common(steady, steady_common);
    add_vparams(steady, steady_common, params);
    add_field(steady, steady_common, "--singular-tol", singular_tol,
              "Reciprocal condition number below which the generator is singular");

    Common evolve_common;
    EvolveOptions evolve_opts;
    CLI::App* evolve = app.add_subcommand("evolve", "Transient from the ground state");
    add_common(evolve, evolve_common);
    add_vparams(evolve, evolve_common, params);
    add_field(evolve, evolve_common, "--t-end", evolve_opts.t_end,
              "End time in units of 1/gamma (0: 40 slowest timescales)");
    add_field(evolve, evolve_common, "--rel-tol", evolve_opts.integrator.rel_tol,
              "Integrator relative tolerance");
    add_field(evolve, evolve_common, "--abs-tol", evolve_opts.integrator.abs_tol,
              "Integrator absolute tolerance");
    evolve->add_option("--points", evolve_opts.points, "Number of output samples")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}));

    Common sweep_common;
    std::vector<std::string> axis_specs;
    std::string observables = "rho_aa,re_ab,im_ab,c_ratio";
    unsigned threads = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "Steady-state observables over a parameter grid");
    add_common(sweep, sweep_common);
    add_vparams(sweep, sweep_common, params);
    sweep->add_option("--axis", axis_specs, "name:min:max:count[:log], first axis slowest")
        ->required();
    sweep->add_option("--observables", observables, "Comma-separated observable names")
        ->capture_default_str();
    sweep->add_option("--threads", threads, "Worker threads (0: FANO_THREADS or hardware)");

    Common transport_common;
    TransportOptions transport_opts;
    TwoBathParams& tp = transport_opts.tp;
    CLI::App* transport = app.add_subcommand("transport", "Two qubits between a hot and a cold bath");
    add_common(transport, transport_common);
    add_field(transport, transport_common, "--eps-a", tp.eps_a, "Energy of |a>");
    add_field(transport, transport_common, "--eps-b", tp.eps_b, "Energy of |b>");
    add_field(transport, transport_common, "--g", tp.g, "Qubit coupling (default (eps_a - eps_b) / 2)");
    add_field(transport, transport_common, "--nbar-l", tp.nbar_L, "Hot-bath occupancy");
    add_field(transport, transport_common, "--nbar-r", tp.nbar_R, "Cold-bath occupancy");
    add_field(transport, transport_common, "--gamma-l-aa", tp.gamma_L_aa, "Hot-bath rate for |a>");
    add_field(transport, transport_common, "--gamma-l-bb", tp.gamma_L_bb, "Hot-bath rate for |b>");
    add_field(transport, transport_common, "--gamma-r-aa", tp.gamma_R_aa, "Cold-bath rate for |a>");
    add_field(transport, transport_common, "--gamma-r-bb", tp.gamma_R_bb, "Cold-bath rate for |b>");
    add_field(transport, transport_common, "--f-l", tp.f_L, "Hot-bath interference weight");
    add_field(transport, transport_common, "--f-r", tp.f_R, "Cold-bath interference weight");
    add_field(transport, transport_common, "--singular-tol", transport_opts.singular_tol,
              "Reciprocal condition number below which the generator is singular");
    transport->add_flag("--spontaneous-interference", tp.spontaneous_interference,
                        "Let the vacuum part of the cross rates interfere");
    transport->add_flag("--check-equivalence", transport_opts.check_equivalence,
                        "Report the max deviation from the reduced V-system generator");

    std::string figure_id = "all";
    std::string out_dir = "figures";
    unsigned figure_threads = 0;
    CLI::App* figures = app.add_subcommand("figures", "Write the CSV tables behind the figures");
    figures->add_option("--id", figure_id, "Figure id or `all`")->capture_default_str();
    figures->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    figures->add_option("--threads", figure_threads, "Worker threads for grid panels");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (steady->parsed()) {
            apply_config(steady_common);
            return cmd_steady(steady_common, params, singular_tol, out, err);
        }
        if (evolve->parsed()) {
            apply_config(evolve_common);
            return cmd_evolve(evolve_common, params, evolve_opts, out, err);
        }
        if (sweep->parsed()) {
            apply_config(sweep_common);
            return cmd_sweep(sweep_common, params, axis_specs, observables, threads, out);
        }
        if (transport->parsed()) {
            apply_config(transport_common);
            return cmd_transport(transport_common, transport_opts, out, err);
        }
        return cmd_figures(figure_id, out_dir, figure_threads, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.code());
    }
}

} // namespace fano
