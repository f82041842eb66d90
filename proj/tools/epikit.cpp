// epikit: epidemic modeling toolkit command-line interface.

#include <cstdlib>
#include <numbers>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "epikit/analytic_seir.hpp"
#include "epikit/calibrate.hpp"
#include "epikit/csv_out.hpp"
#include "epikit/data_io.hpp"
#include "epikit/fermi_dirac.hpp"
#include "epikit/gillespie.hpp"
#include "epikit/langevin.hpp"
#include "epikit/models.hpp"
#include "epikit/rk4.hpp"
#include "epikit/scenario.hpp"
#include "epikit/svg.hpp"

namespace {

using namespace epikit;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("EPIKIT_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 12345;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void plot_trajectory(const std::string& path, const TimeSeries& traj, const std::string& title) {
    std::vector<PlotSeries> series(4);
    const char* labels[4] = {"S", "I", "R", "D"};
    for (int k = 0; k < 4; ++k) series[k].label = labels[k];
    for (const auto& y : traj) {
        series[0].x.push_back(y.t);
        series[0].y.push_back(y.s);
        series[1].x.push_back(y.t);
        series[1].y.push_back(y.i);
        series[2].x.push_back(y.t);
        series[2].y.push_back(y.r);
        series[3].x.push_back(y.t);
        series[3].y.push_back(y.d);
    }
    write_svg_plot(path, title, series);
}

struct SimulateOpts {
    std::string preset, scenario_file, out, stats_out, plot, reff_out;
    double t_end = -1, dt = -1, sample_every = 0.5;
};

int run_simulate(const SimulateOpts& o) {
    ScenarioConfig cfg;
    if (!o.preset.empty()) {
        const auto p = simulate_preset(o.preset);
        if (!p) throw InvalidParamsError("unknown preset '" + o.preset + "'");
        cfg = *p;
    } else if (!o.scenario_file.empty()) {
        cfg = ScenarioConfig::from_json_file(resolve_data_path(o.scenario_file));
    } else {
        throw InvalidParamsError("simulate needs --preset or --scenario");
    }
    if (o.t_end > 0) cfg.t_end = o.t_end;
    if (o.dt > 0) cfg.dt = o.dt;
    cfg.validate();

    const int stride = std::max(1, static_cast<int>(std::llround(o.sample_every / cfg.dt)));
    const TimeSeries traj = cfg.run(stride);

    if (!o.out.empty()) {
        write_trajectory_csv(o.out, traj, cfg.model, cfg.params, cfg.control);
    } else {
        write_trajectory_csv(std::cout, traj, cfg.model, cfg.params, cfg.control);
    }

    if (cfg.model != ModelKind::SirQuarantine) {
        const ControlSchedule schedule =
            cfg.control.value_or(ControlSchedule{cfg.params.beta0, 0.0, 0.0, std::nullopt});
        const DerivedStats stats = derived_stats(cfg.params, schedule);
        const std::string block = derived_stats_json(stats);
        if (!o.out.empty()) std::cout << block << '\n';
        if (!o.stats_out.empty()) open_out(o.stats_out) << block << '\n';
        if (!o.reff_out.empty()) {
            auto out = open_out(o.reff_out);
            write_reff_csv(out, r_eff_series(traj, cfg.params, schedule));
        }
    }
    if (!o.plot.empty()) plot_trajectory(o.plot, traj, cfg.name.empty() ? "trajectory" : cfg.name);
    return 0;
}

struct LinearSeirOpts {
    double beta = 0.5, sigma = 1.0 / 24.0, gamma = 1.0 / 14.0, f = 0.25, n = 1e4;
    double e0 = 0, i0 = 10, f0 = 1000;
    double t_end = 100, step = 0.5;
    std::string out;
};

int run_linear_seir(const LinearSeirOpts& o) {
    const SeirParams p{o.beta, o.sigma, o.gamma, o.f, o.n};
    const LinearSeirSolution sol = solve_linear_seir(p, o.e0, o.i0, o.f0);
    std::ostringstream body;
    body << "t,E,I,F,C,R,D\n";
    for (double t = 0.0; t <= o.t_end + 1e-9; t += o.step) {
        const auto [e, i] = evaluate(sol, t);
        const IntegratedPopulations pops = integrated_populations(sol, t);
        body << format_double(t) << ',' << format_double(e) << ',' << format_double(i) << ','
             << format_double(pops.f) << ',' << format_double(pops.c) << ','
             << format_double(pops.r) << ',' << format_double(pops.d) << '\n';
    }
    if (o.out.empty())
        std::cout << body.str();
    else
        open_out(o.out) << body.str();
    return 0;
}

struct SpatialOpts {
    std::string preset, out, snapshots, xt_prefix, plot;
    double t_end = -1, dt = -1, sample_every = 0.5, snapshot_every = 0;
};

int run_spatial_cmd(const SpatialOpts& o) {
    const auto sc = spatial_preset(o.preset);
    if (!sc) throw InvalidParamsError("unknown spatial preset '" + o.preset + "'");
    SpatialScenario scenario = *sc;
    if (o.t_end > 0) scenario.t_end = o.t_end;
    if (o.dt > 0) scenario.dt = o.dt;

    const Grid1D grid = make_grid(scenario.length, scenario.n_points);
    const DensityFields init = scenario.make_fields(grid);
    SpatialRunOptions opts;
    opts.sample_stride = std::max(1, static_cast<int>(std::llround(o.sample_every / scenario.dt)));
    opts.snapshot_stride =
        o.snapshot_every > 0
            ? std::max(1, static_cast<int>(std::llround(o.snapshot_every / scenario.dt)))
            : 0;
    const SpatialSeries series =
        run_spatial(init, scenario.params, grid, scenario.t_end, scenario.dt, opts);

    if (o.out.empty())
        write_totals_csv(std::cout, series.times, series.totals);
    else
        write_totals_csv(o.out, series.times, series.totals);

    if (!o.snapshots.empty()) {
        for (std::size_t k = 0; k < series.snapshots.size(); ++k) {
            std::ostringstream name;
            name << o.snapshots << "_t" << series.snapshot_times[k] << ".csv";
            write_field_csv(name.str(), series.snapshots[k], grid);
        }
    }
    if (!o.xt_prefix.empty()) {
        write_xt_csv(o.xt_prefix + "_phiS.csv", series, grid, false);
        write_xt_csv(o.xt_prefix + "_phiI.csv", series, grid, true);
    }
    if (!o.plot.empty()) {
        std::vector<PlotSeries> ps(2);
        ps[0].label = "S total";
        ps[1].label = "I total";
        for (std::size_t k = 0; k < series.times.size(); ++k) {
            ps[0].x.push_back(series.times[k]);
            ps[0].y.push_back(series.totals[k].s);
            ps[1].x.push_back(series.times[k]);
            ps[1].y.push_back(series.totals[k].i);
        }
        write_svg_plot(o.plot, scenario.name, ps);
    }
    return 0;
}

struct StabilityOpts {
    double lambda = 0.5, mu = 0.25, nu = 0.01, f = 0.01, d_s = 10.0, d_i = 2.0;
    std::string branch = "red", out, preset;
    double k_max = 0.5;
    int k_steps = 200;
    bool turing_sweep = false;
    double ratio = 0.1, nu_max = 6.0;
    int sweep_steps = 600;
};

int run_stability(const StabilityOpts& o) {
    StabilityOpts opt = o;
    if (opt.preset == "fig10b") {
        opt.turing_sweep = true;
        opt.lambda = 1.0;
        opt.ratio = 0.1;
    } else if (!opt.preset.empty()) {
        throw InvalidParamsError("unknown stability preset '" + opt.preset + "'");
    }

    if (opt.turing_sweep) {
        std::ostringstream body;
        write_turing_sweep_csv(body, opt.lambda, opt.ratio, opt.nu_max, opt.sweep_steps);
        if (opt.out.empty())
            std::cout << body.str();
        else
            open_out(opt.out) << body.str();
        return 0;
    }

    if (opt.branch != "red" && opt.branch != "blue")
        throw InvalidParamsError("--branch must be red or blue");
    SpatialParams p{opt.lambda, opt.mu, opt.nu, opt.f, 0.0, opt.d_s, opt.d_i};
    const auto states = steady_states(p);
    const SteadyState& state = opt.branch == "blue" ? states[1] : states[0];

    std::ostringstream body;
    write_dispersion_csv(body, p, state, opt.k_max, opt.k_steps);
    if (opt.out.empty())
        std::cout << body.str();
    else
        open_out(opt.out) << body.str();

    nlohmann::ordered_json doc;
    doc["branch"] = opt.branch;
    doc["phi_i"] = state.phi_i;
    doc["phi_s"] = state.phi_s;
    doc["feasible"] = state.feasible;
    const HopfResult h = hopf_check(p, state);
    doc["b0"] = h.b0;
    doc["c0"] = h.c0;
    doc["oscillatory"] = h.oscillatory;
    if (state.feasible && p.d_s > 0 && p.d_i > 0) {
        const TuringResult t = turing_analysis(p, state);
        doc["turing_on_line"] = t.on_line;
        doc["turing_k_c"] = t.k_c;
        doc["turing_line_residual"] = t.line_residual;
    }
    if (!opt.out.empty()) std::cout << doc.dump(2) << '\n';
    return 0;
}

struct GillespieCliOpts {
    std::string scenario_file, out;
    double beta = 0.5, gamma = 0.25, n = 1e4, i0 = 10, g = 0.0;
    int cells = 1;
    double length = 1.0, d_s = 0.0, d_i = 0.0;
    double t_end = 100, sample_every = 0.5;
    int runs = 1;
    std::uint64_t seed = 0;
    int threads = 0;
};

int run_gillespie(const GillespieCliOpts& o) {
    GillespieCliOpts opt = o;
    if (!opt.scenario_file.empty()) {
        const ScenarioConfig cfg =
            ScenarioConfig::from_json_file(resolve_data_path(opt.scenario_file));
        opt.beta = cfg.params.beta0;
        opt.gamma = cfg.params.gamma;
        opt.n = cfg.params.n;
        opt.i0 = cfg.init.i;
        opt.g = cfg.params.f;
        opt.t_end = cfg.t_end;
    }
    ReactionSystem sys;
    OccupancyState init;
    if (opt.cells == 1) {
        sys = single_cell_sir(opt.beta, opt.gamma, opt.n, opt.g);
        init.s = {static_cast<std::int64_t>(opt.n - opt.i0)};
        init.i = {static_cast<std::int64_t>(opt.i0)};
    } else {
        // density parameters from the compartment ones at rho0 = n / length
        SpatialParams p;
        p.lambda = opt.beta * opt.length / opt.n;
        p.mu = opt.gamma;
        p.g = opt.g;
        p.d_s = opt.d_s;
        p.d_i = opt.d_i;
        sys = build_sir_reactions(p, opt.cells, opt.length);
        const std::int64_t per_cell =
            static_cast<std::int64_t>((opt.n - opt.i0) / opt.cells);
        init.s.assign(opt.cells, per_cell);
        init.i.assign(opt.cells, 0);
        init.i[opt.cells / 2] = static_cast<std::int64_t>(opt.i0);
    }

    if (opt.runs <= 1) {
        GillespieOptions run_opts;
        run_opts.record_events = true;
        const GillespieResult res = gillespie_run(sys, init, opt.t_end, opt.seed, run_opts);
        if (opt.out.empty())
            write_events_csv(std::cout, sys, res);
        else {
            auto out = open_out(opt.out);
            write_events_csv(out, sys, res);
        }
        std::cerr << res.event_count << " events" << (res.extinct ? " (extinct)" : "") << '\n';
        return 0;
    }

    std::vector<double> sample_times;
    for (double t = opt.sample_every; t <= opt.t_end + 1e-9; t += opt.sample_every)
        sample_times.push_back(t);
    const auto runs = gillespie_ensemble(sys, init, opt.t_end + opt.sample_every, sample_times,
                                         opt.runs, opt.seed, opt.threads);
    const EnsembleStats stats = ensemble_stats(runs, sample_times);
    if (opt.out.empty())
        write_ensemble_csv(std::cout, stats);
    else {
        auto out = open_out(opt.out);
        write_ensemble_csv(out, stats);
    }
    return 0;
}

struct LangevinOpts {
    std::string preset = "fig9", out, noise = "real";
    double t_end = -1, dt = -1, sample_every = 0.5;
    std::uint64_t seed = 0;
};

int run_langevin_cmd(const LangevinOpts& o) {
    const auto sc = spatial_preset(o.preset);
    if (!sc) throw InvalidParamsError("unknown preset '" + o.preset + "'");
    SpatialScenario scenario = *sc;
    if (o.t_end > 0) scenario.t_end = o.t_end;
    if (o.dt > 0) scenario.dt = o.dt;

    NoiseMode mode;
    if (o.noise == "complex")
        mode = NoiseMode::Complex;
    else if (o.noise == "real")
        mode = NoiseMode::Real;
    else if (o.noise == "off")
        mode = NoiseMode::Off;
    else
        throw InvalidParamsError("--noise must be complex, real or off");

    const Grid1D grid = make_grid(scenario.length, scenario.n_points);
    // the explicit update needs dt below the diffusive stability limit
    const double d_max = std::max(scenario.params.d_s, scenario.params.d_i);
    if (o.dt <= 0 && d_max > 0) {
        const double k_max = std::numbers::pi / grid.spacing;
        scenario.dt = std::min(scenario.dt, 0.4 / (d_max * k_max * k_max));
    }
    const DensityFields det_init = scenario.make_fields(grid);
    const LangevinFields init = LangevinFields::from_real(det_init.phi_s, det_init.phi_i);
    Rng rng(o.seed);
    const int stride = std::max(1, static_cast<int>(std::llround(o.sample_every / scenario.dt)));
    const LangevinSeries series =
        run_langevin(init, scenario.params, grid, scenario.t_end, scenario.dt, mode, rng, stride);
    if (o.out.empty())
        write_totals_csv(std::cout, series.times, series.totals);
    else
        write_totals_csv(o.out, series.times, series.totals);
    return 0;
}

struct FitOpts {
    std::string model = "sir", data_file, out, fit_space = "linear", observable = "c",
                column = "cases";
    std::string p0 = "0.4,0.3";
    double n = 0, i0 = -1, h_step = 1e-9, tol = 1e-12, dt = 0.05;
    int max_iters = 200000;
};

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int run_fit(const FitOpts& o) {
    if (o.model != "sir") throw InvalidParamsError("only --model sir is supported");
    if (!(o.n > 0)) throw InvalidParamsError("--n (population) must be positive");
    const CaseSeries series = read_case_csv(resolve_data_path(o.data_file));
    const auto& column = o.column == "deaths" ? series.deaths : series.cases;

    FitProblem prob;
    const double i0 = o.i0 > 0 ? o.i0 : std::max<double>(static_cast<double>(column.front()), 1.0);
    prob.model = sir_fit_model(o.n, i0);
    prob.log_space = o.fit_space == "log";
    prob.dt = o.dt;
    const long base = series.dates.front().serial();
    std::vector<double> values;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double t = static_cast<double>(series.dates[k].serial() - base);
        if (t <= 0) continue;  // model time starts at the first row
        prob.times.push_back(t);
        values.push_back(static_cast<double>(column[k]));
    }
    if (o.observable == "c")
        prob.observed.push_back({{0.0, -1.0}, o.n, "cumulative"});
    else if (o.observable == "i")
        prob.observed.push_back({{1.0, 0.0}, 0.0, "infected"});
    else
        throw InvalidParamsError("--observable must be c or i");
    prob.data.push_back(values);

    const std::vector<double> start = parse_vector(o.p0);
    if (start.size() != 2) throw InvalidParamsError("--p0 needs two comma-separated values");
    const FitResult res = fit_gradient_descent(prob, start, o.h_step, o.max_iters, o.tol);

    // finite-difference check of the analytic gradient, evaluated slightly
    // off the solution where the gradient is not cancellation-dominated
    std::vector<double> probe = res.p;
    for (double& v : probe) v *= 1.05;
    const auto grad = gradient(prob, probe);
    double grad_check = 0.0;
    for (std::size_t k = 0; k < probe.size(); ++k) {
        const double h = 1e-6 * std::max(std::abs(probe[k]), 1e-6);
        std::vector<double> hi = probe, lo = probe;
        hi[k] += h;
        lo[k] -= h;
        const double fd = (loss(prob, hi) - loss(prob, lo)) / (2.0 * h);
        grad_check = std::max(grad_check, std::abs(fd - grad[k]) / std::max(std::abs(fd), 1e-12));
    }

    const std::string body = fit_result_json(res, grad_check);
    std::cout << body << '\n';
    if (!o.out.empty()) open_out(o.out) << body << '\n';
    return res.status == FitStatus::Stalled ? 2 : 0;
}

struct FitCurveOpts {
    std::string ansatz = "fermi-dirac", data_file, out, fit_space = "linear", column = "cases";
    std::string p0;
    double h_step = 1e-3, tol = 1e-13;
    int max_iters = 300000;
};

int run_fit_curve(const FitCurveOpts& o) {
    if (o.ansatz != "fermi-dirac")
        throw InvalidParamsError("only --ansatz fermi-dirac is supported");
    const CaseSeries series = read_case_csv(resolve_data_path(o.data_file));
    const auto& column = o.column == "deaths" ? series.deaths : series.cases;
    const long base = series.dates.front().serial();
    std::vector<double> times, values;
    for (std::size_t k = 0; k < series.size(); ++k) {
        if (column[k] <= 0) continue;  // the ansatz needs positive counts
        times.push_back(static_cast<double>(series.dates[k].serial() - base));
        values.push_back(static_cast<double>(column[k]));
    }
    std::optional<FermiDiracParams> start;
    if (!o.p0.empty()) {
        const auto v = parse_vector(o.p0);
        if (v.size() != 3) throw InvalidParamsError("--p0 needs three comma-separated values");
        start = FermiDiracParams{v[0], v[1], v[2]};
    }
    const FermiDiracFit fit = fit_fermi_dirac(times, values, o.fit_space == "log", start, o.h_step,
                                              o.max_iters, o.tol);
    nlohmann::ordered_json doc;
    doc["a"] = fit.params.a;
    doc["t0"] = fit.params.t0;
    doc["gamma"] = fit.params.gamma;
    doc["asymptote"] = std::exp(fit.params.a);
    doc["loss"] = fit.result.loss;
    doc["iters"] = fit.result.iterations;
    doc["status"] = to_string(fit.result.status);
    if (!fit.result.warning.empty()) doc["warning"] = fit.result.warning;
    const std::string body = doc.dump(2);
    std::cout << body << '\n';
    if (!o.out.empty()) open_out(o.out) << body << '\n';
    return fit.result.status == FitStatus::Stalled ? 2 : 0;
}

struct DataOpts {
    std::string input, out, format = "csv", column = "cases";
    int window = 7;
};

int run_data(const std::string& action, const DataOpts& o) {
    const CaseSeries series = read_case_csv(resolve_data_path(o.input));
    for (const auto& w : series.warnings) std::cerr << "warning: " << w << '\n';

    if (action == "ingest") {
        if (o.format == "json") {
            if (o.out.empty()) throw InvalidParamsError("ingest --format json needs --out");
            write_case_series_json(series, o.out);
        } else if (o.out.empty()) {
            write_case_series_csv(series, "/dev/stdout");
        } else {
            write_case_series_csv(series, o.out);
        }
        return 0;
    }

    const auto& column = o.column == "deaths" ? series.deaths : series.cases;
    std::ostringstream body;
    body << "date,value\n";
    if (action == "diff") {
        const DiffSeries d = daily_new(series.dates, column);
        if (d.has_negative) std::cerr << "warning: negative daily values retained\n";
        for (std::size_t k = 0; k < d.values.size(); ++k)
            body << d.dates[k].iso() << ',' << d.values[k] << '\n';
    } else if (action == "ma") {
        std::vector<double> values(column.begin(), column.end());
        const auto smooth = moving_average(values, o.window);
        for (std::size_t k = 0; k < smooth.size(); ++k)
            body << series.dates[k].iso() << ',' << format_double(smooth[k]) << '\n';
    } else {
        throw InvalidParamsError("unknown data action");
    }
    if (o.out.empty())
        std::cout << body.str();
    else
        open_out(o.out) << body.str();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"epidemic modeling toolkit: compartment models, spatial densities, "
                 "stochastic simulation and calibration"};
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* simulate = app.add_subcommand("simulate", "integrate a compartment-model scenario");
    simulate->add_option("--preset", sim.preset, "bundled scenario name");
    simulate->add_option("--scenario", sim.scenario_file, "scenario JSON file");
    simulate->add_option("--t-end", sim.t_end, "override horizon (days)");
    simulate->add_option("--dt", sim.dt, "override integrator step (days)");
    simulate->add_option("--sample-every", sim.sample_every, "output cadence (days)");
    simulate->add_option("--out", sim.out, "trajectory CSV path (stdout if omitted)");
    simulate->add_option("--stats", sim.stats_out, "derived statistics JSON path");
    simulate->add_option("--reff", sim.reff_out, "effective reproduction number CSV path");
    simulate->add_option("--plot", sim.plot, "SVG line plot path");

    LinearSeirOpts lin;
    auto* linear = app.add_subcommand("linear-seir", "closed-form linearized SEIR evaluation");
    linear->add_option("--beta", lin.beta, "transmission rate");
    linear->add_option("--sigma", lin.sigma, "incubation rate");
    linear->add_option("--gamma", lin.gamma, "removal rate");
    linear->add_option("--f", lin.f, "fatality fraction");
    linear->add_option("--n", lin.n, "population");
    linear->add_option("--e0", lin.e0, "initial exposed");
    linear->add_option("--i0", lin.i0, "initial infected");
    linear->add_option("--f0", lin.f0, "initial susceptible deviation");
    linear->add_option("--t-end", lin.t_end, "horizon (days)");
    linear->add_flag("--eval-grid", "evaluate on a uniform grid (default behavior)");
    linear->add_option("--grid-step", lin.step, "evaluation spacing (days)");
    linear->add_option("--out", lin.out, "CSV path (stdout if omitted)");

    SpatialOpts spa;
    auto* spatial = app.add_subcommand("spatial", "diffusive density model runs");
    spatial->add_option("--preset", spa.preset, "bundled spatial scenario")->required();
    spatial->add_option("--t-end", spa.t_end, "override horizon (days)");
    spatial->add_option("--dt", spa.dt, "override step (days)");
    spatial->add_option("--sample-every", spa.sample_every, "totals cadence (days)");
    spatial->add_option("--snapshot-every", spa.snapshot_every, "field snapshot cadence (days)");
    spatial->add_option("--snapshots", spa.snapshots, "snapshot CSV path prefix");
    spatial->add_option("--xt", spa.xt_prefix, "space-time matrix CSV path prefix");
    spatial->add_option("--out", spa.out, "totals CSV path (stdout if omitted)");
    spatial->add_option("--plot", spa.plot, "SVG line plot path");

    StabilityOpts sta;
    auto* stability =
        app.add_subcommand("stability", "steady states, dispersion and pattern lines");
    stability->add_option("--preset", sta.preset, "fig10b for the pattern-line sweep");
    stability->add_option("--lambda", sta.lambda, "infection coupling");
    stability->add_option("--mu", sta.mu, "infected removal rate");
    stability->add_option("--nu", sta.nu, "susceptible death rate");
    stability->add_option("--f", sta.f, "susceptible birth rate");
    stability->add_option("--ds", sta.d_s, "susceptible diffusion");
    stability->add_option("--di", sta.d_i, "infected diffusion");
    stability->add_option("--branch", sta.branch, "red or blue");
    stability->add_option("--k-max", sta.k_max, "dispersion scan limit");
    stability->add_option("--k-steps", sta.k_steps, "dispersion scan points");
    stability->add_flag("--turing-sweep", sta.turing_sweep, "emit the pattern-line curves");
    stability->add_option("--ratio", sta.ratio, "d_i/d_s for the sweep");
    stability->add_option("--nu-max", sta.nu_max, "sweep range");
    stability->add_option("--sweep-steps", sta.sweep_steps, "sweep resolution");
    stability->add_option("--out", sta.out, "CSV path (stdout if omitted)");

    GillespieCliOpts gil;
    gil.seed = default_seed();
    auto* gillespie = app.add_subcommand("gillespie", "event-driven stochastic simulation");
    gillespie->add_option("--scenario", gil.scenario_file, "sir scenario JSON file");
    gillespie->add_option("--beta", gil.beta, "transmission rate");
    gillespie->add_option("--gamma", gil.gamma, "removal rate");
    gillespie->add_option("--n", gil.n, "population");
    gillespie->add_option("--i0", gil.i0, "initial infected");
    gillespie->add_option("--g", gil.g, "death fraction of removals");
    gillespie->add_option("--cells", gil.cells, "lattice cells (1 = well mixed)");
    gillespie->add_option("--length", gil.length, "domain length for lattices");
    gillespie->add_option("--ds", gil.d_s, "susceptible diffusion for lattices");
    gillespie->add_option("--di", gil.d_i, "infected diffusion for lattices");
    gillespie->add_option("--t-end", gil.t_end, "horizon (days)");
    gillespie->add_option("--runs", gil.runs, "replicates (1 = event log output)");
    gillespie->add_option("--seed", gil.seed, "master seed (EPIKIT_SEED overrides the default)");
    gillespie->add_option("--threads", gil.threads, "worker threads (0 = hardware)");
    gillespie->add_option("--sample-every", gil.sample_every, "ensemble sampling cadence");
    gillespie->add_option("--out", gil.out, "CSV path (stdout if omitted)");

    LangevinOpts lan;
    lan.seed = default_seed();
    auto* langevin = app.add_subcommand("langevin", "density dynamics with internal noise");
    langevin->add_option("--preset", lan.preset, "bundled spatial scenario");
    langevin->add_option("--t-end", lan.t_end, "override horizon (days)");
    langevin->add_option("--dt", lan.dt, "override step (days)");
    langevin->add_option("--noise", lan.noise, "complex, real or off");
    langevin->add_option("--seed", lan.seed, "noise seed (EPIKIT_SEED overrides the default)");
    langevin->add_option("--sample-every", lan.sample_every, "totals cadence (days)");
    langevin->add_option("--out", lan.out, "totals CSV path (stdout if omitted)");

    FitOpts fit;
    auto* fit_cmd = app.add_subcommand("fit", "least-squares model calibration");
    fit_cmd->add_option("--model", fit.model, "model family (sir)");
    fit_cmd->add_option("--data", fit.data_file, "cumulative case CSV")->required();
    fit_cmd->add_option("--p0", fit.p0, "starting parameters, comma separated");
    fit_cmd->add_option("--fit-space", fit.fit_space, "linear or log");
    fit_cmd->add_option("--observable", fit.observable, "c (cumulative) or i (infected)");
    fit_cmd->add_option("--column", fit.column, "cases or deaths");
    fit_cmd->add_option("--n", fit.n, "population")->required();
    fit_cmd->add_option("--i0", fit.i0, "initial infected (default: first data value)");
    fit_cmd->add_option("--h-step", fit.h_step, "initial descent step");
    fit_cmd->add_option("--max-iters", fit.max_iters, "iteration cap");
    fit_cmd->add_option("--tol", fit.tol, "relative loss-change stop");
    fit_cmd->add_option("--dt", fit.dt, "integrator step (days)");
    fit_cmd->add_option("--out", fit.out, "result JSON path");

    FitCurveOpts curve;
    auto* fit_curve = app.add_subcommand("fit-curve", "closed-form growth-curve fits");
    fit_curve->add_option("--ansatz", curve.ansatz, "curve family (fermi-dirac)");
    fit_curve->add_option("--data", curve.data_file, "cumulative case CSV")->required();
    fit_curve->add_option("--fit-space", curve.fit_space, "linear or log");
    fit_curve->add_option("--column", curve.column, "cases or deaths");
    fit_curve->add_option("--p0", curve.p0, "a,t0,gamma start (heuristic if omitted)");
    fit_curve->add_option("--h-step", curve.h_step, "initial descent step");
    fit_curve->add_option("--max-iters", curve.max_iters, "iteration cap");
    fit_curve->add_option("--tol", curve.tol, "relative loss-change stop");
    fit_curve->add_option("--out", curve.out, "result JSON path");

    DataOpts dat;
    auto* data = app.add_subcommand("data", "case-series ingestion and transforms");
    data->require_subcommand(1);
    auto* ingest = data->add_subcommand("ingest", "parse and normalize a case CSV");
    auto* diff = data->add_subcommand("diff", "daily first differences");
    auto* ma = data->add_subcommand("ma", "trailing moving average");
    for (auto* sub : {ingest, diff, ma}) {
        sub->add_option("input", dat.input, "input CSV (searched in EPIKIT_DATA_DIR)")->required();
        sub->add_option("--out", dat.out, "output path (stdout if omitted)");
        sub->add_option("--column", dat.column, "cases or deaths");
    }
    ingest->add_option("--format", dat.format, "csv or json");
    ma->add_option("--window", dat.window, "window length (days)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (linear->parsed()) return run_linear_seir(lin);
        if (spatial->parsed()) return run_spatial_cmd(spa);
        if (stability->parsed()) return run_stability(sta);
        if (gillespie->parsed()) return run_gillespie(gil);
        if (langevin->parsed()) return run_langevin_cmd(lan);
        if (fit_cmd->parsed()) return run_fit(fit);
        if (fit_curve->parsed()) return run_fit_curve(curve);
        if (data->parsed()) {
            if (ingest->parsed()) return run_data("ingest", dat);
            if (diff->parsed()) return run_data("diff", dat);
            if (ma->parsed()) return run_data("ma", dat);
        }
    } catch (const InvalidParamsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (std::string(e.what()).rfind("scenario:", 0) == 0)
            std::cerr << "see docs/scenario.schema.json for the expected document layout\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const EmptyFileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
