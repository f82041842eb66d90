#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epikit/analytic_seir.hpp"
#include "epikit/calibrate.hpp"
#include "epikit/data_io.hpp"
#include "epikit/fermi_dirac.hpp"
#include "epikit/gillespie.hpp"
#include "epikit/langevin.hpp"
#include "epikit/models.hpp"
#include "epikit/rk4.hpp"
#include "epikit/scenario.hpp"
#include "epikit/stability.hpp"

namespace py = pybind11;
using namespace epikit;

namespace {

SeirParams params_from_dict(const py::dict& d) {
    SeirParams p;
    p.beta0 = d["beta0"].cast<double>();
    p.sigma = d.contains("sigma") ? d["sigma"].cast<double>() : 1.0;
    p.gamma = d["gamma"].cast<double>();
    p.f = d.contains("f") ? d["f"].cast<double>() : 0.0;
    p.n = d["n"].cast<double>();
    return p;
}

ControlSchedule control_from_dict(const py::dict& d, double beta0) {
    ControlSchedule ctrl;
    ctrl.beta0 = beta0;
    ctrl.t0 = d.contains("t0") ? d["t0"].cast<double>() : 0.0;
    ctrl.alpha = d.contains("alpha") ? d["alpha"].cast<double>() : 0.0;
    if (d.contains("removal_time") && !d["removal_time"].is_none())
        ctrl.removal_time = d["removal_time"].cast<double>();
    return ctrl;
}

SpatialParams spatial_from_dict(const py::dict& d) {
    SpatialParams p;
    p.lambda = d["lambda"].cast<double>();
    p.mu = d["mu"].cast<double>();
    p.nu = d.contains("nu") ? d["nu"].cast<double>() : 0.0;
    p.f_source = d.contains("f") ? d["f"].cast<double>() : 0.0;
    p.g = d.contains("g") ? d["g"].cast<double>() : 0.0;
    p.d_s = d.contains("d_s") ? d["d_s"].cast<double>() : 0.0;
    p.d_i = d.contains("d_i") ? d["d_i"].cast<double>() : 0.0;
    return p;
}

py::dict series_to_dict(const TimeSeries& traj) {
    std::vector<double> t, s, e, i, r, d, c;
    for (const auto& y : traj) {
        t.push_back(y.t);
        s.push_back(y.s);
        e.push_back(y.e);
        i.push_back(y.i);
        r.push_back(y.r);
        d.push_back(y.d);
        c.push_back(y.c);
    }
    py::dict out;
    out["t"] = t;
    out["s"] = s;
    out["e"] = e;
    out["i"] = i;
    out["r"] = r;
    out["d"] = d;
    out["c"] = c;
    return out;
}

py::dict steady_state_to_dict(const SteadyState& s) {
    py::dict out;
    out["branch"] = s.branch == Branch::Red ? "red" : "blue";
    out["phi_i"] = s.phi_i;
    out["phi_s"] = s.phi_s;
    out["feasible"] = s.feasible;
    return out;
}

} // namespace

PYBIND11_MODULE(_epikit, m) {
    m.doc() = "Epidemic modeling toolkit: compartment models, spatial densities, "
              "stochastic simulation and least-squares calibration";

    m.def(
        "simulate",
        [](const std::string& model, const py::dict& params, const py::dict& init, double t_end,
           double dt, py::object control, py::object quarantine_q, double sample_every) {
            ScenarioConfig cfg;
            const auto kind = model_kind_from_string(model);
            if (!kind) throw InvalidParamsError("unknown model '" + model + "'");
            cfg.model = *kind;
            cfg.params = params_from_dict(params);
            if (!control.is_none())
                cfg.control = control_from_dict(control.cast<py::dict>(), cfg.params.beta0);
            if (!quarantine_q.is_none()) {
                QuarantineSpec spec;
                spec.kind = QuarantineSpec::Kind::Constant;
                spec.constant = quarantine_q.cast<double>();
                cfg.quarantine = spec;
            }
            auto get = [&init](const char* key) {
                return init.contains(key) ? init[key].cast<double>() : 0.0;
            };
            cfg.init = {get("s"), get("e"), get("i"), get("r"), get("d"), get("c"), 0.0};
            cfg.t_end = t_end;
            cfg.dt = dt;
            const int stride = std::max(1, static_cast<int>(std::llround(sample_every / dt)));
            return series_to_dict(cfg.run(stride));
        },
        py::arg("model"), py::arg("params"), py::arg("init"), py::arg("t_end"),
        py::arg("dt") = 0.05, py::arg("control") = py::none(),
        py::arg("quarantine_q") = py::none(), py::arg("sample_every") = 0.5,
        "Integrate a compartment model and return the sampled trajectory.");

    m.def(
        "simulate_preset",
        [](const std::string& name, double t_end, double sample_every) {
            auto cfg = simulate_preset(name);
            if (!cfg) throw InvalidParamsError("unknown preset '" + name + "'");
            if (t_end > 0) cfg->t_end = t_end;
            const int stride =
                std::max(1, static_cast<int>(std::llround(sample_every / cfg->dt)));
            return series_to_dict(cfg->run(stride));
        },
        py::arg("name"), py::arg("t_end") = -1.0, py::arg("sample_every") = 0.5);

    m.def(
        "derived_stats",
        [](const py::dict& params, const py::dict& control) {
            const SeirParams p = params_from_dict(params);
            const DerivedStats s = derived_stats(p, control_from_dict(control, p.beta0));
            py::dict out;
            out["r0"] = s.r0;
            out["incubation_number"] = s.i0_incub;
            out["half_life_transmission"] = s.half_life_transmission;
            out["half_life_incubation"] = s.half_life_incubation;
            out["half_life_infectious"] = s.half_life_infectious;
            out["control_response_time"] = s.control_response_time;
            return out;
        },
        py::arg("params"), py::arg("control"));

    m.def(
        "beta_at",
        [](const py::dict& control, double beta0, double t) {
            return beta_at(control_from_dict(control, beta0), t);
        },
        py::arg("control"), py::arg("beta0"), py::arg("t"));

    m.def(
        "linear_seir_eval",
        [](const py::dict& params, double e0, double i0, double f0,
           const std::vector<double>& times) {
            const LinearSeirSolution sol = solve_linear_seir(params_from_dict(params), e0, i0, f0);
            std::vector<double> e, i, f, c, r, d;
            for (double t : times) {
                const auto [et, it] = evaluate(sol, t);
                const IntegratedPopulations pops = integrated_populations(sol, t);
                e.push_back(et);
                i.push_back(it);
                f.push_back(pops.f);
                c.push_back(pops.c);
                r.push_back(pops.r);
                d.push_back(pops.d);
            }
            py::dict out;
            out["t"] = times;
            out["e"] = e;
            out["i"] = i;
            out["f"] = f;
            out["c"] = c;
            out["r"] = r;
            out["d"] = d;
            out["lambda_plus"] = sol.eigen.lambda_plus;
            out["lambda_minus"] = sol.eigen.lambda_minus;
            return out;
        },
        py::arg("params"), py::arg("e0"), py::arg("i0"), py::arg("f0"), py::arg("times"));

    m.def(
        "steady_states",
        [](const py::dict& params) {
            const auto states = steady_states(spatial_from_dict(params));
            py::list out;
            out.append(steady_state_to_dict(states[0]));
            out.append(steady_state_to_dict(states[1]));
            return out;
        },
        py::arg("params"));

    m.def(
        "dispersion",
        [](const py::dict& params, const std::string& branch, double k) {
            const SpatialParams p = spatial_from_dict(params);
            const auto states = steady_states(p);
            const DispersionPoint d = dispersion(p, branch == "blue" ? states[1] : states[0], k);
            py::dict out;
            out["k"] = d.k;
            out["b_k"] = d.b_k;
            out["c_k"] = d.c_k;
            out["omega_plus"] = d.omega_plus;
            out["omega_minus"] = d.omega_minus;
            return out;
        },
        py::arg("params"), py::arg("branch"), py::arg("k"));

    m.def(
        "hopf_check",
        [](const py::dict& params, const std::string& branch) {
            const SpatialParams p = spatial_from_dict(params);
            const auto states = steady_states(p);
            const HopfResult h = hopf_check(p, branch == "blue" ? states[1] : states[0]);
            py::dict out;
            out["oscillatory"] = h.oscillatory;
            out["b0"] = h.b0;
            out["c0"] = h.c0;
            out["omega0_plus"] = h.omega0_plus;
            out["omega0_minus"] = h.omega0_minus;
            return out;
        },
        py::arg("params"), py::arg("branch"));

    m.def(
        "turing_analysis",
        [](const py::dict& params, const std::string& branch) {
            const SpatialParams p = spatial_from_dict(params);
            const auto states = steady_states(p);
            const TuringResult t = turing_analysis(p, branch == "blue" ? states[1] : states[0]);
            py::dict out;
            out["on_line"] = t.on_line;
            out["k_c"] = t.k_c;
            out["line_residual"] = t.line_residual;
            out["vertex_k2"] = t.vertex_k2;
            out["c_at_vertex"] = t.c_at_vertex;
            return out;
        },
        py::arg("params"), py::arg("branch"));

    m.def(
        "run_spatial_preset",
        [](const std::string& name, double t_end, double dt, double sample_every) {
            auto sc = spatial_preset(name);
            if (!sc) throw InvalidParamsError("unknown spatial preset '" + name + "'");
            if (t_end > 0) sc->t_end = t_end;
            if (dt > 0) sc->dt = dt;
            const Grid1D grid = make_grid(sc->length, sc->n_points);
            SpatialRunOptions opts;
            opts.sample_stride = std::max(1, static_cast<int>(std::llround(sample_every / sc->dt)));
            const SpatialSeries series =
                run_spatial(sc->make_fields(grid), sc->params, grid, sc->t_end, sc->dt, opts);
            py::dict out;
            out["t"] = series.times;
            std::vector<double> s, i, r, d, c;
            for (const auto& tot : series.totals) {
                s.push_back(tot.s);
                i.push_back(tot.i);
                r.push_back(tot.r);
                d.push_back(tot.d);
                c.push_back(tot.c);
            }
            out["s"] = s;
            out["i"] = i;
            out["r"] = r;
            out["d"] = d;
            out["c"] = c;
            out["length"] = sc->length;
            return out;
        },
        py::arg("name"), py::arg("t_end") = -1.0, py::arg("dt") = -1.0,
        py::arg("sample_every") = 0.5);

    m.def(
        "gillespie_run",
        [](double beta, double gamma, double n, double i0, double g, double t_end,
           std::uint64_t seed, const std::vector<double>& sample_times) {
            const ReactionSystem sys = single_cell_sir(beta, gamma, n, g);
            OccupancyState init;
            init.s = {static_cast<std::int64_t>(n - i0)};
            init.i = {static_cast<std::int64_t>(i0)};
            GillespieOptions opts;
            opts.sample_times = sample_times;
            const GillespieResult res = gillespie_run(sys, init, t_end, seed, opts);
            py::dict out;
            out["samples"] = res.samples.values;
            out["events"] = res.event_count;
            out["extinct"] = res.extinct;
            return out;
        },
        py::arg("beta"), py::arg("gamma"), py::arg("n"), py::arg("i0"), py::arg("g"),
        py::arg("t_end"), py::arg("seed"), py::arg("sample_times"));

    m.def(
        "gillespie_ensemble",
        [](double beta, double gamma, double n, double i0, double g, double t_end, int runs,
           std::uint64_t seed, const std::vector<double>& sample_times, int threads) {
            const ReactionSystem sys = single_cell_sir(beta, gamma, n, g);
            OccupancyState init;
            init.s = {static_cast<std::int64_t>(n - i0)};
            init.i = {static_cast<std::int64_t>(i0)};
            const auto samples =
                gillespie_ensemble(sys, init, t_end, sample_times, runs, seed, threads);
            const EnsembleStats stats = ensemble_stats(samples, sample_times);
            py::dict out;
            out["t"] = stats.times;
            const char* names[5] = {"s", "i", "r", "d", "c"};
            for (int sp = 0; sp < 5; ++sp) {
                out[("mean_" + std::string(names[sp])).c_str()] = stats.mean[sp];
                out[("se_" + std::string(names[sp])).c_str()] = stats.se[sp];
            }
            return out;
        },
        py::arg("beta"), py::arg("gamma"), py::arg("n"), py::arg("i0"), py::arg("g"),
        py::arg("t_end"), py::arg("runs"), py::arg("seed"), py::arg("sample_times"),
        py::arg("threads") = 0);

    m.def(
        "fit_sir",
        [](const std::vector<double>& times, const std::vector<double>& data, double n, double i0,
           std::vector<double> p0, const std::string& observable, bool log_space, double h_step,
           int max_iters, double tol) {
            FitProblem prob;
            prob.model = sir_fit_model(n, i0);
            prob.times = times;
            prob.data = {data};
            if (observable == "c")
                prob.observed.push_back({{0.0, -1.0}, n, "cumulative"});
            else
                prob.observed.push_back({{1.0, 0.0}, 0.0, "infected"});
            prob.log_space = log_space;
            const FitResult res = fit_gradient_descent(prob, std::move(p0), h_step, max_iters, tol);
            py::dict out;
            out["p"] = res.p;
            out["loss"] = res.loss;
            out["iters"] = res.iterations;
            out["status"] = to_string(res.status);
            out["warning"] = res.warning;
            return out;
        },
        py::arg("times"), py::arg("data"), py::arg("n"), py::arg("i0"), py::arg("p0"),
        py::arg("observable") = "i", py::arg("log_space") = false, py::arg("h_step") = 1e-9,
        py::arg("max_iters") = 200000, py::arg("tol") = 1e-12);

    m.def(
        "fit_fermi_dirac",
        [](const std::vector<double>& times, const std::vector<double>& cases, bool fit_log,
           py::object p0, double h_step, int max_iters, double tol) {
            std::optional<FermiDiracParams> start;
            if (!p0.is_none()) {
                const auto v = p0.cast<std::vector<double>>();
                if (v.size() != 3) throw InvalidParamsError("p0 needs three entries");
                start = FermiDiracParams{v[0], v[1], v[2]};
            }
            const FermiDiracFit fit =
                fit_fermi_dirac(times, cases, fit_log, start, h_step, max_iters, tol);
            py::dict out;
            out["a"] = fit.params.a;
            out["t0"] = fit.params.t0;
            out["gamma"] = fit.params.gamma;
            out["asymptote"] = std::exp(fit.params.a);
            out["loss"] = fit.result.loss;
            out["iters"] = fit.result.iterations;
            out["status"] = to_string(fit.result.status);
            out["warning"] = fit.result.warning;
            return out;
        },
        py::arg("times"), py::arg("cases"), py::arg("fit_log") = true, py::arg("p0") = py::none(),
        py::arg("h_step") = 1e-3, py::arg("max_iters") = 300000, py::arg("tol") = 1e-13);

    m.def(
        "fermi_dirac_eval",
        [](double a, double t0, double gamma, double t) {
            return fermi_dirac_eval({a, t0, gamma}, t);
        },
        py::arg("a"), py::arg("t0"), py::arg("gamma"), py::arg("t"));

    m.def(
        "moving_average",
        [](const std::vector<double>& values, int window) { return moving_average(values, window); },
        py::arg("values"), py::arg("window") = 7);

    m.def(
        "daily_new",
        [](const std::vector<double>& values) {
            std::vector<double> out;
            for (std::size_t k = 1; k < values.size(); ++k) out.push_back(values[k] - values[k - 1]);
            return out;
        },
        py::arg("values"));

    py::register_exception<InvalidParamsError>(m, "InvalidParamsError", PyExc_ValueError);
    py::register_exception<NonFiniteError>(m, "NonFiniteError", PyExc_ArithmeticError);
}
