#include "epikit/scenario.hpp"

#include <cmath>
#include <fstream>

#include "nlohmann/json.hpp"

#include "epikit/rk4.hpp"

namespace epikit {

double QuarantineSpec::operator()(double t) const {
    switch (kind) {
        case Kind::Constant:
            return constant;
        case Kind::Logistic:
            return q_max / (1.0 + std::exp(-rate * (t - t_mid)));
        case Kind::Table: {
            if (table.empty()) return 0.0;
            if (t <= table.front().first) return table.front().second;
            if (t >= table.back().first) return table.back().second;
            for (std::size_t k = 1; k < table.size(); ++k) {
                if (t <= table[k].first) {
                    const auto& [t0, q0] = table[k - 1];
                    const auto& [t1, q1] = table[k];
                    const double w = (t - t0) / (t1 - t0);
                    return q0 + w * (q1 - q0);
                }
            }
            return table.back().second;
        }
    }
    return 0.0;
}

void ScenarioConfig::validate() const {
    params.validate();
    if (control) control->validate();
    if (!(t_end > 0) || !(dt > 0)) throw InvalidParamsError("t_end and dt must be positive");
    if (!init.finite()) throw InvalidParamsError("initial state must be finite");
    if (model == ModelKind::SirQuarantine && quarantine) {
        // probe a few points for negative quarantine fractions
        for (double t : {0.0, 0.25 * t_end, 0.5 * t_end, t_end})
            if ((*quarantine)(t) < 0) throw InvalidParamsError("quarantine fraction must be >= 0");
    }
}

Rhs ScenarioConfig::rhs() const {
    std::optional<QuarantineParams> qp;
    if (model == ModelKind::SirQuarantine) {
        QuarantineSpec spec = quarantine.value_or(QuarantineSpec{});
        qp = QuarantineParams{params.beta0, params.gamma, params.n,
                              [spec](double t) { return spec(t); }};
    }
    return make_rhs(model, params, control, qp);
}

TimeSeries ScenarioConfig::run(int sample_stride) const {
    validate();
    Rk4Options opts;
    opts.dt = dt;
    opts.sample_stride = sample_stride;
    // the linearized model's s slot is a deviation, not a population
    opts.negative_floor = model == ModelKind::SeirLinear
                              ? std::numeric_limits<double>::infinity()
                              : -1;
    return integrate_rk4(rhs(), init, t_end, opts);
}

namespace {

using nlohmann::json;

double require_number(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number())
        throw InvalidParamsError(std::string("scenario: missing numeric field '") + key + "'");
    return doc[key].get<double>();
}

} // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParamsError(std::string("scenario: ") + e.what());
    }
    ScenarioConfig cfg;
    if (!doc.contains("model") || !doc["model"].is_string())
        throw InvalidParamsError("scenario: missing string field 'model'");
    const auto kind = model_kind_from_string(doc["model"].get<std::string>());
    if (!kind)
        throw InvalidParamsError("scenario: model must be one of seir, seir_linear, sir, sir_quarantine");
    cfg.model = *kind;

    if (!doc.contains("params") || !doc["params"].is_object())
        throw InvalidParamsError("scenario: missing object field 'params'");
    const json& jp = doc["params"];
    cfg.params.beta0 = require_number(jp, "beta0");
    cfg.params.sigma = jp.contains("sigma") ? require_number(jp, "sigma") : 1.0;
    cfg.params.gamma = require_number(jp, "gamma");
    cfg.params.f = jp.contains("f") ? require_number(jp, "f") : 0.0;
    cfg.params.n = require_number(jp, "n");

    if (doc.contains("control")) {
        const json& jc = doc["control"];
        if (!jc.is_object()) throw InvalidParamsError("scenario: 'control' must be an object");
        ControlSchedule ctrl;
        ctrl.beta0 = cfg.params.beta0;
        ctrl.t0 = require_number(jc, "t0");
        ctrl.alpha = require_number(jc, "alpha");
        if (jc.contains("removal_time")) ctrl.removal_time = require_number(jc, "removal_time");
        cfg.control = ctrl;
    }

    if (doc.contains("quarantine")) {
        const json& jq = doc["quarantine"];
        QuarantineSpec spec;
        const std::string type = jq.value("type", "constant");
        if (type == "constant") {
            spec.kind = QuarantineSpec::Kind::Constant;
            spec.constant = require_number(jq, "value");
        } else if (type == "logistic") {
            spec.kind = QuarantineSpec::Kind::Logistic;
            spec.q_max = require_number(jq, "q_max");
            spec.t_mid = require_number(jq, "t_mid");
            spec.rate = require_number(jq, "rate");
        } else if (type == "table") {
            spec.kind = QuarantineSpec::Kind::Table;
            if (!jq.contains("points") || !jq["points"].is_array())
                throw InvalidParamsError("scenario: quarantine table needs 'points'");
            for (const auto& pt : jq["points"])
                spec.table.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
        } else {
            throw InvalidParamsError("scenario: unknown quarantine type '" + type + "'");
        }
        cfg.quarantine = spec;
    }

    if (!doc.contains("init") || !doc["init"].is_object())
        throw InvalidParamsError("scenario: missing object field 'init'");
    const json& ji = doc["init"];
    cfg.init.s = ji.value("s", 0.0);
    cfg.init.e = ji.value("e", 0.0);
    cfg.init.i = ji.value("i", 0.0);
    cfg.init.r = ji.value("r", 0.0);
    cfg.init.d = ji.value("d", 0.0);
    cfg.init.c = ji.value("c", 0.0);

    cfg.t_end = require_number(doc, "t_end");
    cfg.dt = doc.contains("dt") ? require_number(doc, "dt") : 0.05;
    cfg.name = doc.value("name", "");
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

std::string ScenarioConfig::to_json_text() const {
    nlohmann::ordered_json doc;
    doc["model"] = to_string(model);
    doc["params"] = {{"beta0", params.beta0},
                     {"sigma", params.sigma},
                     {"gamma", params.gamma},
                     {"f", params.f},
                     {"n", params.n}};
    if (control) {
        doc["control"] = {{"t0", control->t0}, {"alpha", control->alpha}};
        if (control->removal_time) doc["control"]["removal_time"] = *control->removal_time;
    }
    doc["init"] = {{"s", init.s}, {"e", init.e}, {"i", init.i},
                   {"r", init.r}, {"d", init.d}, {"c", init.c}};
    doc["t_end"] = t_end;
    doc["dt"] = dt;
    if (!name.empty()) doc["name"] = name;
    return doc.dump(2);
}

DensityFields SpatialScenario::make_fields(const Grid1D& grid) const {
    DensityFields f = DensityFields::zeros(grid.n);
    if (init == Init::Homogeneous) {
        for (int j = 0; j < grid.n; ++j) {
            f.phi_s[j] = phi_s0;
            f.phi_i[j] = phi_i0;
        }
    } else {
        const double center = 0.5 * grid.length;
        const double norm = seed_mass / (seed_width * std::sqrt(2.0 * std::numbers::pi));
        const auto x = grid.points();
        for (int j = 0; j < grid.n; ++j) {
            f.phi_s[j] = phi_s0;
            const double dx = x[j] - center;
            f.phi_i[j] = norm * std::exp(-0.5 * dx * dx / (seed_width * seed_width));
        }
    }
    return f;
}

namespace {

ScenarioConfig seir_base(double beta0, double sigma, double gamma, double f, double n, double i0) {
    ScenarioConfig cfg;
    cfg.model = ModelKind::Seir;
    cfg.params = {beta0, sigma, gamma, f, n};
    cfg.init = {n - i0, 0, i0, 0, 0, 0, 0};
    return cfg;
}

} // namespace

std::optional<ScenarioConfig> simulate_preset(const std::string& name) {
    // fig5b/d/f are the new-cases views of the fig5a/c/e runs; the
    // trajectories are identical.
    if (name == "fig3") {
        ScenarioConfig cfg;
        cfg.model = ModelKind::SeirLinear;
        cfg.params = {0.5, 1.0 / 24.0, 1.0 / 14.0, 0.25, 1e4};
        cfg.init = {1000, 0, 10, 0, 0, 0, 0};  // s slot is F0
        cfg.t_end = 100;
        cfg.name = name;
        return cfg;
    }
    if (name == "fig4") {
        ScenarioConfig cfg = seir_base(0.5, 1.0 / 24.0, 1.0 / 14.0, 0.25, 1e4, 10);
        cfg.t_end = 600;
        cfg.name = name;
        return cfg;
    }
    if (name == "fig5a" || name == "fig5b") {
        ScenarioConfig cfg = seir_base(0.5, 0.5, 0.25, 0.10, 1e4, 10);
        cfg.t_end = 120;
        cfg.name = name;
        return cfg;
    }
    if (name == "fig5c" || name == "fig5d") {
        ScenarioConfig cfg = seir_base(0.5, 0.5, 0.25, 0.10, 1e4, 10);
        cfg.control = ControlSchedule{0.5, 28, 0.125, std::nullopt};
        cfg.t_end = 160;
        cfg.name = name;
        return cfg;
    }
    if (name == "fig5e" || name == "fig5f") {
        ScenarioConfig cfg = seir_base(0.5, 0.5, 0.25, 0.10, 1e4, 10);
        cfg.control = ControlSchedule{0.5, 28, 0.125, 60.0};
        cfg.t_end = 250;
        cfg.name = name;
        return cfg;
    }
    if (name == "ebola") {
        ScenarioConfig cfg = seir_base(0.266, 0.0720, 0.0533, 0.396, 1e6 + 1, 1);
        cfg.control = ControlSchedule{0.266, 1, 0.00648, std::nullopt};
        cfg.t_end = 700;
        cfg.name = name;
        return cfg;
    }
    return std::nullopt;
}

std::optional<SpatialScenario> spatial_preset(const std::string& name) {
    if (name == "fig8a") {
        SpatialScenario sc;
        sc.params = {0.5, 0.25, 0.0, 0.0, 0.10, 0.0, 0.0};
        sc.length = 100;
        sc.n_points = 64;
        sc.t_end = 200;
        sc.dt = 0.02;
        sc.init = SpatialScenario::Init::Homogeneous;
        sc.phi_s0 = 0.999;
        sc.phi_i0 = 0.001;
        sc.name = name;
        return sc;
    }
    if (name == "fig8b") {
        SpatialScenario sc = *spatial_preset("fig8a");
        sc.params.nu = 0.01;
        sc.params.f_source = 0.01;
        sc.name = name;
        return sc;
    }
    if (name == "fig9") {
        SpatialScenario sc;
        sc.params = {0.5, 0.25, 0.01, 0.01, 0.10, 10.0, 2.0};
        sc.length = 100;
        sc.n_points = 512;
        sc.t_end = 100;
        sc.dt = 0.01;
        sc.init = SpatialScenario::Init::GaussianSeed;
        sc.phi_s0 = 0.95;
        sc.seed_mass = 5;
        sc.seed_width = 2;
        sc.name = name;
        return sc;
    }
    return std::nullopt;
}

std::vector<std::string> simulate_preset_names() {
    return {"fig3", "fig4", "fig5a", "fig5b", "fig5c", "fig5d", "fig5e", "fig5f", "ebola"};
}

std::vector<std::string> spatial_preset_names() { return {"fig8a", "fig8b", "fig9"}; }

} // namespace epikit
