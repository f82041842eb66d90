#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "epikit/csv_out.hpp"
#include "epikit/scenario.hpp"
#include "nlohmann/json.hpp"

using namespace epikit;

TEST_CASE("all bundled presets validate and run") {
    for (const auto& name : simulate_preset_names()) {
        const auto cfg = simulate_preset(name);
        REQUIRE_MESSAGE(cfg.has_value(), name);
        CHECK_NOTHROW(cfg->validate());
    }
    for (const auto& name : spatial_preset_names()) {
        const auto sc = spatial_preset(name);
        REQUIRE_MESSAGE(sc.has_value(), name);
        CHECK_NOTHROW(sc->params.validate());
    }
    CHECK_FALSE(simulate_preset("fig99").has_value());
}

TEST_CASE("localized-seed preset carries the advertised masses") {
    const SpatialScenario sc = *spatial_preset("fig9");
    const Grid1D grid = make_grid(sc.length, sc.n_points);
    const DensityFields f = sc.make_fields(grid);
    double s_total = 0.0, i_total = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        s_total += f.phi_s[j] * grid.spacing;
        i_total += f.phi_i[j] * grid.spacing;
    }
    CHECK(s_total == doctest::Approx(95.0).epsilon(1e-10));
    CHECK(i_total == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("scenario json round trip") {
    const ScenarioConfig cfg = *simulate_preset("fig5e");
    const ScenarioConfig back = ScenarioConfig::from_json_text(cfg.to_json_text());
    CHECK(back.model == cfg.model);
    CHECK(back.params.beta0 == cfg.params.beta0);
    CHECK(back.params.sigma == cfg.params.sigma);
    REQUIRE(back.control.has_value());
    CHECK(back.control->t0 == cfg.control->t0);
    REQUIRE(back.control->removal_time.has_value());
    CHECK(*back.control->removal_time == 60.0);
    CHECK(back.init.s == cfg.init.s);
    CHECK(back.t_end == cfg.t_end);
}

TEST_CASE("scenario json rejects malformed documents") {
    CHECK_THROWS_AS(ScenarioConfig::from_json_text("{"), InvalidParamsError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text("{}"), InvalidParamsError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"model":"nope","params":{},"init":{},"t_end":1})"),
                    InvalidParamsError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                        R"({"model":"sir","params":{"beta0":0.5,"gamma":0.25,"n":100},"init":{"s":95,"i":5},"t_end":-3})"),
                    InvalidParamsError);
    // sigma missing is fine for sir; gamma missing is not
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(
                        R"({"model":"sir","params":{"beta0":0.5,"n":100},"init":{"s":95,"i":5},"t_end":10})"),
                    InvalidParamsError);
}

TEST_CASE("quarantine specs evaluate") {
    QuarantineSpec constant;
    constant.kind = QuarantineSpec::Kind::Constant;
    constant.constant = 0.4;
    CHECK(constant(12.0) == doctest::Approx(0.4));

    QuarantineSpec logistic;
    logistic.kind = QuarantineSpec::Kind::Logistic;
    logistic.q_max = 1.0;
    logistic.t_mid = 10.0;
    logistic.rate = 0.5;
    CHECK(logistic(10.0) == doctest::Approx(0.5));
    CHECK(logistic(1e5) == doctest::Approx(1.0));

    QuarantineSpec table;
    table.kind = QuarantineSpec::Kind::Table;
    table.table = {{0.0, 0.0}, {10.0, 1.0}};
    CHECK(table(5.0) == doctest::Approx(0.5));
    CHECK(table(-3.0) == doctest::Approx(0.0));
    CHECK(table(30.0) == doctest::Approx(1.0));
}

TEST_CASE("quarantine scenario parses from json and runs") {
    const ScenarioConfig cfg = ScenarioConfig::from_json_text(R"({
        "model": "sir_quarantine",
        "params": {"beta0": 0.5, "gamma": 0.25, "n": 10000},
        "quarantine": {"type": "constant", "value": 0.5},
        "init": {"s": 9990, "i": 10, "c": 10},
        "t_end": 30, "dt": 0.05
    })");
    const TimeSeries traj = cfg.run(20);
    // the quarantined pool only grows
    for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj[k].d >= traj[k - 1].d);
    // S + I + R + T stays at the initial total
    for (const auto& y : traj) CHECK(y.total() == doctest::Approx(1e4).epsilon(1e-9));
}

TEST_CASE("serialized scenarios satisfy the shipped schema") {
    const std::filesystem::path schema_path =
        std::filesystem::path(__FILE__).parent_path().parent_path() / "docs" /
        "scenario.schema.json";
    std::ifstream in(schema_path);
    REQUIRE(in.good());
    const nlohmann::json schema = nlohmann::json::parse(in);

    for (const auto& name : simulate_preset_names()) {
        const nlohmann::json doc = nlohmann::json::parse(simulate_preset(name)->to_json_text());
        for (const auto& key : schema.at("required")) CHECK(doc.contains(key.get<std::string>()));
        const auto& models = schema["properties"]["model"]["enum"];
        CHECK(std::find(models.begin(), models.end(), doc["model"]) != models.end());
        for (const auto& key : schema["properties"]["params"]["required"])
            CHECK(doc["params"].contains(key.get<std::string>()));
    }
}

TEST_CASE("trajectory csv carries the exact header and is reproducible") {
    ScenarioConfig cfg = *simulate_preset("fig4");
    cfg.t_end = 5;
    const TimeSeries traj = cfg.run(20);
    std::ostringstream a, b;
    write_trajectory_csv(a, traj, cfg.model, cfg.params, cfg.control);
    write_trajectory_csv(b, traj, cfg.model, cfg.params, cfg.control);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, a.str().find('\n')) == "t,S,E,I,R,D,C,new_cases,new_deaths");
}
