#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epikit/models.hpp"
#include "epikit/spatial.hpp"

namespace epikit {

/// Piecewise description of the quarantine fraction q(t), supplied as data.
struct QuarantineSpec {
    enum class Kind { Constant, Logistic, Table } kind{Kind::Constant};
    double constant{0};
    double q_max{0}, t_mid{0}, rate{0};
    std::vector<std::pair<double, double>> table;  // piecewise linear (t, q)

    double operator()(double t) const;
};

struct ScenarioConfig {
    ModelKind model{ModelKind::Seir};
    SeirParams params;
    std::optional<ControlSchedule> control;
    std::optional<QuarantineSpec> quarantine;
    CompartmentState init;
    double t_end{100};
    double dt{0.05};
    std::string name;

    void validate() const;
    Rhs rhs() const;
    TimeSeries run(int sample_stride = 1) const;

    static ScenarioConfig from_json_text(const std::string& text);
    static ScenarioConfig from_json_file(const std::string& path);
    std::string to_json_text() const;
};

/// Spatial run description: homogeneous levels or a localized seed over a
/// uniform susceptible background.
struct SpatialScenario {
    SpatialParams params;
    double length{100};
    int n_points{512};
    double t_end{100};
    double dt{0.01};
    enum class Init { Homogeneous, GaussianSeed } init{Init::Homogeneous};
    double phi_s0{0.999};
    double phi_i0{0.001};
    double seed_mass{5};    // integral of the infected bump
    double seed_width{2};   // gaussian width in grid units of length
    std::string name;

    DensityFields make_fields(const Grid1D& grid) const;
};

std::optional<ScenarioConfig> simulate_preset(const std::string& name);
std::optional<SpatialScenario> spatial_preset(const std::string& name);
std::vector<std::string> simulate_preset_names();
std::vector<std::string> spatial_preset_names();

} // namespace epikit
