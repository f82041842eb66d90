#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epikit/types.hpp"

namespace epikit {

enum class ModelKind { Seir, SeirLinear, Sir, SirQuarantine };

std::string to_string(ModelKind kind);
std::optional<ModelKind> model_kind_from_string(const std::string& name);

/// Transmission rate at time t under a control schedule.
double beta_at(const ControlSchedule& schedule, double t);

/// Full SEIR right-hand side with recovered/dead split and cumulative counter.
CompartmentState seir_rhs(const CompartmentState& state, const SeirParams& p, double beta);

/// Linearized variant: the s slot holds F(t) = S(t) - N.
CompartmentState linearized_seir_rhs(const CompartmentState& state, const SeirParams& p, double beta);

/// Strict two-parameter SIR; c accumulates new infections so that
/// C(t) = N - S(t) when initialized with c0 = n - s0.
CompartmentState sir_rhs(const CompartmentState& state, const SeirParams& p);

/// Quarantine SIR; the d slot carries the quarantined population T(t).
CompartmentState quarantine_sir_rhs(const CompartmentState& state, const QuarantineParams& qp);

using Rhs = std::function<CompartmentState(const CompartmentState&)>;

/// Bind a model family and its parameters into a single rhs callable.
/// The schedule is optional; without it beta stays at p.beta0.
Rhs make_rhs(ModelKind kind, const SeirParams& p,
             const std::optional<ControlSchedule>& schedule = std::nullopt,
             const std::optional<QuarantineParams>& qp = std::nullopt);

DerivedStats derived_stats(const SeirParams& p, const ControlSchedule& schedule);

struct ReffPoint {
    double t{0};
    double value{0};
};

struct ReffSeries {
    std::vector<ReffPoint> points;
    std::optional<double> unity_crossing;  // first time R_eff drops below 1
};

ReffSeries r_eff_series(const TimeSeries& traj, const SeirParams& p, const ControlSchedule& schedule);

} // namespace epikit
