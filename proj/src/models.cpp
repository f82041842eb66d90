#include "epikit/models.hpp"

#include <cmath>

namespace epikit {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Seir: return "seir";
        case ModelKind::SeirLinear: return "seir_linear";
        case ModelKind::Sir: return "sir";
        case ModelKind::SirQuarantine: return "sir_quarantine";
    }
    return "unknown";
}

std::optional<ModelKind> model_kind_from_string(const std::string& name) {
    if (name == "seir") return ModelKind::Seir;
    if (name == "seir_linear") return ModelKind::SeirLinear;
    if (name == "sir") return ModelKind::Sir;
    if (name == "sir_quarantine") return ModelKind::SirQuarantine;
    return std::nullopt;
}

double beta_at(const ControlSchedule& schedule, double t) {
    if (t < schedule.t0) return schedule.beta0;
    if (schedule.removal_time && t >= *schedule.removal_time) return schedule.beta0;
    return schedule.beta0 * std::exp(-schedule.alpha * (t - schedule.t0));
}

CompartmentState seir_rhs(const CompartmentState& state, const SeirParams& p, double beta) {
    CompartmentState dy;
    const double infection = beta * state.s * state.i / p.n;
    dy.s = -infection;
    dy.e = infection - p.sigma * state.e;
    dy.i = p.sigma * state.e - p.gamma * state.i;
    dy.d = p.f * p.gamma * state.i;
    dy.r = (1.0 - p.f) * p.gamma * state.i;
    dy.c = p.sigma * state.e;
    dy.t = 1.0;
    return dy;
}

CompartmentState linearized_seir_rhs(const CompartmentState& state, const SeirParams& p, double beta) {
    CompartmentState dy;
    dy.s = -beta * state.i;  // s slot holds F = S - N
    dy.e = beta * state.i - p.sigma * state.e;
    dy.i = p.sigma * state.e - p.gamma * state.i;
    dy.d = p.f * p.gamma * state.i;
    dy.r = (1.0 - p.f) * p.gamma * state.i;
    dy.c = p.sigma * state.e;
    dy.t = 1.0;
    return dy;
}

CompartmentState sir_rhs(const CompartmentState& state, const SeirParams& p) {
    CompartmentState dy;
    const double infection = p.beta0 * state.s * state.i / p.n;
    dy.s = -infection;
    dy.e = 0.0;
    dy.i = infection - p.gamma * state.i;
    dy.d = p.f * p.gamma * state.i;
    dy.r = (1.0 - p.f) * p.gamma * state.i;
    dy.c = infection;
    dy.t = 1.0;
    return dy;
}

CompartmentState quarantine_sir_rhs(const CompartmentState& state, const QuarantineParams& qp) {
    const double q = qp.q_fn ? qp.q_fn(state.t) : 0.0;
    CompartmentState dy;
    const double infection = qp.beta * state.s * state.i / qp.n;
    dy.s = -infection;
    dy.e = 0.0;
    dy.i = infection - qp.gamma * (1.0 + q) * state.i;
    dy.r = qp.gamma * state.i;
    dy.d = qp.gamma * q * state.i;  // quarantined population T(t)
    dy.c = infection;
    dy.t = 1.0;
    return dy;
}

Rhs make_rhs(ModelKind kind, const SeirParams& p, const std::optional<ControlSchedule>& schedule,
             const std::optional<QuarantineParams>& qp) {
    switch (kind) {
        case ModelKind::Seir:
            if (schedule)
                return [p, s = *schedule](const CompartmentState& y) { return seir_rhs(y, p, beta_at(s, y.t)); };
            return [p](const CompartmentState& y) { return seir_rhs(y, p, p.beta0); };
        case ModelKind::SeirLinear:
            if (schedule)
                return [p, s = *schedule](const CompartmentState& y) {
                    return linearized_seir_rhs(y, p, beta_at(s, y.t));
                };
            return [p](const CompartmentState& y) { return linearized_seir_rhs(y, p, p.beta0); };
        case ModelKind::Sir:
            return [p](const CompartmentState& y) { return sir_rhs(y, p); };
        case ModelKind::SirQuarantine: {
            QuarantineParams q = qp.value_or(QuarantineParams{p.beta0, p.gamma, p.n, nullptr});
            return [q](const CompartmentState& y) { return quarantine_sir_rhs(y, q); };
        }
    }
    throw InvalidParamsError("unknown model kind");
}

DerivedStats derived_stats(const SeirParams& p, const ControlSchedule& schedule) {
    p.validate();
    schedule.validate();
    const double ln2 = std::log(2.0);
    DerivedStats out;
    out.r0 = p.beta0 / p.gamma;
    out.i0_incub = p.sigma / p.gamma;
    out.half_life_transmission = ln2 / schedule.beta0;
    out.half_life_incubation = ln2 / p.sigma;
    out.half_life_infectious = ln2 / p.gamma;
    out.control_response_time =
        schedule.alpha > 0 ? ln2 / schedule.alpha : std::numeric_limits<double>::infinity();
    return out;
}

ReffSeries r_eff_series(const TimeSeries& traj, const SeirParams& p, const ControlSchedule& schedule) {
    ReffSeries out;
    out.points.reserve(traj.size());
    for (const auto& state : traj) {
        const double beta = beta_at(schedule, state.t);
        out.points.push_back({state.t, beta * state.s / (p.gamma * p.n)});
    }
    for (std::size_t k = 1; k < out.points.size(); ++k) {
        const auto& a = out.points[k - 1];
        const auto& b = out.points[k];
        if (a.value >= 1.0 && b.value < 1.0) {
            const double w = (a.value - 1.0) / (a.value - b.value);
            out.unity_crossing = a.t + w * (b.t - a.t);
            break;
        }
    }
    return out;
}

} // namespace epikit
