#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "epikit/errors.hpp"

namespace epikit {

/// One time slice of population counts. For the quarantine SIR variant the
/// d slot carries the quarantined population (it is the model's second
/// removal accumulator); everywhere else d counts deaths.
struct CompartmentState {
    double s{0}, e{0}, i{0}, r{0}, d{0}, c{0};
    double t{0};

    double total() const { return s + e + i + r + d; }

    std::array<double, 6> values() const { return {s, e, i, r, d, c}; }

    static CompartmentState from_values(const std::array<double, 6>& v, double t) {
        return {v[0], v[1], v[2], v[3], v[4], v[5], t};
    }

    bool finite() const {
        for (double x : values())
            if (!std::isfinite(x)) return false;
        return std::isfinite(t);
    }
};

using TimeSeries = std::vector<CompartmentState>;

struct SeirParams {
    double beta0{0};  // transmission rate, 1/day
    double sigma{0};  // incubation rate, 1/day
    double gamma{0};  // removal rate, 1/day
    double f{0};      // fatality fraction
    double n{0};      // total population

    void validate() const {
        if (!(beta0 > 0) || !(sigma > 0) || !(gamma > 0))
            throw InvalidParamsError("rates beta0, sigma, gamma must be positive");
        if (f < 0 || f > 1) throw InvalidParamsError("fatality fraction must lie in [0,1]");
        if (!(n > 0)) throw InvalidParamsError("population must be positive");
    }
};

/// Piecewise transmission rate: beta0 until t0, exponential decay afterwards,
/// restored to beta0 if controls are lifted at removal_time.
struct ControlSchedule {
    double beta0{0};
    double t0{0};
    double alpha{0};
    std::optional<double> removal_time{};

    void validate() const {
        if (alpha < 0) throw InvalidParamsError("control decay rate must be non-negative");
        if (t0 < 0) throw InvalidParamsError("control onset must be non-negative");
        if (removal_time && !(*removal_time > t0))
            throw InvalidParamsError("control removal must come after onset");
    }
};

struct QuarantineParams {
    double beta{0};
    double gamma{0};
    double n{0};
    std::function<double(double)> q_fn;  // quarantine fraction q(t) >= 0
};

struct DerivedStats {
    double r0{0};
    double i0_incub{0};
    double half_life_transmission{0};
    double half_life_incubation{0};
    double half_life_infectious{0};
    double control_response_time{0};  // infinite when alpha == 0
};

} // namespace epikit
