#pragma once

#include <span>
#include <vector>

#include "epikit/models.hpp"
#include "epikit/types.hpp"

namespace epikit {

struct Rk4Options {
    double dt{0.05};
    // Values in [-negative_floor, 0) are clamped to zero; below that the
    // integrator throws. Negative means derive 1e-9 * total(state0).
    double negative_floor{-1};
    // Keep every sample_stride-th step in the returned series (first and
    // last samples always kept).
    int sample_stride{1};
};

/// Classic fixed-step RK4. Samples at t = 0, dt, 2*dt, ...; the last sample
/// sits at the largest multiple of dt that is <= t_end.
TimeSeries integrate_rk4(const Rhs& rhs, const CompartmentState& state0, double t_end,
                         const Rk4Options& opts = {});

/// One RK4 step of a generic first-order system dy/dt = f(t, y).
/// f writes the derivative of y into dy.
using VectorRhs = std::function<void(double t, std::span<const double> y, std::span<double> dy)>;

void rk4_step(const VectorRhs& f, double t, double dt, std::vector<double>& y,
              std::vector<double>& scratch_k, std::vector<double>& scratch_y,
              std::vector<double>& scratch_sum);

/// Integrate a generic system from t0 by n_steps of size dt, visiting
/// each post-step state through the callback (step index is 1-based).
void rk4_integrate(const VectorRhs& f, double t0, double dt, long n_steps, std::vector<double>& y,
                   const std::function<void(long step, double t, const std::vector<double>&)>& on_step = {});

} // namespace epikit
