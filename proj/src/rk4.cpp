#include "epikit/rk4.hpp"

#include <cmath>

namespace epikit {

namespace {

CompartmentState axpy(const CompartmentState& y, double a, const CompartmentState& k) {
    CompartmentState out;
    out.s = y.s + a * k.s;
    out.e = y.e + a * k.e;
    out.i = y.i + a * k.i;
    out.r = y.r + a * k.r;
    out.d = y.d + a * k.d;
    out.c = y.c + a * k.c;
    out.t = y.t + a * k.t;
    return out;
}

void clamp_small_negatives(CompartmentState& y, double floor_mag) {
    auto fix = [floor_mag](double& x) {
        if (x < 0.0) {
            if (x >= -floor_mag)
                x = 0.0;
            else
                throw NegativeStateError("state component fell below the negative slack");
        }
    };
    fix(y.s);
    fix(y.e);
    fix(y.i);
    fix(y.r);
    fix(y.d);
    fix(y.c);
}

} // namespace

TimeSeries integrate_rk4(const Rhs& rhs, const CompartmentState& state0, double t_end,
                         const Rk4Options& opts) {
    if (!(opts.dt > 0)) throw InvalidParamsError("dt must be positive");
    if (!(t_end > 0)) throw InvalidParamsError("t_end must be positive");

    const double dt = opts.dt;
    const long n_steps = static_cast<long>(std::floor(t_end / dt + 1e-9));
    const double floor_mag =
        opts.negative_floor >= 0 ? opts.negative_floor : 1e-9 * std::abs(state0.total());
    const int stride = opts.sample_stride > 0 ? opts.sample_stride : 1;

    TimeSeries out;
    out.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
    CompartmentState y = state0;
    y.t = 0.0;
    out.push_back(y);

    for (long step = 0; step < n_steps; ++step) {
        const CompartmentState k1 = rhs(y);
        const CompartmentState k2 = rhs(axpy(y, 0.5 * dt, k1));
        const CompartmentState k3 = rhs(axpy(y, 0.5 * dt, k2));
        const CompartmentState k4 = rhs(axpy(y, dt, k3));
        y.s += dt / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s);
        y.e += dt / 6.0 * (k1.e + 2.0 * k2.e + 2.0 * k3.e + k4.e);
        y.i += dt / 6.0 * (k1.i + 2.0 * k2.i + 2.0 * k3.i + k4.i);
        y.r += dt / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
        y.d += dt / 6.0 * (k1.d + 2.0 * k2.d + 2.0 * k3.d + k4.d);
        y.c += dt / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c);
        y.t = static_cast<double>(step + 1) * dt;
        if (!y.finite()) throw NonFiniteError("state became non-finite at t=" + std::to_string(y.t));
        clamp_small_negatives(y, floor_mag);
        if ((step + 1) % stride == 0 || step + 1 == n_steps) out.push_back(y);
    }
    return out;
}

void rk4_step(const VectorRhs& f, double t, double dt, std::vector<double>& y,
              std::vector<double>& k, std::vector<double>& yk, std::vector<double>& sum) {
    const std::size_t n = y.size();
    k.resize(n);
    yk.resize(n);
    sum.resize(n);

    f(t, y, k);  // k1
    for (std::size_t j = 0; j < n; ++j) {
        sum[j] = k[j];
        yk[j] = y[j] + 0.5 * dt * k[j];
    }
    f(t + 0.5 * dt, yk, k);  // k2
    for (std::size_t j = 0; j < n; ++j) {
        sum[j] += 2.0 * k[j];
        yk[j] = y[j] + 0.5 * dt * k[j];
    }
    f(t + 0.5 * dt, yk, k);  // k3
    for (std::size_t j = 0; j < n; ++j) {
        sum[j] += 2.0 * k[j];
        yk[j] = y[j] + dt * k[j];
    }
    f(t + dt, yk, k);  // k4
    for (std::size_t j = 0; j < n; ++j) y[j] += dt / 6.0 * (sum[j] + k[j]);
}

void rk4_integrate(const VectorRhs& f, double t0, double dt, long n_steps, std::vector<double>& y,
                   const std::function<void(long, double, const std::vector<double>&)>& on_step) {
    std::vector<double> k, yk, sum;
    for (long step = 0; step < n_steps; ++step) {
        rk4_step(f, t0 + static_cast<double>(step) * dt, dt, y, k, yk, sum);
        const double t = t0 + static_cast<double>(step + 1) * dt;
        for (double v : y)
            if (!std::isfinite(v)) throw NonFiniteError("system became non-finite at t=" + std::to_string(t));
        if (on_step) on_step(step + 1, t, y);
    }
}

} // namespace epikit
