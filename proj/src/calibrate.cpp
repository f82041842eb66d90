#include "epikit/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epikit/rk4.hpp"

namespace epikit {

namespace {

constexpr int kMaxHalvings = 40;

double floored_log(double x) { return std::log(std::max(x, 1.0)); }

struct ObservationPass {
    // residuals and d(observed)/dp per sample and column, honoring log space
    double loss{0};
    std::vector<double> grad;
};

ObservationPass observe(const FitProblem& problem, const SensitivitySamples& samples,
                        bool want_grad) {
    const int np = problem.model.n_params;
    const int ns = problem.model.n_states;
    ObservationPass out;
    out.grad.assign(np, 0.0);
    for (std::size_t i = 0; i < problem.times.size(); ++i) {
        for (std::size_t col = 0; col < problem.observed.size(); ++col) {
            const auto& obs = problem.observed[col];
            double value = obs.offset;
            for (int m = 0; m < ns; ++m) value += obs.weights[m] * samples.y[i][m];
            double datum = problem.data[col][i];
            double residual;
            double dlog_scale = 1.0;  // d(observable)/d(raw value)
            if (problem.log_space) {
                const double logged = floored_log(value);
                residual = logged - floored_log(datum);
                dlog_scale = value > 1.0 ? 1.0 / value : 0.0;
            } else {
                residual = value - datum;
            }
            out.loss += residual * residual;
            if (!want_grad) continue;
            for (int k = 0; k < np; ++k) {
                double dvalue = 0.0;
                for (int m = 0; m < ns; ++m) dvalue += obs.weights[m] * samples.s[i][m * np + k];
                out.grad[k] += 2.0 * residual * dlog_scale * dvalue;
            }
        }
    }
    return out;
}

} // namespace

OdeFitModel sir_fit_model(double n_population, double i0) {
    if (!(n_population > 0)) throw InvalidParamsError("population must be positive");
    OdeFitModel m;
    m.n_states = 2;
    m.n_params = 2;
    const double n = n_population;
    m.rhs = [n](double, std::span<const double> y, std::span<const double> p, std::span<double> dy) {
        dy[0] = p[0] * y[0] * y[1] / n - p[1] * y[0];
        dy[1] = -p[0] * y[0] * y[1] / n;
    };
    m.dfdy = [n](double, std::span<const double> y, std::span<const double> p, std::span<double> out) {
        out[0] = p[0] * y[1] / n - p[1];
        out[1] = p[0] * y[0] / n;
        out[2] = -p[0] * y[1] / n;
        out[3] = -p[0] * y[0] / n;
    };
    m.dfdp = [n](double, std::span<const double> y, std::span<const double>, std::span<double> out) {
        out[0] = y[0] * y[1] / n;
        out[1] = -y[0];
        out[2] = -y[0] * y[1] / n;
        out[3] = 0.0;
    };
    m.init_y = [n, i0](std::span<const double>, std::span<double> y0) {
        y0[0] = i0;
        y0[1] = n - i0;
    };
    return m;
}

void FitProblem::validate() const {
    if (times.empty()) throw InvalidParamsError("no data times");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw InvalidParamsError("data times must strictly increase");
    if (times.front() < 0) throw InvalidParamsError("data times must be non-negative");
    if (observed.empty() || data.size() != observed.size())
        throw InvalidParamsError("one observation map per data column is required");
    for (const auto& col : data)
        if (col.size() != times.size()) throw InvalidParamsError("data column length mismatch");
    for (const auto& obs : observed)
        if (static_cast<int>(obs.weights.size()) != model.n_states)
            throw InvalidParamsError("observation weights must span the model states");
    const long n_d = static_cast<long>(times.size() * data.size());
    if (n_d < model.n_params) throw InvalidParamsError("fewer data points than parameters");
    if (!(dt > 0)) throw InvalidParamsError("dt must be positive");
}

void sensitivity_rhs(const OdeFitModel& model, double t, std::span<const double> y,
                     std::span<const double> s, std::span<const double> p, std::span<double> dy,
                     std::span<double> ds) {
    const int n = model.n_states;
    const int np = model.n_params;
    model.rhs(t, y, p, dy);
    std::vector<double> jy(static_cast<std::size_t>(n) * n), jp(static_cast<std::size_t>(n) * np);
    model.dfdy(t, y, p, jy);
    model.dfdp(t, y, p, jp);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < np; ++k) {
            double acc = jp[j * np + k];
            for (int m = 0; m < n; ++m) acc += jy[j * n + m] * s[m * np + k];
            ds[j * np + k] = acc;
        }
    }
}

SensitivitySamples integrate_with_sensitivities(const OdeFitModel& model, std::span<const double> p,
                                                const std::vector<double>& times, double dt) {
    const int n = model.n_states;
    const int np = model.n_params;
    const std::size_t dim = static_cast<std::size_t>(n) * (1 + np);

    std::vector<double> z(dim, 0.0);
    model.init_y(p, std::span<double>(z.data(), n));
    if (model.init_s) model.init_s(p, std::span<double>(z.data() + n, static_cast<std::size_t>(n) * np));

    std::vector<double> pvec(p.begin(), p.end());
    VectorRhs rhs = [&model, &pvec, n, np](double t, std::span<const double> zz, std::span<double> dz) {
        sensitivity_rhs(model, t, zz.subspan(0, n), zz.subspan(n), pvec,
                        dz.subspan(0, n), dz.subspan(n));
    };

    // sample indices on the fixed step grid
    std::vector<long> sample_steps(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        sample_steps[i] = static_cast<long>(std::llround(times[i] / dt));
    const long n_steps = sample_steps.empty() ? 0 : sample_steps.back();

    SensitivitySamples out;
    out.y.resize(times.size());
    out.s.resize(times.size());
    std::size_t next = 0;
    auto record = [&](const std::vector<double>& state) {
        out.y[next].assign(state.begin(), state.begin() + n);
        out.s[next].assign(state.begin() + n, state.end());
        ++next;
    };
    while (next < times.size() && sample_steps[next] == 0) record(z);
    rk4_integrate(rhs, 0.0, dt, n_steps, z,
                  [&](long step, double, const std::vector<double>& state) {
                      while (next < times.size() && sample_steps[next] == step) record(state);
                  });
    return out;
}

double loss(const FitProblem& problem, std::span<const double> p) {
    problem.validate();
    const SensitivitySamples samples = integrate_with_sensitivities(problem.model, p, problem.times,
                                                                    problem.dt);
    return observe(problem, samples, false).loss;
}

std::pair<double, std::vector<double>> loss_and_gradient(const FitProblem& problem,
                                                         std::span<const double> p) {
    problem.validate();
    const SensitivitySamples samples = integrate_with_sensitivities(problem.model, p, problem.times,
                                                                    problem.dt);
    ObservationPass pass = observe(problem, samples, true);
    return {pass.loss, std::move(pass.grad)};
}

std::vector<double> gradient(const FitProblem& problem, std::span<const double> p) {
    return loss_and_gradient(problem, p).second;
}

std::string to_string(FitStatus status) {
    switch (status) {
        case FitStatus::Converged: return "converged";
        case FitStatus::MaxIterations: return "max_iterations";
        case FitStatus::Stalled: return "stalled";
    }
    return "unknown";
}

FitResult descend(const std::function<std::pair<double, std::vector<double>>(std::span<const double>)>&
                      loss_and_grad,
                  std::vector<double> p0, double h_step, int max_iters, double tol) {
    if (!(h_step > 0)) throw InvalidParamsError("step size must be positive");
    FitResult result;
    result.p = std::move(p0);

    auto eval = [&](std::span<const double> p) -> std::pair<double, std::vector<double>> {
        try {
            auto lg = loss_and_grad(p);
            if (!std::isfinite(lg.first)) lg.first = std::numeric_limits<double>::infinity();
            return lg;
        } catch (const NonFiniteError&) {
            return {std::numeric_limits<double>::infinity(), {}};
        }
    };

    auto [current_loss, grad] = eval(result.p);
    if (!std::isfinite(current_loss))
        throw NonFiniteError("loss is non-finite at the starting point");
    result.loss_curve.push_back(current_loss);

    double h = h_step;
    const int np = static_cast<int>(result.p.size());
    std::vector<double> trial(np);
    for (int iter = 0; iter < max_iters; ++iter) {
        double gnorm2 = 0.0;
        for (double g : grad) gnorm2 += g * g;
        result.grad_norm = std::sqrt(gnorm2);
        if (result.grad_norm <= 1e-14 * (1.0 + std::abs(current_loss))) {
            result.status = FitStatus::Converged;
            result.loss = current_loss;
            result.iterations = iter;
            return result;
        }

        int halvings = 0;
        double trial_loss = std::numeric_limits<double>::infinity();
        for (;;) {
            for (int k = 0; k < np; ++k) trial[k] = result.p[k] - h * grad[k];
            trial_loss = eval(trial).first;
            // sufficient (Armijo) decrease keeps huge steps from hopping
            // into unrelated basins while the loss still dips
            if (trial_loss < current_loss - 1e-4 * h * gnorm2) break;
            if (++halvings > kMaxHalvings) {
                const double delta = std::abs(trial_loss - current_loss);
                result.status = delta <= tol * std::max(current_loss, 1e-300)
                                    ? FitStatus::Converged
                                    : FitStatus::Stalled;
                result.loss = current_loss;
                result.iterations = iter;
                return result;
            }
            h *= 0.5;
        }

        const double delta = current_loss - trial_loss;
        result.p = trial;
        auto lg = eval(result.p);
        current_loss = lg.first;
        grad = std::move(lg.second);
        result.loss_curve.push_back(current_loss);
        result.iterations = iter + 1;
        h *= 2.0;
        if (delta < tol * std::max(current_loss, 1e-300)) {
            result.status = FitStatus::Converged;
            result.loss = current_loss;
            return result;
        }
    }
    result.status = FitStatus::MaxIterations;
    result.loss = current_loss;
    return result;
}

FitResult fit_gradient_descent(const FitProblem& problem, std::vector<double> p0, double h_step,
                               int max_iters, double tol) {
    problem.validate();
    if (static_cast<int>(p0.size()) != problem.model.n_params)
        throw InvalidParamsError("starting point dimension mismatch");
    auto lg = [&problem](std::span<const double> p) { return loss_and_gradient(problem, p); };
    FitResult result = descend(lg, std::move(p0), h_step, max_iters, tol);

    // flag flat directions of the normal matrix at the solution
    const SensitivitySamples samples =
        integrate_with_sensitivities(problem.model, result.p, problem.times, problem.dt);
    const int np = problem.model.n_params;
    const int ns = problem.model.n_states;
    std::vector<std::vector<double>> obs_grads;
    for (std::size_t i = 0; i < problem.times.size(); ++i) {
        for (const auto& obs : problem.observed) {
            std::vector<double> g(np, 0.0);
            for (int k = 0; k < np; ++k)
                for (int m = 0; m < ns; ++m) g[k] += obs.weights[m] * samples.s[i][m * np + k];
            obs_grads.push_back(std::move(g));
        }
    }
    const std::vector<double> nm = normal_matrix(obs_grads, np);
    const auto [lo, hi] = symmetric_eigen_range(nm, np);
    if (hi > 0 && lo <= 1e-9 * hi)
        result.warning = "flat direction: a parameter combination is unidentifiable";
    return result;
}

std::vector<double> normal_matrix(const std::vector<std::vector<double>>& obs_grads, int n_params) {
    std::vector<double> m(static_cast<std::size_t>(n_params) * n_params, 0.0);
    for (const auto& g : obs_grads)
        for (int a = 0; a < n_params; ++a)
            for (int b = 0; b < n_params; ++b) m[a * n_params + b] += g[a] * g[b];
    return m;
}

std::pair<double, double> symmetric_eigen_range(std::vector<double> m, int n) {
    // cyclic Jacobi; n is tiny
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += m[p * n + q] * m[p * n + q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double app = m[p * n + p];
                const double aqq = m[q * n + q];
                const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    const double mkp = m[k * n + p];
                    const double mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m[p * n + k];
                    const double mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
            }
        }
    }
    double lo = m[0], hi = m[0];
    for (int k = 1; k < n; ++k) {
        lo = std::min(lo, m[k * n + k]);
        hi = std::max(hi, m[k * n + k]);
    }
    return {lo, hi};
}

std::vector<double> invert_small_matrix(std::vector<double> m, int n) {
    std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) inv[k * n + k] = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
        if (std::abs(m[pivot * n + col]) < 1e-300)
            throw InvalidParamsError("matrix is numerically singular");
        if (pivot != col)
            for (int k = 0; k < n; ++k) {
                std::swap(m[pivot * n + k], m[col * n + k]);
                std::swap(inv[pivot * n + k], inv[col * n + k]);
            }
        const double d = m[col * n + col];
        for (int k = 0; k < n; ++k) {
            m[col * n + k] /= d;
            inv[col * n + k] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = m[r * n + col];
            if (factor == 0.0) continue;
            for (int k = 0; k < n; ++k) {
                m[r * n + k] -= factor * m[col * n + k];
                inv[r * n + k] -= factor * inv[col * n + k];
            }
        }
    }
    return inv;
}

} // namespace epikit
