#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "epikit/errors.hpp"

namespace epikit {

/// An ODE family with closed-form state and parameter Jacobians, the
/// ingredients of the sensitivity system s' = (df/dy) s + df/dp.
struct OdeFitModel {
    int n_states{0};
    int n_params{0};
    // rhs(t, y, p, dy)
    std::function<void(double, std::span<const double>, std::span<const double>, std::span<double>)> rhs;
    // dfdy(t, y, p, out) writes the row-major n_states x n_states Jacobian
    std::function<void(double, std::span<const double>, std::span<const double>, std::span<double>)> dfdy;
    // dfdp(t, y, p, out) writes the row-major n_states x n_params matrix
    std::function<void(double, std::span<const double>, std::span<const double>, std::span<double>)> dfdp;
    // y0(p)
    std::function<void(std::span<const double>, std::span<double>)> init_y;
    // s0(p); zero when absent (parameter-free initial conditions)
    std::function<void(std::span<const double>, std::span<double>)> init_s;
};

/// Two-population SIR with p = (transmission, removal); population and the
/// initial infected count are fixed data.
OdeFitModel sir_fit_model(double n_population, double i0);

/// Linear readout obs = offset + weights . y mapping model states onto an
/// observed data column (e.g. cumulative cases = n - S).
struct ObservedQuantity {
    std::vector<double> weights;
    double offset{0};
    std::string name;
};

struct FitProblem {
    OdeFitModel model;
    std::vector<double> times;               // strictly increasing, >= 0
    std::vector<std::vector<double>> data;   // data[column][i]
    std::vector<ObservedQuantity> observed;  // one per data column
    bool log_space{false};
    double dt{0.05};

    void validate() const;
};

/// Joint right-hand side of the model and its sensitivity matrix.
/// y has n_states entries, s is row-major n_states x n_params.
void sensitivity_rhs(const OdeFitModel& model, double t, std::span<const double> y,
                     std::span<const double> s, std::span<const double> p, std::span<double> dy,
                     std::span<double> ds);

struct SensitivitySamples {
    std::vector<std::vector<double>> y;  // [sample][state]
    std::vector<std::vector<double>> s;  // [sample][state * n_params + param]
};

SensitivitySamples integrate_with_sensitivities(const OdeFitModel& model, std::span<const double> p,
                                                const std::vector<double>& times, double dt);

double loss(const FitProblem& problem, std::span<const double> p);
std::vector<double> gradient(const FitProblem& problem, std::span<const double> p);
std::pair<double, std::vector<double>> loss_and_gradient(const FitProblem& problem,
                                                         std::span<const double> p);

enum class FitStatus { Converged, MaxIterations, Stalled };

struct FitResult {
    std::vector<double> p;
    double loss{0};
    int iterations{0};
    std::vector<double> loss_curve;
    FitStatus status{FitStatus::Converged};
    double grad_norm{0};
    std::string warning;
};

std::string to_string(FitStatus status);

/// Steepest descent with backtracking: each step is -h * grad, h halves
/// until the loss decreases (40 futile halvings stall the fit) and doubles
/// after an accepted step.
FitResult fit_gradient_descent(const FitProblem& problem, std::vector<double> p0, double h_step,
                               int max_iters, double tol);

/// Shared descent engine over an arbitrary smooth loss.
FitResult descend(const std::function<std::pair<double, std::vector<double>>(std::span<const double>)>&
                      loss_and_grad,
                  std::vector<double> p0, double h_step, int max_iters, double tol);

/// Gauss-Newton normal matrix sum_i grad_i grad_i^T at a parameter point;
/// its near-null directions flag unidentifiable parameter combinations.
std::vector<double> normal_matrix(const std::vector<std::vector<double>>& obs_grads, int n_params);

/// Smallest/largest eigenvalue of a small symmetric matrix (Jacobi sweeps).
std::pair<double, double> symmetric_eigen_range(std::vector<double> m, int n);

/// Inverse of a small SPD matrix by Gauss-Jordan; used for linearized
/// parameter covariance comparisons.
std::vector<double> invert_small_matrix(std::vector<double> m, int n);

} // namespace epikit
