#pragma once

#include <array>
#include <complex>

#include "epikit/types.hpp"

namespace epikit {

/// Eigen data of the squared system matrix for the linearized SEIR (E, I)
/// block, together with the dual vectors used to invert initial conditions.
struct LinearSeirEigen {
    double a_term{0};                      // (gamma^2 + 2 beta sigma + sigma^2) / 2
    double b_term{0};                      // (gamma + sigma) r / 2
    double r_term{0};                      // sqrt((gamma - sigma)^2 + 4 beta sigma)
    double capital_lambda_plus{0};         // a_term + b_term
    double capital_lambda_minus{0};        // a_term - b_term
    std::complex<double> lambda_plus{};    // sqrt(capital_lambda_plus), principal branch
    std::complex<double> lambda_minus{};   // sqrt(capital_lambda_minus)
    std::array<double, 2> chi_plus{};      // eigenvector for capital_lambda_plus
    std::array<double, 2> chi_minus{};
    std::array<double, 2> psi_plus{};      // duals: psi_+ . chi_+ = 0, psi_+ . chi_- = r/sigma
    std::array<double, 2> psi_minus{};
};

LinearSeirEigen eigensystem(const SeirParams& p);

/// Coefficients of the closed-form solution. c2_hat = lambda_plus * c2 and
/// d2_hat = lambda_minus * d2 are stored so the evaluation stays regular
/// when one of the rates vanishes; this also makes the result independent
/// of the sqrt branch picked for lambda (cosh is even, sinh(x)/x too), and
/// it forces the t-derivative at 0 to match the first-order system.
struct LinearSeirSolution {
    LinearSeirEigen eigen;
    SeirParams params;
    double e0{0}, i0{0}, f0{0};
    std::complex<double> c1{}, d1{};
    std::complex<double> c2_hat{}, d2_hat{};
    std::complex<double> c2{}, d2{};
};

LinearSeirSolution solve_linear_seir(const SeirParams& p, double e0, double i0, double f0);

/// (E, I) at time t; imaginary residue above 1e-9 relative throws.
std::pair<double, double> evaluate(const LinearSeirSolution& sol, double t);

struct IntegratedPopulations {
    double f{0}, c{0}, r{0}, d{0};
};

/// F, C, R, D at time t from the closed-form antiderivatives, with
/// C(0) = R(0) = D(0) = 0.
IntegratedPopulations integrated_populations(const LinearSeirSolution& sol, double t);

} // namespace epikit
