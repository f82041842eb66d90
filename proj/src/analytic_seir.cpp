#include "epikit/analytic_seir.hpp"

#include <cmath>

namespace epikit {

namespace {

using cplx = std::complex<double>;

// sinh(lambda t) / lambda, regular as lambda -> 0.
cplx sinh_over(const cplx& lambda, double t) {
    const cplx x = lambda * t;
    if (std::abs(x) < 1e-2) {
        const cplx x2 = x * x;
        return t * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0)));
    }
    return std::sinh(x) / lambda;
}

// (cosh(lambda t) - 1) / lambda^2, regular as lambda -> 0.
cplx cosh_minus_one_over_sq(const cplx& lambda, double t) {
    const cplx x = lambda * t;
    if (std::abs(x) < 1e-2) {
        const cplx x2 = x * x;
        return 0.5 * t * t * (1.0 + x2 / 12.0 * (1.0 + x2 / 30.0 * (1.0 + x2 / 56.0)));
    }
    return (std::cosh(x) - 1.0) / (lambda * lambda);
}

double real_checked(const cplx& z, const char* what) {
    const double scale = std::max(1.0, std::abs(z.real()));
    if (std::abs(z.imag()) > 1e-9 * scale)
        throw NonFiniteError(std::string("imaginary residue too large in ") + what);
    return z.real();
}

struct EvalTerms {
    cplx cosh_p, cosh_m;     // cosh(lambda_{+,-} t)
    cplx shc_p, shc_m;       // sinh(lambda t)/lambda
};

EvalTerms eval_terms(const LinearSeirEigen& eg, double t) {
    return {std::cosh(eg.lambda_plus * t), std::cosh(eg.lambda_minus * t),
            sinh_over(eg.lambda_plus, t), sinh_over(eg.lambda_minus, t)};
}

} // namespace

LinearSeirEigen eigensystem(const SeirParams& p) {
    p.validate();
    const double beta = p.beta0, sigma = p.sigma, gamma = p.gamma;
    LinearSeirEigen eg;
    eg.r_term = std::sqrt((gamma - sigma) * (gamma - sigma) + 4.0 * beta * sigma);
    if (eg.r_term < 1e-12 * (gamma + sigma))
        throw DegenerateSpectrumError("repeated eigenvalue: r is numerically zero");
    eg.a_term = 0.5 * (gamma * gamma + 2.0 * beta * sigma + sigma * sigma);
    eg.b_term = 0.5 * (gamma + sigma) * eg.r_term;
    eg.capital_lambda_plus = eg.a_term + eg.b_term;
    eg.capital_lambda_minus = eg.a_term - eg.b_term;
    eg.lambda_plus = std::sqrt(cplx(eg.capital_lambda_plus, 0.0));
    eg.lambda_minus = std::sqrt(cplx(eg.capital_lambda_minus, 0.0));

    const double gmr = (gamma - sigma - eg.r_term) / (2.0 * sigma);
    const double gpr = (gamma - sigma + eg.r_term) / (2.0 * sigma);
    eg.chi_plus = {gmr, 1.0};
    eg.chi_minus = {gpr, 1.0};
    eg.psi_plus = {1.0, -gmr};
    eg.psi_minus = {1.0, -gpr};
    return eg;
}

LinearSeirSolution solve_linear_seir(const SeirParams& p, double e0, double i0, double f0) {
    LinearSeirSolution sol;
    sol.eigen = eigensystem(p);
    sol.params = p;
    sol.e0 = e0;
    sol.i0 = i0;
    sol.f0 = f0;

    const auto& eg = sol.eigen;
    const double sr = p.sigma / eg.r_term;
    auto dot = [](const std::array<double, 2>& a, double x, double y) { return a[0] * x + a[1] * y; };

    sol.c1 = -sr * dot(eg.psi_minus, e0, i0);
    sol.d1 = +sr * dot(eg.psi_plus, e0, i0);

    // initial derivative from the first-order system
    const double de0 = -p.sigma * e0 + p.beta0 * i0;
    const double di0 = p.sigma * e0 - p.gamma * i0;
    sol.c2_hat = -sr * dot(eg.psi_minus, de0, di0);
    sol.d2_hat = +sr * dot(eg.psi_plus, de0, di0);
    sol.c2 = std::abs(eg.lambda_plus) > 0 ? sol.c2_hat / eg.lambda_plus : cplx(0.0);
    sol.d2 = std::abs(eg.lambda_minus) > 0 ? sol.d2_hat / eg.lambda_minus : cplx(0.0);
    return sol;
}

std::pair<double, double> evaluate(const LinearSeirSolution& sol, double t) {
    const auto& eg = sol.eigen;
    const EvalTerms tm = eval_terms(eg, t);
    const cplx plus = sol.c1 * tm.cosh_p + sol.c2_hat * tm.shc_p;
    const cplx minus = sol.d1 * tm.cosh_m + sol.d2_hat * tm.shc_m;
    const cplx e = eg.chi_plus[0] * plus + eg.chi_minus[0] * minus;
    const cplx i = eg.chi_plus[1] * plus + eg.chi_minus[1] * minus;
    return {real_checked(e, "E(t)"), real_checked(i, "I(t)")};
}

IntegratedPopulations integrated_populations(const LinearSeirSolution& sol, double t) {
    const auto& eg = sol.eigen;
    // integral_0^t of the chi_+ / chi_- mode amplitudes
    const cplx int_plus = sol.c1 * sinh_over(eg.lambda_plus, t) +
                          sol.c2_hat * cosh_minus_one_over_sq(eg.lambda_plus, t);
    const cplx int_minus = sol.d1 * sinh_over(eg.lambda_minus, t) +
                           sol.d2_hat * cosh_minus_one_over_sq(eg.lambda_minus, t);
    const double int_e = real_checked(eg.chi_plus[0] * int_plus + eg.chi_minus[0] * int_minus, "int E");
    const double int_i = real_checked(eg.chi_plus[1] * int_plus + eg.chi_minus[1] * int_minus, "int I");

    const auto& p = sol.params;
    IntegratedPopulations out;
    out.f = sol.f0 - p.beta0 * int_i;
    out.c = p.sigma * int_e;
    out.d = p.f * p.gamma * int_i;
    out.r = (1.0 - p.f) * p.gamma * int_i;
    return out;
}

} // namespace epikit
