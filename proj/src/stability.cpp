#include "epikit/stability.hpp"

#include <cmath>

namespace epikit {

namespace {

constexpr double kLineTol = 1e-9;

double b_coefficient(const SpatialParams& p, const SteadyState& s, double k2) {
    return (p.d_i + p.d_s) * k2 + p.lambda * (s.phi_i - s.phi_s) + p.mu + p.nu;
}

double c_coefficient(const SpatialParams& p, const SteadyState& s, double k2) {
    return p.d_i * p.d_s * k2 * k2 +
           (p.d_i * (p.nu + p.lambda * s.phi_i) + p.d_s * (p.mu - p.lambda * s.phi_s)) * k2 +
           p.lambda * (p.mu * s.phi_i - p.nu * s.phi_s) + p.mu * p.nu;
}

} // namespace

std::array<SteadyState, 2> steady_states(const SpatialParams& p) {
    p.validate();
    if (!(p.lambda > 0) || !(p.mu > 0) || !(p.nu > 0))
        throw InvalidParamsError("steady states need positive lambda, mu, nu");
    SteadyState red{Branch::Red, 0.0, p.f_source / p.nu, true};
    SteadyState blue{Branch::Blue, p.f_source / p.mu - p.nu / p.lambda, p.mu / p.lambda, true};
    blue.feasible = blue.phi_i >= 0.0;
    return {red, blue};
}

std::array<double, 2> steady_state_residual(const SpatialParams& p, const SteadyState& s) {
    const double coupling = p.lambda * s.phi_s * s.phi_i;
    return {-p.mu * s.phi_i + coupling, -p.nu * s.phi_s - coupling + p.f_source};
}

DispersionPoint dispersion(const SpatialParams& p, const SteadyState& s, double k) {
    DispersionPoint out;
    out.k = k;
    const double k2 = k * k;
    out.b_k = b_coefficient(p, s, k2);
    out.c_k = c_coefficient(p, s, k2);
    const double half_b = 0.5 * out.b_k;
    const std::complex<double> root = std::sqrt(std::complex<double>(half_b * half_b - out.c_k, 0.0));
    const std::complex<double> i(0.0, 1.0);
    out.omega_plus = -i * half_b + i * root;
    out.omega_minus = -i * half_b - i * root;
    return out;
}

double dispersion_c_of_k2(const SpatialParams& p, const SteadyState& s, double u) {
    return c_coefficient(p, s, u);
}

HopfResult hopf_check(const SpatialParams& p, const SteadyState& s) {
    HopfResult out;
    const DispersionPoint d0 = dispersion(p, s, 0.0);
    out.b0 = d0.b_k;
    out.c0 = d0.c_k;
    out.omega0_plus = d0.omega_plus;
    out.omega0_minus = d0.omega_minus;
    const double scale = std::max({std::abs(p.mu), std::abs(p.nu), p.lambda * std::abs(s.phi_s), 1e-30});
    out.oscillatory = std::abs(out.b0) <= kLineTol * scale && out.c0 < 0.0;
    return out;
}

TuringResult turing_analysis(const SpatialParams& p, const SteadyState& s) {
    if (!(p.d_s > 0) || !(p.d_i > 0))
        throw InvalidParamsError("pattern analysis needs positive diffusion constants");
    if (s.branch == Branch::Blue && !s.feasible)
        throw InfeasibleStateError("blue state is infeasible for these parameters");

    TuringResult out;
    const double ratio = p.d_i / p.d_s;
    double line_value = 0.0;
    if (s.branch == Branch::Red) {
        line_value = (p.mu - p.lambda) / p.nu;
        out.k_c = p.nu / (2.0 * p.d_s);
    } else {
        line_value = 4.0 * (p.mu * p.mu) / (p.lambda * p.lambda) * (p.lambda - p.mu) / p.nu;
        const double c0 = c_coefficient(p, s, 0.0);
        out.k_c = c0 > 0 ? std::sqrt(c0 / (4.0 * p.d_i * p.d_s)) : 0.0;
    }
    out.line_residual = (line_value - ratio) / std::max(std::abs(ratio), 1e-30);
    out.on_line = std::abs(out.line_residual) <= kLineTol;

    const double a = p.d_i * p.d_s;
    const double b_hat = p.d_i * (p.nu + p.lambda * s.phi_i) + p.d_s * (p.mu - p.lambda * s.phi_s);
    out.vertex_k2 = -b_hat / (2.0 * a);
    out.c_at_vertex = c_coefficient(p, s, out.vertex_k2);
    return out;
}

} // namespace epikit
