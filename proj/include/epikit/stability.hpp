#pragma once

#include <array>
#include <complex>

#include "epikit/spatial.hpp"

namespace epikit {

enum class Branch { Red, Blue };

/// Homogeneous fixed point of the density system. Red is disease-free
/// (phi_i = 0), blue is endemic; blue is feasible only when phi_i >= 0.
struct SteadyState {
    Branch branch{Branch::Red};
    double phi_i{0};
    double phi_s{0};
    bool feasible{true};
};

std::array<SteadyState, 2> steady_states(const SpatialParams& p);

/// Residual of the homogeneous fixed-point equations at a candidate state.
std::array<double, 2> steady_state_residual(const SpatialParams& p, const SteadyState& state);

struct DispersionPoint {
    double k{0};
    double b_k{0};
    double c_k{0};
    std::complex<double> omega_plus{};
    std::complex<double> omega_minus{};
};

/// Linear dispersion around a steady state for the perturbation ansatz
/// e^{i(kx - omega t)}. The roots satisfy det(-i omega I - J_k) = 0, i.e.
/// -omega^2 - i B_k omega + C_k = 0 with omega_{+,-} = -i B_k/2
/// +- i sqrt((B_k/2)^2 - C_k); a mode grows iff Im(omega) > 0.
DispersionPoint dispersion(const SpatialParams& p, const SteadyState& state, double k);

/// C_k as a function of u = k^2; the parabola view accepts negative u.
double dispersion_c_of_k2(const SpatialParams& p, const SteadyState& state, double u);

struct HopfResult {
    bool oscillatory{false};  // B_0 = 0 within 1e-9 and C_0 < 0
    double b0{0};
    double c0{0};
    std::complex<double> omega0_plus{};
    std::complex<double> omega0_minus{};
};

HopfResult hopf_check(const SpatialParams& p, const SteadyState& state);

struct TuringResult {
    bool on_line{false};
    double k_c{0};            // closed-form critical wavenumber for the branch
    double line_residual{0};  // signed relative distance from the line
    double vertex_k2{0};      // vertex of the C(k^2) parabola
    double c_at_vertex{0};    // C at the vertex; zero exactly on the line
};

/// Stationary-pattern line check for a branch. Red: (mu - lambda)/nu against
/// d_i/d_s with k_c = nu/(2 d_s); blue: 4 (mu/lambda)^2 (lambda - mu)/nu
/// against d_i/d_s with k_c = sqrt(C_0 / (4 d_i d_s)).
TuringResult turing_analysis(const SpatialParams& p, const SteadyState& state);

} // namespace epikit
