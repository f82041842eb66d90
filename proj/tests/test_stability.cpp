#include <cmath>
#include <complex>

#include "doctest.h"
#include "epikit/rng.hpp"
#include "epikit/stability.hpp"

using namespace epikit;

namespace {

SpatialParams params(double lambda, double mu, double nu, double f, double d_s = 1.0,
                     double d_i = 1.0) {
    return SpatialParams{lambda, mu, nu, f, 0.1, d_s, d_i};
}

std::complex<double> det_residual(const SpatialParams& p, const SteadyState& s, double k,
                                  std::complex<double> omega) {
    const double k2 = k * k;
    const double b = (p.d_i + p.d_s) * k2 + p.lambda * (s.phi_i - s.phi_s) + p.mu + p.nu;
    const double c = p.d_i * p.d_s * k2 * k2 +
                     (p.d_i * (p.nu + p.lambda * s.phi_i) + p.d_s * (p.mu - p.lambda * s.phi_s)) * k2 +
                     p.lambda * (p.mu * s.phi_i - p.nu * s.phi_s) + p.mu * p.nu;
    const std::complex<double> i(0.0, 1.0);
    return -omega * omega - i * b * omega + c;
}

} // namespace

TEST_CASE("steady states: balanced birth/death normalizes the red branch") {
    const auto [red, blue] = steady_states(params(0.5, 0.25, 0.01, 0.01));
    CHECK(red.phi_s == doctest::Approx(1.0));
    CHECK(red.phi_i == 0.0);
    CHECK(red.feasible);
    CHECK(blue.phi_s == doctest::Approx(0.5));
    CHECK(blue.phi_i == doctest::Approx(0.02));
    CHECK(blue.feasible);
    for (const auto& state : {red, blue}) {
        const auto res = steady_state_residual(params(0.5, 0.25, 0.01, 0.01), state);
        CHECK(std::abs(res[0]) < 1e-12);
        CHECK(std::abs(res[1]) < 1e-12);
    }
}

TEST_CASE("weak coupling makes the endemic branch infeasible") {
    const auto [red, blue] = steady_states(params(0.2, 0.25, 0.01, 0.01));
    CHECK(red.feasible);
    CHECK_FALSE(blue.feasible);
    CHECK(blue.phi_i < 0.0);
}

TEST_CASE("dispersion roots solve the determinant exactly") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        SpatialParams p = params(0.3 + rng.uniform01(), 0.05 + 0.4 * rng.uniform01(),
                                 0.005 + 0.05 * rng.uniform01(), 0.0, 0.5 + 10 * rng.uniform01(),
                                 0.5 + 10 * rng.uniform01());
        p.f_source = p.nu;  // keep both branches meaningful
        const auto states = steady_states(p);
        const SteadyState& s = states[trial % 2];
        if (!s.feasible) continue;
        const double k = 0.5 * rng.uniform01();
        const DispersionPoint d = dispersion(p, s, k);
        const double scale = std::max({1.0, std::abs(d.b_k), std::abs(d.c_k)});
        CHECK(std::abs(det_residual(p, s, k, d.omega_plus)) < 1e-9 * scale);
        CHECK(std::abs(det_residual(p, s, k, d.omega_minus)) < 1e-9 * scale);

        // root sum and product against the quadratic coefficients
        const std::complex<double> sum = d.omega_plus + d.omega_minus;
        const std::complex<double> prod = d.omega_plus * d.omega_minus;
        CHECK(std::abs(sum - std::complex<double>(0.0, -d.b_k)) <= 1e-10 * scale);
        CHECK(std::abs(prod - std::complex<double>(-d.c_k, 0.0)) <= 1e-10 * scale);
    }
}

TEST_CASE("diffusion-free dispersion is k-independent") {
    SpatialParams p = params(0.5, 0.25, 0.01, 0.01, 0.0, 0.0);
    const auto [red, blue] = steady_states(p);
    (void)blue;
    const DispersionPoint at0 = dispersion(p, red, 0.0);
    const DispersionPoint at_k = dispersion(p, red, 0.7);
    CHECK(at_k.b_k == doctest::Approx(at0.b_k));
    CHECK(at_k.c_k == doctest::Approx(at0.c_k));
}

TEST_CASE("temporal oscillation window on the red branch") {
    // lambda tuned so the k=0 trace term vanishes
    const double nu = 0.01, f = 0.01, mu = 0.25;
    const double lambda = (nu + mu) * nu / f;
    SpatialParams p = params(lambda, mu, nu, f);
    const auto [red, blue] = steady_states(p);
    (void)blue;
    const HopfResult h = hopf_check(p, red);
    CHECK(std::abs(h.b0) < 1e-12);
    CHECK(h.c0 == doctest::Approx(-nu * nu).epsilon(1e-12));
    CHECK(h.oscillatory);
    // roots are +-i nu under the e^{-i omega t} convention
    CHECK(std::abs(h.omega0_plus - std::complex<double>(0.0, nu)) < 1e-12);
    CHECK(std::abs(h.omega0_minus - std::complex<double>(0.0, -nu)) < 1e-12);
}

TEST_CASE("no oscillation without susceptible turnover") {
    SpatialParams p = params(0.5, 0.25, 0.0, 0.0);
    SteadyState red{Branch::Red, 0.0, 1.0, true};
    const HopfResult h = hopf_check(p, red);
    CHECK_FALSE(h.oscillatory);
    CHECK(std::abs(h.b0) > 1e-6);
}

TEST_CASE("endemic-state roots carry a positive Re(i omega) for feasible draws") {
    Rng rng(17);
    int checked = 0;
    while (checked < 50) {
        const double lambda = 0.3 + 1.7 * rng.uniform01();
        const double mu = 0.05 + 0.2 * rng.uniform01();
        const double nu = 0.005 + 0.02 * rng.uniform01();
        SpatialParams p = params(lambda, mu, nu, nu);
        const auto [red, blue] = steady_states(p);
        (void)red;
        if (!blue.feasible || blue.phi_i <= 0) continue;
        ++checked;
        const HopfResult h = hopf_check(p, blue);
        const std::complex<double> i(0.0, 1.0);
        const bool some_positive =
            (i * h.omega0_plus).real() > 0 || (i * h.omega0_minus).real() > 0;
        CHECK(some_positive);
    }
}

TEST_CASE("pattern line detection on the disease-free branch") {
    // ratio d_i/d_s = 0.1 demands mu = lambda + 0.1 nu
    SpatialParams p = params(1.0, 1.1, 1.0, 1.0, 10.0, 1.0);
    const auto [red, blue] = steady_states(p);
    (void)blue;
    const TuringResult t = turing_analysis(p, red);
    CHECK(t.on_line);
    CHECK(t.k_c == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(std::abs(t.c_at_vertex) < 1e-9);

    // the quartic stays positive along the whole real-k scan
    for (int j = 1; j <= 10000; ++j) {
        const double k = 0.2 * j / 10000.0;
        CHECK(dispersion_c_of_k2(p, red, k * k) > 0.0);
    }
}

TEST_CASE("off the line the parabola vertex dips negative with real roots around it") {
    SpatialParams p = params(1.0, 1.1, 1.0, 1.0, 10.0, 1.5);  // above the d_i/d_s = 0.1 line
    const auto [red, blue] = steady_states(p);
    (void)blue;
    const TuringResult t = turing_analysis(p, red);
    CHECK_FALSE(t.on_line);
    CHECK(t.line_residual != 0.0);
    CHECK(t.c_at_vertex < 0.0);

    // bracket the two real roots of C(u) around the vertex
    const double a = p.d_i * p.d_s;
    const double b_hat = p.d_i * (p.nu + p.lambda * red.phi_i) + p.d_s * (p.mu - p.lambda * red.phi_s);
    const double disc = std::sqrt(b_hat * b_hat - 4.0 * a * dispersion_c_of_k2(p, red, 0.0));
    const double u1 = (-b_hat - disc) / (2.0 * a);
    const double u2 = (-b_hat + disc) / (2.0 * a);
    CHECK(u1 < t.vertex_k2);
    CHECK(u2 > t.vertex_k2);
    CHECK(dispersion_c_of_k2(p, red, u1) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(dispersion_c_of_k2(p, red, u2) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("endemic-branch pattern line and infeasibility error") {
    // blue line: 4 (mu/lambda)^2 (lambda - mu)/nu = d_i/d_s
    const double lambda = 1.0, mu = 0.5, nu = 1.0;
    const double ratio = 4.0 * mu * mu * (lambda - mu) / (lambda * lambda * nu);
    SpatialParams p = params(lambda, mu, nu, nu, 10.0, 10.0 * ratio);
    const auto [red, blue] = steady_states(p);
    (void)red;
    REQUIRE(blue.feasible);
    const TuringResult t = turing_analysis(p, blue);
    CHECK(t.on_line);
    CHECK(std::abs(t.c_at_vertex) < 1e-9);
    const double c0 = dispersion_c_of_k2(p, blue, 0.0);
    CHECK(t.k_c == doctest::Approx(std::sqrt(c0 / (4.0 * p.d_i * p.d_s))).epsilon(1e-12));

    SpatialParams weak = params(0.2, 0.25, 0.01, 0.01, 10.0, 1.0);
    const auto weak_states = steady_states(weak);
    CHECK_THROWS_AS(turing_analysis(weak, weak_states[1]), InfeasibleStateError);
}

TEST_CASE("parabola curvature in the squared wavenumber is constant") {
    SpatialParams p = params(0.8, 0.3, 0.02, 0.02, 7.0, 2.0);
    const auto [red, blue] = steady_states(p);
    (void)blue;
    const double h = 0.01;
    for (double u : {0.0, 0.05, 0.2}) {
        const double second = (dispersion_c_of_k2(p, red, u + h) - 2.0 * dispersion_c_of_k2(p, red, u) +
                               dispersion_c_of_k2(p, red, u - h)) /
                              (h * h);
        CHECK(second == doctest::Approx(2.0 * p.d_i * p.d_s).epsilon(1e-7));
    }
}
