#pragma once

#include <array>
#include <optional>
#include <vector>

#include "epikit/calibrate.hpp"

namespace epikit {

/// Sigmoid-exponent growth curve: cases(t) = exp(a / (1 + exp(-gamma (t - t0)))).
struct FermiDiracParams {
    double a{0};
    double t0{0};
    double gamma{0};
};

double fermi_dirac_eval(const FermiDiracParams& fd, double t);

/// d(cases)/d(a, t0, gamma).
std::array<double, 3> fermi_dirac_grad(const FermiDiracParams& fd, double t);

struct FermiDiracFit {
    FermiDiracParams params;
    FitResult result;
};

/// Least-squares fit of the growth curve by the shared descent engine,
/// in linear or log space. When p0 is absent a heuristic start is used.
FermiDiracFit fit_fermi_dirac(const std::vector<double>& times, const std::vector<double>& cases,
                              bool fit_log, std::optional<FermiDiracParams> p0 = std::nullopt,
                              double h_step = 1e-6, int max_iters = 200000, double tol = 1e-12);

} // namespace epikit
