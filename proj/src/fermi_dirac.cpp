#include "epikit/fermi_dirac.hpp"

#include <algorithm>
#include <cmath>

namespace epikit {

namespace {

double logistic(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

} // namespace

double fermi_dirac_eval(const FermiDiracParams& fd, double t) {
    return std::exp(fd.a * logistic(fd.gamma * (t - fd.t0)));
}

std::array<double, 3> fermi_dirac_grad(const FermiDiracParams& fd, double t) {
    const double u = logistic(fd.gamma * (t - fd.t0));
    const double value = std::exp(fd.a * u);
    const double bump = u * (1.0 - u);
    return {
        value * u,                            // d/da
        -value * fd.a * fd.gamma * bump,      // d/dt0
        value * fd.a * (t - fd.t0) * bump,    // d/dgamma
    };
}

FermiDiracFit fit_fermi_dirac(const std::vector<double>& times, const std::vector<double>& cases,
                              bool fit_log, std::optional<FermiDiracParams> p0, double h_step,
                              int max_iters, double tol) {
    if (times.size() < 10) throw InvalidParamsError("need at least 10 data points");
    if (times.size() != cases.size()) throw InvalidParamsError("times/cases length mismatch");
    for (double c : cases)
        if (!(c > 0)) throw InvalidParamsError("cases must be positive");

    FermiDiracParams start;
    if (p0) {
        start = *p0;
    } else {
        const double peak = *std::max_element(cases.begin(), cases.end());
        start.a = std::log(std::max(peak, 2.0));
        const double half_level = 0.5 * start.a;
        start.t0 = times[times.size() / 2];
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (std::log(std::max(cases[i], 1.0)) >= half_level) {
                start.t0 = times[i];
                break;
            }
        }
        start.gamma = std::max(4.0 / std::max(times.back() - times.front(), 1.0), 1e-3);
    }

    auto loss_and_grad = [&](std::span<const double> p) -> std::pair<double, std::vector<double>> {
        const FermiDiracParams fd{p[0], p[1], p[2]};
        double total = 0.0;
        std::vector<double> grad(3, 0.0);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double value = fermi_dirac_eval(fd, times[i]);
            const auto dval = fermi_dirac_grad(fd, times[i]);
            double residual;
            double scale = 1.0;
            if (fit_log) {
                residual = std::log(std::max(value, 1.0)) - std::log(std::max(cases[i], 1.0));
                scale = value > 1.0 ? 1.0 / value : 0.0;
            } else {
                residual = value - cases[i];
            }
            total += residual * residual;
            for (int k = 0; k < 3; ++k) grad[k] += 2.0 * residual * scale * dval[k];
        }
        return {total, std::move(grad)};
    };

    FermiDiracFit out;
    out.result = descend(loss_and_grad, {start.a, start.t0, start.gamma}, h_step, max_iters, tol);
    out.params = {out.result.p[0], out.result.p[1], out.result.p[2]};

    // identifiability check at the solution
    std::vector<std::vector<double>> grads;
    grads.reserve(times.size());
    for (double t : times) {
        const auto g = fermi_dirac_grad(out.params, t);
        if (fit_log) {
            const double value = fermi_dirac_eval(out.params, t);
            const double scale = value > 1.0 ? 1.0 / value : 0.0;
            grads.push_back({g[0] * scale, g[1] * scale, g[2] * scale});
        } else {
            grads.push_back({g[0], g[1], g[2]});
        }
    }
    const auto nm = normal_matrix(grads, 3);
    const auto [lo, hi] = symmetric_eigen_range(nm, 3);
    if (hi <= 0 || lo <= 1e-9 * hi)
        out.result.warning = "flat direction: a parameter combination is unidentifiable";
    return out;
}

} // namespace epikit
