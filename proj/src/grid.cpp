#include "epikit/grid.hpp"

#include <numbers>

#include "epikit/fft.hpp"

namespace epikit {

Grid1D make_grid(double length, int n_points) {
    if (!(length > 0)) throw InvalidParamsError("grid length must be positive");
    if (!is_power_of_two(n_points) || n_points < 64)
        throw BadResolutionError("grid resolution must be a power of two >= 64");

    Grid1D g;
    g.length = length;
    g.n = n_points;
    g.spacing = length / n_points;
    g.wavenumbers.resize(n_points);
    const double dk = 2.0 * std::numbers::pi / length;
    for (int j = 0; j < n_points; ++j) {
        const int mode = j <= n_points / 2 ? j : j - n_points;
        g.wavenumbers[j] = dk * mode;
    }
    return g;
}

std::vector<double> Grid1D::points() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = spacing * j;
    return x;
}

} // namespace epikit
