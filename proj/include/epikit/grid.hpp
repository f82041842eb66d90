#pragma once

#include <vector>

#include "epikit/errors.hpp"

namespace epikit {

/// Uniform periodic 1-D grid. Wavenumbers are stored in FFT ordering
/// (zero mode first, then positive, then negative).
struct Grid1D {
    double length{0};
    int n{0};
    double spacing{0};
    std::vector<double> wavenumbers;

    std::vector<double> points() const;
    int dealias_cut() const { return n / 3; }  // keep |mode| <= n/3
};

Grid1D make_grid(double length, int n_points);

} // namespace epikit
