#pragma once

#include <complex>
#include <vector>

#include "epikit/grid.hpp"
#include "epikit/rng.hpp"
#include "epikit/spatial.hpp"

namespace epikit {

/// Density fields for the noisy integrator. The internal noise amplitude
/// sqrt(2 sigma) with sigma = -lambda phi_I phi_S is imaginary for positive
/// densities, so fields are kept complex and observables are real parts.
struct LangevinFields {
    std::vector<std::complex<double>> phi_i, phi_s;
    double t{0};

    static LangevinFields from_real(const std::vector<double>& phi_s0,
                                    const std::vector<double>& phi_i0);
};

enum class NoiseMode {
    Complex,  // noise amplitudes exactly as derived (imaginary for sigma < 0)
    Real,     // |sigma| substituted for sigma: a conventional real SDE
    Off,      // deterministic Euler drift only
};

/// Euler-Maruyama step: deterministic part is the diffusive SIR right-hand
/// side (spectral Laplacian); per-cell standard normals enter scaled by
/// sqrt(dt/h) as Wiener increments on the lattice.
class LangevinStepper {
  public:
    LangevinStepper(const Grid1D& grid, const SpatialParams& p, double dt,
                    NoiseMode mode = NoiseMode::Complex);

    void step(LangevinFields& fields, Rng& rng);

    double dt() const { return dt_; }

    /// Noise increments added to phi_i in the last step (test hook).
    const std::vector<std::complex<double>>& last_noise_i() const { return last_noise_i_; }

  private:
    Grid1D grid_;
    SpatialParams p_;
    double dt_;
    NoiseMode mode_;
    std::vector<std::complex<double>> last_noise_i_;
};

struct LangevinSeries {
    std::vector<double> times;
    std::vector<CompartmentState> totals;  // real parts of the field totals
};

LangevinSeries run_langevin(const LangevinFields& init, const SpatialParams& p, const Grid1D& grid,
                            double t_end, double dt, NoiseMode mode, Rng& rng,
                            int sample_stride = 1);

} // namespace epikit
