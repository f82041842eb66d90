#include "epikit/langevin.hpp"

#include <cmath>

#include "epikit/fft.hpp"

namespace epikit {

namespace {

using cvec = std::vector<std::complex<double>>;

cvec spectral_laplacian(const cvec& field, const Grid1D& grid) {
    cvec spec = field;
    fft_inplace(spec, false);
    for (int j = 0; j < grid.n; ++j) {
        const double k = grid.wavenumbers[j];
        spec[j] *= -k * k;
    }
    fft_inplace(spec, true);
    return spec;
}

} // namespace

LangevinFields LangevinFields::from_real(const std::vector<double>& phi_s0,
                                         const std::vector<double>& phi_i0) {
    LangevinFields f;
    f.phi_s.assign(phi_s0.begin(), phi_s0.end());
    f.phi_i.assign(phi_i0.begin(), phi_i0.end());
    return f;
}

LangevinStepper::LangevinStepper(const Grid1D& grid, const SpatialParams& p, double dt,
                                 NoiseMode mode)
    : grid_(grid), p_(p), dt_(dt), mode_(mode) {
    p.validate();
    if (!(dt > 0)) throw InvalidParamsError("dt must be positive");
}

void LangevinStepper::step(LangevinFields& f, Rng& rng) {
    const int n = grid_.n;
    if (static_cast<int>(f.phi_i.size()) != n || static_cast<int>(f.phi_s.size()) != n)
        throw InvalidParamsError("field size does not match the grid");

    const cvec lap_i = spectral_laplacian(f.phi_i, grid_);
    const cvec lap_s = spectral_laplacian(f.phi_s, grid_);

    const double wiener_scale = std::sqrt(dt_ / grid_.spacing);
    last_noise_i_.assign(n, {0.0, 0.0});

    cvec new_i(n), new_s(n);
    for (int j = 0; j < n; ++j) {
        const std::complex<double> coupling = p_.lambda * f.phi_s[j] * f.phi_i[j];
        const std::complex<double> drift_i =
            p_.d_i * lap_i[j] - p_.mu * f.phi_i[j] + coupling;
        const std::complex<double> drift_s =
            p_.d_s * lap_s[j] - p_.nu * f.phi_s[j] - coupling + p_.f_source;

        std::complex<double> eta_i{0.0, 0.0}, eta_s{0.0, 0.0};
        if (mode_ == NoiseMode::Complex) {
            const std::complex<double> sigma = -coupling;
            const double theta1 = rng.normal();
            const double theta2 = rng.normal();
            eta_i = std::sqrt(2.0 * sigma) * theta1 * wiener_scale;
            eta_s = -std::sqrt(0.5 * sigma) * std::complex<double>(theta1, theta2) * wiener_scale;
        } else if (mode_ == NoiseMode::Real) {
            // conventional real SDE: |sigma| in the amplitudes and the
            // imaginary Cholesky leg dropped
            const double sigma = std::abs(-coupling);
            const double theta1 = rng.normal();
            rng.normal();  // keep the draw pattern aligned with complex mode
            eta_i = std::sqrt(2.0 * sigma) * theta1 * wiener_scale;
            eta_s = -std::sqrt(0.5 * sigma) * theta1 * wiener_scale;
        }
        last_noise_i_[j] = eta_i;
        new_i[j] = f.phi_i[j] + dt_ * drift_i + eta_i;
        new_s[j] = f.phi_s[j] + dt_ * drift_s + eta_s;
    }

    double max_re = 0.0, max_im = 0.0;
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(new_i[j].real()) || !std::isfinite(new_i[j].imag()) ||
            !std::isfinite(new_s[j].real()) || !std::isfinite(new_s[j].imag()))
            throw NonFiniteError("langevin field became non-finite");
        max_re = std::max({max_re, std::abs(new_i[j].real()), std::abs(new_s[j].real())});
        max_im = std::max({max_im, std::abs(new_i[j].imag()), std::abs(new_s[j].imag())});
    }
    if (mode_ == NoiseMode::Complex && max_im > 0.1 * std::max(max_re, 1e-300))
        throw NonFiniteError("imaginary part exceeded 10% of the real part");

    f.phi_i = std::move(new_i);
    f.phi_s = std::move(new_s);
    f.t += dt_;
}

LangevinSeries run_langevin(const LangevinFields& init, const SpatialParams& p, const Grid1D& grid,
                            double t_end, double dt, NoiseMode mode, Rng& rng, int sample_stride) {
    LangevinStepper stepper(grid, p, dt, mode);
    LangevinFields f = init;
    const long n_steps = static_cast<long>(std::floor(t_end / dt + 1e-9));
    const int stride = std::max(1, sample_stride);

    auto totals = [&](const LangevinFields& fields) {
        CompartmentState c;
        double s = 0.0, i = 0.0;
        for (int j = 0; j < grid.n; ++j) {
            s += fields.phi_s[j].real();
            i += fields.phi_i[j].real();
        }
        c.s = s * grid.spacing;
        c.i = i * grid.spacing;
        c.t = fields.t;
        return c;
    };

    LangevinSeries out;
    out.times.push_back(f.t);
    out.totals.push_back(totals(f));
    for (long step = 1; step <= n_steps; ++step) {
        stepper.step(f, rng);
        if (step % stride == 0 || step == n_steps) {
            out.times.push_back(f.t);
            out.totals.push_back(totals(f));
        }
    }
    return out;
}

} // namespace epikit
