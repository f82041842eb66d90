#include "epikit/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epikit/fft.hpp"

namespace epikit {

namespace {

using cvec = std::vector<std::complex<double>>;

constexpr int kContourPoints = 32;

struct EtdWeights {
    std::vector<double> e, e2, q, f1, f2, f3;
};

// Exponential weights for one diagonal operator L(k) = -d k^2 - rate.
EtdWeights make_weights(const Grid1D& grid, double diffusion, double rate, double dt) {
    const int n = grid.n;
    EtdWeights w;
    w.e.resize(n);
    w.e2.resize(n);
    w.q.resize(n);
    w.f1.resize(n);
    w.f2.resize(n);
    w.f3.resize(n);
    for (int j = 0; j < n; ++j) {
        const double k = grid.wavenumbers[j];
        const double z = dt * (-diffusion * k * k - rate);
        w.e[j] = std::exp(z);
        w.e2[j] = std::exp(0.5 * z);
        std::complex<double> q{}, f1{}, f2{}, f3{};
        for (int m = 1; m <= kContourPoints; ++m) {
            const double theta = std::numbers::pi * (m - 0.5) / kContourPoints;
            const std::complex<double> lr = z + std::polar(1.0, theta);
            const std::complex<double> elr = std::exp(lr);
            const std::complex<double> lr3 = lr * lr * lr;
            q += (std::exp(0.5 * lr) - 1.0) / lr;
            f1 += (-4.0 - lr + elr * (4.0 - 3.0 * lr + lr * lr)) / lr3;
            f2 += (2.0 + lr + elr * (-2.0 + lr)) / lr3;
            f3 += (-4.0 - 3.0 * lr - lr * lr + elr * (4.0 - lr)) / lr3;
        }
        const double scale = dt / kContourPoints;
        w.q[j] = scale * q.real();
        w.f1[j] = scale * f1.real();
        w.f2[j] = scale * f2.real();
        w.f3[j] = scale * f3.real();
    }
    return w;
}

void apply_mask(cvec& v, const std::vector<char>& keep) {
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!keep[j]) v[j] = 0.0;
}

// Inverse transform with realness enforcement and residue check.
std::vector<double> to_physical(cvec spectrum, double scale) {
    fft_inplace(spectrum, true);
    std::vector<double> out(spectrum.size());
    double max_imag = 0.0;
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        out[j] = spectrum[j].real();
        max_imag = std::max(max_imag, std::abs(spectrum[j].imag()));
    }
    if (max_imag > 1e-10 * std::max(scale, 1e-300))
        throw NonFiniteError("spectral round-trip lost realness");
    return out;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

DensityFields DensityFields::zeros(int n) {
    DensityFields f;
    f.phi_s.assign(n, 0.0);
    f.phi_i.assign(n, 0.0);
    f.phi_r.assign(n, 0.0);
    f.phi_d.assign(n, 0.0);
    f.phi_c.assign(n, 0.0);
    return f;
}

SpectralSirStepper::SpectralSirStepper(const Grid1D& grid, const SpatialParams& p, double dt)
    : grid_(grid), p_(p), dt_(dt) {
    p.validate();
    if (!(dt > 0)) throw InvalidParamsError("dt must be positive");
    const EtdWeights wi = make_weights(grid, p.d_i, p.mu, dt);
    e_i_ = wi.e;
    e2_i_ = wi.e2;
    q_i_ = wi.q;
    f1_i_ = wi.f1;
    f2_i_ = wi.f2;
    f3_i_ = wi.f3;
    const EtdWeights ws = make_weights(grid, p.d_s, p.nu, dt);
    e_s_ = ws.e;
    e2_s_ = ws.e2;
    q_s_ = ws.q;
    f1_s_ = ws.f1;
    f2_s_ = ws.f2;
    f3_s_ = ws.f3;
    keep_.assign(grid.n, 1);
    for (int j = 0; j < grid.n; ++j) {
        const int mode = j <= grid.n / 2 ? j : j - grid.n;
        if (std::abs(mode) > grid.dealias_cut()) keep_[j] = 0;
    }
}

void SpectralSirStepper::step(DensityFields& f) {
    const int n = grid_.n;
    if (static_cast<int>(f.phi_s.size()) != n || static_cast<int>(f.phi_i.size()) != n)
        throw InvalidParamsError("field size does not match the grid");
    if (rho0_ < 0) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += f.phi_s[j] + f.phi_i[j];
        rho0_ = std::max(sum / n, 1e-12);
    }
    const double scale = std::max(max_abs(f.phi_s), max_abs(f.phi_i));

    // nonlinear terms evaluated pointwise, then dealiased in spectral space
    auto nonlinear = [&](const std::vector<double>& ps, const std::vector<double>& pi, cvec& ni,
                         cvec& ns) {
        std::vector<double> nl_i(n), nl_s(n);
        for (int j = 0; j < n; ++j) {
            const double coupling = p_.lambda * ps[j] * pi[j];
            nl_i[j] = coupling;
            nl_s[j] = -coupling + p_.f_source;
        }
        ni = fft_forward(nl_i);
        ns = fft_forward(nl_s);
        apply_mask(ni, keep_);
        apply_mask(ns, keep_);
    };

    cvec vi = fft_forward(f.phi_i);
    cvec vs = fft_forward(f.phi_s);
    apply_mask(vi, keep_);
    apply_mask(vs, keep_);

    cvec nvi, nvs;
    nonlinear(f.phi_s, f.phi_i, nvi, nvs);

    auto stage = [&](const cvec& base_i, const cvec& base_s, const std::vector<double>& exp_i,
                     const std::vector<double>& exp_s, const cvec& add_i, const cvec& add_s, cvec& out_i,
                     cvec& out_s) {
        out_i.resize(n);
        out_s.resize(n);
        for (int j = 0; j < n; ++j) {
            out_i[j] = exp_i[j] * base_i[j] + q_i_[j] * add_i[j];
            out_s[j] = exp_s[j] * base_s[j] + q_s_[j] * add_s[j];
        }
    };

    cvec ai, as;
    stage(vi, vs, e2_i_, e2_s_, nvi, nvs, ai, as);
    std::vector<double> pa_i = to_physical(ai, scale);
    std::vector<double> pa_s = to_physical(as, scale);
    cvec nai, nas;
    nonlinear(pa_s, pa_i, nai, nas);

    cvec bi, bs;
    stage(vi, vs, e2_i_, e2_s_, nai, nas, bi, bs);
    std::vector<double> pb_i = to_physical(bi, scale);
    std::vector<double> pb_s = to_physical(bs, scale);
    cvec nbi, nbs;
    nonlinear(pb_s, pb_i, nbi, nbs);

    cvec ci(n), cs(n);
    for (int j = 0; j < n; ++j) {
        ci[j] = e2_i_[j] * ai[j] + q_i_[j] * (2.0 * nbi[j] - nvi[j]);
        cs[j] = e2_s_[j] * as[j] + q_s_[j] * (2.0 * nbs[j] - nvs[j]);
    }
    std::vector<double> pc_i = to_physical(ci, scale);
    std::vector<double> pc_s = to_physical(cs, scale);
    cvec nci, ncs;
    nonlinear(pc_s, pc_i, nci, ncs);

    for (int j = 0; j < n; ++j) {
        vi[j] = e_i_[j] * vi[j] + nvi[j] * f1_i_[j] + 2.0 * (nai[j] + nbi[j]) * f2_i_[j] +
                nci[j] * f3_i_[j];
        vs[j] = e_s_[j] * vs[j] + nvs[j] * f1_s_[j] + 2.0 * (nas[j] + nbs[j]) * f2_s_[j] +
                ncs[j] * f3_s_[j];
    }
    apply_mask(vi, keep_);
    apply_mask(vs, keep_);
    spec_i_ = vi;
    spec_s_ = vs;

    std::vector<double> new_i = to_physical(vi, scale);
    std::vector<double> new_s = to_physical(vs, scale);

    double min_val = 0.0;
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(new_i[j]) || !std::isfinite(new_s[j]))
            throw NonFiniteError("density field became non-finite");
        min_val = std::min({min_val, new_i[j], new_s[j]});
    }
    if (min_val < -1e-6 * rho0_)
        throw NegativeDensityError("density dropped below the negative tolerance");

    // trapezoid advance of the quadrature accumulators
    const double half_dt = 0.5 * dt_;
    for (int j = 0; j < n; ++j) {
        const double avg = half_dt * (f.phi_i[j] + new_i[j]);
        f.phi_r[j] += (1.0 - p_.g) * p_.mu * avg;
        f.phi_d[j] += p_.g * p_.mu * avg;
        f.phi_c[j] += p_.mu * avg;
    }
    f.phi_i = std::move(new_i);
    f.phi_s = std::move(new_s);
    f.t += dt_;
}

DensityFields etdrk4_step(const DensityFields& fields, const SpatialParams& p, const Grid1D& grid,
                          double dt) {
    SpectralSirStepper stepper(grid, p, dt);
    DensityFields out = fields;
    stepper.step(out);
    return out;
}

SpatialSeries run_spatial(const DensityFields& init, const SpatialParams& p, const Grid1D& grid,
                          double t_end, double dt, const SpatialRunOptions& opts) {
    if (!(t_end > 0)) throw InvalidParamsError("t_end must be positive");
    SpectralSirStepper stepper(grid, p, dt);
    DensityFields f = init;
    if (f.phi_r.empty()) f.phi_r.assign(grid.n, 0.0);
    if (f.phi_d.empty()) f.phi_d.assign(grid.n, 0.0);
    if (f.phi_c.empty()) f.phi_c.assign(grid.n, 0.0);

    const long n_steps = static_cast<long>(std::floor(t_end / dt + 1e-9));
    const int stride = std::max(1, opts.sample_stride);

    SpatialSeries out;
    out.times.push_back(f.t);
    out.totals.push_back(integrate_totals(f, grid));
    if (opts.snapshot_stride > 0) {
        out.snapshot_times.push_back(f.t);
        out.snapshots.push_back(f);
    }
    for (long step = 1; step <= n_steps; ++step) {
        stepper.step(f);
        if (step % stride == 0 || step == n_steps) {
            out.times.push_back(f.t);
            out.totals.push_back(integrate_totals(f, grid));
        }
        if (opts.snapshot_stride > 0 && (step % opts.snapshot_stride == 0 || step == n_steps)) {
            out.snapshot_times.push_back(f.t);
            out.snapshots.push_back(f);
        }
    }
    return out;
}

CompartmentState integrate_totals(const DensityFields& fields, const Grid1D& grid) {
    CompartmentState out;
    const double h = grid.spacing;
    auto total = [h](const std::vector<double>& v) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return h * sum;
    };
    out.s = total(fields.phi_s);
    out.i = total(fields.phi_i);
    out.r = fields.phi_r.empty() ? 0.0 : total(fields.phi_r);
    out.d = fields.phi_d.empty() ? 0.0 : total(fields.phi_d);
    out.c = fields.phi_c.empty() ? 0.0 : total(fields.phi_c);
    out.t = fields.t;
    return out;
}

} // namespace epikit
