#include "epikit/csv_out.hpp"

#include <cmath>
#include <fstream>

#include "nlohmann/json.hpp"

#include "epikit/data_io.hpp"

namespace epikit {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

} // namespace

void write_trajectory_csv(std::ostream& out, const TimeSeries& traj, ModelKind kind,
                          const SeirParams& p, const std::optional<ControlSchedule>& schedule) {
    out << "t,S,E,I,R,D,C,new_cases,new_deaths\n";
    for (const auto& y : traj) {
        double new_cases = 0.0, new_deaths = 0.0;
        switch (kind) {
            case ModelKind::Seir:
            case ModelKind::SeirLinear:
                new_cases = p.sigma * y.e;
                new_deaths = p.f * p.gamma * y.i;
                break;
            case ModelKind::Sir: {
                const double beta = schedule ? beta_at(*schedule, y.t) : p.beta0;
                new_cases = beta * y.s * y.i / p.n;
                new_deaths = p.f * p.gamma * y.i;
                break;
            }
            case ModelKind::SirQuarantine:
                new_cases = p.beta0 * y.s * y.i / p.n;
                new_deaths = 0.0;
                break;
        }
        out << format_double(y.t) << ',' << format_double(y.s) << ',' << format_double(y.e) << ','
            << format_double(y.i) << ',' << format_double(y.r) << ',' << format_double(y.d) << ','
            << format_double(y.c) << ',' << format_double(new_cases) << ','
            << format_double(new_deaths) << '\n';
    }
}

void write_trajectory_csv(const std::string& path, const TimeSeries& traj, ModelKind kind,
                          const SeirParams& p, const std::optional<ControlSchedule>& schedule) {
    auto out = open_out(path);
    write_trajectory_csv(out, traj, kind, p, schedule);
}

void write_field_csv(std::ostream& out, const DensityFields& fields, const Grid1D& grid) {
    out << "x,phi_S,phi_I,phi_R,phi_D,phi_C\n";
    const auto x = grid.points();
    for (int j = 0; j < grid.n; ++j) {
        out << format_double(x[j]) << ',' << format_double(fields.phi_s[j]) << ','
            << format_double(fields.phi_i[j]) << ',' << format_double(fields.phi_r[j]) << ','
            << format_double(fields.phi_d[j]) << ',' << format_double(fields.phi_c[j]) << '\n';
    }
}

void write_field_csv(const std::string& path, const DensityFields& fields, const Grid1D& grid) {
    auto out = open_out(path);
    write_field_csv(out, fields, grid);
}

void write_xt_csv(const std::string& path, const SpatialSeries& series, const Grid1D& grid,
                  bool infected_field) {
    auto out = open_out(path);
    out << "t";
    const auto x = grid.points();
    for (int j = 0; j < grid.n; ++j) out << ",x" << format_double(x[j]);
    out << '\n';
    for (std::size_t s = 0; s < series.snapshots.size(); ++s) {
        out << format_double(series.snapshot_times[s]);
        const auto& field = infected_field ? series.snapshots[s].phi_i : series.snapshots[s].phi_s;
        for (int j = 0; j < grid.n; ++j) out << ',' << format_double(field[j]);
        out << '\n';
    }
}

void write_totals_csv(std::ostream& out, const std::vector<double>& times,
                      const std::vector<CompartmentState>& totals) {
    out << "t,S,E,I,R,D,C,new_cases,new_deaths\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto& y = totals[k];
        out << format_double(times[k]) << ',' << format_double(y.s) << ',' << format_double(y.e)
            << ',' << format_double(y.i) << ',' << format_double(y.r) << ',' << format_double(y.d)
            << ',' << format_double(y.c) << ",0,0\n";
    }
}

void write_totals_csv(const std::string& path, const std::vector<double>& times,
                      const std::vector<CompartmentState>& totals) {
    auto out = open_out(path);
    write_totals_csv(out, times, totals);
}

void write_dispersion_csv(std::ostream& out, const SpatialParams& p, const SteadyState& state,
                          double k_max, int k_steps) {
    out << "k,B_k,C_k,re_omega_plus,im_omega_plus,re_omega_minus,im_omega_minus\n";
    for (int j = 0; j <= k_steps; ++j) {
        const double k = k_max * j / k_steps;
        const DispersionPoint d = dispersion(p, state, k);
        out << format_double(k) << ',' << format_double(d.b_k) << ',' << format_double(d.c_k) << ','
            << format_double(d.omega_plus.real()) << ',' << format_double(d.omega_plus.imag()) << ','
            << format_double(d.omega_minus.real()) << ',' << format_double(d.omega_minus.imag())
            << '\n';
    }
}

void write_turing_sweep_csv(std::ostream& out, double lambda, double ratio, double nu_max,
                            int steps) {
    // red line: mu = lambda + ratio * nu.
    // blue line: 4 (mu/lambda)^2 (lambda - mu) / nu = ratio, solved for mu
    // by bisection on each side of the cubic's maximum at mu = 2 lambda / 3.
    out << "nu,mu_red,mu_blue_lo,mu_blue_hi\n";
    auto blue_gap = [&](double mu, double nu) {
        return 4.0 * mu * mu * (lambda - mu) / (lambda * lambda * nu) - ratio;
    };
    auto bisect = [&](double lo, double hi, double nu) -> double {
        double flo = blue_gap(lo, nu);
        double fhi = blue_gap(hi, nu);
        if (flo * fhi > 0) return std::nan("");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = blue_gap(mid, nu);
            if (fmid == 0.0) return mid;
            if (flo * fmid <= 0) {
                hi = mid;
                fhi = fmid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        (void)fhi;
        return 0.5 * (lo + hi);
    };
    for (int j = 1; j <= steps; ++j) {
        const double nu = nu_max * j / steps;
        const double mu_red = lambda + ratio * nu;
        const double peak = 2.0 * lambda / 3.0;
        const double mu_lo = bisect(1e-9 * lambda, peak, nu);
        const double mu_hi = bisect(peak, lambda - 1e-12 * lambda, nu);
        out << format_double(nu) << ',' << format_double(mu_red) << ',';
        if (std::isnan(mu_lo))
            out << "";
        else
            out << format_double(mu_lo);
        out << ',';
        if (std::isnan(mu_hi))
            out << "";
        else
            out << format_double(mu_hi);
        out << '\n';
    }
}

void write_events_csv(std::ostream& out, const ReactionSystem& system, const GillespieResult& run) {
    out << "t,reaction_label,cell,S_total,I_total,R_total,D_total\n";
    for (const auto& ev : run.events) {
        const auto& rx = system.reactions[static_cast<std::size_t>(ev.channel)];
        out << format_double(ev.t) << ',' << rx.label << ',' << rx.cell << ',' << ev.totals[0] << ','
            << ev.totals[1] << ',' << ev.totals[2] << ',' << ev.totals[3] << '\n';
    }
}

void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats) {
    out << "t,mean_S,se_S,mean_I,se_I,mean_R,se_R,mean_D,se_D,mean_C,se_C\n";
    for (std::size_t k = 0; k < stats.times.size(); ++k) {
        out << format_double(stats.times[k]);
        for (int sp = 0; sp < 5; ++sp)
            out << ',' << format_double(stats.mean[sp][k]) << ',' << format_double(stats.se[sp][k]);
        out << '\n';
    }
}

void write_reff_csv(std::ostream& out, const ReffSeries& series) {
    out << "t,r_eff\n";
    for (const auto& pt : series.points)
        out << format_double(pt.t) << ',' << format_double(pt.value) << '\n';
}

std::string derived_stats_json(const DerivedStats& stats) {
    nlohmann::ordered_json doc;
    doc["r0"] = stats.r0;
    doc["incubation_number"] = stats.i0_incub;
    doc["half_life_transmission_days"] = stats.half_life_transmission;
    doc["half_life_incubation_days"] = stats.half_life_incubation;
    doc["half_life_infectious_days"] = stats.half_life_infectious;
    if (std::isfinite(stats.control_response_time))
        doc["control_response_time_days"] = stats.control_response_time;
    else
        doc["control_response_time_days"] = nullptr;
    return doc.dump(2);
}

std::string fit_result_json(const FitResult& result, double grad_check) {
    nlohmann::ordered_json doc;
    doc["p"] = result.p;
    doc["loss"] = result.loss;
    doc["iters"] = result.iterations;
    doc["grad_check"] = grad_check;
    doc["status"] = to_string(result.status);
    doc["grad_norm"] = result.grad_norm;
    if (!result.warning.empty()) doc["warning"] = result.warning;
    return doc.dump(2);
}

} // namespace epikit
