#pragma once

#include <ostream>
#include <string>

#include "epikit/calibrate.hpp"
#include "epikit/gillespie.hpp"
#include "epikit/models.hpp"
#include "epikit/spatial.hpp"
#include "epikit/stability.hpp"

namespace epikit {

/// Trajectory rows t,S,E,I,R,D,C,new_cases,new_deaths with instantaneous
/// per-day rates in the last two columns.
void write_trajectory_csv(std::ostream& out, const TimeSeries& traj, ModelKind kind,
                          const SeirParams& p, const std::optional<ControlSchedule>& schedule);
void write_trajectory_csv(const std::string& path, const TimeSeries& traj, ModelKind kind,
                          const SeirParams& p, const std::optional<ControlSchedule>& schedule);

void write_field_csv(std::ostream& out, const DensityFields& fields, const Grid1D& grid);
void write_field_csv(const std::string& path, const DensityFields& fields, const Grid1D& grid);

/// Space-time matrix: one row per snapshot, first column t, then the field
/// at every grid point.
void write_xt_csv(const std::string& path, const SpatialSeries& series, const Grid1D& grid,
                  bool infected_field);

void write_totals_csv(std::ostream& out, const std::vector<double>& times,
                      const std::vector<CompartmentState>& totals);
void write_totals_csv(const std::string& path, const std::vector<double>& times,
                      const std::vector<CompartmentState>& totals);

void write_dispersion_csv(std::ostream& out, const SpatialParams& p, const SteadyState& state,
                          double k_max, int k_steps);

void write_turing_sweep_csv(std::ostream& out, double lambda, double ratio, double nu_max,
                            int steps);

void write_events_csv(std::ostream& out, const ReactionSystem& system, const GillespieResult& run);

void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats);

void write_reff_csv(std::ostream& out, const ReffSeries& series);

std::string derived_stats_json(const DerivedStats& stats);

std::string fit_result_json(const FitResult& result, double grad_check);

} // namespace epikit
