#pragma once

#include <optional>
#include <span>

#include "epikit/reactions.hpp"

namespace epikit {

/// Exponential waiting time to the next event; empty when nothing can fire.
std::optional<double> gillespie_delta_t(double total_propensity, double r1);

/// Index of the reaction that fires: the smallest j whose cumulative
/// propensity fraction exceeds r2.
std::size_t gillespie_select(std::span<const double> propensities, double total, double r2);

struct GillespieEvent {
    double t{0};
    int channel{0};
    std::array<std::int64_t, 4> totals{};  // S, I, R, D just after the event
};

struct GillespieOptions {
    bool record_events{false};
    std::vector<double> sample_times;  // strictly increasing; totals sampled by LOCF
};

struct SampledTotals {
    // S, I, R, D, C at each requested sample time
    std::vector<std::array<double, 5>> values;
};

struct GillespieResult {
    OccupancyState final_state;
    std::vector<GillespieEvent> events;
    SampledTotals samples;
    long event_count{0};
    bool extinct{false};
};

GillespieResult gillespie_run(const ReactionSystem& system, OccupancyState init, double t_end,
                              std::uint64_t seed, const GillespieOptions& opts = {});

struct EnsembleStats {
    std::vector<double> times;
    // indexed by species (S, I, R, D, C)
    std::array<std::vector<double>, 5> mean;
    std::array<std::vector<double>, 5> variance;
    std::array<std::vector<double>, 5> se;
    long runs{0};
};

EnsembleStats ensemble_stats(const std::vector<SampledTotals>& runs,
                             const std::vector<double>& times);

/// Replicates run in parallel; replicate k uses the stream derived from
/// (master_seed, k), so the merged result does not depend on scheduling.
std::vector<SampledTotals> gillespie_ensemble(const ReactionSystem& system,
                                              const OccupancyState& init, double t_end,
                                              const std::vector<double>& sample_times, int runs,
                                              std::uint64_t master_seed, int threads = 0);

} // namespace epikit
