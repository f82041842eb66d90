#include "epikit/gillespie.hpp"

#include <cmath>
#include <thread>

#include "epikit/errors.hpp"

namespace epikit {

namespace {

constexpr long kRebuildInterval = 4096;  // kills drift in the incremental total

std::array<double, 5> totals_of(const OccupancyState& state) {
    return {static_cast<double>(state.s_total()), static_cast<double>(state.i_total()),
            static_cast<double>(state.r_total), static_cast<double>(state.d_total),
            static_cast<double>(state.c_total)};
}

} // namespace

std::optional<double> gillespie_delta_t(double total_propensity, double r1) {
    if (!(total_propensity > 0.0)) return std::nullopt;
    return std::log(1.0 / r1) / total_propensity;
}

std::size_t gillespie_select(std::span<const double> propensities, double total, double r2) {
    const double target = r2 * total;
    double cumulative = 0.0;
    const std::size_t n = propensities.size();
    for (std::size_t j = 0; j + 1 < n; ++j) {
        cumulative += propensities[j];
        if (target < cumulative) return j;
    }
    return n - 1;
}

GillespieResult gillespie_run(const ReactionSystem& system, OccupancyState init, double t_end,
                              std::uint64_t seed, const GillespieOptions& opts) {
    if (system.reactions.empty()) throw InvalidParamsError("reaction system is empty");
    Rng rng(seed);
    GillespieResult result;
    OccupancyState& state = init;

    const std::size_t n_channels = system.reactions.size();
    std::vector<double> props(n_channels);
    double total = 0.0;
    auto rebuild = [&] {
        total = 0.0;
        for (std::size_t j = 0; j < n_channels; ++j) {
            props[j] = system.reactions[j].propensity(state);
            total += props[j];
        }
    };
    rebuild();

    std::size_t sample_idx = 0;
    auto drain_samples = [&](double up_to) {
        while (sample_idx < opts.sample_times.size() && opts.sample_times[sample_idx] < up_to) {
            result.samples.values.push_back(totals_of(state));
            ++sample_idx;
        }
    };

    long since_rebuild = 0;
    while (state.t < t_end) {
        const double r1 = rng.uniform01();
        const auto dt = gillespie_delta_t(total, r1);
        if (!dt) {
            result.extinct = true;
            break;
        }
        const double t_next = state.t + *dt;
        drain_samples(std::min(t_next, t_end));
        if (t_next >= t_end) {
            state.t = t_end;
            break;
        }
        const double r2 = rng.uniform01();
        const std::size_t j = gillespie_select(props, total, r2);
        state.t = t_next;
        system.reactions[j].apply(state, rng, system.death_fraction);
        ++result.event_count;
        if (opts.record_events)
            result.events.push_back({state.t, static_cast<int>(j),
                                     {state.s_total(), state.i_total(), state.r_total, state.d_total}});

        // only channels touching the affected cells change
        const auto touched = system.reactions[j].cells_touched();
        for (int c : {touched[0], touched[1]}) {
            for (int ch : system.channels_by_cell[c]) {
                const double fresh = system.reactions[ch].propensity(state);
                total += fresh - props[ch];
                props[ch] = fresh;
            }
            if (touched[1] == touched[0]) break;
        }
        if (++since_rebuild >= kRebuildInterval) {
            rebuild();
            since_rebuild = 0;
        }
        if (total < 0.0) rebuild();
    }

    // remaining samples see the last state (extinction freezes the counts)
    while (sample_idx < opts.sample_times.size() && opts.sample_times[sample_idx] <= t_end) {
        result.samples.values.push_back(totals_of(state));
        ++sample_idx;
    }
    result.final_state = std::move(state);
    return result;
}

EnsembleStats ensemble_stats(const std::vector<SampledTotals>& runs,
                             const std::vector<double>& times) {
    if (runs.size() < 2) throw InvalidParamsError("ensemble statistics need at least two runs");
    const std::size_t n_times = times.size();
    for (const auto& run : runs)
        if (run.values.size() != n_times)
            throw InvalidParamsError("all runs must be sampled on the same grid");

    EnsembleStats out;
    out.times = times;
    out.runs = static_cast<long>(runs.size());
    const double n = static_cast<double>(runs.size());
    for (int sp = 0; sp < 5; ++sp) {
        out.mean[sp].assign(n_times, 0.0);
        out.variance[sp].assign(n_times, 0.0);
        out.se[sp].assign(n_times, 0.0);
    }
    for (std::size_t k = 0; k < n_times; ++k) {
        for (int sp = 0; sp < 5; ++sp) {
            double mean = 0.0;
            for (const auto& run : runs) mean += run.values[k][sp];
            mean /= n;
            double ss = 0.0;
            for (const auto& run : runs) {
                const double d = run.values[k][sp] - mean;
                ss += d * d;
            }
            out.mean[sp][k] = mean;
            out.variance[sp][k] = ss / (n - 1.0);
            out.se[sp][k] = std::sqrt(out.variance[sp][k] / n);
        }
    }
    return out;
}

std::vector<SampledTotals> gillespie_ensemble(const ReactionSystem& system,
                                              const OccupancyState& init, double t_end,
                                              const std::vector<double>& sample_times, int runs,
                                              std::uint64_t master_seed, int threads) {
    if (runs < 1) throw InvalidParamsError("need at least one run");
    std::vector<SampledTotals> out(runs);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, runs));

    GillespieOptions opts;
    opts.sample_times = sample_times;

    auto worker = [&](int start, int stride) {
        for (int k = start; k < runs; k += stride) {
            Rng stream = Rng::for_replicate(master_seed, static_cast<std::uint64_t>(k));
            // replicate seed comes from the stream construction; run consumes it
            GillespieResult res = gillespie_run(system, init, t_end, stream.next_u64(), opts);
            out[static_cast<std::size_t>(k)] = std::move(res.samples);
        }
    };
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w, threads);
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace epikit
