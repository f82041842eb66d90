#pragma once

#include <cstdint>

namespace epikit {

/// xoshiro256++ with splitmix64 seeding. Hand-rolled so that streams are
/// reproducible across standard libraries; replicate streams derive from
/// (master seed, replicate index).
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    static Rng for_replicate(std::uint64_t master_seed, std::uint64_t replicate);

    std::uint64_t next_u64();

    /// Uniform draw in the open interval (0, 1).
    double uniform01();

    /// Standard normal via Box-Muller (pairs cached).
    double normal();

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::uint64_t s_[4];
    double cached_normal_{0};
    bool has_cached_{false};
};

} // namespace epikit
