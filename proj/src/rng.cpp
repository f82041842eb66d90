#include "epikit/rng.hpp"

#include <cmath>
#include <numbers>

namespace epikit {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

Rng Rng::for_replicate(std::uint64_t master_seed, std::uint64_t replicate) {
    std::uint64_t sm = master_seed ^ (0x9E3779B97F4A7C15ULL * (replicate + 1));
    return Rng(splitmix64(sm));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    for (;;) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

} // namespace epikit
