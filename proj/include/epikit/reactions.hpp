#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "epikit/rng.hpp"
#include "epikit/spatial.hpp"

namespace epikit {

/// Integer occupation numbers per lattice cell for the S and I species,
/// with run-level accumulators for recoveries, deaths and infections.
struct OccupancyState {
    std::vector<std::int64_t> s, i;
    std::int64_t r_total{0}, d_total{0}, c_total{0};
    double t{0};

    int cells() const { return static_cast<int>(s.size()); }
    std::int64_t s_total() const;
    std::int64_t i_total() const;
};

enum class ReactionKind { Infect, RemoveI, DeathS, BirthS, HopS, HopI };

struct Reaction {
    ReactionKind kind{ReactionKind::Infect};
    int cell{0};
    int target_cell{0};  // hop destination; equal to cell for local reactions
    double rate{0};      // per-cell rate constant
    std::string label;

    double propensity(const OccupancyState& state) const;

    /// Apply the stoichiometric change. Removals split into death/recovery
    /// with probability death_fraction.
    void apply(OccupancyState& state, Rng& rng, double death_fraction) const;

    std::array<int, 2> cells_touched() const { return {cell, target_cell}; }
};

struct ReactionSystem {
    std::vector<Reaction> reactions;
    std::vector<std::vector<int>> channels_by_cell;
    double death_fraction{0};
    int cells{1};
    double cell_length{1};
};

/// Lattice SIR reaction network: per-cell infection, removal, susceptible
/// death and birth, plus left/right hopping with reflective boundaries
/// (outward channels at the ends are dropped). Rate constants map the
/// density parameters through the cell volume h = length/cells, with
/// population_scale multiplying all counts at fixed density dynamics:
///   infect     a = lambda/(h*scale) * S_i * I_i
///   remove     a = mu * I_i
///   death      a = nu * S_i
///   birth      a = f * h * scale
///   hop        a = (D/h^2) * count, per direction
ReactionSystem build_sir_reactions(const SpatialParams& p, int cells, double length,
                                   double population_scale = 1.0);

/// Single-cell network equivalent to the SIR rate equations with
/// a = beta*S*I/n for infection and gamma per-capita removal.
ReactionSystem single_cell_sir(double beta, double gamma, double n, double death_fraction);

} // namespace epikit
