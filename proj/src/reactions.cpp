#include "epikit/reactions.hpp"

#include <numeric>

namespace epikit {

std::int64_t OccupancyState::s_total() const {
    return std::accumulate(s.begin(), s.end(), std::int64_t{0});
}

std::int64_t OccupancyState::i_total() const {
    return std::accumulate(i.begin(), i.end(), std::int64_t{0});
}

double Reaction::propensity(const OccupancyState& state) const {
    switch (kind) {
        case ReactionKind::Infect:
            return rate * static_cast<double>(state.s[cell]) * static_cast<double>(state.i[cell]);
        case ReactionKind::RemoveI:
            return rate * static_cast<double>(state.i[cell]);
        case ReactionKind::DeathS:
            return rate * static_cast<double>(state.s[cell]);
        case ReactionKind::BirthS:
            return rate;
        case ReactionKind::HopS:
            return rate * static_cast<double>(state.s[cell]);
        case ReactionKind::HopI:
            return rate * static_cast<double>(state.i[cell]);
    }
    return 0.0;
}

void Reaction::apply(OccupancyState& state, Rng& rng, double death_fraction) const {
    switch (kind) {
        case ReactionKind::Infect:
            --state.s[cell];
            ++state.i[cell];
            ++state.c_total;
            break;
        case ReactionKind::RemoveI:
            --state.i[cell];
            if (rng.bernoulli(death_fraction))
                ++state.d_total;
            else
                ++state.r_total;
            break;
        case ReactionKind::DeathS:
            --state.s[cell];
            break;
        case ReactionKind::BirthS:
            ++state.s[cell];
            break;
        case ReactionKind::HopS:
            --state.s[cell];
            ++state.s[target_cell];
            break;
        case ReactionKind::HopI:
            --state.i[cell];
            ++state.i[target_cell];
            break;
    }
}

ReactionSystem build_sir_reactions(const SpatialParams& p, int cells, double length,
                                   double population_scale) {
    p.validate();
    if (cells < 1) throw InvalidParamsError("need at least one cell");
    if (!(length > 0) || !(population_scale > 0))
        throw InvalidParamsError("length and population scale must be positive");

    const double h = length / cells;
    ReactionSystem sys;
    sys.cells = cells;
    sys.cell_length = h;
    sys.death_fraction = p.g;

    const double k_infect = p.lambda / (h * population_scale);
    const double k_birth = p.f_source * h * population_scale;
    const double hop_s = p.d_s / (h * h);
    const double hop_i = p.d_i / (h * h);

    for (int c = 0; c < cells; ++c) {
        sys.reactions.push_back({ReactionKind::Infect, c, c, k_infect, "infect"});
        sys.reactions.push_back({ReactionKind::RemoveI, c, c, p.mu, "remove"});
        sys.reactions.push_back({ReactionKind::DeathS, c, c, p.nu, "death_s"});
        sys.reactions.push_back({ReactionKind::BirthS, c, c, k_birth, "birth_s"});
    }
    if (cells > 1) {
        for (int c = 0; c < cells; ++c) {
            if (c > 0) {
                if (hop_s > 0) sys.reactions.push_back({ReactionKind::HopS, c, c - 1, hop_s, "hop_s_left"});
                if (hop_i > 0) sys.reactions.push_back({ReactionKind::HopI, c, c - 1, hop_i, "hop_i_left"});
            }
            if (c < cells - 1) {
                if (hop_s > 0) sys.reactions.push_back({ReactionKind::HopS, c, c + 1, hop_s, "hop_s_right"});
                if (hop_i > 0) sys.reactions.push_back({ReactionKind::HopI, c, c + 1, hop_i, "hop_i_right"});
            }
        }
    }

    sys.channels_by_cell.assign(cells, {});
    for (std::size_t j = 0; j < sys.reactions.size(); ++j) {
        const auto touched = sys.reactions[j].cells_touched();
        sys.channels_by_cell[touched[0]].push_back(static_cast<int>(j));
        if (touched[1] != touched[0]) sys.channels_by_cell[touched[1]].push_back(static_cast<int>(j));
    }
    return sys;
}

ReactionSystem single_cell_sir(double beta, double gamma, double n, double death_fraction) {
    // lambda/(h*scale) reduces to beta/n for one cell of unit length
    SpatialParams p;
    p.lambda = beta / n;
    p.mu = gamma;
    p.nu = 0.0;
    p.f_source = 0.0;
    p.g = death_fraction;
    return build_sir_reactions(p, 1, 1.0, 1.0);
}

} // namespace epikit
