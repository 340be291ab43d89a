#pragma once

#include "riverside/config.hpp"
#include "riverside/garbage.hpp"
#include "riverside/kernels.hpp"
#include "riverside/landscape.hpp"
#include "riverside/rng.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace riverside {

enum class SiteRule : std::uint8_t {
    SriMadayung,     ///< between two distinct streams
    TalagaKahudanan, ///< near a river branching point
    SiBareubeu,      ///< lower than the nearest river cell
    HighlandBehind,  ///< higher ground behind the house, facing away from the road
    RiverBuffer,     ///< too close to the river (flood band, kept as public land)
    NotBuildable,
    Occupied,
};

std::string_view to_string(SiteRule r);

struct House {
    Coord coord;
    long built_tick = 0;
    double waste_rate = 0.0;

    friend bool operator==(const House&, const House&) = default;
};

struct SiteEvaluation {
    Coord coord;
    std::vector<SiteRule> violated_rules;
    double preference_score = 0.0;
};

struct BuildLogEntry {
    long tick = 0;
    Coord coord;
    double score = 0.0;

    friend bool operator==(const BuildLogEntry&, const BuildLogEntry&) = default;
};

/// Everything about site choice that does not change as houses are added:
/// road distances and the house-independent rule mask.
struct SiteContext {
    NearestField road;                         ///< Chebyshev distance/origin to nearest Road cell
    std::vector<std::uint8_t> static_violations; ///< bit (1 << SiteRule) per house-independent rule
    SettlementParams params;

    static SiteContext build(const TerrainGrid& grid, const RiverFeatures& features, const SettlementParams& params);
};

/// Unit direction (each component in {-1, 0, 1}) of the 8-way compass point
/// closest to the vector `v`. Zero vector maps to {0, 0}.
Coord quantize_direction(Coord v);

/// True if some cell up to highland_radius steps from `site`, walking away
/// from the nearest road, is at least highland_delta higher than the site.
bool highland_behind(Coord site, const TerrainGrid& grid, const NearestField& road, const SettlementParams& params);

/// Houses plus the incremental bookkeeping the scorer needs.
struct Settlement {
    std::vector<House> houses;
    std::vector<std::uint8_t> occupied;
    std::vector<int> house_neighbours; ///< houses within r_neighbor of each cell
    std::vector<BuildLogEntry> log;
    int width = 0;
    int height = 0;
    int r_neighbor = 0;

    Settlement() = default;
    Settlement(int width, int height, int r_neighbor);

    void add(const House& h, double score);
    /// Removes all houses; the build log is kept.
    void clear();

    friend bool operator==(const Settlement&, const Settlement&) = default;
};

/// Every violated rule for a house at `site`, in SiteRule order. Evaluates
/// each rule directly from the grid and features (no cached mask).
std::vector<SiteRule> forbidden_site(Coord site, const TerrainGrid& grid, const RiverFeatures& features,
                                     const NearestField& road, const Settlement& settlement,
                                     const SettlementParams& params);

/// Soft preference of a legal site; higher is better.
double site_preference_score(Coord site, const RiverFeatures& features, const NearestField& road,
                             const Settlement& settlement, const SettlementParams& params);

SiteEvaluation evaluate_site(Coord site, const TerrainGrid& grid, const RiverFeatures& features,
                             const SiteContext& ctx, const Settlement& settlement);

/// Scores all cells and returns the legal sites within score_tolerance of
/// the best score, in row-major order. Empty when no legal site exists.
std::vector<std::size_t> top_band(const RiverFeatures& features, const SiteContext& ctx,
                                  const Settlement& settlement, kernels::Exec exec = kernels::Exec::Parallel,
                                  std::vector<double>* scores_out = nullptr);

/// Picks uniformly from top_band with one Rng::below draw and builds there.
/// No draw is made when there is no legal site.
std::optional<House> place_next_house(Settlement& settlement, const RiverFeatures& features, const SiteContext& ctx,
                                      double waste_rate, long tick, Rng& rng,
                                      kernels::Exec exec = kernels::Exec::Parallel);

/// Repeats place_next_house up to n times; returns how many were built.
int grow_settlement(Settlement& settlement, const RiverFeatures& features, const SiteContext& ctx, int n,
                    double waste_rate, long tick, Rng& rng, kernels::Exec exec = kernels::Exec::Parallel);

/// Scenario-2 clearance. With clear_garbage, in-place garbage on former house
/// cells moves to collected; river accounts are never touched.
void demolish_all(Settlement& settlement, GarbageField& garbage, bool clear_garbage);

} // namespace riverside
