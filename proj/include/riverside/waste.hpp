#pragma once

#include "riverside/config.hpp"
#include "riverside/garbage.hpp"
#include "riverside/landscape.hpp"
#include "riverside/rng.hpp"
#include "riverside/settlement.hpp"

#include <span>

namespace riverside {

/// Each house, in build order: one draw against its waste_rate; on a unit,
/// one more draw against dump_to_river choosing the nearest river cell's
/// account over the house's own pile. Returns the number of units produced.
std::int64_t generate_domestic_waste(std::span<const House> houses, GarbageField& garbage,
                                     const TerrainGrid& grid, const RiverFeatures& features, Rng& rng,
                                     const WasteParams& params);

/// A visitor holding litter at a hotspot drops it unless someone can warn
/// them: never when a community member is near or when at least
/// warn_threshold other agents are near; otherwise with probability litter_p
/// (the only case that consumes a draw).
bool visitor_litter_decision(int nearby_agent_count, bool community_within_radius, Rng& rng,
                             const WasteParams& params);

/// Collects up to `capacity` in-place units from `c` and its Moore
/// neighbours, nearest first (the cell itself, then neighbours row-major).
/// Returns the number collected.
std::int64_t community_cleanup(Coord c, const TerrainGrid& grid, GarbageField& garbage, int capacity);

/// Cumulative river load per river cell. Throws ConfigError for a river-free grid.
double dirtiness_index(const GarbageField& garbage, std::size_t river_cells);

/// Moves each river cell's load to its lowest strictly-lower River
/// neighbour (synchronous). river_total is unchanged.
void advect_river(GarbageField& garbage, const TerrainGrid& grid);

} // namespace riverside
