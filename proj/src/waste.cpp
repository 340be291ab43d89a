#include "riverside/waste.hpp"

namespace riverside {

std::int64_t generate_domestic_waste(std::span<const House> houses, GarbageField& garbage,
                                     const TerrainGrid& grid, const RiverFeatures& features, Rng& rng,
                                     const WasteParams& params) {
    std::int64_t produced = 0;
    for (const auto& h : houses) {
        if (!rng.bernoulli(h.waste_rate)) continue;
        ++produced;
        const auto cell = grid.index(h.coord);
        const auto river = features.nearest_river[cell];
        if (rng.bernoulli(params.dump_to_river) && river >= 0)
            garbage.dump_river(static_cast<std::size_t>(river));
        else
            garbage.litter(cell);
    }
    return produced;
}

bool visitor_litter_decision(int nearby_agent_count, bool community_within_radius, Rng& rng,
                             const WasteParams& params) {
    if (community_within_radius) return false;
    if (nearby_agent_count >= params.warn_threshold) return false;
    return rng.bernoulli(params.litter_p);
}

std::int64_t community_cleanup(Coord c, const TerrainGrid& grid, GarbageField& garbage, int capacity) {
    std::int64_t left = capacity;
    left -= garbage.collect(grid.index(c), left);
    for (Coord n : neighbors8(c, grid)) {
        if (left <= 0) break;
        left -= garbage.collect(grid.index(n), left);
    }
    return capacity - left;
}

double dirtiness_index(const GarbageField& garbage, std::size_t river_cells) {
    if (river_cells == 0) throw ConfigError("dirtiness index needs at least one River cell");
    return static_cast<double>(garbage.river_total) / static_cast<double>(river_cells);
}

void advect_river(GarbageField& garbage, const TerrainGrid& grid) {
    std::vector<std::int64_t> next(garbage.river_load.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto load = garbage.river_load[i];
        if (load == 0) continue;
        std::size_t dest = i;
        double lowest = grid.elevation[i];
        for (Coord n : neighbors8(grid.coord(i), grid)) {
            const auto j = grid.index(n);
            if (grid.cells[j] == TerrainClass::River && grid.elevation[j] < lowest) {
                lowest = grid.elevation[j];
                dest = j;
            }
        }
        next[dest] += load;
    }
    garbage.river_load.swap(next);
}

} // namespace riverside
