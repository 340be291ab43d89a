#pragma once

#include "riverside/config.hpp"
#include "riverside/dynamics.hpp"
#include "riverside/garbage.hpp"
#include "riverside/landscape.hpp"
#include "riverside/rng.hpp"
#include "riverside/settlement.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace riverside {

/// Immutable per-map data shared by every run on that map: the grid, the
/// river masks, the house-independent site rules and the hotspot walk
/// distances. Build once, share across seeds.
struct World {
    TerrainGrid grid;
    RiverFeatures features;
    SiteContext sites;
    std::vector<std::vector<int>> hotspot_dist;
    std::vector<Coord> edge_spawns; ///< walkable edge cells that reach some hotspot
    std::size_t river_cells = 0;

    static std::shared_ptr<const World> build(TerrainGrid grid, const SimConfig& config);
    /// Loads config.terrain / config.elevation and builds.
    static std::shared_ptr<const World> load(const SimConfig& config);
};

struct MetricsRow {
    long tick = 0;
    std::int64_t population = 0;
    std::int64_t n_houses = 0;
    std::int64_t total_in_place = 0;
    std::int64_t river_total = 0;
    std::int64_t collected_total = 0;
    double dirtiness = 0.0;
    double garbage_per_capita = 0.0;
    std::int64_t littering_events = 0;

    friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct SimState {
    std::shared_ptr<const World> world;
    SimConfig config;
    Scenario scenario = Scenario::PrePark;
    long tick = 0;
    Rng rng;
    ExcitementField field;
    std::vector<Agent> agents; ///< always sorted by id
    Settlement settlement;
    GarbageField garbage;
    std::vector<Coord> spawn_cells;
    std::vector<MetricsRow> metrics;
    std::uint64_t next_agent_id = 0;
    int houses_pending = 0;
    std::int64_t littering_this_tick = 0;
    std::int64_t littering_total = 0;

    friend bool operator==(const SimState&, const SimState&) = default;
};

/// Builds the tick-0 state and records its metrics row.
///
/// RNG draws at init, in order: settlement placement (one Rng::below per
/// house), then, for Park, initial visitor spawn cells (one below each).
/// Throws ConfigError for a river-free map, or a Park map without hotspots
/// or spawn cells.
SimState init_scenario(const SimConfig& config, std::shared_ptr<const World> world);

/// Clears the settlement (demolish_all), removes residents and arms the park:
/// community members go to hotspots round-robin (member i at hotspot i mod H).
void transition_to_park(SimState& state);

/// Advances one tick. Phases, in order:
///  1. excitement diffusion;
///  2. population: Park despawns visitors aged >= visit_length, then spawns
///     floor(rate) visitors plus one with probability frac(rate) (one draw
///     only if frac > 0), each at a spawn cell (one below draw);
///     PrePark with houses_per_tick > 0 builds that many houses, each with a
///     resident;
///  3. agents act in a shuffled order (one Fisher-Yates pass over the
///     id-sorted list): move, utility, litter decision, cleanup;
///  4. domestic waste from houses (per house: rate draw, dump draw on a unit),
///     then river advection when enabled;
///  5. invariant audit and a metrics row.
/// Throws InvariantViolation (tick-stamped) on a ledger or walkability breach.
void step(SimState& state);

MetricsRow measure(const SimState& state);

/// Text frame: terrain legend characters overlaid with 'A' (agent), 'h'
/// (house) and '1'..'9' (in-place garbage, saturating), in that precedence.
std::string render_frame(const SimState& state);

using FrameSink = std::function<void(long tick, const std::string& frame)>;

/// init_scenario, then config.ticks steps. When config.frame_every > 0 the
/// sink receives a frame at every tick divisible by it (tick 0 included).
std::vector<MetricsRow> run(const SimConfig& config, std::shared_ptr<const World> world,
                            const FrameSink& frames = {});

} // namespace riverside
