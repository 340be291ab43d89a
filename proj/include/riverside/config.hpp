#pragma once

#include "riverside/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace riverside {

/// What a terrain character decodes to.
struct LegendEntry {
    TerrainClass cls = TerrainClass::Buildable;
    bool hotspot = false; ///< also registers a hotspot (class ParkPath)
    bool branch = false;  ///< also marks a forced branch cell (class River)
};

/// Character <-> terrain mapping. Each role has exactly one character.
struct Legend {
    char river = '~';
    char riverbank = 'r';
    char road = '=';
    char buildable = '.';
    char delta = 'd';
    char trees = 't';
    char park_path = 'p';
    char obstacle = '#';
    char hotspot = 'H';
    char branch = 'B';

    std::optional<LegendEntry> decode(char c) const;
    char encode(TerrainClass cls) const;
    /// Throws ConfigError if two roles share a character.
    void validate() const;

    friend bool operator==(const Legend&, const Legend&) = default;
};

struct LandscapeParams {
    int d_streams = 5;          ///< Sri Madayung reach, Chebyshev cells
    int d_branch = 3;           ///< Talaga Kahudanan reach around branch cells
    bool detect_branches = true;
    double hotspot_excitement = 1.0;

    friend bool operator==(const LandscapeParams&, const LandscapeParams&) = default;
};

struct SettlementParams {
    int river_buffer = 4;
    int highland_radius = 8;
    double highland_delta = 1.5;
    double w_neighbor = 1.0;
    int r_neighbor = 2;
    double w_road = 4.0;
    double w_river_far = 0.05;
    int river_far_cap = 20;
    double score_tolerance = 1e-9;
    int houses = 30;
    int houses_per_tick = 0; ///< 0: whole settlement is built before tick 0
    bool demolition_clears_garbage = true;

    friend bool operator==(const SettlementParams&, const SettlementParams&) = default;
};

struct DynamicsParams {
    double mu = 0.9;
    double rho = 0.1;
    double epsilon0 = 0.05;
    double dwell_p = 0.25;
    int resident_range = 3;

    friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

struct WasteParams {
    double waste_rate = 0.3;
    double dump_to_river = 0.9;
    double litter_p = 0.4;
    int warn_threshold = 2;
    int warn_radius = 2;
    int community_radius = 2;
    int cleanup_capacity = 5;
    bool advect_river = false;
    bool riverside_drift = false;

    friend bool operator==(const WasteParams&, const WasteParams&) = default;
};

enum class Scenario { PrePark, Park };
enum class CommunityMode { Patrol, Stationed };
enum class ParkStart { Fresh, Demolish };

struct ParkParams {
    /// Expected visitor arrivals per tick: floor(rate) guaranteed, plus one
    /// more with probability frac(rate). Values <= 1 are a plain probability.
    double visitor_spawn_rate = 0.5;
    int visit_length = 400;
    int initial_visitors = 0;
    int n_community = 3;
    CommunityMode community_mode = CommunityMode::Patrol;
    ParkStart start = ParkStart::Fresh;
    std::vector<Coord> entrances; ///< empty: every reachable walkable edge cell

    friend bool operator==(const ParkParams&, const ParkParams&) = default;
};

struct SimConfig {
    Scenario scenario = Scenario::PrePark;
    std::uint64_t seed = 1;
    int ticks = 1000;
    int frame_every = 0;
    std::filesystem::path terrain;
    std::filesystem::path elevation; ///< empty: flat map

    Legend legend;
    LandscapeParams landscape;
    SettlementParams settlement;
    DynamicsParams dynamics;
    WasteParams waste;
    ParkParams park;

    /// Range checks on every field. Throws ConfigError naming the field.
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Parses the sectioned key = value format. Relative terrain/elevation paths
/// are resolved against `base_dir`. Unknown sections or keys are errors.
SimConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
SimConfig load_config(const std::filesystem::path& path);

/// Writes every field in the same format parse_config reads.
void write_config(std::ostream& out, const SimConfig& config);

std::string to_string(Scenario s);

} // namespace riverside
