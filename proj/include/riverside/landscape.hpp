#pragma once

#include "riverside/config.hpp"
#include "riverside/types.hpp"

#include <boost/container/static_vector.hpp>

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace riverside {

struct Hotspot {
    Coord coord;
    double base_excitement = 1.0;
    std::string name;
};

/// Static world: terrain classes, elevation, river components and hotspots.
/// Immutable after load_terrain returns.
struct TerrainGrid {
    int width = 0;
    int height = 0;
    std::vector<TerrainClass> cells;
    std::vector<double> elevation;
    std::vector<int> stream_labels;      ///< 0 = not river; 1..stream_count
    std::vector<std::uint8_t> forced_branch; ///< cells marked with the branch character
    std::vector<Hotspot> hotspots;       ///< row-major discovery order
    int stream_count = 0;

    std::size_t size() const noexcept { return cells.size(); }
    bool in_bounds(Coord c) const noexcept { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
    std::size_t index(Coord c) const noexcept {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c.x);
    }
    Coord coord(std::size_t i) const noexcept {
        return {static_cast<int>(i % static_cast<std::size_t>(width)), static_cast<int>(i / static_cast<std::size_t>(width))};
    }
    TerrainClass at(Coord c) const { return cells[index(c)]; }
    double elevation_at(Coord c) const { return elevation[index(c)]; }
    std::size_t river_cell_count() const;
    bool has_forced_branches() const;
};

/// Parses the character grid (and optional same-shape elevation grid).
/// Throws FormatError (ragged rows, empty grid), LegendError (unknown
/// character) or ShapeError (elevation mismatch).
TerrainGrid load_terrain(std::istream& terrain, std::istream* elevation, const Legend& legend,
                         const LandscapeParams& params);
TerrainGrid load_terrain_files(const std::filesystem::path& terrain, const std::filesystem::path& elevation,
                               const Legend& legend, const LandscapeParams& params);

constexpr bool walkable(TerrainClass c) noexcept {
    switch (c) {
    case TerrainClass::Road:
    case TerrainClass::Buildable:
    case TerrainClass::ParkPath:
    case TerrainClass::Riverbank:
    case TerrainClass::Delta:
        return true;
    case TerrainClass::River:
    case TerrainClass::Trees:
    case TerrainClass::Obstacle:
        return false;
    }
    return false;
}

using Neighbours = boost::container::static_vector<Coord, 8>;

/// Moore offsets in row-major order of the 3x3 block, centre excluded.
inline constexpr Coord kMooreOffsets[8] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                           {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

/// In-bounds Moore neighbours of `c` in kMooreOffsets order. Throws
/// ContractViolation if `c` itself is out of bounds.
Neighbours neighbors8(Coord c, int width, int height);
inline Neighbours neighbors8(Coord c, const TerrainGrid& grid) { return neighbors8(c, grid.width, grid.height); }

/// Agents may step to any walkable Moore neighbour, except diagonally between
/// two blocked orthogonal cells (no slipping through a diagonal river line).
bool can_step(const TerrainGrid& grid, Coord from, Coord to);

/// Chebyshev distance field plus, for every reached cell, the source cell it
/// was reached from (a nearest source; ties resolved by source row-major order).
struct NearestField {
    std::vector<int> distance;       ///< kUnreachable where no source exists
    std::vector<std::int64_t> origin; ///< grid index of the nearest source, -1 if none
};

/// Multi-source BFS over the full 8-connected grid, ignoring terrain.
/// Stops expanding past `max_distance`.
NearestField chebyshev_field(const TerrainGrid& grid, std::span<const std::uint8_t> is_source,
                             int max_distance = kUnreachable);

/// BFS step distance from `target` over walkable cells under can_step.
std::vector<int> walk_distance(const TerrainGrid& grid, Coord target);

struct RiverFeatures {
    std::vector<int> dist_to_river;
    std::vector<std::int64_t> nearest_river; ///< grid index, -1 on river-free maps
    std::vector<std::uint8_t> between_streams;
    std::vector<std::uint8_t> branch_proximity;
    std::vector<std::uint8_t> below_river;
    std::vector<std::uint8_t> branch_cell;
};

/// River cell whose River axis-neighbours (N, E, S, W) cover >= 3 directions.
bool is_detected_branch(const TerrainGrid& grid, Coord c);

RiverFeatures compute_river_features(const TerrainGrid& grid, const LandscapeParams& params);

} // namespace riverside
