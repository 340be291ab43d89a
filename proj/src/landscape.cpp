#include "riverside/landscape.hpp"

#include <fmt/format.h>

#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

namespace riverside {

std::size_t TerrainGrid::river_cell_count() const {
    std::size_t n = 0;
    for (auto c : cells) n += c == TerrainClass::River;
    return n;
}

bool TerrainGrid::has_forced_branches() const {
    for (auto b : forced_branch)
        if (b) return true;
    return false;
}

namespace {

std::vector<std::string> read_rows(std::istream& in) {
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(line);
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    return rows;
}

void label_streams(TerrainGrid& g) {
    g.stream_labels.assign(g.size(), 0);
    int label = 0;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.cells[i] != TerrainClass::River || g.stream_labels[i] != 0) continue;
        ++label;
        g.stream_labels[i] = label;
        stack.push_back(i);
        while (!stack.empty()) {
            const Coord c = g.coord(stack.back());
            stack.pop_back();
            for (Coord n : neighbors8(c, g)) {
                const auto j = g.index(n);
                if (g.cells[j] == TerrainClass::River && g.stream_labels[j] == 0) {
                    g.stream_labels[j] = label;
                    stack.push_back(j);
                }
            }
        }
    }
    g.stream_count = label;
}

} // namespace

TerrainGrid load_terrain(std::istream& terrain, std::istream* elevation, const Legend& legend,
                         const LandscapeParams& params) {
    const auto rows = read_rows(terrain);
    if (rows.empty() || rows.front().empty()) throw FormatError("terrain grid is empty");

    TerrainGrid g;
    g.width = static_cast<int>(rows.front().size());
    g.height = static_cast<int>(rows.size());
    g.cells.reserve(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height));
    g.forced_branch.assign(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height), 0);

    for (int y = 0; y < g.height; ++y) {
        const auto& row = rows[static_cast<std::size_t>(y)];
        if (static_cast<int>(row.size()) != g.width)
            throw FormatError(fmt::format("terrain row {} has {} columns, expected {}", y, row.size(), g.width));
        for (int x = 0; x < g.width; ++x) {
            const char ch = row[static_cast<std::size_t>(x)];
            const auto entry = legend.decode(ch);
            if (!entry) throw LegendError(fmt::format("unknown terrain character '{}' at ({}, {})", ch, x, y));
            g.cells.push_back(entry->cls);
            if (entry->branch) g.forced_branch[g.cells.size() - 1] = 1;
            if (entry->hotspot)
                g.hotspots.push_back({{x, y}, params.hotspot_excitement, fmt::format("hotspot_{}", g.hotspots.size())});
        }
    }

    g.elevation.assign(g.size(), 0.0);
    if (elevation) {
        const auto erows = read_rows(*elevation);
        if (static_cast<int>(erows.size()) != g.height)
            throw ShapeError(fmt::format("elevation has {} rows, terrain has {}", erows.size(), g.height));
        for (int y = 0; y < g.height; ++y) {
            std::istringstream line(erows[static_cast<std::size_t>(y)]);
            std::string tok;
            int x = 0;
            while (line >> tok) {
                if (x >= g.width)
                    throw ShapeError(fmt::format("elevation row {} has more than {} values", y, g.width));
                double v = 0.0;
                auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
                if (ec != std::errc{} || ptr != tok.data() + tok.size())
                    throw FormatError(fmt::format("elevation value '{}' at ({}, {}) is not a number", tok, x, y));
                g.elevation[g.index({x, y})] = v;
                ++x;
            }
            if (x != g.width)
                throw ShapeError(fmt::format("elevation row {} has {} values, expected {}", y, x, g.width));
        }
    }

    label_streams(g);
    return g;
}

TerrainGrid load_terrain_files(const std::filesystem::path& terrain, const std::filesystem::path& elevation,
                               const Legend& legend, const LandscapeParams& params) {
    std::ifstream tin(terrain);
    if (!tin) throw FormatError(fmt::format("cannot open terrain file '{}'", terrain.string()));
    if (elevation.empty()) return load_terrain(tin, nullptr, legend, params);
    std::ifstream ein(elevation);
    if (!ein) throw FormatError(fmt::format("cannot open elevation file '{}'", elevation.string()));
    return load_terrain(tin, &ein, legend, params);
}

Neighbours neighbors8(Coord c, int width, int height) {
    if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height)
        throw ContractViolation(fmt::format("neighbors8: ({}, {}) outside {}x{} grid", c.x, c.y, width, height));
    Neighbours out;
    for (Coord d : kMooreOffsets) {
        const Coord n{c.x + d.x, c.y + d.y};
        if (n.x >= 0 && n.y >= 0 && n.x < width && n.y < height) out.push_back(n);
    }
    return out;
}

bool can_step(const TerrainGrid& grid, Coord from, Coord to) {
    if (!grid.in_bounds(to) || !walkable(grid.at(to))) return false;
    if (from.x != to.x && from.y != to.y) {
        const bool side_a = walkable(grid.at({to.x, from.y}));
        const bool side_b = walkable(grid.at({from.x, to.y}));
        if (!side_a && !side_b) return false;
    }
    return true;
}

NearestField chebyshev_field(const TerrainGrid& grid, std::span<const std::uint8_t> is_source, int max_distance) {
    NearestField f;
    f.distance.assign(grid.size(), kUnreachable);
    f.origin.assign(grid.size(), -1);
    std::vector<std::size_t> queue;
    queue.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (is_source[i]) {
            f.distance[i] = 0;
            f.origin[i] = static_cast<std::int64_t>(i);
            queue.push_back(i);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t i = queue[head];
        const int d = f.distance[i];
        if (d >= max_distance) continue;
        const Coord c = grid.coord(i);
        for (Coord off : kMooreOffsets) {
            const Coord n{c.x + off.x, c.y + off.y};
            if (!grid.in_bounds(n)) continue;
            const std::size_t j = grid.index(n);
            if (f.distance[j] != kUnreachable) continue;
            f.distance[j] = d + 1;
            f.origin[j] = f.origin[i];
            queue.push_back(j);
        }
    }
    return f;
}

std::vector<int> walk_distance(const TerrainGrid& grid, Coord target) {
    std::vector<int> dist(grid.size(), kUnreachable);
    if (!grid.in_bounds(target) || !walkable(grid.at(target))) return dist;
    std::vector<std::size_t> queue;
    queue.reserve(grid.size());
    dist[grid.index(target)] = 0;
    queue.push_back(grid.index(target));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t i = queue[head];
        const Coord c = grid.coord(i);
        for (Coord off : kMooreOffsets) {
            const Coord n{c.x + off.x, c.y + off.y};
            // Movement is symmetric under can_step, so BFS from the target
            // yields distance-to-target.
            if (!can_step(grid, c, n)) continue;
            const std::size_t j = grid.index(n);
            if (dist[j] != kUnreachable) continue;
            dist[j] = dist[i] + 1;
            queue.push_back(j);
        }
    }
    return dist;
}

bool is_detected_branch(const TerrainGrid& grid, Coord c) {
    if (grid.at(c) != TerrainClass::River) return false;
    constexpr Coord axes[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
    int occupied = 0;
    for (Coord a : axes) {
        const Coord n{c.x + a.x, c.y + a.y};
        if (grid.in_bounds(n) && grid.at(n) == TerrainClass::River) ++occupied;
    }
    return occupied >= 3;
}

RiverFeatures compute_river_features(const TerrainGrid& grid, const LandscapeParams& params) {
    RiverFeatures f;
    const std::size_t n = grid.size();

    std::vector<std::uint8_t> river(n, 0);
    for (std::size_t i = 0; i < n; ++i) river[i] = grid.cells[i] == TerrainClass::River;
    auto nearest = chebyshev_field(grid, river);
    f.dist_to_river = std::move(nearest.distance);
    f.nearest_river = std::move(nearest.origin);

    f.below_river.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (f.nearest_river[i] < 0) continue;
        f.below_river[i] = grid.elevation[i] < grid.elevation[static_cast<std::size_t>(f.nearest_river[i])];
    }

    // Count, per cell, how many distinct streams reach it within d_streams.
    std::vector<std::uint8_t> streams_in_reach(n, 0);
    std::vector<std::uint8_t> mask(n, 0);
    for (int label = 1; label <= grid.stream_count; ++label) {
        for (std::size_t i = 0; i < n; ++i) mask[i] = grid.stream_labels[i] == label;
        const auto reach = chebyshev_field(grid, mask, params.d_streams);
        for (std::size_t i = 0; i < n; ++i)
            if (reach.distance[i] <= params.d_streams && streams_in_reach[i] < 2) ++streams_in_reach[i];
    }
    f.between_streams.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) f.between_streams[i] = streams_in_reach[i] >= 2;

    // Explicit branch markers override detection.
    f.branch_cell.assign(n, 0);
    if (grid.has_forced_branches()) {
        f.branch_cell = grid.forced_branch;
    } else if (params.detect_branches) {
        for (std::size_t i = 0; i < n; ++i) f.branch_cell[i] = is_detected_branch(grid, grid.coord(i));
    }
    const auto branch_reach = chebyshev_field(grid, f.branch_cell, params.d_branch);
    f.branch_proximity.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) f.branch_proximity[i] = branch_reach.distance[i] <= params.d_branch;

    return f;
}

} // namespace riverside
