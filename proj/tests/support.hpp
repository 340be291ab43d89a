#pragma once

// Fixture builders and brute-force oracles shared by the test binaries.
// Oracles here deliberately avoid the library's BFS/kernels so they can
// check them.

#include "riverside/config.hpp"
#include "riverside/engine.hpp"
#include "riverside/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace riverside::testing {

inline TerrainGrid grid_from(const std::string& rows, const LandscapeParams& params = {},
                             const std::string& elevation = {}) {
    std::istringstream t(rows);
    if (elevation.empty()) return load_terrain(t, nullptr, Legend{}, params);
    std::istringstream e(elevation);
    return load_terrain(t, &e, Legend{}, params);
}

inline std::string data_path(const std::string& name) { return std::string(RIVERSIDE_DATA_DIR) + "/" + name; }

inline SimConfig default_config(Scenario scenario) {
    SimConfig c;
    c.scenario = scenario;
    c.terrain = data_path("riverbank.map");
    c.elevation = data_path("riverbank.elev");
    return c;
}

/// The default 200x200 fixture, built once per process.
inline std::shared_ptr<const World> default_world() {
    static const auto world = World::load(default_config(Scenario::PrePark));
    return world;
}

/// Minimum Chebyshev distance to any River cell by exhaustive scan.
inline std::vector<int> brute_dist_to_river(const TerrainGrid& g) {
    std::vector<Coord> rivers;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.cells[i] == TerrainClass::River) rivers.push_back(g.coord(i));
    std::vector<int> d(g.size(), kUnreachable);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (Coord r : rivers) d[i] = std::min(d[i], chebyshev(g.coord(i), r));
    return d;
}

/// River components by union-find over 8-adjacent River pairs. Returns the
/// partition as a set of sorted index lists.
inline std::set<std::vector<std::size_t>> brute_components(const TerrainGrid& g) {
    std::vector<std::size_t> parent(g.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.cells[i] != TerrainClass::River) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g.cells[j] == TerrainClass::River && chebyshev(g.coord(i), g.coord(j)) == 1) parent[find(i)] = find(j);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.cells[i] == TerrainClass::River) groups[find(i)].push_back(i);
    std::set<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.insert(members);
    return out;
}

/// Partition induced by stream_labels, in the same shape as brute_components.
inline std::set<std::vector<std::size_t>> label_partition(const TerrainGrid& g) {
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.stream_labels[i] != 0) groups[g.stream_labels[i]].push_back(i);
    std::set<std::vector<std::size_t>> out;
    for (auto& [label, members] : groups) out.insert(members);
    return out;
}

/// between_streams by scanning the (2d+1)^2 window for distinct stream ids.
inline std::vector<std::uint8_t> brute_between_streams(const TerrainGrid& g, int d) {
    std::vector<std::uint8_t> out(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::set<int> ids;
        const Coord c = g.coord(i);
        for (int y = c.y - d; y <= c.y + d; ++y)
            for (int x = c.x - d; x <= c.x + d; ++x)
                if (g.in_bounds({x, y}) && g.stream_labels[g.index({x, y})] != 0) ids.insert(g.stream_labels[g.index({x, y})]);
        out[i] = ids.size() >= 2;
    }
    return out;
}

/// Reference diffusion written directly from the update rule.
inline std::vector<double> brute_diffuse(const std::vector<double>& p, const std::vector<std::uint8_t>& walk, int w,
                                         int h, double mu, const std::vector<std::pair<std::size_t, double>>& sources) {
    std::vector<double> out(p.size(), 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y * w + x);
            if (!walk[i]) continue;
            double s = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const std::size_t j = static_cast<std::size_t>(ny * w + nx);
                    if (walk[j]) s += p[j];
                }
            out[i] = mu * s / 8.0;
        }
    }
    for (auto [cell, base] : sources) out[cell] = base;
    return out;
}

inline double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace riverside::testing
