#include "riverside/kernels.hpp"

#include <algorithm>

namespace riverside::kernels {

namespace {

// Shared cell body so the serial and parallel loops cannot drift apart.
// Non-walkable neighbours are skipped, so stray values there never leak in.
inline double diffuse_cell(std::span<const double> in, std::span<const std::uint8_t> walkable, int width,
                           int height, int x, int y, double mu) {
    double sum = 0.0;
    for (Coord d : kMooreOffsets) {
        const int nx = x + d.x;
        const int ny = y + d.y;
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        const auto j = static_cast<std::size_t>(ny) * static_cast<std::size_t>(width) + static_cast<std::size_t>(nx);
        if (walkable[j]) sum += in[j];
    }
    return mu * (sum / kNeighbourhood);
}

} // namespace

void diffuse_serial(std::span<const double> in, std::span<double> out, int width, int height,
                    std::span<const std::uint8_t> walkable, double mu) {
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
            out[i] = walkable[i] ? diffuse_cell(in, walkable, width, height, x, y, mu) : 0.0;
        }
    }
}

void diffuse_parallel(std::span<const double> in, std::span<double> out, int width, int height,
                      std::span<const std::uint8_t> walkable, double mu) {
#pragma omp parallel for schedule(static)
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
            out[i] = walkable[i] ? diffuse_cell(in, walkable, width, height, x, y, mu) : 0.0;
        }
    }
}

double site_score(const SiteScoreInputs& in, std::size_t i) {
    const double neighbours = in.w_neighbor * in.house_neighbours[i];
    const int road = in.dist_to_road[i];
    const double road_term = road == kUnreachable ? 0.0 : in.w_road / (1.0 + road);
    const double river_term = in.w_river_far * std::min(in.dist_to_river[i], in.river_far_cap);
    return neighbours + road_term + river_term;
}

void score_sites_serial(const SiteScoreInputs& in, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (in.static_violations[i] || in.occupied[i]) ? kIllegalSite : site_score(in, i);
}

void score_sites_parallel(const SiteScoreInputs& in, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        out[i] = (in.static_violations[i] || in.occupied[i]) ? kIllegalSite : site_score(in, i);
    }
}

std::vector<std::vector<int>> hotspot_distances_serial(const TerrainGrid& grid) {
    std::vector<std::vector<int>> out(grid.hotspots.size());
    for (std::size_t h = 0; h < out.size(); ++h) out[h] = walk_distance(grid, grid.hotspots[h].coord);
    return out;
}

std::vector<std::vector<int>> hotspot_distances_parallel(const TerrainGrid& grid) {
    std::vector<std::vector<int>> out(grid.hotspots.size());
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t h = 0; h < n; ++h)
        out[static_cast<std::size_t>(h)] = walk_distance(grid, grid.hotspots[static_cast<std::size_t>(h)].coord);
    return out;
}

} // namespace riverside::kernels
