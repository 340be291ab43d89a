#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; both compute each output element independently with the
// same arithmetic order, so results are bit-identical regardless of thread
// count. Tests compare the two and the benchmark target times them.

#include "riverside/landscape.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace riverside::kernels {

enum class Exec { Serial, Parallel };

/// One synchronous excitement update (no source clamping):
///   out[c] = mu * (sum of in[] over in-bounds walkable Moore neighbours) / 8
/// for walkable c; out[c] = 0 on non-walkable cells. Neighbours are summed
/// in kMooreOffsets order.
void diffuse_serial(std::span<const double> in, std::span<double> out, int width, int height,
                    std::span<const std::uint8_t> walkable, double mu);
void diffuse_parallel(std::span<const double> in, std::span<double> out, int width, int height,
                      std::span<const std::uint8_t> walkable, double mu);

inline constexpr double kIllegalSite = -std::numeric_limits<double>::infinity();

struct SiteScoreInputs {
    std::span<const std::uint8_t> static_violations; ///< nonzero: some hard rule fires regardless of houses
    std::span<const std::uint8_t> occupied;
    std::span<const int> house_neighbours; ///< houses within r_neighbor (Chebyshev)
    std::span<const int> dist_to_road;
    std::span<const int> dist_to_river;
    double w_neighbor = 0.0;
    double w_road = 0.0;
    double w_river_far = 0.0;
    int river_far_cap = 0;
};

/// Preference score of one legal cell; all terms are non-negative.
double site_score(const SiteScoreInputs& in, std::size_t i);

/// Scores every cell; illegal cells get kIllegalSite.
void score_sites_serial(const SiteScoreInputs& in, std::span<double> out);
void score_sites_parallel(const SiteScoreInputs& in, std::span<double> out);

/// Walk-distance field for every hotspot (one BFS per hotspot).
std::vector<std::vector<int>> hotspot_distances_serial(const TerrainGrid& grid);
std::vector<std::vector<int>> hotspot_distances_parallel(const TerrainGrid& grid);

inline void diffuse(Exec e, std::span<const double> in, std::span<double> out, int w, int h,
                    std::span<const std::uint8_t> walkable, double mu) {
    e == Exec::Serial ? diffuse_serial(in, out, w, h, walkable, mu) : diffuse_parallel(in, out, w, h, walkable, mu);
}

inline void score_sites(Exec e, const SiteScoreInputs& in, std::span<double> out) {
    e == Exec::Serial ? score_sites_serial(in, out) : score_sites_parallel(in, out);
}

inline std::vector<std::vector<int>> hotspot_distances(Exec e, const TerrainGrid& grid) {
    return e == Exec::Serial ? hotspot_distances_serial(grid) : hotspot_distances_parallel(grid);
}

} // namespace riverside::kernels
