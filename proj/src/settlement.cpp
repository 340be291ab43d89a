#include "riverside/settlement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace riverside {

std::string_view to_string(SiteRule r) {
    switch (r) {
    case SiteRule::SriMadayung: return "SriMadayung";
    case SiteRule::TalagaKahudanan: return "TalagaKahudanan";
    case SiteRule::SiBareubeu: return "SiBareubeu";
    case SiteRule::HighlandBehind: return "HighlandBehind";
    case SiteRule::RiverBuffer: return "RiverBuffer";
    case SiteRule::NotBuildable: return "NotBuildable";
    case SiteRule::Occupied: return "Occupied";
    }
    return "?";
}

namespace {

constexpr std::uint8_t bit(SiteRule r) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r)); }

// House-independent rules, in SiteRule order.
std::vector<SiteRule> static_rules(Coord site, const TerrainGrid& grid, const RiverFeatures& f,
                                   const NearestField& road, const SettlementParams& p) {
    std::vector<SiteRule> out;
    const auto i = grid.index(site);
    if (f.between_streams[i]) out.push_back(SiteRule::SriMadayung);
    if (f.branch_proximity[i]) out.push_back(SiteRule::TalagaKahudanan);
    if (f.below_river[i]) out.push_back(SiteRule::SiBareubeu);
    if (highland_behind(site, grid, road, p)) out.push_back(SiteRule::HighlandBehind);
    if (f.dist_to_river[i] < p.river_buffer) out.push_back(SiteRule::RiverBuffer);
    if (grid.cells[i] != TerrainClass::Buildable) out.push_back(SiteRule::NotBuildable);
    return out;
}

} // namespace

Coord quantize_direction(Coord v) {
    if (v.x == 0 && v.y == 0) return {0, 0};
    constexpr Coord compass[8] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    const double angle = std::atan2(static_cast<double>(v.y), static_cast<double>(v.x));
    auto octant = static_cast<int>(std::lround(angle / (std::numbers::pi / 4.0)));
    octant = ((octant % 8) + 8) % 8;
    return compass[octant];
}

bool highland_behind(Coord site, const TerrainGrid& grid, const NearestField& road, const SettlementParams& p) {
    const auto origin = road.origin[grid.index(site)];
    if (origin < 0) return false; // no road, no facing
    const Coord r = grid.coord(static_cast<std::size_t>(origin));
    const Coord facing = quantize_direction({r.x - site.x, r.y - site.y});
    if (facing.x == 0 && facing.y == 0) return false;
    const double threshold = grid.elevation_at(site) + p.highland_delta;
    for (int k = 1; k <= p.highland_radius; ++k) {
        const Coord c{site.x - k * facing.x, site.y - k * facing.y};
        if (!grid.in_bounds(c)) break;
        if (grid.elevation_at(c) >= threshold) return true;
    }
    return false;
}

SiteContext SiteContext::build(const TerrainGrid& grid, const RiverFeatures& features, const SettlementParams& params) {
    SiteContext ctx;
    ctx.params = params;
    std::vector<std::uint8_t> is_road(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) is_road[i] = grid.cells[i] == TerrainClass::Road;
    ctx.road = chebyshev_field(grid, is_road);
    ctx.static_violations.assign(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::uint8_t mask = 0;
        for (SiteRule r : static_rules(grid.coord(i), grid, features, ctx.road, params)) mask |= bit(r);
        ctx.static_violations[i] = mask;
    }
    return ctx;
}

Settlement::Settlement(int w, int h, int r)
    : occupied(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0),
      house_neighbours(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0), width(w), height(h),
      r_neighbor(r) {}

void Settlement::add(const House& h, double score) {
    const auto at = static_cast<std::size_t>(h.coord.y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(h.coord.x);
    if (occupied[at]) throw ContractViolation("Settlement::add: cell already has a house");
    houses.push_back(h);
    occupied[at] = 1;
    log.push_back({h.built_tick, h.coord, score});
    const int y0 = std::max(0, h.coord.y - r_neighbor), y1 = std::min(height - 1, h.coord.y + r_neighbor);
    const int x0 = std::max(0, h.coord.x - r_neighbor), x1 = std::min(width - 1, h.coord.x + r_neighbor);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            ++house_neighbours[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
}

void Settlement::clear() {
    houses.clear();
    std::fill(occupied.begin(), occupied.end(), 0);
    std::fill(house_neighbours.begin(), house_neighbours.end(), 0);
}

std::vector<SiteRule> forbidden_site(Coord site, const TerrainGrid& grid, const RiverFeatures& features,
                                     const NearestField& road, const Settlement& settlement,
                                     const SettlementParams& params) {
    if (!grid.in_bounds(site)) throw ContractViolation("forbidden_site: coordinate out of bounds");
    auto rules = static_rules(site, grid, features, road, params);
    const bool occupied = std::any_of(settlement.houses.begin(), settlement.houses.end(),
                                      [&](const House& h) { return h.coord == site; });
    if (occupied) rules.push_back(SiteRule::Occupied);
    return rules;
}

namespace {

kernels::SiteScoreInputs score_inputs(const RiverFeatures& features, const SiteContext& ctx,
                                      const Settlement& settlement, const SettlementParams& p) {
    kernels::SiteScoreInputs in;
    in.static_violations = ctx.static_violations;
    in.occupied = settlement.occupied;
    in.house_neighbours = settlement.house_neighbours;
    in.dist_to_road = ctx.road.distance;
    in.dist_to_river = features.dist_to_river;
    in.w_neighbor = p.w_neighbor;
    in.w_road = p.w_road;
    in.w_river_far = p.w_river_far;
    in.river_far_cap = p.river_far_cap;
    return in;
}

} // namespace

double site_preference_score(Coord site, const RiverFeatures& features, const NearestField& road,
                             const Settlement& settlement, const SettlementParams& params) {
    // Count neighbours from the house list so this does not depend on the
    // incremental grid (whose radius is fixed at construction).
    int near = 0;
    for (const auto& h : settlement.houses) near += chebyshev(h.coord, site) <= params.r_neighbor;
    const auto i = static_cast<std::size_t>(site.y) * static_cast<std::size_t>(settlement.width) + static_cast<std::size_t>(site.x);
    const int road_d = road.distance[i];
    const double road_term = road_d == kUnreachable ? 0.0 : params.w_road / (1.0 + road_d);
    return params.w_neighbor * near + road_term +
           params.w_river_far * std::min(features.dist_to_river[i], params.river_far_cap);
}

SiteEvaluation evaluate_site(Coord site, const TerrainGrid& grid, const RiverFeatures& features,
                             const SiteContext& ctx, const Settlement& settlement) {
    SiteEvaluation e;
    e.coord = site;
    e.violated_rules = forbidden_site(site, grid, features, ctx.road, settlement, ctx.params);
    e.preference_score = site_preference_score(site, features, ctx.road, settlement, ctx.params);
    return e;
}

std::vector<std::size_t> top_band(const RiverFeatures& features, const SiteContext& ctx, const Settlement& settlement,
                                  kernels::Exec exec, std::vector<double>* scores_out) {
    std::vector<double> scores(settlement.occupied.size());
    kernels::score_sites(exec, score_inputs(features, ctx, settlement, ctx.params), scores);
    double best = kernels::kIllegalSite;
    for (double s : scores) best = std::max(best, s);
    std::vector<std::size_t> band;
    if (best != kernels::kIllegalSite) {
        const double floor = best - ctx.params.score_tolerance;
        for (std::size_t i = 0; i < scores.size(); ++i)
            if (scores[i] != kernels::kIllegalSite && scores[i] >= floor) band.push_back(i);
    }
    if (scores_out) *scores_out = std::move(scores);
    return band;
}

std::optional<House> place_next_house(Settlement& settlement, const RiverFeatures& features, const SiteContext& ctx,
                                      double waste_rate, long tick, Rng& rng, kernels::Exec exec) {
    std::vector<double> scores;
    const auto band = top_band(features, ctx, settlement, exec, &scores);
    if (band.empty()) return std::nullopt;
    const std::size_t pick = band[static_cast<std::size_t>(rng.below(band.size()))];
    const House house{{static_cast<int>(pick % static_cast<std::size_t>(settlement.width)),
                       static_cast<int>(pick / static_cast<std::size_t>(settlement.width))},
                      tick,
                      waste_rate};
    settlement.add(house, scores[pick]);
    return house;
}

int grow_settlement(Settlement& settlement, const RiverFeatures& features, const SiteContext& ctx, int n,
                    double waste_rate, long tick, Rng& rng, kernels::Exec exec) {
    int built = 0;
    while (built < n && place_next_house(settlement, features, ctx, waste_rate, tick, rng, exec)) ++built;
    return built;
}

void demolish_all(Settlement& settlement, GarbageField& garbage, bool clear_garbage) {
    if (clear_garbage) {
        for (const auto& h : settlement.houses) {
            const auto i = static_cast<std::size_t>(h.coord.y) * static_cast<std::size_t>(settlement.width) +
                           static_cast<std::size_t>(h.coord.x);
            garbage.collect(i, garbage.in_place[i]);
        }
    }
    settlement.clear();
}

} // namespace riverside
