#include "riverside/dynamics.hpp"

#include <fmt/format.h>

namespace riverside {

ExcitementField ExcitementField::from_grid(const TerrainGrid& grid, double mu) {
    ExcitementField f;
    f.width = grid.width;
    f.height = grid.height;
    f.mu = mu;
    f.p.assign(grid.size(), 0.0);
    f.walkable.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f.walkable[i] = riverside::walkable(grid.cells[i]);
    for (const auto& h : grid.hotspots) {
        const auto i = grid.index(h.coord);
        f.sources.push_back({i, h.base_excitement});
        f.p[i] = h.base_excitement;
    }
    return f;
}

void diffuse_excitement(ExcitementField& field, kernels::Exec exec) {
    const std::size_t n = static_cast<std::size_t>(field.width) * static_cast<std::size_t>(field.height);
    if (field.p.size() != n || field.walkable.size() != n)
        throw ContractViolation("diffuse_excitement: field dimensions do not match");
    std::vector<double> next(n);
    kernels::diffuse(exec, field.p, next, field.width, field.height, field.walkable, field.mu);
    for (const auto& s : field.sources) next[s.cell] = s.base;
    field.p.swap(next);
}

namespace {

std::size_t flat(Coord c, int width) {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c.x);
}

std::int64_t local_garbage(Coord c, int width, int height, std::span<const std::int64_t> garbage) {
    std::int64_t g = garbage[flat(c, width)];
    for (Coord n : neighbors8(c, width, height)) g += garbage[flat(n, width)];
    return g;
}

} // namespace

double crowding_penalty(Coord c, int width, int height, std::span<const double> utility_sum,
                        std::span<const std::int64_t> garbage, const PenaltyParams& params) {
    double crowd = 0.0;
    for (Coord n : neighbors8(c, width, height)) crowd += utility_sum[flat(n, width)];
    const double epsilon = params.epsilon0 * static_cast<double>(local_garbage(c, width, height, garbage));
    return params.rho * crowd / kNeighbourhood + epsilon;
}

double crowding_penalty(Coord c, int width, int height, std::span<const Agent> agents,
                        std::span<const std::int64_t> garbage, const PenaltyParams& params) {
    double crowd = 0.0;
    for (const auto& a : agents)
        if (chebyshev(a.coord, c) == 1) crowd += a.utility;
    const double epsilon = params.epsilon0 * static_cast<double>(local_garbage(c, width, height, garbage));
    return params.rho * crowd / kNeighbourhood + epsilon;
}

double agent_utility(Coord c, const ExcitementField& field, double f) {
    double sum = 0.0;
    for (Coord n : neighbors8(c, field.width, field.height)) sum += field.p[flat(n, field.width)];
    return sum / kNeighbourhood - f;
}

std::size_t choose_next_hotspot(std::span<const Hotspot> hotspots, std::optional<std::size_t> exclude, Rng& rng) {
    if (hotspots.empty()) throw ConfigError("no hotspots to visit");
    if (hotspots.size() == 1) return 0;
    std::vector<double> weights(hotspots.size());
    for (std::size_t i = 0; i < hotspots.size(); ++i)
        weights[i] = (exclude && *exclude == i) ? 0.0 : hotspots[i].base_excitement;
    return rng.weighted(weights);
}

StepOutcome step_agent(Agent& agent, const TerrainGrid& grid, std::span<const std::vector<int>> hotspot_dist,
                       double dwell_p, Rng& rng) {
    if (!grid.in_bounds(agent.coord) || !walkable(grid.at(agent.coord)))
        throw InvariantViolation(-1, fmt::format("agent {} on non-walkable cell ({}, {})", agent.id, agent.coord.x,
                                                 agent.coord.y));
    StepOutcome out;
    if (!agent.target) {
        agent.target = choose_next_hotspot(grid.hotspots, agent.last_visited, rng);
        agent.dwelling = false;
        agent.dwell_remaining = 0;
        out.chose_target = true;
    }

    const Coord goal = grid.hotspots[*agent.target].coord;
    if (agent.coord == goal) {
        if (!agent.dwelling) {
            agent.dwell_remaining = rng.geometric(dwell_p);
            agent.dwelling = true;
        }
        out.dwell_tick = true;
        if (--agent.dwell_remaining == 0) {
            agent.last_visited = agent.target;
            agent.target.reset();
            agent.dwelling = false;
            out.finished_dwell = true;
        }
        return out;
    }

    const auto& dist = hotspot_dist[*agent.target];
    const int here = dist[grid.index(agent.coord)];
    int best = here;
    Neighbours candidates;
    for (Coord n : neighbors8(agent.coord, grid)) {
        if (!can_step(grid, agent.coord, n)) continue;
        const int d = dist[grid.index(n)];
        if (d >= here || d > best) continue;
        if (d < best) {
            best = d;
            candidates.clear();
        }
        candidates.push_back(n);
    }
    if (candidates.empty()) {
        agent.target = choose_next_hotspot(grid.hotspots, agent.target, rng);
        out.resampled = true;
        return out;
    }
    agent.coord = candidates.size() == 1 ? candidates.front()
                                         : candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
    out.moved = true;
    out.arrived = agent.coord == goal;
    return out;
}

void resident_walk(Agent& agent, const TerrainGrid& grid, int range, Rng& rng) {
    Neighbours candidates;
    for (Coord n : neighbors8(agent.coord, grid))
        if (chebyshev(n, agent.home) <= range && can_step(grid, agent.coord, n)) candidates.push_back(n);
    if (candidates.empty()) return;
    agent.coord = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
}

} // namespace riverside
