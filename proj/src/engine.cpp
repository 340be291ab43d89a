#include "riverside/engine.hpp"

#include "riverside/waste.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace riverside {

std::shared_ptr<const World> World::build(TerrainGrid grid, const SimConfig& config) {
    auto w = std::make_shared<World>();
    w->grid = std::move(grid);
    w->features = compute_river_features(w->grid, config.landscape);
    w->sites = SiteContext::build(w->grid, w->features, config.settlement);
    w->hotspot_dist = kernels::hotspot_distances(kernels::Exec::Parallel, w->grid);
    w->river_cells = w->grid.river_cell_count();

    const auto& g = w->grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Coord c = g.coord(i);
        const bool edge = c.x == 0 || c.y == 0 || c.x == g.width - 1 || c.y == g.height - 1;
        if (!edge || !walkable(g.cells[i])) continue;
        const bool reaches = std::any_of(w->hotspot_dist.begin(), w->hotspot_dist.end(),
                                         [i](const std::vector<int>& d) { return d[i] != kUnreachable; });
        if (reaches) w->edge_spawns.push_back(c);
    }
    return w;
}

std::shared_ptr<const World> World::load(const SimConfig& config) {
    if (config.terrain.empty()) throw ConfigError("simulation.terrain is not set", "simulation.terrain");
    return build(load_terrain_files(config.terrain, config.elevation, config.legend, config.landscape), config);
}

namespace {

void add_resident(SimState& s, const House& h) {
    Agent a;
    a.id = s.next_agent_id++;
    a.kind = AgentKind::Resident;
    a.coord = h.coord;
    a.home = h.coord;
    a.spawn_tick = s.tick;
    s.agents.push_back(a);
}

void spawn_visitor(SimState& s) {
    Agent a;
    a.id = s.next_agent_id++;
    a.kind = AgentKind::Visitor;
    a.coord = s.spawn_cells[static_cast<std::size_t>(s.rng.below(s.spawn_cells.size()))];
    a.spawn_tick = s.tick;
    s.agents.push_back(a);
}

void build_houses(SimState& s, int n) {
    const auto& w = *s.world;
    for (int k = 0; k < n; ++k) {
        auto h = place_next_house(s.settlement, w.features, w.sites, s.config.waste.waste_rate, s.tick, s.rng);
        if (!h) break;
        add_resident(s, *h);
    }
}

void check_invariants(const SimState& s) {
    if (auto problem = s.garbage.audit(); !problem.empty()) throw InvariantViolation(s.tick, problem);
    const auto& g = s.world->grid;
    for (const auto& a : s.agents) {
        if (!g.in_bounds(a.coord) || !walkable(g.at(a.coord)))
            throw InvariantViolation(s.tick, fmt::format("agent {} on non-walkable cell ({}, {})", a.id, a.coord.x,
                                                         a.coord.y));
        if (a.dwell_remaining > 0 && (!a.target || g.hotspots[*a.target].coord != a.coord))
            throw InvariantViolation(s.tick, fmt::format("agent {} dwelling away from its hotspot", a.id));
    }
}

int count_within(const std::vector<int>& counts, const TerrainGrid& g, Coord c, int r) {
    int n = 0;
    for (int y = std::max(0, c.y - r); y <= std::min(g.height - 1, c.y + r); ++y)
        for (int x = std::max(0, c.x - r); x <= std::min(g.width - 1, c.x + r); ++x) n += counts[g.index({x, y})];
    return n;
}

void act_agents(SimState& s) {
    if (s.agents.empty()) return;
    const auto& w = *s.world;
    const auto& g = w.grid;
    const auto& cfg = s.config;
    std::vector<double> utility_sum(g.size(), 0.0);
    std::vector<int> occupancy(g.size(), 0);
    std::vector<int> community(g.size(), 0);
    for (const auto& a : s.agents) {
        const auto i = g.index(a.coord);
        utility_sum[i] += a.utility;
        ++occupancy[i];
        community[i] += a.kind == AgentKind::CommunityMember;
    }
    const std::vector<std::int64_t> garbage_snapshot = s.garbage.in_place;
    const PenaltyParams penalty{cfg.dynamics.rho, cfg.dynamics.epsilon0};

    std::vector<std::size_t> order(s.agents.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    s.rng.shuffle(std::span<std::size_t>(order));

    for (std::size_t k : order) {
        Agent& a = s.agents[k];
        const Coord before = a.coord;
        StepOutcome outcome;
        switch (a.kind) {
        case AgentKind::Resident:
            resident_walk(a, g, cfg.dynamics.resident_range, s.rng);
            break;
        case AgentKind::Visitor:
            outcome = step_agent(a, g, w.hotspot_dist, cfg.dynamics.dwell_p, s.rng);
            if (outcome.arrived) a.carrying_litter = true;
            break;
        case AgentKind::CommunityMember:
            if (cfg.park.community_mode == CommunityMode::Patrol)
                outcome = step_agent(a, g, w.hotspot_dist, cfg.dynamics.dwell_p, s.rng);
            break;
        }
        if (a.coord != before) {
            --occupancy[g.index(before)];
            ++occupancy[g.index(a.coord)];
            if (a.kind == AgentKind::CommunityMember) {
                --community[g.index(before)];
                ++community[g.index(a.coord)];
            }
        }

        const double f = crowding_penalty(a.coord, g.width, g.height, utility_sum, garbage_snapshot, penalty);
        a.utility = agent_utility(a.coord, s.field, f);

        if (a.kind == AgentKind::Visitor && a.carrying_litter && outcome.dwell_tick) {
            const int nearby = count_within(occupancy, g, a.coord, cfg.waste.warn_radius) - 1;
            const bool warned = count_within(community, g, a.coord, cfg.waste.community_radius) > 0;
            if (visitor_litter_decision(nearby, warned, s.rng, cfg.waste)) {
                const auto cell = g.index(a.coord);
                if (cfg.waste.riverside_drift && w.features.dist_to_river[cell] == 1)
                    s.garbage.dump_river(static_cast<std::size_t>(w.features.nearest_river[cell]));
                else
                    s.garbage.litter(cell);
                a.carrying_litter = false;
                ++s.littering_this_tick;
            }
        }
        if (a.kind == AgentKind::CommunityMember)
            community_cleanup(a.coord, g, s.garbage, cfg.waste.cleanup_capacity);
    }
    s.littering_total += s.littering_this_tick;
}

} // namespace

SimState init_scenario(const SimConfig& config, std::shared_ptr<const World> world) {
    config.validate();
    if (!world) throw ConfigError("no world loaded");
    const auto& g = world->grid;
    if (world->river_cells == 0) throw ConfigError("map has no River cells; the dirtiness index is undefined");

    SimState s;
    s.world = world;
    s.config = config;
    s.scenario = config.scenario;
    s.rng = Rng(config.seed);
    s.field = ExcitementField::from_grid(g, config.dynamics.mu);
    s.settlement = Settlement(g.width, g.height, config.settlement.r_neighbor);
    s.garbage = GarbageField(g.size());

    if (config.scenario == Scenario::PrePark) {
        if (config.settlement.houses_per_tick == 0)
            build_houses(s, config.settlement.houses);
        else
            s.houses_pending = config.settlement.houses;
    } else {
        if (g.hotspots.empty()) throw ConfigError("park scenario needs at least one hotspot");
        if (config.park.start == ParkStart::Demolish) build_houses(s, config.settlement.houses);
        transition_to_park(s);
    }
    s.metrics.push_back(measure(s));
    return s;
}

void transition_to_park(SimState& s) {
    const auto& w = *s.world;
    const auto& g = w.grid;
    if (g.hotspots.empty()) throw ConfigError("park scenario needs at least one hotspot");

    demolish_all(s.settlement, s.garbage, s.config.settlement.demolition_clears_garbage);
    std::erase_if(s.agents, [](const Agent& a) { return a.kind == AgentKind::Resident; });
    s.houses_pending = 0;
    s.scenario = Scenario::Park;

    if (!s.config.park.entrances.empty()) {
        s.spawn_cells.clear();
        for (Coord e : s.config.park.entrances) {
            if (!g.in_bounds(e) || !walkable(g.at(e)))
                throw ConfigError(fmt::format("park.entrances: ({}, {}) is not a walkable cell", e.x, e.y),
                                  "park.entrances");
            s.spawn_cells.push_back(e);
        }
    } else {
        s.spawn_cells = w.edge_spawns;
    }
    const bool needs_spawns = s.config.park.visitor_spawn_rate > 0.0 || s.config.park.initial_visitors > 0;
    if (needs_spawns && s.spawn_cells.empty())
        throw ConfigError("park scenario has no walkable edge cell connected to a hotspot");

    for (int i = 0; i < s.config.park.n_community; ++i) {
        Agent a;
        a.id = s.next_agent_id++;
        a.kind = AgentKind::CommunityMember;
        a.coord = g.hotspots[static_cast<std::size_t>(i) % g.hotspots.size()].coord;
        a.home = a.coord;
        a.spawn_tick = s.tick;
        s.agents.push_back(a);
    }
    for (int i = 0; i < s.config.park.initial_visitors; ++i) spawn_visitor(s);
}

void step(SimState& s) {
    const auto& w = *s.world;
    const auto& g = w.grid;
    const auto& cfg = s.config;
    ++s.tick;
    s.littering_this_tick = 0;

    // 1. excitement
    diffuse_excitement(s.field);

    // 2. population
    if (s.scenario == Scenario::Park) {
        const long limit = cfg.park.visit_length;
        std::erase_if(s.agents, [&](const Agent& a) {
            return a.kind == AgentKind::Visitor && s.tick - a.spawn_tick >= limit;
        });
        const double rate = cfg.park.visitor_spawn_rate;
        const double whole = std::floor(rate);
        int arrivals = static_cast<int>(whole);
        if (rate > whole && s.rng.bernoulli(rate - whole)) ++arrivals;
        for (int i = 0; i < arrivals; ++i) spawn_visitor(s);
    } else if (s.houses_pending > 0) {
        const int before = static_cast<int>(s.settlement.houses.size());
        build_houses(s, std::min(s.houses_pending, cfg.settlement.houses_per_tick));
        const int built = static_cast<int>(s.settlement.houses.size()) - before;
        s.houses_pending = built == 0 ? 0 : s.houses_pending - built;
    }

    // 3. agents
    try {
        act_agents(s);
    } catch (const InvariantViolation& e) {
        if (e.tick() >= 0) throw;
        throw InvariantViolation(s.tick, e.detail());
    }

    // 4. domestic waste
    generate_domestic_waste(s.settlement.houses, s.garbage, g, w.features, s.rng, cfg.waste);
    if (cfg.waste.advect_river) advect_river(s.garbage, g);

    // 5. audit + metrics
    check_invariants(s);
    s.metrics.push_back(measure(s));
}

MetricsRow measure(const SimState& s) {
    MetricsRow r;
    r.tick = s.tick;
    r.population = static_cast<std::int64_t>(s.agents.size());
    r.n_houses = static_cast<std::int64_t>(s.settlement.houses.size());
    r.total_in_place = s.garbage.in_place_total;
    r.river_total = s.garbage.river_total;
    r.collected_total = s.garbage.collected_total;
    r.dirtiness = dirtiness_index(s.garbage, s.world->river_cells);
    r.garbage_per_capita = static_cast<double>(r.total_in_place + r.river_total) /
                           static_cast<double>(std::max<std::int64_t>(r.population, 1));
    r.littering_events = s.littering_this_tick;
    return r;
}

std::string render_frame(const SimState& s) {
    const auto& g = s.world->grid;
    const auto& legend = s.config.legend;
    std::string out;
    out.reserve(g.size() + static_cast<std::size_t>(g.height));
    std::vector<std::uint8_t> has_agent(g.size(), 0);
    for (const auto& a : s.agents) has_agent[g.index(a.coord)] = 1;
    std::vector<std::uint8_t> is_hotspot(g.size(), 0);
    for (const auto& h : g.hotspots) is_hotspot[g.index(h.coord)] = 1;

    for (std::size_t i = 0; i < g.size(); ++i) {
        char ch = legend.encode(g.cells[i]);
        if (is_hotspot[i]) ch = legend.hotspot;
        if (g.forced_branch[i]) ch = legend.branch;
        if (s.garbage.in_place[i] > 0) ch = static_cast<char>('0' + std::min<std::int64_t>(s.garbage.in_place[i], 9));
        if (s.settlement.occupied[i]) ch = 'h';
        if (has_agent[i]) ch = 'A';
        out.push_back(ch);
        if ((i + 1) % static_cast<std::size_t>(g.width) == 0) out.push_back('\n');
    }
    return out;
}

std::vector<MetricsRow> run(const SimConfig& config, std::shared_ptr<const World> world, const FrameSink& frames) {
    SimState s = init_scenario(config, std::move(world));
    const bool emit = frames && config.frame_every > 0;
    if (emit) frames(0, render_frame(s));
    for (int t = 0; t < config.ticks; ++t) {
        step(s);
        if (emit && s.tick % config.frame_every == 0) frames(s.tick, render_frame(s));
    }
    return std::move(s.metrics);
}

} // namespace riverside
