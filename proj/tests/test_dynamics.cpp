#include "support.hpp"

#include "riverside/dynamics.hpp"
#include "riverside/rng.hpp"

#include <doctest.h>

using namespace riverside;
using namespace riverside::testing;

namespace {

std::vector<std::int64_t> no_garbage(const TerrainGrid& g) { return std::vector<std::int64_t>(g.size(), 0); }

std::vector<Hotspot> hotspots_with(std::initializer_list<double> bases) {
    std::vector<Hotspot> hs;
    int x = 0;
    for (double b : bases) hs.push_back({{x++, 0}, b, "h"});
    return hs;
}

// Pearson chi-square with df = counts.size() - 1, against equal expectations.
double chi_square(const std::vector<int>& counts, const std::vector<double>& probs) {
    int n = 0;
    for (int c : counts) n += c;
    double x2 = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double e = n * probs[i];
        x2 += (counts[i] - e) * (counts[i] - e) / e;
    }
    return x2;
}

} // namespace

TEST_CASE("crowding penalty examples") {
    const auto g = grid_from("...\n...\n...\n");
    auto garbage = no_garbage(g);
    std::vector<double> utility(g.size(), 0.0);

    CHECK(crowding_penalty({1, 1}, 3, 3, utility, garbage, {0.1, 0.05}) == 0.0);

    garbage[g.index({0, 0})] = 1;
    garbage[g.index({1, 1})] = 2;
    garbage[g.index({2, 2})] = 1;
    CHECK(crowding_penalty({1, 1}, 3, 3, utility, garbage, {0.0, 0.05}) == doctest::Approx(0.2).epsilon(1e-12));

    garbage = no_garbage(g);
    utility[g.index({2, 1})] = 0.8;
    CHECK(crowding_penalty({1, 1}, 3, 3, utility, garbage, {1.0, 0.0}) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("crowding penalty from agents equals the per-cell form") {
    const auto g = grid_from(".....\n.....\n.....\n.....\n");
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Agent> agents;
        std::vector<double> utility(g.size(), 0.0);
        for (int k = 0; k < 6; ++k) {
            Agent a;
            a.id = static_cast<std::uint64_t>(k);
            a.coord = g.coord(static_cast<std::size_t>(rng.below(g.size())));
            a.utility = rng.uniform();
            utility[g.index(a.coord)] += a.utility;
            agents.push_back(a);
        }
        auto garbage = no_garbage(g);
        for (auto& v : garbage) v = static_cast<std::int64_t>(rng.below(3));
        const Coord c = g.coord(static_cast<std::size_t>(rng.below(g.size())));
        const PenaltyParams pp{0.3, 0.05};
        CHECK(crowding_penalty(c, g.width, g.height, agents, garbage, pp) ==
              doctest::Approx(crowding_penalty(c, g.width, g.height, utility, garbage, pp)).epsilon(1e-12));
    }
}

TEST_CASE("utility examples") {
    const auto g = grid_from("...\n...\n...\n");
    auto field = ExcitementField::from_grid(g, 0.9);
    CHECK(agent_utility({1, 1}, field, 0.0) == 0.0);
    for (double& v : field.p) v = 0.8;
    field.p[g.index({1, 1})] = 0.0;
    CHECK(agent_utility({1, 1}, field, 0.1) == doctest::Approx(0.7).epsilon(1e-12));

    for (double& v : field.p) v = 0.8;
    CHECK(agent_utility({0, 0}, field, 0.0) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("utility is monotone in each neighbour's excitement") {
    const auto g = grid_from("....\n....\n....\n....\n");
    Rng rng(12);
    auto field = ExcitementField::from_grid(g, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
        for (double& v : field.p) v = rng.uniform();
        const Coord c = g.coord(static_cast<std::size_t>(rng.below(g.size())));
        const double before = agent_utility(c, field, 0.0);
        const auto ns = neighbors8(c, g);
        const Coord n = ns[static_cast<std::size_t>(rng.below(ns.size()))];
        field.p[g.index(n)] += rng.uniform();
        CHECK(agent_utility(c, field, 0.0) >= before);
    }
}

TEST_CASE("hotspot choice") {
    Rng rng(100);
    SUBCASE("two equal hotspots split evenly") {
        const auto hs = hotspots_with({1, 1});
        std::vector<int> counts(2, 0);
        for (int i = 0; i < 10000; ++i) ++counts[choose_next_hotspot(hs, std::nullopt, rng)];
        // chi-square, df = 1, p = 0.01 critical value 6.635
        CHECK(chi_square(counts, {0.5, 0.5}) < 6.635);
    }
    SUBCASE("single hotspot is always chosen") {
        const auto hs = hotspots_with({3});
        for (int i = 0; i < 100; ++i) CHECK(choose_next_hotspot(hs, std::size_t{0}, rng) == 0);
    }
    SUBCASE("excluding the middle of (1, 2, 1) leaves a 1:1 split") {
        const auto hs = hotspots_with({1, 2, 1});
        std::vector<int> counts(3, 0);
        for (int i = 0; i < 10000; ++i) ++counts[choose_next_hotspot(hs, std::size_t{1}, rng)];
        CHECK(counts[1] == 0);
        CHECK(chi_square({counts[0], counts[2]}, {0.5, 0.5}) < 6.635);
    }
    SUBCASE("weights follow base excitement") {
        const auto hs = hotspots_with({1, 2, 1});
        std::vector<int> counts(3, 0);
        for (int i = 0; i < 20000; ++i) ++counts[choose_next_hotspot(hs, std::nullopt, rng)];
        // df = 2, p = 0.01 critical value 9.210
        CHECK(chi_square(counts, {0.25, 0.5, 0.25}) < 9.210);
    }
    SUBCASE("no hotspots is a configuration error") {
        CHECK_THROWS_AS(choose_next_hotspot(std::vector<Hotspot>{}, std::nullopt, rng), ConfigError);
    }
}

TEST_CASE("agent adjacent to its target arrives in one tick") {
    const auto g = grid_from(".H.\n...\n");
    const auto dist = std::vector<std::vector<int>>{walk_distance(g, g.hotspots[0].coord)};
    Agent a;
    a.coord = {0, 1};
    Rng rng(1);
    const auto out = step_agent(a, g, dist, 0.25, rng);
    CHECK(out.arrived);
    CHECK(a.coord == Coord{1, 0});
}

TEST_CASE("agent on a straight corridor arrives in exactly k ticks") {
    for (int k = 1; k <= 12; ++k) {
        const std::string wall(static_cast<std::size_t>(k + 1), '#');
        const std::string corridor = "H" + std::string(static_cast<std::size_t>(k), '.');
        const auto g = grid_from(wall + "\n" + corridor + "\n" + wall + "\n");
        const auto dist = std::vector<std::vector<int>>{walk_distance(g, g.hotspots[0].coord)};
        Agent a;
        a.coord = {k, 1};
        Rng rng(static_cast<std::uint64_t>(k));
        int ticks = 0;
        while (a.coord != g.hotspots[0].coord) {
            const int before = dist[0][g.index(a.coord)];
            step_agent(a, g, dist, 0.25, rng);
            CHECK(dist[0][g.index(a.coord)] == before - 1);
            ++ticks;
            REQUIRE(ticks <= k);
        }
        CHECK(ticks == k);
    }
}

TEST_CASE("unreachable target is resampled and the agent stays on walkable cells") {
    const auto g = grid_from("H.#..\n..#.H\n");
    const auto dist = std::vector<std::vector<int>>{walk_distance(g, g.hotspots[0].coord),
                                                    walk_distance(g, g.hotspots[1].coord)};
    Agent a;
    a.coord = {0, 1};
    a.target = 1;
    Rng rng(3);
    const auto out = step_agent(a, g, dist, 0.25, rng);
    CHECK(out.resampled);
    CHECK_FALSE(out.moved);
    CHECK(a.target == std::size_t{0});
    for (int t = 0; t < 100; ++t) {
        step_agent(a, g, dist, 0.25, rng);
        CHECK(walkable(g.at(a.coord)));
        CHECK(a.coord.x < 2);
    }
}

TEST_CASE("dwell lasts a geometric number of ticks and then releases the target") {
    const auto g = grid_from("H..H\n");
    const auto dist = std::vector<std::vector<int>>{walk_distance(g, {0, 0}), walk_distance(g, {3, 0})};
    Rng rng(77);
    long total_dwell = 0;
    int visits = 0;
    Agent a;
    a.coord = {0, 0};
    a.target = 0;
    for (int t = 0; t < 20000; ++t) {
        const auto out = step_agent(a, g, dist, 0.25, rng);
        total_dwell += out.dwell_tick;
        visits += out.finished_dwell;
        if (out.finished_dwell) CHECK_FALSE(a.target.has_value());
    }
    REQUIRE(visits > 100);
    // mean of geometric(0.25) on {1, 2, ...} is 4
    CHECK(static_cast<double>(total_dwell) / visits == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("walk distance to the target never increases except when resampling") {
    const auto w = default_world();
    Rng rng(31);
    std::vector<Agent> agents(20);
    for (std::size_t i = 0; i < agents.size(); ++i) agents[i].coord = w->edge_spawns[rng.below(w->edge_spawns.size())];
    for (int t = 0; t < 500; ++t) {
        for (auto& a : agents) {
            const auto prev_target = a.target;
            const int before = prev_target ? w->hotspot_dist[*prev_target][w->grid.index(a.coord)] : 0;
            const auto out = step_agent(a, w->grid, w->hotspot_dist, 0.25, rng);
            REQUIRE(walkable(w->grid.at(a.coord)));
            if (prev_target && a.target == prev_target && !out.resampled)
                CHECK(w->hotspot_dist[*a.target][w->grid.index(a.coord)] <= before);
        }
    }
}

TEST_CASE("agent on a non-walkable cell halts") {
    const auto g = grid_from("H~\n");
    const auto dist = std::vector<std::vector<int>>{walk_distance(g, {0, 0})};
    Agent a;
    a.coord = {1, 0};
    Rng rng(1);
    CHECK_THROWS_AS(step_agent(a, g, dist, 0.25, rng), InvariantViolation);
}

TEST_CASE("residents stay within range of home") {
    const auto g = grid_from(std::string(10, '.') + "\n" + std::string(10, '.') + "\n" + std::string(10, '.') + "\n" +
                             std::string(10, '.') + "\n");
    Agent a;
    a.kind = AgentKind::Resident;
    a.home = a.coord = {5, 2};
    Rng rng(6);
    for (int t = 0; t < 1000; ++t) {
        resident_walk(a, g, 2, rng);
        CHECK(chebyshev(a.coord, a.home) <= 2);
    }
}
