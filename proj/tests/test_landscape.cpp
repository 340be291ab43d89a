#include "support.hpp"

#include "riverside/landscape.hpp"
#include "riverside/rng.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace riverside;
using namespace riverside::testing;

TEST_CASE("uniform buildable grid loads flat with no streams") {
    const auto g = grid_from("...\n...\n...\n");
    CHECK(g.width == 3);
    CHECK(g.height == 3);
    CHECK(g.size() == 9);
    for (auto c : g.cells) CHECK(c == TerrainClass::Buildable);
    for (double e : g.elevation) CHECK(e == 0.0);
    CHECK(g.stream_count == 0);
    CHECK(g.hotspots.empty());
}

TEST_CASE("single river column gets one stream id") {
    const auto g = grid_from(".~.\n.~.\n.~.\n");
    CHECK(g.stream_count == 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const bool river = g.coord(i).x == 1;
        CHECK((g.stream_labels[i] != 0) == river);
        if (river) CHECK(g.stream_labels[i] == 1);
    }
}

TEST_CASE("separated river regions get distinct ids matching a brute-force partition") {
    const auto g = grid_from("~..~\n~..~\n...~\n~~..\n");
    CHECK(g.stream_count == 3);
    CHECK(label_partition(g) == brute_components(g));
}

TEST_CASE("stream labelling agrees with union-find on random maps") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = 1 + static_cast<int>(rng.below(15)), h = 1 + static_cast<int>(rng.below(15));
        std::string rows;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) rows += rng.bernoulli(0.35) ? '~' : '.';
            rows += '\n';
        }
        const auto g = grid_from(rows);
        CHECK(label_partition(g) == brute_components(g));
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.stream_labels[i] != 0) CHECK(g.cells[i] == TerrainClass::River);
    }
}

TEST_CASE("default legend decodes every documented character") {
    const auto g = grid_from("~r=.dtp#HB\n");
    const TerrainClass expected[] = {TerrainClass::River,    TerrainClass::Riverbank, TerrainClass::Road,
                                     TerrainClass::Buildable, TerrainClass::Delta,    TerrainClass::Trees,
                                     TerrainClass::ParkPath, TerrainClass::Obstacle,  TerrainClass::ParkPath,
                                     TerrainClass::River};
    for (int x = 0; x < 10; ++x) CHECK(g.at({x, 0}) == expected[x]);
    REQUIRE(g.hotspots.size() == 1);
    CHECK(g.hotspots[0].coord == Coord{8, 0});
    CHECK(g.forced_branch[g.index({9, 0})] == 1);
}

TEST_CASE("legend can be overridden") {
    Legend legend;
    legend.river = 'W';
    std::istringstream t("W.\n");
    const auto g = load_terrain(t, nullptr, legend, {});
    CHECK(g.at({0, 0}) == TerrainClass::River);
    std::istringstream bad("~.\n");
    CHECK_THROWS_AS(load_terrain(bad, nullptr, legend, {}), LegendError);
}

TEST_CASE("loader errors name the problem") {
    SUBCASE("ragged rows") {
        try {
            grid_from("...\n..\n...\n");
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find("row 1") != std::string::npos);
        }
    }
    SUBCASE("unknown character") {
        try {
            grid_from("...\n.X.\n");
            FAIL("expected LegendError");
        } catch (const LegendError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("'X'") != std::string::npos);
            CHECK(msg.find("(1, 1)") != std::string::npos);
        }
    }
    SUBCASE("elevation shape mismatch") {
        CHECK_THROWS_AS(grid_from("..\n..\n", {}, "1 2\n3\n"), ShapeError);
        CHECK_THROWS_AS(grid_from("..\n..\n", {}, "1 2\n"), ShapeError);
        CHECK_THROWS_AS(grid_from("..\n..\n", {}, "1 2 3\n4 5 6\n"), ShapeError);
    }
    SUBCASE("non-numeric elevation") { CHECK_THROWS_AS(grid_from("..\n", {}, "1 x\n"), FormatError); }
    SUBCASE("empty grid") { CHECK_THROWS_AS(grid_from(""), FormatError); }
}

TEST_CASE("elevation is read row-major and CRLF is tolerated") {
    const auto g = grid_from("..\r\n..\r\n", {}, "1 2\r\n3.5 -4\r\n");
    CHECK(g.elevation_at({0, 0}) == 1.0);
    CHECK(g.elevation_at({1, 0}) == 2.0);
    CHECK(g.elevation_at({0, 1}) == 3.5);
    CHECK(g.elevation_at({1, 1}) == -4.0);
}

TEST_CASE("loading is a pure function of the input bytes") {
    std::ifstream a(data_path("riverbank.map")), ae(data_path("riverbank.elev"));
    std::ifstream b(data_path("riverbank.map")), be(data_path("riverbank.elev"));
    const auto g1 = load_terrain(a, &ae, Legend{}, {});
    const auto g2 = load_terrain(b, &be, Legend{}, {});
    CHECK(g1.cells == g2.cells);
    CHECK(g1.elevation == g2.elevation);
    CHECK(g1.stream_labels == g2.stream_labels);
    CHECK(g1.hotspots.size() == g2.hotspots.size());
}

TEST_CASE("walkability by class") {
    CHECK(walkable(TerrainClass::Road));
    CHECK(walkable(TerrainClass::Buildable));
    CHECK(walkable(TerrainClass::ParkPath));
    CHECK(walkable(TerrainClass::Riverbank));
    CHECK(walkable(TerrainClass::Delta));
    CHECK_FALSE(walkable(TerrainClass::River));
    CHECK_FALSE(walkable(TerrainClass::Trees));
    CHECK_FALSE(walkable(TerrainClass::Obstacle));
}

TEST_CASE("neighbors8 counts and order") {
    CHECK(neighbors8({2, 2}, 5, 5).size() == 8);
    CHECK(neighbors8({0, 0}, 5, 5).size() == 3);
    CHECK(neighbors8({0, 2}, 5, 5).size() == 5);
    CHECK(neighbors8({2, 0}, 5, 5).size() == 5);

    const auto n = neighbors8({2, 2}, 5, 5);
    const Coord expected[] = {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {3, 2}, {1, 3}, {2, 3}, {3, 3}};
    for (std::size_t i = 0; i < 8; ++i) CHECK(n[i] == expected[i]);

    CHECK_THROWS_AS(neighbors8({5, 0}, 5, 5), ContractViolation);
    CHECK_THROWS_AS(neighbors8({-1, 0}, 5, 5), ContractViolation);
}

TEST_CASE("neighbors8 size is between 3 and 8 on every cell") {
    for (int w = 2; w <= 6; ++w)
        for (int h = 2; h <= 6; ++h)
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const auto n = neighbors8({x, y}, w, h);
                    CHECK(n.size() >= 3);
                    CHECK(n.size() <= 8);
                    const bool interior = x > 0 && y > 0 && x < w - 1 && y < h - 1;
                    if (interior) CHECK(n.size() == 8);
                }
}

TEST_CASE("diagonal steps cannot slip between two blocked cells") {
    const auto g = grid_from(".~\n~.\n");
    CHECK_FALSE(can_step(g, {0, 0}, {1, 1}));
    const auto open = grid_from("..\n~.\n");
    CHECK(can_step(open, {0, 0}, {1, 1}));
    CHECK_FALSE(can_step(open, {0, 0}, {0, 1}));
}

TEST_CASE("river-free map yields unreachable distances and empty masks") {
    const auto g = grid_from("...\n...\n");
    const auto f = compute_river_features(g, {});
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(f.dist_to_river[i] == kUnreachable);
        CHECK(f.between_streams[i] == 0);
        CHECK(f.branch_proximity[i] == 0);
        CHECK(f.below_river[i] == 0);
    }
}

TEST_CASE("dist_to_river matches exhaustive Chebyshev minimum on random grids up to 20x20") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int w = 1 + static_cast<int>(rng.below(20)), h = 1 + static_cast<int>(rng.below(20));
        std::string rows;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) rows += rng.bernoulli(0.08) ? '~' : '.';
            rows += '\n';
        }
        const auto g = grid_from(rows);
        const auto f = compute_river_features(g, {});
        const auto oracle = brute_dist_to_river(g);
        CHECK(f.dist_to_river == oracle);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK((f.dist_to_river[i] == 0) == (g.cells[i] == TerrainClass::River));
            if (f.nearest_river[i] >= 0)
                CHECK(chebyshev(g.coord(i), g.coord(static_cast<std::size_t>(f.nearest_river[i]))) == oracle[i]);
        }
    }
}

TEST_CASE("between_streams on two parallel streams four cells apart") {
    // Streams at x = 1 and x = 5 on a 7x7 map, d_streams = 3. By hand: a
    // column is within 3 of both streams iff 5 - 3 <= x <= 1 + 3, i.e. x in
    // {2, 3, 4}; the window-scan oracle must agree.
    std::string rows;
    for (int y = 0; y < 7; ++y) rows += ".~...~.\n";
    LandscapeParams p;
    p.d_streams = 3;
    const auto g = grid_from(rows, p);
    REQUIRE(g.stream_count == 2);
    const auto f = compute_river_features(g, p);
    CHECK(f.between_streams == brute_between_streams(g, 3));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int x = g.coord(i).x;
        CHECK(static_cast<bool>(f.between_streams[i]) == (x >= 2 && x <= 4));
    }
}

TEST_CASE("between_streams implies two distinct stream ids in reach (random maps)") {
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = 3 + static_cast<int>(rng.below(14)), h = 3 + static_cast<int>(rng.below(14));
        std::string rows;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) rows += rng.bernoulli(0.12) ? '~' : '.';
            rows += '\n';
        }
        LandscapeParams p;
        p.d_streams = 1 + static_cast<int>(rng.below(4));
        const auto g = grid_from(rows, p);
        const auto f = compute_river_features(g, p);
        CHECK(f.between_streams == brute_between_streams(g, p.d_streams));
    }
}

TEST_CASE("branch detection") {
    SUBCASE("straight single stream has no branch cells") {
        const auto g = grid_from("..~..\n..~..\n..~..\n..~..\n");
        const auto f = compute_river_features(g, {});
        for (auto b : f.branch_cell) CHECK(b == 0);
        for (auto b : f.branch_proximity) CHECK(b == 0);
    }
    SUBCASE("a T junction is a branch and marks cells within d_branch") {
        const auto g = grid_from("..~....\n..~....\n..~~~~~\n..~....\n..~....\n");
        LandscapeParams p;
        p.d_branch = 1;
        const auto f = compute_river_features(g, p);
        CHECK(f.branch_cell[g.index({2, 2})] == 1);
        int branches = 0;
        for (auto b : f.branch_cell) branches += b;
        CHECK(branches == 1);
        CHECK(f.branch_proximity[g.index({1, 1})] == 1);
        CHECK(f.branch_proximity[g.index({0, 2})] == 0);
    }
    SUBCASE("explicit branch markers override detection") {
        const auto g = grid_from("..~....\n..~....\n..~~~~~\n..~....\nB.~....\n");
        LandscapeParams p;
        p.d_branch = 0;
        const auto f = compute_river_features(g, p);
        CHECK(f.branch_cell[g.index({2, 2})] == 0);
        CHECK(f.branch_cell[g.index({0, 4})] == 1);
        CHECK(f.branch_proximity[g.index({0, 4})] == 1);
    }
    SUBCASE("detection can be switched off") {
        LandscapeParams p;
        p.detect_branches = false;
        const auto g = grid_from("..~....\n..~....\n..~~~~~\n..~....\n..~....\n", p);
        const auto f = compute_river_features(g, p);
        for (auto b : f.branch_cell) CHECK(b == 0);
    }
}

TEST_CASE("below_river compares against the nearest river cell, ties false") {
    const auto g = grid_from("...~...\n", {}, "3 1 2 2 2 5 1\n");
    const auto f = compute_river_features(g, {});
    const std::uint8_t expected[] = {0, 1, 0, 0, 0, 0, 1};
    for (int x = 0; x < 7; ++x) CHECK(f.below_river[g.index({x, 0})] == expected[x]);
}

TEST_CASE("default fixture exercises every river rule") {
    const auto w = default_world();
    const auto& g = w->grid;
    CHECK(g.width == 200);
    CHECK(g.height == 200);
    CHECK(g.stream_count == 2);
    CHECK(g.hotspots.size() == 7);
    int branches = 0, between = 0, below = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        branches += w->features.branch_cell[i];
        between += w->features.between_streams[i];
        below += w->features.below_river[i];
    }
    CHECK(branches == 1);
    CHECK(between > 0);
    CHECK(below > 0);
}
