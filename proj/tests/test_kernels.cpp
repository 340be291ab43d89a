#include "support.hpp"

#include "riverside/dynamics.hpp"
#include "riverside/kernels.hpp"
#include "riverside/rng.hpp"
#include "riverside/settlement.hpp"

#include <doctest.h>

#include <cstring>

using namespace riverside;
using namespace riverside::testing;

namespace {

bool bit_identical(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct RandomField {
    int w, h;
    std::vector<double> p;
    std::vector<std::uint8_t> walk;
};

RandomField random_field(Rng& rng, int max_side, double blocked) {
    RandomField f;
    f.w = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_side)));
    f.h = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_side)));
    const auto n = static_cast<std::size_t>(f.w * f.h);
    f.p.resize(n);
    f.walk.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.walk[i] = !rng.bernoulli(blocked);
        f.p[i] = f.walk[i] ? rng.uniform() : 0.0;
    }
    return f;
}

} // namespace

TEST_CASE("serial and parallel diffusion are bit-identical") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_field(rng, 64, 0.2);
        std::vector<double> a(f.p.size()), b(f.p.size());
        kernels::diffuse_serial(f.p, a, f.w, f.h, f.walk, 0.9);
        kernels::diffuse_parallel(f.p, b, f.w, f.h, f.walk, 0.9);
        CHECK(bit_identical(a, b));
    }
}

TEST_CASE("diffusion kernel matches the brute-force reference") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = random_field(rng, 10, 0.15);
        const double mu = rng.uniform();
        std::vector<double> out(f.p.size());
        kernels::diffuse_serial(f.p, out, f.w, f.h, f.walk, mu);
        const auto ref = brute_diffuse(f.p, f.walk, f.w, f.h, mu, {});
        for (std::size_t i = 0; i < out.size(); ++i) CHECK(std::abs(out[i] - ref[i]) <= 1e-12);
    }
}

TEST_CASE("3x3 single source diffuses 0.0625 to each neighbour") {
    const auto g = grid_from("...\n.H.\n...\n");
    auto field = ExcitementField::from_grid(g, 0.5);
    diffuse_excitement(field, kernels::Exec::Serial);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.coord(i) == Coord{1, 1})
            CHECK(field.p[i] == 1.0);
        else
            CHECK(field.p[i] == 0.0625);
    }
}

TEST_CASE("diffusion fixed points and annihilation") {
    const auto g = grid_from("....\n....\n....\n");
    auto zero = ExcitementField::from_grid(g, 0.9);
    diffuse_excitement(zero);
    for (double v : zero.p) CHECK(v == 0.0);

    Rng rng(2);
    auto f = ExcitementField::from_grid(g, 0.0);
    for (double& v : f.p) v = rng.uniform();
    diffuse_excitement(f);
    for (double v : f.p) CHECK(v == 0.0);
}

TEST_CASE("diffusion rejects mismatched dimensions") {
    const auto g = grid_from("...\n...\n");
    auto f = ExcitementField::from_grid(g, 0.5);
    f.p.pop_back();
    CHECK_THROWS_AS(diffuse_excitement(f), ContractViolation);
}

TEST_CASE("sourceless diffusion contracts by mu in sup-norm") {
    Rng rng(8);
    for (double mu : {0.1, 0.5, 0.9, 1.0}) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto f = random_field(rng, 12, 0.1);
            std::vector<double> p = f.p;
            for (int t = 0; t < 20; ++t) {
                std::vector<double> next(p.size());
                kernels::diffuse_serial(p, next, f.w, f.h, f.walk, mu);
                CHECK(sup_norm(next) <= mu * sup_norm(p) + 1e-15);
                p.swap(next);
            }
        }
    }
}

TEST_CASE("excitement stays within [0, max source] on the default map") {
    const auto w = default_world();
    auto field = ExcitementField::from_grid(w->grid, 0.9);
    for (int t = 0; t < 200; ++t) {
        diffuse_excitement(field);
        for (double v : field.p) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
    for (std::size_t i = 0; i < w->grid.size(); ++i)
        if (!walkable(w->grid.cells[i])) CHECK(field.p[i] == 0.0);
}

TEST_CASE("site scoring serial and parallel agree exactly on the default map") {
    const auto w = default_world();
    Settlement s(w->grid.width, w->grid.height, w->sites.params.r_neighbor);
    Rng rng(4);
    grow_settlement(s, w->features, w->sites, 40, 0.3, 0, rng, kernels::Exec::Serial);
    std::vector<double> a, b;
    const auto band_a = top_band(w->features, w->sites, s, kernels::Exec::Serial, &a);
    const auto band_b = top_band(w->features, w->sites, s, kernels::Exec::Parallel, &b);
    CHECK(bit_identical(a, b));
    CHECK(band_a == band_b);
}

TEST_CASE("hotspot distances serial and parallel agree") {
    const auto w = default_world();
    CHECK(kernels::hotspot_distances_serial(w->grid) == kernels::hotspot_distances_parallel(w->grid));
    CHECK(kernels::hotspot_distances_serial(w->grid) == w->hotspot_dist);
}

TEST_CASE("hotspot walk distance is zero at the hotspot and respects walls") {
    const auto g = grid_from("H.#.\n..#.\n");
    const auto d = walk_distance(g, {0, 0});
    CHECK(d[g.index({0, 0})] == 0);
    CHECK(d[g.index({1, 1})] == 1);
    CHECK(d[g.index({3, 0})] == kUnreachable);
    CHECK(d[g.index({2, 0})] == kUnreachable);
}
