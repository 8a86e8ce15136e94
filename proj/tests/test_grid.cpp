#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "berge/grid.hpp"
#include "berge/rng.hpp"

using namespace berge;

TEST_CASE("build_grid lays out uniform lattices with exact endpoints") {
    GridPtr g = build_grid({{0.0, 1.0}}, {3});
    REQUIRE(g->size() == 3);
    CHECK(g->point(0) == std::vector<double>{0.0});
    CHECK(g->point(1) == std::vector<double>{0.5});
    CHECK(g->point(2) == std::vector<double>{1.0});

    GridPtr corners = build_grid({{-1.0, 1.0}, {0.0, 2.0}}, {2, 2});
    REQUIRE(corners->size() == 4);
    CHECK(corners->point(0) == std::vector<double>{-1.0, 0.0});
    CHECK(corners->point(3) == std::vector<double>{1.0, 2.0});

    CHECK_THROWS_AS(build_grid({{1.0, 1.0}}, {2}), InvalidWindow);
    CHECK_THROWS_AS(build_grid({{0.0, 1.0}}, {1}), InvalidWindow);
    CHECK_THROWS_AS(build_grid({{1.0, 0.0}}, {3}), InvalidWindow);
}

TEST_CASE("point indexing is lexicographic and invertible") {
    GridPtr g = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {3, 4});
    std::vector<double> prev;
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(g->flatten(g->unflatten(i)) == i);
        std::vector<double> p = g->point(i);
        if (!prev.empty()) CHECK(prev < p);  // index order = coordinate lex order
        prev = p;
        CHECK(g->nearest(p) == i);
    }
}

TEST_CASE("neighbors matches brute-force distance enumeration") {
    GridPtr g1 = build_grid({{0.0, 1.0}}, {3});
    CHECK(neighbors(*g1, 1, 0.5) == std::vector<std::size_t>{0, 2});
    CHECK(neighbors(*g1, 0, 0.4).empty());

    GridPtr g2 = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {2, 2});
    // corners of the unit square: two at distance 1, the diagonal at sqrt 2
    std::vector<std::size_t> expected;
    for (std::size_t q = 0; q < g2->size(); ++q)
        if (q != 0 && g2->distance(0, q) <= 1.0) expected.push_back(q);
    CHECK(expected == std::vector<std::size_t>{1, 2});
    CHECK(neighbors(*g2, 0, 1.0) == expected);

    // randomized agreement with the brute-force oracle
    std::mt19937_64 rng(3);
    GridPtr g = build_grid({{-1.0, 2.0}, {0.0, 1.0}}, {5, 4});
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t p = uniform_below(rng, g->size());
        double delta = 0.1 + uniform_unit(rng) * 2.0;
        std::vector<std::size_t> brute;
        for (std::size_t q = 0; q < g->size(); ++q)
            if (q != p && g->distance(p, q) <= delta * (1.0 + 1e-12)) brute.push_back(q);
        CHECK(neighbors(*g, p, delta) == brute);
    }
}

TEST_CASE("neighbors is symmetric") {
    GridPtr g = build_grid({{0.0, 1.0}, {0.0, 2.0}}, {4, 5});
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t p = uniform_below(rng, g->size());
        double delta = 0.2 + uniform_unit(rng);
        for (std::size_t q : neighbors(*g, p, delta)) {
            std::vector<std::size_t> back = neighbors(*g, q, delta);
            CHECK(std::find(back.begin(), back.end(), p) != back.end());
        }
    }
}

TEST_CASE("compact windows enumerate their boxes in order") {
    GridPtr g = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {4, 4});
    CompactWindow w(g, {1, 1}, {2, 3});
    std::vector<std::size_t> idx = w.indices();
    CHECK(idx.size() == w.size());
    CHECK(w.size() == 6);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    for (std::size_t i : idx) CHECK(w.contains(i));
    CHECK_FALSE(w.contains(0));
    CHECK_THROWS_AS(CompactWindow(g, {2, 0}, {1, 3}), InvalidWindow);
    CHECK_THROWS_AS(CompactWindow(g, {0, 0}, {0, 4}), InvalidWindow);
}

TEST_CASE("generated paths honor the stated guarantees") {
    GridPtr g = build_grid({{0.0, 1.0}}, {3});

    auto paths = generate_paths(g, 1, 3, 1, 0);
    bool has_constant = false;
    for (const SequencePath& p : paths)
        if (p.points == std::vector<std::size_t>{1, 1, 1}) has_constant = true;
    CHECK(has_constant);

    // single-step axis approach toward the upper endpoint
    auto paths2 = generate_paths(g, 2, 2, 1, 0);
    bool has_step = false;
    for (const SequencePath& p : paths2)
        if (p.points == std::vector<std::size_t>{1, 2}) has_step = true;
    CHECK(has_step);

    CHECK_THROWS_AS(generate_paths(g, 1, 1, 1, 0), Error);
}

TEST_CASE("paths are deterministic per seed and always valid") {
    GridPtr g = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {5, 5});
    auto a = generate_paths(g, 12, 6, 10, 42);
    auto b = generate_paths(g, 12, 6, 10, 42);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() >= 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].points == b[i].points);
        CHECK(a[i].limit == b[i].limit);
        validate_path(*g, a[i]);
        // final point within one mesh width of the limit
        CHECK(g->distance(a[i].points.back(), a[i].limit) <= g->mesh_width() * (1.0 + 1e-9));
    }
    auto c = generate_paths(g, 12, 6, 10, 43);
    bool differs = false;
    for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
        if (a[i].points != c[i].points) differs = true;
    CHECK(differs);
}

TEST_CASE("exhaustive probes cover every ordered mesh-adjacent pair") {
    GridPtr g = build_grid({{0.0, 1.0}}, {4});
    auto probes = exhaustive_probe_paths(g);
    std::set<std::pair<std::size_t, std::size_t>> covered;
    for (const SequencePath& p : probes) {
        validate_path(*g, p);
        covered.emplace(p.points.front(), p.limit);
    }
    for (std::size_t b = 0; b < g->size(); ++b) {
        CHECK(covered.count({b, b}));
        for (std::size_t a : neighbors(*g, b, g->mesh_width())) CHECK(covered.count({a, b}));
    }
}

TEST_CASE("boundary detection") {
    GridPtr g = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {3, 3});
    CHECK(g->on_boundary(0));
    CHECK(g->on_boundary(1));   // edge midpoint
    CHECK_FALSE(g->on_boundary(4));  // center
}
