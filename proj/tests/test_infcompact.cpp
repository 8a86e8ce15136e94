#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "berge/extreal.hpp"
#include "berge/harness.hpp"
#include "berge/objective.hpp"
#include "berge/rng.hpp"
#include "berge/setmap.hpp"

using namespace berge;

namespace {

SetValuedMap full_map2(const GridPtr& xg, const GridPtr& yg) {
    std::vector<std::size_t> all(yg->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return SetValuedMap::tabulated(xg, yg,
                                   std::vector<std::vector<std::size_t>>(xg->size(), all));
}

Objective expr_objective(const std::string& text) {
    return Objective::from_expression(parse(text, 1, 1), 1, 1);
}

}  // namespace

TEST_CASE("level sets enumerate exactly") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {5});
    GridPtr yg = build_grid({{0.0, 1.0}}, {5});
    SetValuedMap map = full_map2(xg, yg);
    GraphSample domain = graph_sample(map, CompactWindow::whole(xg));

    Objective zero = expr_objective("0*x1 + 0*y1");
    CHECK(level_set(zero, -1.0, domain).members.empty());
    CHECK(level_set(zero, 0.0, domain).members.size() == domain.pairs.size());

    Objective sq = expr_objective("(y1 - x1)^2");
    LevelSet set = level_set(sq, 0.25, domain);
    // oracle: enumerate and compare |y - x| <= 0.5
    std::vector<std::pair<std::size_t, std::size_t>> expected;
    for (auto [xi, yi] : domain.pairs)
        if (std::abs(yg->point(yi)[0] - xg->point(xi)[0]) <= 0.5 + 1e-15)
            expected.emplace_back(xi, yi);
    CHECK(set.members == expected);
    CHECK_FALSE(set.members.empty());
    CHECK(set.members.size() < domain.pairs.size());
}

TEST_CASE("level sets grow with lambda") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = generate_instance(InstanceKind::RandomTabulated, {7, 7}, seed);
        GraphSample domain = graph_sample(inst.map, CompactWindow::whole(inst.map.x_grid()));
        LevelSet small = level_set(inst.u, 0.3, domain);
        LevelSet large = level_set(inst.u, 0.7, domain);
        for (const auto& p : small.members)
            CHECK(std::find(large.members.begin(), large.members.end(), p) !=
                  large.members.end());
    }
}

TEST_CASE("function lsc surrogate: continuity passes at the modulus bound") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {9});
    GridPtr yg = build_grid({{0.0, 1.0}}, {9});
    SetValuedMap map = full_map2(xg, yg);
    GraphSample domain = graph_sample(map, CompactWindow::whole(xg));
    Objective sq = expr_objective("(y1 - x1)^2");

    // 2 * diameter * mesh bounds the drop across one neighborhood
    double diam = std::sqrt(2.0), mesh = xg->mesh_width();
    double eps_val = 2.0 * diam * mesh;
    double delta_graph = 1.5 * std::sqrt(2.0) * mesh;
    CHECK(check_function_lsc(sq, domain, delta_graph, eps_val).status == Status::Pass);
    CHECK(check_function_usc(sq, domain, delta_graph, eps_val).status == Status::Pass);
}

TEST_CASE("function lsc surrogate: a planted downward step is witnessed") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {9});
    GridPtr yg = build_grid({{0.0, 1.0}}, {9});
    SetValuedMap map = full_map2(xg, yg);
    GraphSample domain = graph_sample(map, CompactWindow::whole(xg));

    // tabulate the smooth objective, then dig a depth-1 pit at one pair
    std::vector<double> table(xg->size() * yg->size());
    Objective sq = expr_objective("(y1 - x1)^2");
    for (std::size_t xi = 0; xi < xg->size(); ++xi)
        for (std::size_t yi = 0; yi < yg->size(); ++yi)
            table[xi * yg->size() + yi] = sq.at_indices(*xg, *yg, xi, yi);
    Objective smooth = Objective::from_table(xg, yg, table);
    Objective dug = smooth.with_value(4, 4, smooth.at_indices(*xg, *yg, 4, 4) - 1.0);

    double delta_graph = 1.5 * std::sqrt(2.0) * xg->mesh_width();
    CHECK(check_function_lsc(smooth, domain, delta_graph, 0.5).status == Status::Pass);
    CheckReport r = check_function_lsc(dug, domain, delta_graph, 0.1);
    REQUIRE(r.status == Status::Fail);
    std::vector<double> pit{xg->point(4)[0], yg->point(4)[0]};
    bool mentions_pit = false;
    for (const Witness& w : r.witnesses)
        for (const auto& [label, coords] : w.points)
            if (label == "neighbor" && coords == pit) mentions_pit = true;
    CHECK(mentions_pit);
}

TEST_CASE("function checks are vacuous without neighbors") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {2});
    GridPtr yg = build_grid({{0.0, 1.0}}, {2});
    SetValuedMap map = SetValuedMap::tabulated(xg, yg, {{0}, {1}});
    CompactWindow one(xg, {0}, {0});
    GraphSample domain = graph_sample(map, one);
    REQUIRE(domain.pairs.size() == 1);
    CHECK(check_function_lsc(expr_objective("x1*y1"), domain, 0.1, 0.1).status == Status::Pass);
}

TEST_CASE("inf-compact: interior bands pass, boundary-touching level sets warn") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {5});
    GridPtr yg = build_grid({{-2.0, 3.0}}, {11});
    SetValuedMap map = full_map2(xg, yg);
    GraphSample domain = graph_sample(map, CompactWindow::whole(xg));
    Objective sq = Objective::from_expression(parse("(y1 - x1)^2", 1, 1), 1, 1);
    ResolvedTolerances rt = resolve({}, sq, map, domain);
    CHECK(check_inf_compact(sq, domain, {0.2}, rt.delta_graph, rt.eps_val).status ==
          Status::Pass);

    // empty level set is compact
    CHECK(check_inf_compact(sq, domain, {-1.0}, rt.delta_graph, rt.eps_val).status ==
          Status::Pass);

    GridPtr xg2 = build_grid({{-1.0, 1.0}}, {21});
    GridPtr yg2 = build_grid({{0.0, 10.0}}, {11});
    SetValuedMap map2 = full_map2(xg2, yg2);
    GraphSample domain2 = graph_sample(map2, CompactWindow::whole(xg2));
    Objective bilinear = expr_objective("x1*y1");
    ResolvedTolerances rt2 = resolve({}, bilinear, map2, domain2);
    CheckReport warned = check_inf_compact(bilinear, domain2, {0.0}, rt2.delta_graph, rt2.eps_val);
    CHECK(warned.status == Status::Warn);
    bool contact_at_top = false;
    for (const Witness& w : warned.witnesses)
        for (const auto& [label, coords] : w.points)
            if (label == "y" && coords == std::vector<double>{10.0}) contact_at_top = true;
    CHECK(contact_at_top);
}

TEST_CASE("k-inf-compact: per-window aggregation and the all-of-graph warn") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {7});
    GridPtr yg = build_grid({{0.0, 1.0}}, {7});
    SetValuedMap map = full_map2(xg, yg);
    Objective zero = expr_objective("0*x1 + 0*y1");
    GraphSample domain = graph_sample(map, CompactWindow::whole(xg));
    ResolvedTolerances rt = resolve({}, zero, map, domain);

    // u = 0, lambda = 1: the level set is the whole graph, touching the
    // y-boundary; compactness on an unbounded continuum could not be
    // affirmed, so this warns
    CheckReport r =
        check_k_inf_compact(zero, map, {CompactWindow::whole(xg)}, {1.0}, rt.delta_graph,
                            rt.eps_val);
    CHECK(r.status == Status::Warn);

    // singleton windows reproduce per-point inf-compactness
    std::vector<CompactWindow> singletons;
    for (std::size_t i = 0; i < xg->size(); ++i)
        singletons.emplace_back(xg, std::vector<std::size_t>{i}, std::vector<std::size_t>{i});
    SetValuedMap interior = SetValuedMap::tabulated(
        xg, yg, std::vector<std::vector<std::size_t>>(xg->size(), {2, 3, 4}));
    CHECK(check_k_inf_compact(zero, interior, singletons, {1.0}, rt.delta_graph, rt.eps_val)
              .status == Status::Pass);
}

TEST_CASE("kn-inf-compact: compact constant images under a continuous objective pass") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {9});
    GridPtr yg = build_grid({{0.0, 1.0}}, {9});
    SetValuedMap map = SetValuedMap::tabulated(
        xg, yg, std::vector<std::vector<std::size_t>>(xg->size(), {3, 4, 5}));
    Objective sq = expr_objective("(y1 - x1)^2");
    GraphSample domain = graph_sample(map, CompactWindow::whole(xg));
    ResolvedTolerances rt = resolve({}, sq, map, domain);
    auto paths = theorem_paths(xg, {});
    CHECK(check_kn_inf_compact(sq, map, paths, 2.0, rt.eps, 3, 0, rt.delta_graph, rt.eps_val)
              .status == Status::Pass);
}

TEST_CASE("kn-inf-compact passes on the window where the boundary check warns") {
    // truncation of the classic noncompact instance: the net check is happy
    // on the window while the windowed compactness check reports the contact
    GridPtr xg = build_grid({{-1.0, 1.0}}, {21});
    GridPtr yg = build_grid({{0.0, 10.0}}, {11});
    SetValuedMap map = full_map2(xg, yg);
    Objective bilinear = expr_objective("x1*y1");
    GraphSample domain = graph_sample(map, CompactWindow::whole(xg));
    ResolvedTolerances rt = resolve({}, bilinear, map, domain);

    auto paths = theorem_paths(xg, {});
    CheckReport kn = check_kn_inf_compact(bilinear, map, paths, 0.0, rt.eps, 3, 0, rt.delta_graph,
                                          rt.eps_val);
    CHECK(kn.status == Status::Pass);
    CheckReport k = check_k_inf_compact(bilinear, map, {CompactWindow::whole(xg)}, {0.0},
                                        rt.delta_graph, rt.eps_val);
    CHECK(k.status == Status::Warn);
}

TEST_CASE("kn-inf-compact: a limit image missing the cluster value fails") {
    GridPtr xg = build_grid({{0.0, 1.0}}, {5});
    GridPtr yg = build_grid({{0.0, 1.0}}, {5});
    // Phi = {0.25, 0.75} everywhere except the limit column, which keeps
    // only 0.25; admissible selections clustering at 0.75 have nowhere to go
    std::vector<std::vector<std::size_t>> images(5, {1, 3});
    images[0] = {1};
    SetValuedMap map = SetValuedMap::tabulated(xg, yg, std::move(images));
    Objective zero = expr_objective("0*x1 + 0*y1");
    auto probes = exhaustive_probe_paths(xg);
    CheckReport r = check_kn_inf_compact(zero, map, probes, 0.0, 0.1, 2, 0,
                                         0.5, 0.5);
    CHECK(r.status == Status::Fail);
}

TEST_CASE("an lsc failure of u fails both compactness checkers identically") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Instance inst = generate_instance(InstanceKind::RandomTabulated, {7, 7}, seed * 3 + 1);
        GraphSample domain = graph_sample(inst.map, CompactWindow::whole(inst.map.x_grid()));
        double delta_graph = 0.25, eps_val = 0.35;
        Status lsc = check_function_lsc(inst.u, domain, delta_graph, eps_val).status;
        CheckReport k = check_k_inf_compact(inst.u, inst.map,
                                            {CompactWindow::whole(inst.map.x_grid())},
                                            {inst.lambda}, delta_graph, eps_val);
        CheckReport kn = check_kn_inf_compact(inst.u, inst.map,
                                              exhaustive_probe_paths(inst.map.x_grid()),
                                              inst.lambda, 2.5 * inst.map.y_grid()->mesh_width(),
                                              2, seed, delta_graph, eps_val);
        CHECK((lsc == Status::Fail) == (k.status == Status::Fail));
        CHECK((k.status == Status::Fail) == (kn.status == Status::Fail));
    }
}

TEST_CASE("inf-compact on the full graph implies the windowed check on sub-windows") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = generate_instance(InstanceKind::UscCompactLsc, {8, 8}, seed + 50);
        GridPtr xg = inst.map.x_grid();
        GraphSample full = graph_sample(inst.map, CompactWindow::whole(xg));
        ResolvedTolerances rt = resolve(inst.suggested, inst.u, inst.map, full);
        CheckReport whole =
            check_inf_compact(inst.u, full, rt.lambdas, rt.delta_graph, rt.eps_val);
        if (whole.status != Status::Pass) continue;
        std::mt19937_64 rng(seed);
        for (int trial = 0; trial < 4; ++trial) {
            std::size_t lo = uniform_below(rng, xg->size());
            std::size_t hi = lo + uniform_below(rng, xg->size() - lo);
            CheckReport sub = check_k_inf_compact(
                inst.u, inst.map, {CompactWindow(xg, {lo}, {hi})}, rt.lambdas, rt.delta_graph,
                rt.eps_val);
            CHECK(sub.status == Status::Pass);
        }
    }
}

TEST_CASE("resolved tolerance defaults follow the documented formulas") {
    GridPtr xg = build_grid({{-1.0, 1.0}}, {21});
    GridPtr yg = build_grid({{0.0, 1.0}}, {11});
    SetValuedMap map = full_map2(xg, yg);
    Objective bilinear = expr_objective("x1*y1");
    GraphSample sample = graph_sample(map, CompactWindow::whole(xg));
    ResolvedTolerances rt = resolve({}, bilinear, map, sample);
    CHECK(rt.delta == doctest::Approx(0.15));
    CHECK(rt.eps == doctest::Approx(0.15));
    CHECK(rt.delta_graph == doctest::Approx(std::sqrt(2.0) * 0.15));
    CHECK(rt.eps_val == doctest::Approx(2.0 * std::sqrt(5.0) * 0.1));
    CHECK(rt.tau == 0.0);
    REQUIRE(rt.lambdas.size() == 5);
    CHECK(rt.lambdas.front() == doctest::Approx(-1.0));
    CHECK(std::is_sorted(rt.lambdas.begin(), rt.lambdas.end()));
}
