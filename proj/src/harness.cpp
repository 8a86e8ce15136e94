#include "berge/harness.hpp"

#include <algorithm>
#include <cmath>

#include "berge/extreal.hpp"
#include "berge/rng.hpp"

namespace berge {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::HypothesisFailed: return "hypothesis-failed";
        case Verdict::Contradiction: return "contradiction";
    }
    return "?";
}

Verdict classify_verdict(const std::vector<CheckReport>& hypotheses,
                         const std::vector<CheckReport>& conclusions) {
    for (const CheckReport& h : hypotheses)
        if (h.status != Status::Pass) return Verdict::HypothesisFailed;
    for (const CheckReport& c : conclusions)
        if (c.status == Status::Fail) return Verdict::Contradiction;
    return Verdict::Verified;
}

Json to_json(const TheoremReport& r) {
    Json hyps = Json::array();
    for (const CheckReport& h : r.hypotheses) hyps.push_back(to_json(h));
    Json concls = Json::array();
    for (const CheckReport& c : r.conclusions) concls.push_back(to_json(c));
    Json out{{"theorem", r.theorem},
             {"verdict", to_string(r.verdict)},
             {"hypotheses", std::move(hyps)},
             {"conclusions", std::move(concls)}};
    if (r.witness) out["witness"] = to_json(*r.witness);
    return out;
}

std::vector<SequencePath> theorem_paths(const GridPtr& x_grid, const PathBudget& budget) {
    std::vector<SequencePath> paths = exhaustive_probe_paths(x_grid);
    std::mt19937_64 rng(mix_seed(budget.seed, 0x7061746873ull));
    std::size_t limits = std::min<std::size_t>(3, x_grid->size());
    for (std::size_t i = 0; i < limits; ++i) {
        std::size_t limit = uniform_below(rng, x_grid->size());
        auto extra = generate_paths(x_grid, limit, budget.length, budget.count, budget.seed + i);
        paths.insert(paths.end(), extra.begin(), extra.end());
    }
    return paths;
}

namespace {

// Largest finite value of v; the admissibility level that keeps every
// attained minimizer inside the filtered selections.
double finite_value_ceiling(const ValueFunction& v) {
    double top = 0.0;
    bool any = false;
    for (double val : v.values) {
        if (ext::is_finite(val)) {
            top = any ? std::max(top, val) : val;
            any = true;
        }
    }
    return any ? top : 0.0;
}

CheckReport named(CheckReport r, const std::string& name) {
    r.name = name;
    return r;
}

std::vector<std::vector<double>> grid_points(const GridSpace& g,
                                             const std::vector<std::size_t>& indices) {
    std::vector<std::vector<double>> points;
    points.reserve(indices.size());
    for (std::size_t i : indices) points.push_back(g.point(i));
    return points;
}

std::vector<std::size_t> all_indices(const GridSpace& g) {
    std::vector<std::size_t> idx(g.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

// Value-function checks over the x-grid at the derived tolerance.
CheckReport value_check(const std::string& name, const ValueFunction& v, double delta,
                        double eps_out, bool lsc) {
    const GridSpace& xg = *v.x_grid;
    return named(value_jump_scan(name, grid_points(xg, all_indices(xg)), v.values, delta, eps_out,
                                 lsc),
                 name);
}

// usc surrogate for the solution map: every tight minimizer at a neighbor
// must sit within eps_out of the tau-relaxed minimizer set at the center.
CheckReport solution_usc_check(const SolutionMap& tight, const SolutionMap& relaxed, double delta,
                               double eps_out) {
    CheckReport report;
    report.name = "solution-usc";
    report.tolerances = Json{{"delta", delta}, {"eps", eps_out}, {"tau", relaxed.tau}};
    const GridSpace& xg = *tight.x_grid;
    const GridSpace& yg = *tight.y_grid;
    std::size_t examined = 0;
    for (std::size_t x = 0; x < xg.size(); ++x) {
        for (std::size_t xp : neighbors(xg, x, delta)) {
            for (std::size_t yp : tight.argmins[xp]) {
                ++examined;
                double best = ext::pos_inf;
                for (std::size_t y : relaxed.argmins[x]) best = std::min(best, yg.distance(yp, y));
                if (best > eps_out) {
                    report.status = Status::Fail;
                    report.add_witness(Witness{
                        {{"x", xg.point(x)}, {"x_prime", xg.point(xp)}, {"y_prime", yg.point(yp)}},
                        {{"distance", best}},
                        "neighboring minimizer has no nearby relaxed minimizer at the center"});
                }
            }
        }
    }
    report.set_counter("points_examined", examined);
    report.finalize();
    return report;
}

// Finiteness is automatic on a lattice; boundary contact is the honest
// residual doubt, reported as warn.
CheckReport solution_interior_check(const SolutionMap& tight) {
    CheckReport report;
    report.name = "solution-interior";
    const GridSpace& xg = *tight.x_grid;
    const GridSpace& yg = *tight.y_grid;
    std::size_t contacts = 0;
    for (std::size_t x = 0; x < xg.size(); ++x) {
        for (std::size_t y : tight.argmins[x]) {
            if (yg.on_boundary(y)) {
                ++contacts;
                if (report.status == Status::Pass) report.status = Status::Warn;
                if (contacts <= CheckReport::witness_cap)
                    report.add_witness(Witness{{{"x", xg.point(x)}, {"y", yg.point(y)}},
                                               {},
                                               "minimizer on the sampled y-boundary; "
                                               "compactness beyond the window is unverified"});
            }
        }
    }
    report.set_counter("boundary_contacts", contacts);
    report.finalize();
    return report;
}

TheoremReport assemble(std::string id, std::vector<CheckReport> hypotheses,
                       std::vector<CheckReport> conclusions) {
    TheoremReport report;
    report.theorem = std::move(id);
    report.hypotheses = std::move(hypotheses);
    report.conclusions = std::move(conclusions);
    report.verdict = classify_verdict(report.hypotheses, report.conclusions);
    if (report.verdict == Verdict::Contradiction) {
        for (const CheckReport& c : report.conclusions) {
            if (c.status == Status::Fail && !c.witnesses.empty()) {
                report.witness = c.witnesses.front();
                break;
            }
        }
    }
    return report;
}

}  // namespace

TheoremReport verify_maximum_theorem(const Objective& u, const SetValuedMap& map,
                                     const Tolerances& tol, const PathBudget& budget,
                                     MaximumVariant variant) {
    CompactWindow whole = CompactWindow::whole(map.x_grid());
    GraphSample sample = graph_sample(map, whole);
    ResolvedTolerances rt = resolve(tol, u, map, sample);
    SolveResult solved = solve(u, map, rt.tau);
    double mesh_y = map.y_grid()->mesh_width();
    double eps_out = rt.eps + mesh_y;
    double eps_val_out = rt.eps_val + mesh_y;
    double tau_out = 2.0 * rt.eps_val + rt.tau;

    std::vector<CheckReport> hypotheses;
    hypotheses.push_back(check_map_lsc(map, rt.delta, rt.eps));
    if (variant.kind == MaximumVariant::NetBased) {
        double lambda = finite_value_ceiling(solved.value);
        hypotheses.push_back(check_kn_inf_compact(u, map, theorem_paths(map.x_grid(), budget),
                                                  lambda, rt.eps, budget.selections, budget.seed,
                                                  rt.delta_graph, rt.eps_val));
    } else {
        hypotheses.push_back(
            check_k_inf_compact(u, map, {whole}, rt.lambdas, rt.delta_graph, rt.eps_val));
    }
    hypotheses.push_back(check_function_usc(u, sample, rt.delta_graph, rt.eps_val));

    std::vector<CheckReport> conclusions;
    conclusions.push_back(value_check("value-lsc", solved.value, rt.delta, eps_val_out, true));
    conclusions.push_back(value_check("value-usc", solved.value, rt.delta, eps_val_out, false));
    SolutionMap relaxed = relax_solution(u, map, solved.value, tau_out);
    conclusions.push_back(solution_usc_check(solved.solution, relaxed, rt.delta, eps_out));
    conclusions.push_back(solution_interior_check(solved.solution));

    return assemble(variant.kind == MaximumVariant::NetBased ? "maximum-kn" : "maximum-cg",
                    std::move(hypotheses), std::move(conclusions));
}

TheoremReport verify_value_semicontinuity(const Objective& u, const SetValuedMap& map,
                                          const Tolerances& tol, const PathBudget& budget,
                                          const std::vector<CompactWindow>& windows) {
    CompactWindow whole = CompactWindow::whole(map.x_grid());
    GraphSample sample = graph_sample(map, whole);
    ResolvedTolerances rt = resolve(tol, u, map, sample);
    SolveResult solved = solve(u, map, rt.tau);
    double eps_val_out = rt.eps_val + map.y_grid()->mesh_width();

    std::vector<CheckReport> hypotheses;
    double lambda = finite_value_ceiling(solved.value);
    hypotheses.push_back(check_kn_inf_compact(u, map, theorem_paths(map.x_grid(), budget), lambda,
                                              rt.eps, budget.selections, budget.seed,
                                              rt.delta_graph, rt.eps_val));
    hypotheses.push_back(
        check_k_inf_compact(u, map, {whole}, rt.lambdas, rt.delta_graph, rt.eps_val));

    std::vector<CheckReport> conclusions;
    conclusions.push_back(value_check("value-lsc", solved.value, rt.delta, eps_val_out, true));
    const GridSpace& xg = *map.x_grid();
    for (std::size_t w = 0; w < windows.size(); ++w) {
        std::vector<std::size_t> idx = windows[w].indices();
        std::vector<double> values;
        values.reserve(idx.size());
        for (std::size_t i : idx) values.push_back(solved.value.values[i]);
        conclusions.push_back(named(
            value_jump_scan("value-lsc/window" + std::to_string(w + 1), grid_points(xg, idx),
                            values, rt.delta, eps_val_out, true),
            "value-lsc/window" + std::to_string(w + 1)));
    }
    return assemble("value-lsc", std::move(hypotheses), std::move(conclusions));
}

TheoremReport verify_solution_properties(const Objective& u, const SetValuedMap& map,
                                         const Tolerances& tol) {
    CompactWindow whole = CompactWindow::whole(map.x_grid());
    GraphSample sample = graph_sample(map, whole);
    ResolvedTolerances rt = resolve(tol, u, map, sample);
    SolveResult solved = solve(u, map, rt.tau);
    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();

    std::vector<CheckReport> hypotheses;
    hypotheses.push_back(
        check_k_inf_compact(u, map, {whole}, rt.lambdas, rt.delta_graph, rt.eps_val));

    CheckReport nonempty;
    nonempty.name = "solution-nonempty";
    CheckReport top;  // argmin set equals the image wherever v = +inf
    top.name = "solution-at-plus-infinity";
    CheckReport compact;
    compact.name = "solution-finite";
    std::size_t top_columns = 0;
    for (std::size_t x = 0; x < xg.size(); ++x) {
        const auto& arg = solved.solution.argmins[x];
        if (arg.empty()) {
            nonempty.status = Status::Fail;
            nonempty.add_witness(
                Witness{{{"x", xg.point(x)}}, {}, "argmin set is empty"});
        }
        if (solved.value.values[x] == ext::pos_inf) {
            ++top_columns;
            if (arg != map.image(x)) {
                top.status = Status::Fail;
                top.add_witness(Witness{{{"x", xg.point(x)}},
                                        {{"v", ext::pos_inf}},
                                        "v = +inf but the argmin set differs from the image"});
            }
        } else if (arg.empty()) {
            compact.status = Status::Fail;
            compact.add_witness(Witness{{{"x", xg.point(x)}},
                                        {{"v", solved.value.values[x]}},
                                        "finite value with no attaining minimizer"});
        }
        (void)yg;
    }
    nonempty.set_counter("columns", xg.size());
    top.set_counter("plus_infinity_columns", top_columns);
    compact.set_counter("columns", xg.size());
    nonempty.finalize();
    top.finalize();
    compact.finalize();

    std::vector<CheckReport> conclusions;
    conclusions.push_back(std::move(nonempty));
    conclusions.push_back(std::move(top));
    conclusions.push_back(std::move(compact));
    return assemble("solution-props", std::move(hypotheses), std::move(conclusions));
}

TheoremReport verify_infcompact_corollary(const Objective& u, const SetValuedMap& map,
                                          const Tolerances& tol) {
    CompactWindow whole = CompactWindow::whole(map.x_grid());
    GraphSample sample = graph_sample(map, whole);
    ResolvedTolerances rt = resolve(tol, u, map, sample);
    SolveResult solved = solve(u, map, rt.tau);
    const GridSpace& xg = *map.x_grid();
    double eps_val_out = rt.eps_val + map.y_grid()->mesh_width();

    std::vector<CheckReport> hypotheses;
    hypotheses.push_back(check_inf_compact(u, sample, rt.lambdas, rt.delta_graph, rt.eps_val));

    std::vector<CheckReport> conclusions;
    conclusions.push_back(value_check("value-lsc", solved.value, rt.delta, eps_val_out, true));

    CheckReport interior;
    interior.name = "value-level-interior";
    Json lam = Json::array();
    for (double l : rt.lambdas) lam.push_back(l);
    interior.tolerances = Json{{"lambdas", std::move(lam)}};
    std::size_t contacts = 0;
    for (double lambda : rt.lambdas) {
        for (std::size_t x = 0; x < xg.size(); ++x) {
            if (solved.value.values[x] <= lambda && xg.on_boundary(x)) {
                ++contacts;
                if (interior.status == Status::Pass) interior.status = Status::Warn;
                if (contacts <= CheckReport::witness_cap)
                    interior.add_witness(
                        Witness{{{"x", xg.point(x)}},
                                {{"lambda", lambda}, {"v", solved.value.values[x]}},
                                "level set of v touches the sampled x-boundary"});
            }
        }
    }
    interior.set_counter("boundary_contacts", contacts);
    interior.finalize();
    conclusions.push_back(std::move(interior));

    return assemble("infcompact-corollary", std::move(hypotheses), std::move(conclusions));
}

namespace {

// Two smoothing sweeps keep adjacent table deltas well under the palette
// range, so construction-matched tolerances exist.
std::vector<double> smooth_table(std::vector<double> values, std::size_t nx, std::size_t ny) {
    for (int sweep = 0; sweep < 2; ++sweep) {
        std::vector<double> next = values;
        for (std::size_t i = 0; i < nx; ++i) {
            for (std::size_t j = 0; j < ny; ++j) {
                double sum = values[i * ny + j];
                double n = 1.0;
                if (i > 0) { sum += values[(i - 1) * ny + j]; n += 1.0; }
                if (i + 1 < nx) { sum += values[(i + 1) * ny + j]; n += 1.0; }
                if (j > 0) { sum += values[i * ny + j - 1]; n += 1.0; }
                if (j + 1 < ny) { sum += values[i * ny + j + 1]; n += 1.0; }
                next[i * ny + j] = sum / n;
            }
        }
        values = std::move(next);
    }
    return values;
}

double max_adjacent_step(const std::vector<double>& values, std::size_t nx, std::size_t ny) {
    double step = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            double v = values[i * ny + j];
            if (!ext::is_finite(v)) continue;
            if (i + 1 < nx && ext::is_finite(values[(i + 1) * ny + j]))
                step = std::max(step, std::abs(v - values[(i + 1) * ny + j]));
            if (j + 1 < ny && ext::is_finite(values[i * ny + j + 1]))
                step = std::max(step, std::abs(v - values[i * ny + j + 1]));
        }
    }
    return step;
}

// Interval images over the interior index range, lo/hi drifting by at most
// one cell per column.
std::vector<std::vector<std::size_t>> drifting_intervals(std::size_t nx, std::size_t ny,
                                                         std::mt19937_64& rng) {
    std::size_t lo_min = 1, lo_max = ny - 2;
    auto jitter = [&](std::size_t v) {
        std::size_t move = uniform_below(rng, 3);  // -1, 0, +1
        if (move == 0 && v > lo_min) return v - 1;
        if (move == 2 && v < lo_max) return v + 1;
        return v;
    };
    std::vector<std::vector<std::size_t>> images(nx);
    std::size_t lo = lo_min + uniform_below(rng, lo_max - lo_min + 1);
    std::size_t hi = lo + uniform_below(rng, lo_max - lo + 1);
    for (std::size_t i = 0; i < nx; ++i) {
        if (i > 0) {
            lo = jitter(lo);
            hi = jitter(hi);
            if (hi < lo) hi = lo;
        }
        for (std::size_t y = lo; y <= hi; ++y) images[i].push_back(y);
    }
    return images;
}

}  // namespace

Instance generate_instance(InstanceKind kind, const InstanceSizes& sizes, std::uint64_t seed) {
    if (sizes.x_points < 4 || sizes.x_points > 12 || sizes.y_points < 4 || sizes.y_points > 12)
        throw Error("instance sizes must lie in [4, 12] points per axis");
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(kind)));
    std::size_t nx = sizes.x_points, ny = sizes.y_points;
    GridPtr xg = build_grid({{0.0, 1.0}}, {nx});
    GridPtr yg = build_grid({{0.0, 1.0}}, {ny});

    std::vector<std::vector<std::size_t>> images = drifting_intervals(nx, ny, rng);
    if (kind == InstanceKind::AdversarialJump) {
        // Teleport one interior column's image across the window.
        std::size_t column = 1 + uniform_below(rng, nx - 2);
        std::vector<std::size_t> moved;
        for (std::size_t y : images[column]) {
            std::size_t flipped = ny - 1 - y;
            moved.push_back(std::min(std::max<std::size_t>(flipped, 1), ny - 2));
        }
        std::sort(moved.begin(), moved.end());
        moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
        // Guarantee real displacement even for centered intervals.
        if (moved == images[column])
            moved = {images[column].front() > ny / 2 ? std::size_t{1} : ny - 2};
        images[column] = std::move(moved);
    }

    std::vector<double> table(nx * ny);
    if (kind == InstanceKind::RandomTabulated) {
        const double palette[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
        for (double& v : table) v = palette[uniform_below(rng, 5)];
        bool rough = uniform_below(rng, 2) == 0;
        if (!rough) table = smooth_table(std::move(table), nx, ny);
        // Occasional guaranteed step and extended entries.
        if (uniform_below(rng, 4) == 0)
            table[uniform_below(rng, nx * ny)] = 3.0;
        if (uniform_below(rng, 5) == 0)
            table[uniform_below(rng, nx * ny)] = ext::pos_inf;
        if (uniform_below(rng, 7) == 0)
            table[uniform_below(rng, nx * ny)] = ext::neg_inf;
    } else {
        // max of two smoothed random tables: continuous at mesh scale with a
        // construction-known modulus.
        std::vector<double> a(nx * ny), b(nx * ny);
        for (double& v : a) v = uniform_unit(rng);
        for (double& v : b) v = uniform_unit(rng);
        a = smooth_table(std::move(a), nx, ny);
        b = smooth_table(std::move(b), nx, ny);
        for (std::size_t i = 0; i < table.size(); ++i) table[i] = std::max(a[i], b[i]);
    }

    Instance inst{Objective::from_table(xg, yg, table),
                  SetValuedMap::tabulated(xg, yg, std::move(images)),
                  {},
                  0.0};

    // Any pair within delta_graph differs by at most floor(dg/hx) x-steps
    // plus floor(dg/hy) y-steps, so this eps_val is a guaranteed modulus.
    inst.suggested.eps = 1.5 * yg->mesh_width();
    inst.suggested.delta = 1.5 * xg->mesh_width();
    double dg = std::sqrt(*inst.suggested.delta * *inst.suggested.delta +
                          *inst.suggested.eps * *inst.suggested.eps);
    double reach = std::floor(dg / xg->mesh_width()) + std::floor(dg / yg->mesh_width());
    double step = max_adjacent_step(table, nx, ny);
    inst.suggested.eps_val = std::max(reach * step * (1.0 + 1e-9), 1e-9);
    double lambda = 0.0;
    bool any = false;
    for (double v : table) {
        if (ext::is_finite(v)) {
            lambda = any ? std::max(lambda, v) : v;
            any = true;
        }
    }
    inst.lambda = lambda;
    return inst;
}

}  // namespace berge
