#include "berge/solver.hpp"

#include <algorithm>
#include <cmath>

#include "berge/extreal.hpp"
#include "berge/parallel.hpp"

namespace berge {

namespace {

// Tie threshold v + tau under extended arithmetic: infinities absorb tau.
double tie_bound(double v, double tau) {
    if (std::isinf(v)) return v;
    return v + tau;
}

}  // namespace

SolveResult solve(const Objective& u, const SetValuedMap& map, double tau) {
    if (tau < 0.0) throw Error("solve: tau must be nonnegative");
    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();
    SolveResult result;
    result.value.x_grid = map.x_grid();
    result.value.values.resize(xg.size());
    result.solution.x_grid = map.x_grid();
    result.solution.y_grid = map.y_grid();
    result.solution.argmins.resize(xg.size());
    result.solution.tau = tau;

    parallel_for(xg.size(), [&](std::size_t xi) {
        std::vector<std::size_t> image = map.image(xi);
        double best = ext::pos_inf;
        std::vector<double> vals(image.size());
        for (std::size_t j = 0; j < image.size(); ++j) {
            vals[j] = u.at_indices(xg, yg, xi, image[j]);
            best = std::min(best, vals[j]);
        }
        double bound = tie_bound(best, tau);
        std::vector<std::size_t> arg;
        for (std::size_t j = 0; j < image.size(); ++j)
            if (vals[j] <= bound) arg.push_back(image[j]);
        result.value.values[xi] = best;
        result.solution.argmins[xi] = std::move(arg);
    });
    return result;
}

SolutionMap relax_solution(const Objective& u, const SetValuedMap& map, const ValueFunction& v,
                           double tau) {
    if (tau < 0.0) throw Error("relax_solution: tau must be nonnegative");
    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();
    SolutionMap out;
    out.x_grid = map.x_grid();
    out.y_grid = map.y_grid();
    out.tau = tau;
    out.argmins.resize(xg.size());
    parallel_for(xg.size(), [&](std::size_t xi) {
        double bound = tie_bound(v.values[xi], tau);
        std::vector<std::size_t> arg;
        for (std::size_t yi : map.image(xi))
            if (u.at_indices(xg, yg, xi, yi) <= bound) arg.push_back(yi);
        out.argmins[xi] = std::move(arg);
    });
    return out;
}

namespace {

GridPtr refine_grid(const GridSpace& g, std::size_t factor) {
    std::vector<std::pair<double, double>> windows;
    std::vector<std::size_t> counts;
    for (std::size_t k = 0; k < g.dim(); ++k) {
        windows.emplace_back(g.lo(k), g.hi(k));
        counts.push_back((g.count(k) - 1) * factor + 1);
    }
    return build_grid(std::move(windows), std::move(counts));
}

}  // namespace

std::vector<RefineStep> refine_compare(const Objective& u, const SetValuedMap& map,
                                       const std::vector<std::size_t>& factors) {
    const std::vector<Expr>* gs = map.constraint_exprs();
    if (!gs) throw Error("refine_compare requires a constraint-backed map");
    if (!u.expression()) throw Error("refine_compare requires an expression-backed objective");
    for (std::size_t f : factors)
        if (f < 2) throw Error("refine_compare: factors must be at least 2");

    const GridSpace& xg = *map.x_grid();
    SolveResult base = solve(u, map);

    std::vector<RefineStep> steps;
    for (std::size_t f : factors) {
        GridPtr fx = refine_grid(xg, f);
        GridPtr fy = refine_grid(*map.y_grid(), f);
        SetValuedMap fine = SetValuedMap::constraints(fx, fy, *gs);
        SolveResult refined = solve(u, fine);
        double sup = 0.0;
        for (std::size_t xi = 0; xi < xg.size(); ++xi) {
            // Shared point: original multi-index scaled by the factor.
            std::vector<std::size_t> multi = xg.unflatten(xi);
            for (std::size_t& m : multi) m *= f;
            double a = base.value.values[xi];
            double b = refined.value.values[fx->flatten(multi)];
            double diff = (a == b) ? 0.0 : std::abs(ext::sub(a, b));
            sup = std::max(sup, diff);
        }
        steps.push_back(RefineStep{f, sup});
    }
    return steps;
}

}  // namespace berge
