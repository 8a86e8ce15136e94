#pragma once

#include <cstddef>
#include <vector>

#include "berge/objective.hpp"
#include "berge/setmap.hpp"

namespace berge {

/// Pointwise minimum of u(x, .) over the feasible image, exact on the
/// lattice. v(x) = +inf exactly when u = +inf on all of Phi(x).
struct ValueFunction {
    GridPtr x_grid;
    std::vector<double> values;

    double at(std::size_t x_index) const { return values[x_index]; }
};

/// Near-argmin sets: y in Phi(x) with u(x, y) <= v(x) + tau. With tau = 0
/// this is the exact argmin set (and the set of -inf attainers when
/// v(x) = -inf; all of Phi(x) when v(x) = +inf).
struct SolutionMap {
    GridPtr x_grid;
    GridPtr y_grid;
    std::vector<std::vector<std::size_t>> argmins;  // sorted per x
    double tau = 0.0;

    SetValuedMap as_map() const { return SetValuedMap::tabulated(x_grid, y_grid, argmins); }
};

struct SolveResult {
    ValueFunction value;
    SolutionMap solution;
};

/// Exact finite minimization per x-column. tau >= 0 widens ties.
SolveResult solve(const Objective& u, const SetValuedMap& map, double tau = 0.0);

/// Recomputes the solution set at a different tie tolerance from an existing
/// value table, without re-minimizing.
SolutionMap relax_solution(const Objective& u, const SetValuedMap& map, const ValueFunction& v,
                           double tau);

/// Sup-norm differences of v between the base grid and each refinement.
/// Refinement by factor f multiplies every axis interval count by f, keeping
/// the original lattice points shared. Requires a constraint-backed map and
/// an expression-backed objective (tables cannot refine).
struct RefineStep {
    std::size_t factor;
    double sup_diff;  // max |v_base(x) - v_refined(x)| over shared x points
};

std::vector<RefineStep> refine_compare(const Objective& u, const SetValuedMap& map,
                                       const std::vector<std::size_t>& factors);

}  // namespace berge
