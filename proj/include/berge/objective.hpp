#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "berge/expr.hpp"
#include "berge/grid.hpp"
#include "berge/report.hpp"
#include "berge/setmap.hpp"

namespace berge {

/// Extended-real objective u(x, y). Expression-backed objectives evaluate
/// anywhere (so grids can refine); table-backed ones are pinned to a grid
/// pair and allow pointwise edits, which is how instances with planted value
/// jumps or +inf columns are built.
class Objective {
public:
    using Fn = std::function<double(std::span<const double>, std::span<const double>)>;

    static Objective from_expression(Expr e, std::size_t x_dim, std::size_t y_dim);
    static Objective from_table(GridPtr x_grid, GridPtr y_grid, std::vector<double> values);
    static Objective from_function(Fn fn, std::size_t x_dim, std::size_t y_dim);

    /// Evaluate at arbitrary coordinates. Table-backed objectives snap to
    /// the nearest lattice pair. Throws DomainError on undefined operations.
    double at(std::span<const double> x, std::span<const double> y) const;

    /// Evaluate at grid indices, annotating DomainError with the point.
    double at_indices(const GridSpace& x_grid, const GridSpace& y_grid, std::size_t x_index,
                      std::size_t y_index) const;

    std::size_t x_dim() const { return x_dim_; }
    std::size_t y_dim() const { return y_dim_; }

    const Expr* expression() const { return expr_ ? &*expr_ : nullptr; }

    /// Copy with one table entry replaced; only valid on table backends.
    Objective with_value(std::size_t x_index, std::size_t y_index, double v) const;

private:
    Objective() = default;

    std::size_t x_dim_ = 0, y_dim_ = 0;
    std::optional<Expr> expr_;
    Fn fn_;
    GridPtr table_xg_, table_yg_;
    std::shared_ptr<const std::vector<double>> table_;  // x-major
};

/// D_u(lambda): the graph pairs with u <= lambda.
struct LevelSet {
    double lambda = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> members;
};

LevelSet level_set(const Objective& u, double lambda, const GraphSample& domain);

/// Shared core for the value-jump checks: points with values, a neighborhood
/// radius, and a one-sided jump tolerance. `lsc` flags points sitting more
/// than eps above their lowest neighbor; the mirror flags points more than
/// eps below their highest neighbor.
CheckReport value_jump_scan(const std::string& name,
                            const std::vector<std::vector<double>>& points,
                            const std::vector<double>& values, double delta, double eps_val,
                            bool lsc);

/// Lower-semicontinuity surrogate for u on the sampled graph, in the product
/// metric: u(p) <= min over neighbors of u + eps_val at every graph point
/// with at least one neighbor within delta_graph.
CheckReport check_function_lsc(const Objective& u, const GraphSample& domain, double delta_graph,
                               double eps_val);

/// The mirror criterion (no point sits more than eps_val below a neighbor).
CheckReport check_function_usc(const Objective& u, const GraphSample& domain, double delta_graph,
                               double eps_val);

/// Inf-compactness surrogate on a sampled graph: per lambda, the level set
/// must stay off the y-grid boundary (contact downgrades to warn), and the
/// lsc criterion must hold (level-set closedness equals lower semicontinuity
/// of u, which is what a finite sample can certify).
CheckReport check_inf_compact(const Objective& u, const GraphSample& domain,
                              const std::vector<double>& lambdas, double delta_graph,
                              double eps_val);

/// check_inf_compact over every window's graph sample; worst status wins.
CheckReport check_k_inf_compact(const Objective& u, const SetValuedMap& map,
                                const std::vector<CompactWindow>& windows,
                                const std::vector<double>& lambdas, double delta_graph,
                                double eps_val);

/// Net-based inf-compactness surrogate. Condition (i) is the lsc criterion
/// on the full graph. Condition (ii): along each path, for each sampled
/// selection restricted to indices with u(x_k, y_k) <= lambda, at least a
/// quarter of those indices must lie within eps of Phi(limit); paths with no
/// admissible index are skipped.
CheckReport check_kn_inf_compact(const Objective& u, const SetValuedMap& map,
                                 const std::vector<SequencePath>& paths, double lambda, double eps,
                                 std::size_t selections_per_path, std::uint64_t seed,
                                 double delta_graph, double eps_val);

/// Fully resolved tolerance set; see Tolerances for the knobs.
struct ResolvedTolerances {
    double delta = 0.0;
    double eps = 0.0;
    double delta_graph = 0.0;
    double eps_val = 0.0;
    double tau = 0.0;
    std::vector<double> lambdas;

    Json to_json() const;
};

/// Applies the documented defaults:
///   delta       = 1.5 * max x-mesh width
///   eps         = 1.5 * max y-mesh width
///   delta_graph = sqrt(delta^2 + eps^2)
///   eps_val     = 2 * (product-window diameter) * (max mesh width)
///   tau         = 0
///   lambdas     = 5 values spanning [min u, median u] over the sampled graph
ResolvedTolerances resolve(const Tolerances& tol, const Objective& u, const SetValuedMap& map,
                           const GraphSample& sample);

}  // namespace berge
