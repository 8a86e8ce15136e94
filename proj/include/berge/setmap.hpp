#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "berge/expr.hpp"
#include "berge/grid.hpp"
#include "berge/report.hpp"

namespace berge {

class Objective;

/// Feasibility multifunction between two grids. Either constraint-backed
/// (image = y points with every g_j(x, y) <= 0) or an explicit table of
/// y-index sets. Images are always nonempty; violations raise EmptyImageError.
class SetValuedMap {
public:
    static SetValuedMap constraints(GridPtr x_grid, GridPtr y_grid, std::vector<Expr> gs);
    static SetValuedMap tabulated(GridPtr x_grid, GridPtr y_grid,
                                  std::vector<std::vector<std::size_t>> images);

    const GridPtr& x_grid() const { return xg_; }
    const GridPtr& y_grid() const { return yg_; }

    /// Feasible y-indices at an x-grid point, ascending. Throws EmptyImageError.
    std::vector<std::size_t> image(std::size_t x_index) const;

    bool is_tabulated() const { return std::holds_alternative<Table>(body_); }
    /// Constraint expressions, or nullptr for tabulated maps.
    const std::vector<Expr>* constraint_exprs() const;

private:
    struct Table {
        std::vector<std::vector<std::size_t>> images;
    };
    SetValuedMap(GridPtr x, GridPtr y, std::variant<std::vector<Expr>, Table> body);

    GridPtr xg_, yg_;
    std::variant<std::vector<Expr>, Table> body_;
};

/// Graph of the map over a compact x-window: pairs (x, y) with y in Phi(x),
/// in lexicographic order.
struct GraphSample {
    CompactWindow window;
    GridPtr y_grid;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

GraphSample graph_sample(const SetValuedMap& map, const CompactWindow& window);

/// min over y' in Phi(x) of d(y, y').
double dist_to_image(const SetValuedMap& map, std::size_t y_index, std::size_t x_index);

/// Lower-semicontinuity surrogate: over every neighbor pair taken in
/// increasing coordinate order (x before x'), each y in Phi(x) must be within
/// eps of Phi(x'); a violation means a feasible point vanishes abruptly.
CheckReport check_map_lsc(const SetValuedMap& map, double delta, double eps);

/// Upper-semicontinuity surrogate, the mirror direction: each y' in Phi(x')
/// must be within eps of Phi(x); a violation means a point appears abruptly.
CheckReport check_map_usc(const SetValuedMap& map, double delta, double eps);

/// Compactness surrogate for the restricted graph: the usc check confined to
/// the window (closedness proxy) plus no graph point on the y-grid boundary
/// (boundedness proxy). Boundary contact downgrades to warn, never fail: the
/// sampled window cannot tell a large compact set from an unbounded one.
CheckReport check_k_upper_semicompact(const SetValuedMap& map, const CompactWindow& window,
                                      double delta, double eps);

/// Net-based compactness surrogate: along each path, every sampled selection
/// y_k in Phi(x_k) must sit within eps of Phi(limit) for at least ceil(L/4)
/// of the indices. Selections are argmax-distance-to-the-limit-image,
/// argmin-u when an objective is supplied, and seeded uniform draws.
CheckReport check_kn_upper_semicompact(const SetValuedMap& map,
                                       const std::vector<SequencePath>& paths, double eps,
                                       std::size_t selections_per_path, std::uint64_t seed,
                                       const Objective* objective = nullptr);

/// Selections y_k in Phi(x_k) along a path: the deterministic adversaries
/// (argmax distance to Phi(limit), argmin u when supplied) followed by
/// seeded uniform draws. Ties break toward the smaller index.
std::vector<std::vector<std::size_t>> selections_for_path(const SetValuedMap& map,
                                                          const SequencePath& path,
                                                          std::size_t random_count,
                                                          std::uint64_t seed,
                                                          std::size_t path_index,
                                                          const Objective* objective = nullptr);

}  // namespace berge
