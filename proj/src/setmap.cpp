#include "berge/setmap.hpp"

#include <algorithm>
#include <cmath>

#include "berge/objective.hpp"
#include "berge/rng.hpp"

namespace berge {

SetValuedMap::SetValuedMap(GridPtr x, GridPtr y, std::variant<std::vector<Expr>, Table> body)
    : xg_(std::move(x)), yg_(std::move(y)), body_(std::move(body)) {}

SetValuedMap SetValuedMap::constraints(GridPtr x_grid, GridPtr y_grid, std::vector<Expr> gs) {
    return SetValuedMap(std::move(x_grid), std::move(y_grid), std::move(gs));
}

SetValuedMap SetValuedMap::tabulated(GridPtr x_grid, GridPtr y_grid,
                                     std::vector<std::vector<std::size_t>> images) {
    if (images.size() != x_grid->size())
        throw Error("tabulated map needs one image per x-grid point");
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto& img = images[i];
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (img.empty())
            throw EmptyImageError(i, x_grid->point(i),
                                  "empty image at x-grid point " + std::to_string(i));
        if (img.back() >= y_grid->size())
            throw Error("tabulated image index outside the y-grid");
    }
    return SetValuedMap(std::move(x_grid), std::move(y_grid), Table{std::move(images)});
}

std::vector<std::size_t> SetValuedMap::image(std::size_t x_index) const {
    if (x_index >= xg_->size()) throw Error("image: x index outside the grid");
    if (const Table* t = std::get_if<Table>(&body_)) return t->images[x_index];
    const auto& gs = std::get<std::vector<Expr>>(body_);
    std::vector<double> x = xg_->point(x_index);
    std::vector<std::size_t> out;
    for (std::size_t yi = 0; yi < yg_->size(); ++yi) {
        std::vector<double> y = yg_->point(yi);
        bool ok = true;
        for (const Expr& g : gs) {
            if (eval(g, x, y) > 0.0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(yi);
    }
    if (out.empty())
        throw EmptyImageError(x_index, x,
                              "constraints leave no feasible y at x-grid point " +
                                  std::to_string(x_index));
    return out;
}

const std::vector<Expr>* SetValuedMap::constraint_exprs() const {
    return std::get_if<std::vector<Expr>>(&body_);
}

GraphSample graph_sample(const SetValuedMap& map, const CompactWindow& window) {
    GraphSample sample{window, map.y_grid(), {}};
    for (std::size_t xi : window.indices())
        for (std::size_t yi : map.image(xi)) sample.pairs.emplace_back(xi, yi);
    return sample;
}

double dist_to_image(const SetValuedMap& map, std::size_t y_index, std::size_t x_index) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t yi : map.image(x_index))
        best = std::min(best, map.y_grid()->distance(y_index, yi));
    return best;
}

namespace {

Json map_tolerances(double delta, double eps) {
    return Json{{"delta", delta}, {"eps", eps}};
}

// Ordered neighbor pairs (a, b) with a < b in index (= coordinate-lex) order,
// restricted to `window` when given.
std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs(const SetValuedMap& map,
                                                               double delta,
                                                               const CompactWindow* window) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const GridSpace& xg = *map.x_grid();
    std::vector<std::size_t> xs =
        window ? window->indices() : CompactWindow::whole(map.x_grid()).indices();
    for (std::size_t a : xs) {
        for (std::size_t b : neighbors(xg, a, delta)) {
            if (b <= a) continue;
            if (window && !window->contains(b)) continue;
            out.emplace_back(a, b);
        }
    }
    return out;
}

// Shared body of the two semicontinuity checks. `from_second` selects which
// image of the ordered pair must embed into the other within eps.
CheckReport semicontinuity_check(const std::string& name, const SetValuedMap& map, double delta,
                                 double eps, bool from_second, const CompactWindow* window) {
    if (!(delta > 0.0) || !(eps > 0.0)) throw Error(name + ": tolerances must be positive");
    CheckReport report;
    report.name = name;
    report.tolerances = map_tolerances(delta, eps);
    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();
    std::size_t examined = 0;
    for (auto [a, b] : ordered_pairs(map, delta, window)) {
        std::size_t src = from_second ? b : a;
        std::size_t dst = from_second ? a : b;
        for (std::size_t y : map.image(src)) {
            ++examined;
            double d = dist_to_image(map, y, dst);
            if (d > eps) {
                report.status = Status::Fail;
                report.add_witness(Witness{
                    {{"x", xg.point(a)}, {"x_prime", xg.point(b)},
                     {from_second ? "y_prime" : "y", yg.point(y)}},
                    {{"distance", d}},
                    from_second
                        ? "image point appears with no eps-close counterpart at the earlier x"
                        : "image point vanishes with no eps-close counterpart at the later x"});
            }
        }
    }
    report.set_counter("points_examined", examined);
    report.finalize();
    return report;
}

}  // namespace

CheckReport check_map_lsc(const SetValuedMap& map, double delta, double eps) {
    return semicontinuity_check("map-lsc", map, delta, eps, /*from_second=*/false, nullptr);
}

CheckReport check_map_usc(const SetValuedMap& map, double delta, double eps) {
    return semicontinuity_check("map-usc", map, delta, eps, /*from_second=*/true, nullptr);
}

CheckReport check_k_upper_semicompact(const SetValuedMap& map, const CompactWindow& window,
                                      double delta, double eps) {
    CheckReport usc = semicontinuity_check("map-usc", map, delta, eps, true, &window);
    CheckReport report;
    report.name = "k-upper-semicompact";
    report.tolerances = map_tolerances(delta, eps);
    report.status = usc.status;
    report.witnesses = usc.witnesses;
    report.set_counter("points_examined", usc.counter("points_examined"));

    const GridSpace& yg = *map.y_grid();
    std::size_t contacts = 0;
    for (auto [xi, yi] : graph_sample(map, window).pairs) {
        if (yg.on_boundary(yi)) {
            ++contacts;
            if (report.status == Status::Pass) report.status = Status::Warn;
            if (contacts <= CheckReport::witness_cap)
                report.add_witness(Witness{{{"x", map.x_grid()->point(xi)}, {"y", yg.point(yi)}},
                                           {},
                                           "graph touches the sampled y-boundary; compactness "
                                           "beyond the window cannot be affirmed"});
        }
    }
    report.set_counter("boundary_contacts", contacts);
    report.finalize();
    return report;
}

std::vector<std::vector<std::size_t>> selections_for_path(const SetValuedMap& map,
                                                          const SequencePath& path,
                                                          std::size_t random_count,
                                                          std::uint64_t seed,
                                                          std::size_t path_index,
                                                          const Objective* objective) {
    std::size_t length = path.points.size();
    std::vector<std::vector<std::size_t>> images;
    images.reserve(length);
    for (std::size_t xk : path.points) images.push_back(map.image(xk));

    std::vector<std::vector<std::size_t>> selections;

    std::vector<std::size_t> far;
    far.reserve(length);
    for (std::size_t k = 0; k < length; ++k) {
        std::size_t best = images[k].front();
        double best_d = -1.0;
        for (std::size_t y : images[k]) {
            double d = dist_to_image(map, y, path.limit);
            if (d > best_d) {
                best_d = d;
                best = y;
            }
        }
        far.push_back(best);
    }
    selections.push_back(std::move(far));

    if (objective) {
        const GridSpace& xg = *map.x_grid();
        const GridSpace& yg = *map.y_grid();
        std::vector<std::size_t> greedy;
        greedy.reserve(length);
        for (std::size_t k = 0; k < length; ++k) {
            std::size_t best = images[k].front();
            double best_u = objective->at_indices(xg, yg, path.points[k], best);
            for (std::size_t y : images[k]) {
                double u = objective->at_indices(xg, yg, path.points[k], y);
                if (u < best_u) {
                    best_u = u;
                    best = y;
                }
            }
            greedy.push_back(best);
        }
        selections.push_back(std::move(greedy));
    }

    std::mt19937_64 rng(mix_seed(seed, path_index));
    for (std::size_t s = 0; s < random_count; ++s) {
        std::vector<std::size_t> sel;
        sel.reserve(length);
        for (std::size_t k = 0; k < length; ++k)
            sel.push_back(images[k][uniform_below(rng, images[k].size())]);
        selections.push_back(std::move(sel));
    }
    return selections;
}

CheckReport check_kn_upper_semicompact(const SetValuedMap& map,
                                       const std::vector<SequencePath>& paths, double eps,
                                       std::size_t selections_per_path, std::uint64_t seed,
                                       const Objective* objective) {
    if (!(eps > 0.0)) throw Error("kn-upper-semicompact: eps must be positive");
    CheckReport report;
    report.name = "kn-upper-semicompact";
    report.tolerances = Json{{"eps", eps}};
    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();
    std::size_t selections_checked = 0;
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        const SequencePath& path = paths[pi];
        validate_path(xg, path);
        for (const auto& sel :
             selections_for_path(map, path, selections_per_path, seed, pi, objective)) {
            ++selections_checked;
            std::size_t length = path.points.size();
            std::size_t matched = 0;
            for (std::size_t k = 0; k < length; ++k)
                if (dist_to_image(map, sel[k], path.limit) <= eps) ++matched;
            std::size_t required = (length + 3) / 4;
            if (matched < required) {
                report.status = Status::Fail;
                std::size_t worst_k = 0;
                double worst_d = -1.0;
                for (std::size_t k = 0; k < length; ++k) {
                    double d = dist_to_image(map, sel[k], path.limit);
                    if (d > worst_d) {
                        worst_d = d;
                        worst_k = k;
                    }
                }
                report.add_witness(
                    Witness{{{"limit", xg.point(path.limit)},
                             {"x_k", xg.point(path.points[worst_k])},
                             {"y_k", yg.point(sel[worst_k])}},
                            {{"distance_to_limit_image", worst_d},
                             {"matched_indices", static_cast<double>(matched)},
                             {"required_indices", static_cast<double>(required)}},
                            "selection along the path accumulates outside the limit image"});
            }
        }
    }
    report.set_counter("paths", paths.size());
    report.set_counter("selections_checked", selections_checked);
    report.finalize();
    return report;
}

}  // namespace berge
