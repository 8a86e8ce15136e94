#include "berge/objective.hpp"

#include <algorithm>
#include <cmath>

#include "berge/extreal.hpp"
#include "berge/rng.hpp"

namespace berge {

Objective Objective::from_expression(Expr e, std::size_t x_dim, std::size_t y_dim) {
    Objective u;
    u.x_dim_ = x_dim;
    u.y_dim_ = y_dim;
    u.expr_ = std::move(e);
    return u;
}

Objective Objective::from_table(GridPtr x_grid, GridPtr y_grid, std::vector<double> values) {
    if (values.size() != x_grid->size() * y_grid->size())
        throw Error("objective table must cover the full grid pair");
    Objective u;
    u.x_dim_ = x_grid->dim();
    u.y_dim_ = y_grid->dim();
    u.table_xg_ = std::move(x_grid);
    u.table_yg_ = std::move(y_grid);
    u.table_ = std::make_shared<const std::vector<double>>(std::move(values));
    return u;
}

Objective Objective::from_function(Fn fn, std::size_t x_dim, std::size_t y_dim) {
    Objective u;
    u.x_dim_ = x_dim;
    u.y_dim_ = y_dim;
    u.fn_ = std::move(fn);
    return u;
}

double Objective::at(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != x_dim_ || y.size() != y_dim_)
        throw DimensionError("objective input lengths do not match the declared dimensions");
    if (expr_) return eval(*expr_, x, y);
    if (fn_) return fn_(x, y);
    std::size_t xi = table_xg_->nearest(std::vector<double>(x.begin(), x.end()));
    std::size_t yi = table_yg_->nearest(std::vector<double>(y.begin(), y.end()));
    return (*table_)[xi * table_yg_->size() + yi];
}

double Objective::at_indices(const GridSpace& x_grid, const GridSpace& y_grid,
                             std::size_t x_index, std::size_t y_index) const {
    if (table_) {
        if (x_grid.size() != table_xg_->size() || y_grid.size() != table_yg_->size())
            throw Error("table-backed objective evaluated against a different grid pair");
        return (*table_)[x_index * table_yg_->size() + y_index];
    }
    std::vector<double> x = x_grid.point(x_index), y = y_grid.point(y_index);
    try {
        return expr_ ? eval(*expr_, x, y) : fn_(x, y);
    } catch (const DomainError& e) {
        std::string msg = e.what();
        msg += " at x = (";
        for (std::size_t k = 0; k < x.size(); ++k) msg += (k ? ", " : "") + std::to_string(x[k]);
        msg += "), y = (";
        for (std::size_t k = 0; k < y.size(); ++k) msg += (k ? ", " : "") + std::to_string(y[k]);
        msg += ")";
        throw DomainError(msg);
    }
}

Objective Objective::with_value(std::size_t x_index, std::size_t y_index, double v) const {
    if (!table_) throw Error("with_value requires a table-backed objective");
    std::vector<double> values = *table_;
    values[x_index * table_yg_->size() + y_index] = v;
    return from_table(table_xg_, table_yg_, std::move(values));
}

LevelSet level_set(const Objective& u, double lambda, const GraphSample& domain) {
    LevelSet set;
    set.lambda = lambda;
    const GridSpace& xg = *domain.window.grid();
    const GridSpace& yg = *domain.y_grid;
    for (auto [xi, yi] : domain.pairs)
        if (u.at_indices(xg, yg, xi, yi) <= lambda) set.members.emplace_back(xi, yi);
    return set;
}

CheckReport value_jump_scan(const std::string& name,
                            const std::vector<std::vector<double>>& points,
                            const std::vector<double>& values, double delta, double eps_val,
                            bool lsc) {
    if (!(delta > 0.0) || !(eps_val > 0.0)) throw Error(name + ": tolerances must be positive");
    CheckReport report;
    report.name = name;
    report.tolerances = Json{{"delta", delta}, {"eps_val", eps_val}};
    std::size_t n = points.size();
    std::size_t examined = 0;
    auto dist = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t k = 0; k < points[a].size(); ++k) {
            double d = points[a][k] - points[b][k];
            s += d * d;
        }
        return std::sqrt(s);
    };
    for (std::size_t i = 0; i < n; ++i) {
        bool any = false;
        double extreme = lsc ? ext::pos_inf : ext::neg_inf;
        std::size_t extreme_at = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || dist(i, j) > delta * (1.0 + 1e-12)) continue;
            any = true;
            if (lsc ? values[j] < extreme : values[j] > extreme) {
                extreme = values[j];
                extreme_at = j;
            }
        }
        if (!any) continue;  // isolated sample point: vacuous
        ++examined;
        bool violated = lsc ? values[i] > ext::add(extreme, eps_val)
                            : values[i] < ext::add(extreme, -eps_val);
        if (violated) {
            report.status = Status::Fail;
            report.add_witness(Witness{
                {{"point", points[i]}, {"neighbor", points[extreme_at]}},
                {{"value", values[i]}, {"neighbor_value", extreme}},
                lsc ? "value drops by more than eps_val toward this point"
                    : "value rises by more than eps_val toward this point"});
        }
    }
    report.set_counter("points_examined", examined);
    report.finalize();
    return report;
}

namespace {

std::vector<std::vector<double>> graph_points(const GraphSample& domain) {
    const GridSpace& xg = *domain.window.grid();
    const GridSpace& yg = *domain.y_grid;
    std::vector<std::vector<double>> points;
    points.reserve(domain.pairs.size());
    for (auto [xi, yi] : domain.pairs) {
        std::vector<double> p = xg.point(xi);
        std::vector<double> q = yg.point(yi);
        p.insert(p.end(), q.begin(), q.end());
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<double> graph_values(const Objective& u, const GraphSample& domain) {
    const GridSpace& xg = *domain.window.grid();
    const GridSpace& yg = *domain.y_grid;
    std::vector<double> values;
    values.reserve(domain.pairs.size());
    for (auto [xi, yi] : domain.pairs) values.push_back(u.at_indices(xg, yg, xi, yi));
    return values;
}

}  // namespace

CheckReport check_function_lsc(const Objective& u, const GraphSample& domain, double delta_graph,
                               double eps_val) {
    return value_jump_scan("function-lsc", graph_points(domain), graph_values(u, domain),
                           delta_graph, eps_val, /*lsc=*/true);
}

CheckReport check_function_usc(const Objective& u, const GraphSample& domain, double delta_graph,
                               double eps_val) {
    return value_jump_scan("function-usc", graph_points(domain), graph_values(u, domain),
                           delta_graph, eps_val, /*lsc=*/false);
}

CheckReport check_inf_compact(const Objective& u, const GraphSample& domain,
                              const std::vector<double>& lambdas, double delta_graph,
                              double eps_val) {
    if (lambdas.empty()) throw Error("inf-compact: lambda list must be nonempty");
    CheckReport report;
    report.name = "inf-compact";
    Json lam = Json::array();
    for (double l : lambdas) lam.push_back(l);
    report.tolerances = Json{{"delta_graph", delta_graph}, {"eps_val", eps_val}, {"lambdas", lam}};

    CheckReport lsc = check_function_lsc(u, domain, delta_graph, eps_val);
    report.status = lsc.status;
    report.witnesses = lsc.witnesses;
    report.set_counter("points_examined", lsc.counter("points_examined"));

    const GridSpace& xg = *domain.window.grid();
    const GridSpace& yg = *domain.y_grid;
    std::size_t contacts = 0;
    for (double lambda : lambdas) {
        for (auto [xi, yi] : level_set(u, lambda, domain).members) {
            if (yg.on_boundary(yi)) {
                ++contacts;
                if (report.status == Status::Pass) report.status = Status::Warn;
                if (contacts <= CheckReport::witness_cap)
                    report.add_witness(
                        Witness{{{"x", xg.point(xi)}, {"y", yg.point(yi)}},
                                {{"lambda", lambda}},
                                "level set touches the sampled y-boundary; boundedness beyond "
                                "the window cannot be affirmed"});
            }
        }
    }
    report.set_counter("boundary_contacts", contacts);
    report.finalize();
    return report;
}

CheckReport check_k_inf_compact(const Objective& u, const SetValuedMap& map,
                                const std::vector<CompactWindow>& windows,
                                const std::vector<double>& lambdas, double delta_graph,
                                double eps_val) {
    if (windows.empty()) throw Error("k-inf-compact: window list must be nonempty");
    CheckReport report;
    report.name = "k-inf-compact";
    std::size_t examined = 0, contacts = 0;
    for (const CompactWindow& window : windows) {
        CheckReport sub = check_inf_compact(u, graph_sample(map, window), lambdas, delta_graph,
                                            eps_val);
        if (report.tolerances.empty()) report.tolerances = sub.tolerances;
        report.status = worst(report.status, sub.status);
        for (Witness& w : sub.witnesses) report.add_witness(std::move(w));
        examined += sub.counter("points_examined");
        contacts += sub.counter("boundary_contacts");
    }
    report.set_counter("windows", windows.size());
    report.set_counter("points_examined", examined);
    report.set_counter("boundary_contacts", contacts);
    report.finalize();
    return report;
}

CheckReport check_kn_inf_compact(const Objective& u, const SetValuedMap& map,
                                 const std::vector<SequencePath>& paths, double lambda, double eps,
                                 std::size_t selections_per_path, std::uint64_t seed,
                                 double delta_graph, double eps_val) {
    if (!(eps > 0.0)) throw Error("kn-inf-compact: eps must be positive");
    CheckReport report;
    report.name = "kn-inf-compact";
    report.tolerances = Json{{"lambda", lambda},
                             {"eps", eps},
                             {"delta_graph", delta_graph},
                             {"eps_val", eps_val}};

    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();

    // (i) lower semicontinuity of u on the full graph.
    GraphSample full = graph_sample(map, CompactWindow::whole(map.x_grid()));
    CheckReport lsc = check_function_lsc(u, full, delta_graph, eps_val);
    report.status = lsc.status;
    report.witnesses = lsc.witnesses;
    report.set_counter("points_examined", lsc.counter("points_examined"));

    // (ii) accumulation of admissible selections near the limit image.
    std::size_t selections_checked = 0, paths_skipped = 0;
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        const SequencePath& path = paths[pi];
        validate_path(xg, path);
        for (const auto& sel : selections_for_path(map, path, selections_per_path, seed, pi, &u)) {
            std::size_t length = path.points.size();
            std::size_t admissible = 0, matched = 0;
            std::size_t worst_k = length;
            double worst_d = -1.0;
            for (std::size_t k = 0; k < length; ++k) {
                if (u.at_indices(xg, yg, path.points[k], sel[k]) > lambda) continue;
                ++admissible;
                double d = dist_to_image(map, sel[k], path.limit);
                if (d <= eps) {
                    ++matched;
                } else if (d > worst_d) {
                    worst_d = d;
                    worst_k = k;
                }
            }
            if (admissible == 0) {
                ++paths_skipped;
                continue;
            }
            ++selections_checked;
            std::size_t required = (admissible + 3) / 4;
            if (matched < required) {
                report.status = worst(report.status, Status::Fail);
                report.add_witness(
                    Witness{{{"limit", xg.point(path.limit)},
                             {"x_k", xg.point(path.points[worst_k])},
                             {"y_k", yg.point(sel[worst_k])}},
                            {{"distance_to_limit_image", worst_d},
                             {"matched_indices", static_cast<double>(matched)},
                             {"required_indices", static_cast<double>(required)},
                             {"admissible_indices", static_cast<double>(admissible)}},
                            "admissible selection accumulates outside the limit image"});
            }
        }
    }
    report.set_counter("paths", paths.size());
    report.set_counter("selections_checked", selections_checked);
    report.set_counter("selections_skipped", paths_skipped);
    report.finalize();
    return report;
}

Json ResolvedTolerances::to_json() const {
    Json lam = Json::array();
    for (double l : lambdas) lam.push_back(l);
    return Json{{"delta", delta},     {"eps", eps}, {"delta_graph", delta_graph},
                {"eps_val", eps_val}, {"tau", tau}, {"lambdas", lam}};
}

ResolvedTolerances resolve(const Tolerances& tol, const Objective& u, const SetValuedMap& map,
                           const GraphSample& sample) {
    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();
    ResolvedTolerances r;
    r.delta = tol.delta.value_or(1.5 * xg.mesh_width());
    r.eps = tol.eps.value_or(1.5 * yg.mesh_width());
    r.delta_graph = tol.delta_graph.value_or(std::sqrt(r.delta * r.delta + r.eps * r.eps));
    if (tol.eps_val) {
        r.eps_val = *tol.eps_val;
    } else {
        double diam2 = 0.0;
        for (std::size_t k = 0; k < xg.dim(); ++k) {
            double w = xg.hi(k) - xg.lo(k);
            diam2 += w * w;
        }
        for (std::size_t k = 0; k < yg.dim(); ++k) {
            double w = yg.hi(k) - yg.lo(k);
            diam2 += w * w;
        }
        r.eps_val = 2.0 * std::sqrt(diam2) * std::max(xg.mesh_width(), yg.mesh_width());
    }
    r.tau = tol.tau.value_or(0.0);
    if (tol.lambdas && !tol.lambdas->empty()) {
        r.lambdas = *tol.lambdas;
    } else {
        std::vector<double> finite;
        for (auto [xi, yi] : sample.pairs) {
            double v = u.at_indices(xg, yg, xi, yi);
            if (ext::is_finite(v)) finite.push_back(v);
        }
        if (finite.empty()) {
            r.lambdas = {0.0};
        } else {
            std::sort(finite.begin(), finite.end());
            double lo = finite.front();
            double median = finite[(finite.size() - 1) / 2];
            if (median <= lo) {
                r.lambdas = {lo};
            } else {
                for (int i = 0; i < 5; ++i)
                    r.lambdas.push_back(lo + (median - lo) * static_cast<double>(i) / 4.0);
            }
        }
    }
    return r;
}

}  // namespace berge
