#include "berge/problem.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace berge {

const std::vector<std::string> kAllChecks = {
    "map-lsc",      "map-usc",        "k-upper-semicompact", "kn-upper-semicompact",
    "function-lsc", "function-usc",   "inf-compact",         "k-inf-compact",
    "kn-inf-compact"};

const std::vector<std::string> kDefaultTheorems = {"maximum-kn", "value-lsc", "solution-props",
                                                   "infcompact-corollary"};

Objective ProblemFile::objective() const {
    return Objective::from_expression(parse(objective_text, x_grid->dim(), y_grid->dim()),
                                      x_grid->dim(), y_grid->dim());
}

SetValuedMap ProblemFile::map() const {
    std::vector<Expr> gs;
    gs.reserve(constraint_texts.size());
    for (const std::string& g : constraint_texts)
        gs.push_back(parse(g, x_grid->dim(), y_grid->dim()));
    return SetValuedMap::constraints(x_grid, y_grid, std::move(gs));
}

namespace {

void require_keys(const Json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw SchemaError(where.empty() ? it.key() : where + "." + it.key(),
                              "unknown field");
}

double as_real(const Json& j, const std::string& field) {
    if (!j.is_number()) throw SchemaError(field, "expected a real number");
    return j.get<double>();
}

std::size_t as_count(const Json& j, const std::string& field) {
    if (!j.is_number_unsigned()) throw SchemaError(field, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

GridPtr parse_space(const Json& doc, const std::string& field) {
    if (!doc.contains(field)) throw SchemaError(field, "required object is missing");
    const Json& space = doc[field];
    if (!space.is_object()) throw SchemaError(field, "expected an object");
    require_keys(space, field, {"windows", "counts"});
    if (!space.contains("windows") || !space["windows"].is_array() || space["windows"].empty())
        throw SchemaError(field + ".windows", "expected a nonempty array of [lo, hi] pairs");
    if (!space.contains("counts") || !space["counts"].is_array())
        throw SchemaError(field + ".counts", "expected an array of point counts");
    std::vector<std::pair<double, double>> windows;
    for (const Json& w : space["windows"]) {
        if (!w.is_array() || w.size() != 2)
            throw SchemaError(field + ".windows", "each window must be a [lo, hi] pair");
        windows.emplace_back(as_real(w[0], field + ".windows"), as_real(w[1], field + ".windows"));
    }
    std::vector<std::size_t> counts;
    for (const Json& c : space["counts"]) counts.push_back(as_count(c, field + ".counts"));
    if (counts.size() != windows.size())
        throw SchemaError(field + ".counts", "counts and windows must have equal length");
    try {
        return build_grid(std::move(windows), std::move(counts));
    } catch (const InvalidWindow& e) {
        throw SchemaError(field, e.what());
    }
}

Tolerances parse_tolerances(const Json& doc) {
    Tolerances tol;
    if (!doc.contains("tolerances")) return tol;
    const Json& t = doc["tolerances"];
    if (!t.is_object()) throw SchemaError("tolerances", "expected an object");
    require_keys(t, "tolerances", {"delta", "eps", "delta_graph", "eps_val", "tau", "lambdas"});
    if (t.contains("delta")) tol.delta = as_real(t["delta"], "tolerances.delta");
    if (t.contains("eps")) tol.eps = as_real(t["eps"], "tolerances.eps");
    if (t.contains("delta_graph"))
        tol.delta_graph = as_real(t["delta_graph"], "tolerances.delta_graph");
    if (t.contains("eps_val")) tol.eps_val = as_real(t["eps_val"], "tolerances.eps_val");
    if (t.contains("tau")) tol.tau = as_real(t["tau"], "tolerances.tau");
    if (t.contains("lambdas")) {
        const Json& lam = t["lambdas"];
        if (lam.is_number())
            throw SchemaError("tolerances.lambdas",
                              "expected an array of reals, got a scalar; write [" + lam.dump() +
                                  "]");
        if (!lam.is_array() || lam.empty())
            throw SchemaError("tolerances.lambdas", "expected a nonempty array of reals");
        std::vector<double> lambdas;
        for (const Json& l : lam) lambdas.push_back(as_real(l, "tolerances.lambdas"));
        tol.lambdas = std::move(lambdas);
    }
    return tol;
}

PathBudget parse_budget(const Json& doc) {
    PathBudget budget;
    if (!doc.contains("paths")) return budget;
    const Json& p = doc["paths"];
    if (!p.is_object()) throw SchemaError("paths", "expected an object");
    require_keys(p, "paths", {"length", "count", "selections", "seed"});
    if (p.contains("length")) budget.length = as_count(p["length"], "paths.length");
    if (p.contains("count")) budget.count = as_count(p["count"], "paths.count");
    if (p.contains("selections")) budget.selections = as_count(p["selections"], "paths.selections");
    if (p.contains("seed")) budget.seed = as_count(p["seed"], "paths.seed");
    if (budget.length < 2) throw SchemaError("paths.length", "must be at least 2");
    if (budget.count < 1) throw SchemaError("paths.count", "must be at least 1");
    return budget;
}

std::vector<CompactWindow> parse_windows(const Json& doc, const GridPtr& xg) {
    std::vector<CompactWindow> windows;
    if (!doc.contains("windows")) return windows;
    if (!doc["windows"].is_array()) throw SchemaError("windows", "expected an array");
    for (const Json& w : doc["windows"]) {
        if (!w.is_object()) throw SchemaError("windows", "each window must be an object");
        require_keys(w, "windows", {"lo", "hi"});
        if (!w.contains("lo") || !w.contains("hi"))
            throw SchemaError("windows", "each window needs index arrays lo and hi");
        std::vector<std::size_t> lo, hi;
        for (const Json& v : w["lo"]) lo.push_back(as_count(v, "windows.lo"));
        for (const Json& v : w["hi"]) hi.push_back(as_count(v, "windows.hi"));
        try {
            windows.emplace_back(xg, std::move(lo), std::move(hi));
        } catch (const InvalidWindow& e) {
            throw SchemaError("windows", e.what());
        }
    }
    return windows;
}

std::vector<std::string> parse_names(const Json& doc, const std::string& field,
                                     const std::vector<std::string>& known) {
    std::vector<std::string> names;
    if (!doc.contains(field)) return names;
    if (!doc[field].is_array()) throw SchemaError(field, "expected an array of names");
    for (const Json& n : doc[field]) {
        if (!n.is_string()) throw SchemaError(field, "expected strings");
        std::string name = n.get<std::string>();
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw SchemaError(field, "unknown name \"" + name + "\"");
        names.push_back(std::move(name));
    }
    return names;
}

}  // namespace

ProblemFile parse_problem_json(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("", "problem file must be a JSON object");
    require_keys(doc, "",
                 {"x_space", "y_space", "objective", "constraints", "tolerances", "paths",
                  "windows", "refine_factors", "checks", "theorems"});
    ProblemFile problem;
    problem.x_grid = parse_space(doc, "x_space");
    problem.y_grid = parse_space(doc, "y_space");
    if (!doc.contains("objective") || !doc["objective"].is_string())
        throw SchemaError("objective", "required expression string is missing");
    problem.objective_text = doc["objective"].get<std::string>();
    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array())
            throw SchemaError("constraints", "expected an array of expression strings");
        for (const Json& g : doc["constraints"]) {
            if (!g.is_string()) throw SchemaError("constraints", "expected expression strings");
            problem.constraint_texts.push_back(g.get<std::string>());
        }
    }
    problem.tolerances = parse_tolerances(doc);
    problem.paths = parse_budget(doc);
    problem.windows = parse_windows(doc, problem.x_grid);
    if (doc.contains("refine_factors")) {
        if (!doc["refine_factors"].is_array())
            throw SchemaError("refine_factors", "expected an array of integers >= 2");
        for (const Json& f : doc["refine_factors"]) {
            std::size_t factor = as_count(f, "refine_factors");
            if (factor < 2) throw SchemaError("refine_factors", "factors must be at least 2");
            problem.refine_factors.push_back(factor);
        }
    }
    std::vector<std::string> known_theorems = kDefaultTheorems;
    known_theorems.push_back("maximum-cg");
    problem.checks = parse_names(doc, "checks", kAllChecks);
    problem.theorems = parse_names(doc, "theorems", known_theorems);

    // Surface expression problems at load time, with the field name.
    try {
        (void)problem.objective();
    } catch (const Error& e) {
        throw SchemaError("objective", e.what());
    }
    try {
        (void)problem.map();
    } catch (const Error& e) {
        throw SchemaError("constraints", e.what());
    }
    return problem;
}

ProblemFile parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open problem file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("not valid JSON: ") + e.what());
    }
    return parse_problem_json(doc);
}

}  // namespace berge
