#include "berge/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "berge/extreal.hpp"
#include "berge/harness.hpp"
#include "berge/ordinal.hpp"
#include "berge/problem.hpp"
#include "berge/solver.hpp"

namespace berge::cli {

namespace {

struct Options {
    std::string problem_path;
    std::string format = "text";
    std::string probe = "0";
    std::uint64_t seed = 0;
    bool strict_warn = false;
    std::size_t k_batches = 100;
};

int exit_code_for(Status final_status, bool any_fail, bool strict_warn) {
    if (any_fail || final_status == Status::Fail) return exit_fail;
    if (final_status == Status::Warn && strict_warn) return exit_warn;
    return exit_ok;
}

Status aggregate(const std::vector<CheckReport>& reports) {
    Status s = Status::Pass;
    for (const CheckReport& r : reports) s = worst(s, r.status);
    return s;
}

std::string format_value(double v) {
    Json j = ext_to_json(v);
    return j.is_string() ? j.get<std::string>() : j.dump();
}

void print_witnesses(std::ostream& out, const CheckReport& r) {
    std::size_t shown = std::min<std::size_t>(r.witnesses.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
        const Witness& w = r.witnesses[i];
        out << "    witness: " << w.reason << "\n";
        for (const auto& [label, coords] : w.points) {
            out << "      " << label << " = (";
            for (std::size_t k = 0; k < coords.size(); ++k)
                out << (k ? ", " : "") << format_value(coords[k]);
            out << ")\n";
        }
        for (const auto& [label, value] : w.values)
            out << "      " << label << " = " << format_value(value) << "\n";
    }
    if (r.witnesses.size() > shown)
        out << "    (" << r.witnesses.size() - shown << " more witnesses)\n";
}

void print_check_table(std::ostream& out, const std::vector<CheckReport>& reports) {
    std::size_t width = 8;
    for (const CheckReport& r : reports) width = std::max(width, r.name.size());
    out << std::left << std::setw(static_cast<int>(width) + 2) << "check"
        << std::setw(8) << "status" << "witnesses\n";
    for (const CheckReport& r : reports) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << r.name << std::setw(8)
            << to_string(r.status) << r.counter("witnesses_total") << "\n";
        if (r.status != Status::Pass) print_witnesses(out, r);
    }
}

// ---- check ----------------------------------------------------------------

std::vector<CheckReport> run_checks(const ProblemFile& problem) {
    Objective u = problem.objective();
    SetValuedMap map = problem.map();
    CompactWindow whole = CompactWindow::whole(map.x_grid());
    GraphSample sample = graph_sample(map, whole);
    ResolvedTolerances rt = resolve(problem.tolerances, u, map, sample);
    std::vector<CompactWindow> windows = problem.windows;
    if (windows.empty()) windows.push_back(whole);

    std::vector<std::string> names = problem.checks.empty() ? kAllChecks : problem.checks;
    std::vector<CheckReport> reports;
    for (const std::string& name : names) {
        if (name == "map-lsc") {
            reports.push_back(check_map_lsc(map, rt.delta, rt.eps));
        } else if (name == "map-usc") {
            reports.push_back(check_map_usc(map, rt.delta, rt.eps));
        } else if (name == "k-upper-semicompact") {
            for (const CompactWindow& w : windows)
                reports.push_back(check_k_upper_semicompact(map, w, rt.delta, rt.eps));
        } else if (name == "kn-upper-semicompact") {
            reports.push_back(check_kn_upper_semicompact(
                map, theorem_paths(map.x_grid(), problem.paths), rt.eps,
                problem.paths.selections, problem.paths.seed, &u));
        } else if (name == "function-lsc") {
            reports.push_back(check_function_lsc(u, sample, rt.delta_graph, rt.eps_val));
        } else if (name == "function-usc") {
            reports.push_back(check_function_usc(u, sample, rt.delta_graph, rt.eps_val));
        } else if (name == "inf-compact") {
            reports.push_back(check_inf_compact(u, sample, rt.lambdas, rt.delta_graph, rt.eps_val));
        } else if (name == "k-inf-compact") {
            reports.push_back(
                check_k_inf_compact(u, map, windows, rt.lambdas, rt.delta_graph, rt.eps_val));
        } else if (name == "kn-inf-compact") {
            SolveResult solved = solve(u, map, rt.tau);
            double lambda = rt.lambdas.empty() ? 0.0 : rt.lambdas.back();
            for (double v : solved.value.values)
                if (ext::is_finite(v)) lambda = std::max(lambda, v);
            reports.push_back(check_kn_inf_compact(
                u, map, theorem_paths(map.x_grid(), problem.paths), lambda, rt.eps,
                problem.paths.selections, problem.paths.seed, rt.delta_graph, rt.eps_val));
        }
    }
    return reports;
}

int cmd_check(const Options& opt, std::ostream& out) {
    ProblemFile problem = parse_problem_file(opt.problem_path);
    if (opt.seed != 0) problem.paths.seed = opt.seed;
    std::vector<CheckReport> reports = run_checks(problem);
    Status status = aggregate(reports);
    if (opt.format == "json") {
        Json doc{{"schema_version", 1}, {"command", "check"}, {"status", to_string(status)}};
        Json arr = Json::array();
        for (const CheckReport& r : reports) arr.push_back(to_json(r));
        doc["checks"] = std::move(arr);
        out << doc.dump(2) << "\n";
    } else {
        print_check_table(out, reports);
        out << "overall: " << to_string(status) << "\n";
    }
    return exit_code_for(status, status == Status::Fail, opt.strict_warn);
}

// ---- solve ----------------------------------------------------------------

int cmd_solve(const Options& opt, std::ostream& out) {
    ProblemFile problem = parse_problem_file(opt.problem_path);
    Objective u = problem.objective();
    SetValuedMap map = problem.map();
    ResolvedTolerances rt =
        resolve(problem.tolerances, u, map, graph_sample(map, CompactWindow::whole(map.x_grid())));
    SolveResult solved = solve(u, map, rt.tau);
    const GridSpace& xg = *map.x_grid();
    const GridSpace& yg = *map.y_grid();

    std::vector<RefineStep> refine;
    if (!problem.refine_factors.empty()) refine = refine_compare(u, map, problem.refine_factors);

    if (opt.format == "json") {
        Json rows = Json::array();
        for (std::size_t x = 0; x < xg.size(); ++x) {
            Json xs = Json::array();
            for (double c : xg.point(x)) xs.push_back(c);
            Json argmins = Json::array();
            for (std::size_t y : solved.solution.argmins[x]) {
                Json ys = Json::array();
                for (double c : yg.point(y)) ys.push_back(c);
                argmins.push_back(std::move(ys));
            }
            rows.push_back(Json{{"x", std::move(xs)},
                                {"value", ext_to_json(solved.value.values[x])},
                                {"argmin", std::move(argmins)}});
        }
        Json doc{{"schema_version", 1},
                 {"command", "solve"},
                 {"tau", rt.tau},
                 {"table", std::move(rows)}};
        if (!refine.empty()) {
            Json steps = Json::array();
            for (const RefineStep& s : refine)
                steps.push_back(Json{{"factor", s.factor}, {"sup_diff", s.sup_diff}});
            doc["refine"] = std::move(steps);
        }
        out << doc.dump(2) << "\n";
    } else {
        out << "x -> v(x), argmin set (tau = " << rt.tau << ")\n";
        for (std::size_t x = 0; x < xg.size(); ++x) {
            out << "  (";
            std::vector<double> p = xg.point(x);
            for (std::size_t k = 0; k < p.size(); ++k) out << (k ? ", " : "") << p[k];
            out << ") -> " << format_value(solved.value.values[x]) << ", {";
            const auto& arg = solved.solution.argmins[x];
            for (std::size_t i = 0; i < arg.size(); ++i) {
                std::vector<double> q = yg.point(arg[i]);
                out << (i ? ", " : "") << "(";
                for (std::size_t k = 0; k < q.size(); ++k) out << (k ? ", " : "") << q[k];
                out << ")";
            }
            out << "}\n";
        }
        for (const RefineStep& s : refine)
            out << "refine x" << s.factor << ": sup |v - v_refined| = " << s.sup_diff << "\n";
    }
    return exit_ok;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const Options& opt, std::ostream& out) {
    ProblemFile problem = parse_problem_file(opt.problem_path);
    if (opt.seed != 0) problem.paths.seed = opt.seed;
    Objective u = problem.objective();
    SetValuedMap map = problem.map();
    std::vector<std::string> names =
        problem.theorems.empty() ? kDefaultTheorems : problem.theorems;

    std::vector<TheoremReport> reports;
    for (const std::string& name : names) {
        if (name == "maximum-kn") {
            reports.push_back(verify_maximum_theorem(u, map, problem.tolerances, problem.paths,
                                                     {MaximumVariant::NetBased}));
        } else if (name == "maximum-cg") {
            reports.push_back(verify_maximum_theorem(u, map, problem.tolerances, problem.paths,
                                                     {MaximumVariant::CompactlyGenerated}));
        } else if (name == "value-lsc") {
            reports.push_back(verify_value_semicontinuity(u, map, problem.tolerances,
                                                          problem.paths, problem.windows));
        } else if (name == "solution-props") {
            reports.push_back(verify_solution_properties(u, map, problem.tolerances));
        } else if (name == "infcompact-corollary") {
            reports.push_back(verify_infcompact_corollary(u, map, problem.tolerances));
        }
    }

    bool any_fail = false, any_warn = false;
    for (const TheoremReport& r : reports) {
        if (r.verdict == Verdict::Contradiction) any_fail = true;
        if (r.verdict == Verdict::HypothesisFailed) any_warn = true;
    }

    if (opt.format == "json") {
        Json arr = Json::array();
        for (const TheoremReport& r : reports) arr.push_back(to_json(r));
        Json doc{{"schema_version", 1}, {"command", "verify"}, {"theorems", std::move(arr)}};
        out << doc.dump(2) << "\n";
    } else {
        std::size_t width = 10;
        for (const TheoremReport& r : reports) width = std::max(width, r.theorem.size());
        out << std::left << std::setw(static_cast<int>(width) + 2) << "theorem" << "verdict\n";
        for (const TheoremReport& r : reports) {
            out << std::left << std::setw(static_cast<int>(width) + 2) << r.theorem
                << (r.verdict == Verdict::Contradiction ? "CONTRADICTION" : to_string(r.verdict))
                << "\n";
            for (const CheckReport& h : r.hypotheses)
                if (h.status != Status::Pass)
                    out << "  hypothesis " << h.name << ": " << to_string(h.status) << "\n";
            for (const CheckReport& c : r.conclusions)
                if (c.status != Status::Pass)
                    out << "  conclusion " << c.name << ": " << to_string(c.status) << "\n";
            if (r.witness) {
                out << "  contradiction witness: " << r.witness->reason << "\n";
            }
        }
    }
    // A hypothesis-failed verdict is reported through the warn channel: the
    // instance is not refuted, the certification just could not go through.
    if (any_fail) return exit_fail;
    if (any_warn && opt.strict_warn) return exit_warn;
    return exit_ok;
}

// ---- ordinal-demo ---------------------------------------------------------

int cmd_ordinal_demo(const Options& opt, std::ostream& out) {
    Ordinal probe = parse_ordinal(opt.probe);
    auto batches = random_k_batches(opt.k_batches, 20, opt.seed);
    Json report = counterexample_report(probe, batches);
    if (opt.format == "json") {
        out << report.dump(2) << "\n";
    } else {
        out << "space: " << report["space"].get<std::string>() << "\n";
        out << "objective: u(x, y) = 0 for x != w1, u(w1, y) = 1; v = u\n";
        out << "probe s = " << report["probe"].get<std::string>() << "\n";
        out << "witness alpha = " << report["witness"]["alpha"].get<std::string>()
            << " (non-limit), with s < alpha < w1 and v(alpha) = 0\n";
        out << "level set {v <= 1/2} = X \\ {w1} is not closed: every neighborhood "
               "(s, w1] of w1 contains such an alpha\n";
        out << "liminf v = 0 < 1 = v(w1)  -- v is not lower semicontinuous\n";
        const Json& k = report["k_inf_compactness"];
        out << "finite-K inf-compactness: " << k["batches_checked"].get<std::size_t>()
            << " batches, all compact with finite level sets: "
            << (k["all_compact"].get<bool>() ? "yes" : "NO") << "\n";
    }
    const Json& k = report["k_inf_compactness"];
    return k["all_compact"].get<bool>() ? exit_ok : exit_fail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"value functions, solution maps, and semicontinuity certificates for "
                 "parametric minimization on grids"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_problem) {
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--seed", opt.seed, "seed override for path and selection sampling");
        cmd->add_flag("--strict-warn", opt.strict_warn,
                      "exit with code 3 when the only findings are warnings");
        if (needs_problem)
            cmd->add_option("--problem", opt.problem_path, "problem file (JSON)")->required();
    };

    CLI::App* check = app.add_subcommand("check", "run the definitional checks");
    add_common(check, true);
    CLI::App* solve_cmd = app.add_subcommand("solve", "compute v and the argmin map");
    add_common(solve_cmd, true);
    CLI::App* verify = app.add_subcommand("verify", "verify theorem instances end to end");
    add_common(verify, true);
    CLI::App* ordinal = app.add_subcommand("ordinal-demo",
                                           "reproduce the ordinal-space counterexample");
    add_common(ordinal, false);
    ordinal->add_option("--probe", opt.probe, "countable ordinal, e.g. \"w^2*3 + w + 4\"");
    ordinal->add_option("--k-batches", opt.k_batches, "number of random finite subsets to check");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    try {
        if (check->parsed()) return cmd_check(opt, out);
        if (solve_cmd->parsed()) return cmd_solve(opt, out);
        if (verify->parsed()) return cmd_verify(opt, out);
        if (ordinal->parsed()) return cmd_ordinal_demo(opt, out);
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    err << "error: no command given\n";
    return exit_input_error;
}

}  // namespace berge::cli
