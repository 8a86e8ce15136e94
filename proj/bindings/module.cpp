#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "berge/cli.hpp"
#include "berge/expr.hpp"
#include "berge/ordinal.hpp"
#include "berge/problem.hpp"

namespace py = pybind11;

namespace {

// Full command pipeline over a problem JSON document, in process.
// Returns (exit_code, output_text, error_text).
std::tuple<int, std::string, std::string> run_problem(const std::string& command,
                                                      const std::string& problem_json,
                                                      const std::string& format,
                                                      std::uint64_t seed, bool strict_warn) {
    // Stage the document through a temp file so the CLI path (including the
    // schema validation and exit-code policy) is exercised end to end.
    std::string path = "berge_problem_" + std::to_string(::getpid()) + ".json";
    {
        std::ofstream f(path);
        f << problem_json;
    }
    std::vector<std::string> args{command, "--problem", path, "--format", format};
    if (seed != 0) {
        args.push_back("--seed");
        args.push_back(std::to_string(seed));
    }
    if (strict_warn) args.push_back("--strict-warn");
    std::ostringstream out, err;
    int code = berge::cli::run(args, out, err);
    std::remove(path.c_str());
    return {code, out.str(), err.str()};
}

std::tuple<int, std::string, std::string> ordinal_demo(const std::string& probe,
                                                       std::size_t k_batches, std::uint64_t seed,
                                                       const std::string& format) {
    std::vector<std::string> args{"ordinal-demo", "--probe", probe,
                                  "--k-batches", std::to_string(k_batches),
                                  "--format", format};
    if (seed != 0) {
        args.push_back("--seed");
        args.push_back(std::to_string(seed));
    }
    std::ostringstream out, err;
    int code = berge::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "value functions, argmin maps, and semicontinuity certificates for parametric "
              "minimization on grids";

    m.def("parse_expression",
          [](const std::string& text, std::size_t x_dim, std::size_t y_dim) {
              return berge::render(berge::parse(text, x_dim, y_dim));
          },
          py::arg("text"), py::arg("x_dim"), py::arg("y_dim"),
          "Parse an expression and return its canonical rendering.");

    m.def("eval_expression",
          [](const std::string& text, std::size_t x_dim, std::size_t y_dim,
             const std::vector<double>& x, const std::vector<double>& y) {
              return berge::eval(berge::parse(text, x_dim, y_dim), x, y);
          },
          py::arg("text"), py::arg("x_dim"), py::arg("y_dim"), py::arg("x"), py::arg("y"),
          "Evaluate an expression at the given point; infinities come back as floats.");

    m.def("run_problem", &run_problem, py::arg("command"), py::arg("problem_json"),
          py::arg("format") = "json", py::arg("seed") = 0, py::arg("strict_warn") = false,
          "Run check/solve/verify on a problem JSON document; returns "
          "(exit_code, stdout, stderr).");

    m.def("ordinal_demo", &ordinal_demo, py::arg("probe") = "0", py::arg("k_batches") = 100,
          py::arg("seed") = 0, py::arg("format") = "json",
          "Reproduce the ordinal-space counterexample report.");

    m.def("compare_ordinals",
          [](const std::string& a, const std::string& b) {
              auto c = berge::compare(berge::parse_ordinal(a), berge::parse_ordinal(b));
              return c < 0 ? -1 : c > 0 ? 1 : 0;
          },
          py::arg("a"), py::arg("b"), "Compare two ordinals in the w-power mini-syntax.");

    m.def("successor_ordinal",
          [](const std::string& a) {
              return berge::render_ordinal(berge::successor(berge::parse_ordinal(a)));
          },
          py::arg("a"), "Successor in Cantor normal form.");

    py::register_exception<berge::SyntaxError>(m, "ExpressionSyntaxError", PyExc_ValueError);
    py::register_exception<berge::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<berge::DomainError>(m, "DomainError", PyExc_ArithmeticError);

    m.attr("__version__") = "0.1.0";
}
