#pragma once

#include <string>
#include <vector>

#include "berge/harness.hpp"
#include "berge/objective.hpp"
#include "berge/setmap.hpp"

namespace berge {

/// Declarative problem instance as read from a JSON problem file.
struct ProblemFile {
    GridPtr x_grid;
    GridPtr y_grid;
    std::string objective_text;
    std::vector<std::string> constraint_texts;
    Tolerances tolerances;
    PathBudget paths;
    std::vector<CompactWindow> windows;       // for restricted checks; may be empty
    std::vector<std::size_t> refine_factors;  // optional refinement study
    std::vector<std::string> checks;          // empty = all
    std::vector<std::string> theorems;        // empty = default set

    Objective objective() const;
    SetValuedMap map() const;
};

/// Validates and loads a problem JSON document. Unknown fields are rejected;
/// omitted tolerance and budget fields keep their documented defaults.
/// Throws SchemaError with the offending field path.
ProblemFile parse_problem_json(const Json& doc);

/// Reads the file and parses it. Throws IoError on filesystem problems.
ProblemFile parse_problem_file(const std::string& path);

extern const std::vector<std::string> kAllChecks;
extern const std::vector<std::string> kDefaultTheorems;

}  // namespace berge
