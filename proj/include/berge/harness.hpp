#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "berge/objective.hpp"
#include "berge/setmap.hpp"
#include "berge/solver.hpp"

namespace berge {

enum class Verdict { Verified, HypothesisFailed, Contradiction };

const char* to_string(Verdict v);

/// End-to-end outcome for one theorem on one instance. A contradiction is
/// only reported when every hypothesis check passes outright and some
/// conclusion check hard-fails; it signals a checker bug or a tolerance
/// miscalibration, never a mathematical event. A hypothesis warn (boundary
/// contact) blocks the verified verdict; a conclusion warn does not.
struct TheoremReport {
    std::string theorem;
    std::vector<CheckReport> hypotheses;
    std::vector<CheckReport> conclusions;
    Verdict verdict = Verdict::Verified;
    std::optional<Witness> witness;  // set on contradiction
};

/// Pure verdict rule, separated so the harness itself can be meta-tested
/// with forced sub-reports.
Verdict classify_verdict(const std::vector<CheckReport>& hypotheses,
                         const std::vector<CheckReport>& conclusions);

Json to_json(const TheoremReport& r);

struct PathBudget {
    std::size_t length = 8;
    std::size_t count = 12;
    std::size_t selections = 3;  // random selections per path
    std::uint64_t seed = 0;
};

/// Mesh-scale probe paths plus seeded approach paths toward a few limits.
std::vector<SequencePath> theorem_paths(const GridPtr& x_grid, const PathBudget& budget);

/// Conclusion tolerances derive from the hypothesis tolerances: checks of v
/// and of the solution map run at eps_in plus one mesh width, and the
/// solution map is compared against the tau-relaxed argmin set with
/// tau_out = 2 * eps_val (a minimizer can move by one matching radius and
/// its value by one jump tolerance on each side).
struct MaximumVariant {
    enum Kind { NetBased, CompactlyGenerated } kind = NetBased;
};

/// Maximum theorem: lsc feasibility map plus inf-compactness (net-based or
/// compact-restriction form) plus the usc value criterion on the graph imply
/// a continuous value function and a usc, compact-valued solution map.
TheoremReport verify_maximum_theorem(const Objective& u, const SetValuedMap& map,
                                     const Tolerances& tol = {}, const PathBudget& budget = {},
                                     MaximumVariant variant = {});

/// Inf-compactness alone implies lower semicontinuity of v, on the whole
/// grid and restricted to each supplied window. The boundedness side of the
/// hypothesis is certified by the window-restricted check, whose boundary
/// warns block the verified verdict.
TheoremReport verify_value_semicontinuity(const Objective& u, const SetValuedMap& map,
                                          const Tolerances& tol = {},
                                          const PathBudget& budget = {},
                                          const std::vector<CompactWindow>& windows = {});

/// Exact finite facts about minimizers: nonempty argmin sets, argmin = image
/// wherever v = +inf, finite (hence compact) argmin sets at finite values.
TheoremReport verify_solution_properties(const Objective& u, const SetValuedMap& map,
                                         const Tolerances& tol = {});

/// Inf-compactness of u on the full graph propagates to v: level sets of v
/// stay interior and v passes the lsc criterion.
TheoremReport verify_infcompact_corollary(const Objective& u, const SetValuedMap& map,
                                          const Tolerances& tol = {});

enum class InstanceKind { UscCompactLsc, RandomTabulated, AdversarialJump };

/// Generated test instance with tolerances matched to its construction.
struct Instance {
    Objective u;
    SetValuedMap map;
    Tolerances suggested;
    double lambda = 0.0;  // admissibility level covering every finite value
};

struct InstanceSizes {
    std::size_t x_points = 9;
    std::size_t y_points = 9;
};

/// Seeded instance families over 1-D grids on [0, 1] x [0, 1]:
///  - UscCompactLsc: interval images drifting by at most one cell per step,
///    kept off the y-boundary, under a smoothed table objective; passes the
///    net-based inf-compactness check by construction.
///  - RandomTabulated: the same drift-bounded images under a rough random
///    table (occasional planted steps and +-inf entries), so the value-side
///    criteria genuinely vary across seeds.
///  - AdversarialJump: one planted image teleport, for witness extraction.
Instance generate_instance(InstanceKind kind, const InstanceSizes& sizes, std::uint64_t seed);

}  // namespace berge
