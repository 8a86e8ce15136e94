#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace berge {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Warn, Fail };

const char* to_string(Status s);
Status worst(Status a, Status b);

/// One concrete violation: labeled points, labeled values, and a reason.
struct Witness {
    std::vector<std::pair<std::string, std::vector<double>>> points;
    std::vector<std::pair<std::string, double>> values;
    std::string reason;

    auto sort_key() const { return std::tie(points, values, reason); }
};

/// Tolerance block shared by the checkers. Unset fields resolve to the
/// documented defaults (see resolve() in objective.hpp).
struct Tolerances {
    std::optional<double> delta;        // neighborhood radius in X
    std::optional<double> eps;          // matching radius in Y
    std::optional<double> delta_graph;  // neighborhood radius in the product metric
    std::optional<double> eps_val;      // value-jump tolerance for function checks
    std::optional<double> tau;          // argmin tie tolerance
    std::optional<std::vector<double>> lambdas;
};

/// Outcome of one definitional check. fail implies witnesses nonempty; pass
/// implies none. Witness lists are sorted and capped at `witness_cap`, with
/// the total violation count preserved in the counters.
struct CheckReport {
    static constexpr std::size_t witness_cap = 100;

    std::string name;
    Status status = Status::Pass;
    Json tolerances = Json::object();  // only the knobs the check used
    std::vector<Witness> witnesses;
    std::vector<std::pair<std::string, std::size_t>> counters;

    void add_witness(Witness w);
    /// Sorts witnesses, applies the cap, and reconciles status invariants.
    void finalize();
    std::size_t counter(const std::string& key) const;
    void bump(const std::string& key, std::size_t by = 1);
    void set_counter(const std::string& key, std::size_t value);
};

Json to_json(const Witness& w);
Json to_json(const CheckReport& r);

/// Extended reals in JSON: finite values as numbers, infinities as strings.
Json ext_to_json(double v);
double ext_from_json(const Json& j);

}  // namespace berge
