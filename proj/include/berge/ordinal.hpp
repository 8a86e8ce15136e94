#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "berge/report.hpp"

namespace berge {

/// Countable ordinal below epsilon_0 in Cantor normal form:
/// w^e1 * c1 + ... + w^ek * ck with e1 > e2 > ... > ek (each again in CNF)
/// and natural coefficients >= 1. The empty form is 0.
struct Ordinal {
    std::vector<Ordinal> exponents;
    std::vector<std::uint64_t> coefficients;

    static Ordinal zero() { return {}; }
    static Ordinal from_nat(std::uint64_t n);
    static Ordinal omega();

    bool is_zero() const { return exponents.empty(); }
    /// Appends a term; exponents must arrive in strictly decreasing order.
    void push_term(Ordinal exponent, std::uint64_t coefficient);

    bool operator==(const Ordinal&) const = default;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
inline bool operator<(const Ordinal& a, const Ordinal& b) { return compare(a, b) < 0; }

/// a + 1: bump the exponent-0 coefficient or append the term w^0 * 1.
Ordinal successor(const Ordinal& a);

/// True iff the form is nonempty and its last exponent is nonzero.
bool is_limit(const Ordinal& a);

/// Mini-syntax: "0", "7", "w", "w*3", "w^2*3 + w + 4", "w^(w+1) + 5".
/// Terms must appear with strictly decreasing exponents.
Ordinal parse_ordinal(std::string_view text);
std::string render_ordinal(const Ordinal& a);

/// Point of the counterexample space: a non-limit countable ordinal, or the
/// first uncountable ordinal (a pure top marker, never computed with).
struct OrdinalPoint {
    static OrdinalPoint omega1();
    static OrdinalPoint countable(Ordinal a);  // throws unless non-limit

    bool is_omega1() const { return !value.has_value(); }
    const Ordinal& ordinal() const;

    std::optional<Ordinal> value;  // empty = omega_1

    bool operator==(const OrdinalPoint&) const = default;
};

std::strong_ordering compare(const OrdinalPoint& a, const OrdinalPoint& b);

/// A subset of the space: finitely many listed points, optionally together
/// with the tail (s, omega_1] for a countable s.
struct SubsetDescription {
    std::vector<OrdinalPoint> points;
    std::optional<Ordinal> tail_from;
};

struct CompactnessVerdict {
    bool compact = false;
    std::string justification;
};

/// Finite sets are compact; any set containing a tail is not, by the cover
/// of singletons plus one tail interval.
CompactnessVerdict is_compact_subset(const SubsetDescription& subset);

/// Symbolic reproduction of the order-topology counterexample: u(x, y) = 0
/// for x != omega_1 and u(omega_1, y) = 1 over the subspace of non-limit
/// ordinals plus omega_1. For any probe s the successor witness alpha = s + 1
/// shows every neighborhood (s, omega_1] of omega_1 meets {v = 0}, so the
/// level set {v <= 1/2} is not closed and v is not lower semicontinuous,
/// while u stays inf-compact on every compact (finite) subset.
Json counterexample_report(const Ordinal& probe,
                           const std::vector<std::vector<OrdinalPoint>>& k_batches);

/// Seeded batch of finite subsets of the space, sizes in [1, max_size].
std::vector<std::vector<OrdinalPoint>> random_k_batches(std::size_t count, std::size_t max_size,
                                                        std::uint64_t seed);

}  // namespace berge
