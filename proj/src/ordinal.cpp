#include "berge/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "berge/errors.hpp"
#include "berge/rng.hpp"

namespace berge {

Ordinal Ordinal::from_nat(std::uint64_t n) {
    Ordinal a;
    if (n > 0) a.push_term(Ordinal::zero(), n);
    return a;
}

Ordinal Ordinal::omega() {
    Ordinal a;
    a.push_term(Ordinal::from_nat(1), 1);
    return a;
}

void Ordinal::push_term(Ordinal exponent, std::uint64_t coefficient) {
    if (coefficient == 0) throw Error("ordinal term coefficients must be positive");
    if (!exponents.empty() && compare(exponent, exponents.back()) >= 0)
        throw Error("ordinal terms must have strictly decreasing exponents");
    exponents.push_back(std::move(exponent));
    coefficients.push_back(coefficient);
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
    std::size_t n = std::min(a.exponents.size(), b.exponents.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto ce = compare(a.exponents[i], b.exponents[i]);
        if (ce != 0) return ce;
        if (a.coefficients[i] != b.coefficients[i])
            return a.coefficients[i] <=> b.coefficients[i];
    }
    return a.exponents.size() <=> b.exponents.size();
}

Ordinal successor(const Ordinal& a) {
    Ordinal s = a;
    if (!s.exponents.empty() && s.exponents.back().is_zero()) {
        ++s.coefficients.back();
    } else {
        s.exponents.push_back(Ordinal::zero());
        s.coefficients.push_back(1);
    }
    return s;
}

bool is_limit(const Ordinal& a) {
    return !a.exponents.empty() && !a.exponents.back().is_zero();
}

namespace {

struct OrdinalParser {
    std::string_view src;
    std::size_t i = 0;

    void skip_ws() {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    }

    bool eat(char c) {
        skip_ws();
        if (i < src.size() && src[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    std::uint64_t parse_nat() {
        skip_ws();
        std::size_t start = i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        if (i == start) throw SyntaxError(start, "expected a natural number");
        std::uint64_t n = 0;
        auto [p, ec] = std::from_chars(src.data() + start, src.data() + i, n);
        if (ec != std::errc{}) throw SyntaxError(start, "natural number out of range");
        return n;
    }

    // term := 'w' ('^' factor)? ('*' nat)? | nat
    // factor := nat | 'w' | '(' ordinal ')'
    std::pair<Ordinal, std::uint64_t> parse_term() {
        skip_ws();
        if (i < src.size() && src[i] == 'w') {
            ++i;
            Ordinal exponent = Ordinal::from_nat(1);
            if (eat('^')) {
                skip_ws();
                if (i < src.size() && src[i] == '(') {
                    ++i;
                    exponent = parse_ordinal_expr();
                    if (!eat(')')) throw SyntaxError(i, "expected ')'");
                } else if (i < src.size() && src[i] == 'w') {
                    ++i;
                    exponent = Ordinal::omega();
                } else {
                    exponent = Ordinal::from_nat(parse_nat());
                }
            }
            std::uint64_t coeff = 1;
            if (eat('*')) coeff = parse_nat();
            return {std::move(exponent), coeff};
        }
        std::uint64_t n = parse_nat();
        return {Ordinal::zero(), n};
    }

    Ordinal parse_ordinal_expr() {
        Ordinal out;
        for (;;) {
            auto [exponent, coeff] = parse_term();
            if (!(exponent.is_zero() && coeff == 0)) {
                if (!out.exponents.empty() && compare(exponent, out.exponents.back()) >= 0)
                    throw SyntaxError(i,
                                      "terms must appear with strictly decreasing exponents "
                                      "(Cantor normal form)");
                out.push_term(std::move(exponent), coeff);
            }
            if (!eat('+')) return out;
        }
    }
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
    OrdinalParser p{text};
    p.skip_ws();
    if (p.i >= text.size()) throw SyntaxError(0, "empty ordinal");
    Ordinal a = p.parse_ordinal_expr();
    p.skip_ws();
    if (p.i < text.size()) throw SyntaxError(p.i, "unexpected trailing input");
    return a;
}

std::string render_ordinal(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (std::size_t t = 0; t < a.exponents.size(); ++t) {
        if (t) out += " + ";
        const Ordinal& e = a.exponents[t];
        std::uint64_t c = a.coefficients[t];
        if (e.is_zero()) {
            out += std::to_string(c);
            continue;
        }
        out += 'w';
        if (!(e == Ordinal::from_nat(1))) {
            // Single finite exponent renders bare; anything else parenthesized.
            bool simple = e.exponents.size() == 1 && e.exponents[0].is_zero();
            out += '^';
            if (simple) {
                out += std::to_string(e.coefficients[0]);
            } else {
                out += '(' + render_ordinal(e) + ')';
            }
        }
        if (c > 1) out += "*" + std::to_string(c);
    }
    return out;
}

OrdinalPoint OrdinalPoint::omega1() { return OrdinalPoint{}; }

OrdinalPoint OrdinalPoint::countable(Ordinal a) {
    if (is_limit(a))
        throw Error("the space contains only non-limit countable ordinals and omega_1; " +
                    render_ordinal(a) + " is a limit ordinal");
    OrdinalPoint p;
    p.value = std::move(a);
    return p;
}

const Ordinal& OrdinalPoint::ordinal() const {
    if (!value) throw Error("omega_1 is a marker with no Cantor normal form");
    return *value;
}

std::strong_ordering compare(const OrdinalPoint& a, const OrdinalPoint& b) {
    if (a.is_omega1() && b.is_omega1()) return std::strong_ordering::equal;
    if (a.is_omega1()) return std::strong_ordering::greater;
    if (b.is_omega1()) return std::strong_ordering::less;
    return compare(*a.value, *b.value);
}

CompactnessVerdict is_compact_subset(const SubsetDescription& subset) {
    if (subset.tail_from) {
        return {false,
                "the set contains the tail (" + render_ordinal(*subset.tail_from) +
                    ", w1] and is infinite; the open cover by singletons of its isolated "
                    "points together with one interval (s, w1] has no finite subcover"};
    }
    return {true, "a set of " + std::to_string(subset.points.size()) +
                      " points is finite, and subsets of this space are compact exactly "
                      "when they are finite"};
}

namespace {

std::string point_string(const OrdinalPoint& p) {
    return p.is_omega1() ? "w1" : render_ordinal(*p.value);
}

}  // namespace

Json counterexample_report(const Ordinal& probe,
                           const std::vector<std::vector<OrdinalPoint>>& k_batches) {
    Json report;
    report["schema_version"] = 1;
    report["check"] = "ordinal-counterexample";
    report["space"] =
        "subspace of [0, w1] consisting of all non-limit ordinals together with w1, "
        "in the order topology; every non-limit ordinal is an isolated point";
    report["definition"] = Json{{"u_off_top", 0},
                                {"u_at_top", 1},
                                {"description",
                                 "u(x, y) = 0 for x != w1 and u(w1, y) = 1 on the singleton "
                                 "y-space; v = u"}};
    report["probe"] = render_ordinal(probe);

    Ordinal alpha = successor(probe);
    report["witness"] = Json{
        {"alpha", render_ordinal(alpha)},
        {"is_limit", is_limit(alpha)},
        {"u_value", 0},
        {"v_value", 0},
        {"statement", "probe < alpha < w1 and v(alpha) = 0, so the neighborhood "
                      "(probe, w1] of w1 meets the level set {v <= 1/2}"}};

    report["level_set"] = Json{
        {"lambda", 0.5},
        {"members", "every point of the space except w1"},
        {"closed", false},
        {"reason", "for each countable s there is a non-limit ordinal alpha with "
                   "s < alpha < w1, so every neighborhood (s, w1] of w1 meets the set; "
                   "the set is not closed and v is not lower semicontinuous"}};

    report["v_at_omega1"] = 1;
    report["liminf_proxy"] = "0 < 1";
    report["inequality"] = "liminf v over non-limit ordinals = 0 < 1 = v(w1)";

    Json batches = Json::array();
    bool all_compact = true;
    for (const auto& batch : k_batches) {
        CompactnessVerdict verdict = is_compact_subset(SubsetDescription{batch, std::nullopt});
        all_compact = all_compact && verdict.compact;
        // Level set of u on Gr_K(Phi) at lambda = 1/2: the pairs with x != w1.
        std::size_t level = 0;
        for (const OrdinalPoint& p : batch)
            if (!p.is_omega1()) ++level;
        Json points = Json::array();
        for (const OrdinalPoint& p : batch) points.push_back(point_string(p));
        batches.push_back(Json{{"size", batch.size()},
                               {"compact", verdict.compact},
                               {"level_set_size", level},
                               {"level_set_compact", true},
                               {"points", std::move(points)}});
    }
    report["k_inf_compactness"] = Json{
        {"batches_checked", k_batches.size()},
        {"all_compact", all_compact},
        {"statement", "on every supplied finite K the level sets of u over the graph are "
                      "finite, hence compact; u is inf-compact on each restricted graph"},
        {"batches", std::move(batches)}};

    report["net_caveat"] =
        "the failure is exhibited by the net indexed by all non-limit ordinals; no countable "
        "subsequence reaches w1, so sequence-based reasoning cannot detect it. The report "
        "certifies the cofinality fact instead: for every countable s there is a non-limit "
        "alpha in (s, w1).";
    return report;
}

std::vector<std::vector<OrdinalPoint>> random_k_batches(std::size_t count, std::size_t max_size,
                                                        std::uint64_t seed) {
    std::vector<std::vector<OrdinalPoint>> batches;
    batches.reserve(count);
    for (std::size_t b = 0; b < count; ++b) {
        std::mt19937_64 rng(mix_seed(seed, b));
        std::size_t size = 1 + uniform_below(rng, max_size);
        std::vector<OrdinalPoint> batch;
        for (std::size_t i = 0; i < size; ++i) {
            if (uniform_below(rng, 10) == 0) {
                batch.push_back(OrdinalPoint::omega1());
                continue;
            }
            // Random non-limit ordinal: a few descending w-power terms plus a
            // finite tail term.
            Ordinal a;
            std::uint64_t top = uniform_below(rng, 4);  // highest exponent, 0..3
            for (std::uint64_t e = top; e > 0; --e) {
                if (uniform_below(rng, 2) == 0) continue;
                a.push_term(Ordinal::from_nat(e), 1 + uniform_below(rng, 5));
            }
            a.push_term(Ordinal::zero(), 1 + uniform_below(rng, 9));
            batch.push_back(OrdinalPoint::countable(std::move(a)));
        }
        batches.push_back(std::move(batch));
    }
    return batches;
}

}  // namespace berge
