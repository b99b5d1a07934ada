#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "negabeta/expansion.hpp"
#include "negabeta/numerics.hpp"
#include "negabeta/order.hpp"

namespace negabeta {

/// Whether the orbit of 1 under beta produces exactly `target`, checked by
/// exact iteration over preperiod + period steps.
inline bool certify_expansion(const Beta& beta, const EvPeriodic& target) {
    if (!beta.is_exact()) return certify_expansion(beta.as_exact(), target);
    const size_t k = target.pre_len(), p = target.period_len();
    Point x = beta.one();
    std::optional<FieldPoint> at_k;
    for (size_t n = 0; n < k + p; ++n) {
        if (n == k) at_k = std::get<FieldPoint>(x);
        auto s = step(beta, x);
        if (s.digit != target.at(n + 1)) return false;
        x = std::move(s.next);
    }
    return std::get<FieldPoint>(x).compare(*at_k) == 0;
}

namespace detail {

inline Poly integer_primitive(const Poly& p) { return Poly::from_highest_first(p.integer_coeffs_highest_first()); }

/// Isolating intervals of the roots > 1 of the value equation, in increasing order.
inline std::vector<RootInterval> value_equation_roots(const EvPeriodic& seq) {
    Poly f = integer_primitive(squarefree(value_equation(seq)));
    if (f.degree() < 1) return {};
    auto roots = isolate_roots(f, Rational(1), cauchy_bound(f) + 1);
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    return roots;
}

/// The shortest decimal interval [a, a + 10^-k] that still isolates the root in iv.
inline std::pair<Rational, Rational> decimal_interval(const Poly& f, const RootInterval& iv) {
    SturmSequence st(f);
    Integer scale(1);
    for (int k = 1; k <= 40; ++k) {
        scale *= 10;
        Rational a(floor(Rational(iv.lo * scale)), scale);
        a.canonicalize();
        for (long w : {1L, 2L}) {  // width two covers a root sitting on the grid
            Rational b = a + Rational(w, scale);
            b.canonicalize();
            if (a < 1 || f.sign_at(a) == 0 || f.sign_at(b) == 0) continue;
            Rational lo = std::max(a, iv.lo), hi = std::min(b, iv.hi);
            if (lo < hi && st.count(a, b) == 1 && st.count(lo, hi) == 1) return {a, b};
        }
    }
    return {iv.lo, iv.hi};
}

inline Beta beta_from_root(const EvPeriodic& seq, RootInterval iv, const Rational& tol) {
    Poly f = integer_primitive(squarefree(value_equation(seq)));
    if (iv.lo < 1) iv.lo = 1;
    iv = refine_root(f, iv, tol);
    if (iv.lo < 1) iv.lo = 1;
    auto [lo, hi] = decimal_interval(f, iv);
    return Beta::exact(f, lo, hi);
}

}  // namespace detail

/// The base whose expansion of 1 is `target`, certified by re-expansion.
/// Candidate roots are visited in increasing order; the order relation between
/// expansions and bases tells which side each uncertified root lies on.
inline Beta beta_from_expansion(const EvPeriodic& target, const Rational& tol = Rational(1, 1000000000000)) {
    if (auto v = is_valid_expansion_of_one(target); !v.valid)
        fail(ErrorKind::Domain, "not a valid expansion of 1: " + target.str() + " (condition " +
                                    std::to_string(v.failed_condition) + ")");
    for (const auto& iv : detail::value_equation_roots(target)) {
        Beta b = detail::beta_from_root(target, iv, tol);
        if (b.floor() + 1 != target.at(1)) continue;
        if (certify_expansion(b, target)) return b;
    }
    fail(ErrorKind::Internal, "no root of the value equation re-expands to " + target.str());
}

/// Rewrites a candidate that breaks condition (3) or (4) into the sequence
/// that is the genuine expansion of 1 at the same base.
struct Canonicalization {
    EvPeriodic result;
    std::vector<EvPeriodic> trace;
    bool ok = false;
};

inline Canonicalization canonicalize_expansion_candidate(const EvPeriodic& seq, size_t max_steps = 64) {
    Canonicalization c{seq, {seq}, false};
    std::set<EvPeriodic> seen{seq};
    for (size_t i = 0; i < max_steps; ++i) {
        Validity v = is_valid_expansion_of_one(c.result);
        if (v.valid) {
            c.ok = true;
            return c;
        }
        if (v.failed_condition != 3 && v.failed_condition != 4) return c;
        DigitWord head = c.result.prefix(*v.witness_k);
        if (v.failed_condition == 4) head.back() += 1;
        EvPeriodic next = EvPeriodic::periodic(head);
        c.trace.push_back(next);
        if (!seen.insert(next).second) return c;
        c.result = next;
    }
    return c;
}

enum class ApproxCase { FinitelyManyMax, OddKJ, EvenKJ };
enum class Side { Below, Above };

inline const char* to_string(ApproxCase c) {
    switch (c) {
        case ApproxCase::FinitelyManyMax: return "FinitelyManyMax";
        case ApproxCase::OddKJ: return "OddKJ";
        case ApproxCase::EvenKJ: return "EvenKJ";
    }
    return "?";
}

inline const char* to_string(Side s) { return s == Side::Below ? "Below" : "Above"; }

struct Approximant {
    EvPeriodic candidate;
    size_t block_len;  // length of the prefix used as the period
    ApproxCase kind;
    Side side;
};

struct ApproximantPlan {
    DigitWord source_prefix;
    std::vector<Approximant> candidates;
};

namespace detail {

inline Side side_of(const EvPeriodic& c) { return c.period_len() % 2 == 1 ? Side::Below : Side::Above; }

inline void push_candidate(ApproximantPlan& plan, std::set<EvPeriodic>& seen, const DigitWord& prefix, size_t len,
                           ApproxCase kind) {
    EvPeriodic c = EvPeriodic::periodic(DigitWord(prefix.begin(), prefix.begin() + static_cast<long>(len)));
    if (!seen.insert(c).second) return;
    if (!is_self_admissible(c).ok) return;
    plan.candidates.push_back({c, len, kind, side_of(c)});
}

}  // namespace detail

/// Periodic self-admissible approximants of a non-periodic expansion of 1.
/// `finitely_many_max` selects the first construction; it is only known when
/// the expansion is eventually periodic with no maximal digit in its period.
inline ApproximantPlan periodic_approximants(const DigitWord& prefix, int alphabet_max, bool finitely_many_max,
                                             size_t count) {
    ApproximantPlan plan{prefix, {}};
    std::set<EvPeriodic> seen;
    if (prefix.empty() || prefix[0] != alphabet_max) fail(ErrorKind::Domain, "prefix must start with the maximal digit");
    auto d = [&](size_t i) { return prefix[i - 1]; };  // 1-based
    const size_t L = prefix.size();

    if (finitely_many_max) {
        size_t last = 0;
        for (size_t i = 1; i <= L; ++i)
            if (d(i) == alphabet_max) last = i;
        const size_t N = last - 1;
        for (size_t n = 1; plan.candidates.size() < count && 2 * N + n <= L; ++n)
            detail::push_candidate(plan, seen, prefix, 2 * N + n, ApproxCase::FinitelyManyMax);
        return plan;
    }

    for (size_t n = 3; n <= L && plan.candidates.size() < count; ++n) {
        if (d(n) != alphabet_max) continue;
        size_t j = 0;
        for (size_t t = 1; t < n && !j; ++t) {
            bool match = true;
            for (size_t i = 1; i <= n - t && match; ++i) match = d(t + i) == d(i);
            if (match) j = t;
        }
        if (!j) continue;
        std::optional<size_t> k;
        for (size_t t = n; t + 1 <= L; ++t)
            if (d(t + 1) != d(t + 1 - j)) {
                k = t;
                break;
            }
        if (!k) break;  // not witnessed inside the prefix
        bool odd = (*k - j) % 2 == 1;
        size_t len = odd ? *k + 1 : *k + 2;
        if (len > L) break;
        detail::push_candidate(plan, seen, prefix, len, odd ? ApproxCase::OddKJ : ApproxCase::EvenKJ);
    }
    return plan;
}

/// Convenience overload for an eventually periodic expansion of 1.
inline ApproximantPlan periodic_approximants(const EvPeriodic& pi1, size_t count, size_t prefix_len) {
    if (pi1.purely_periodic()) fail(ErrorKind::Domain, "expansion is periodic; the base is already simple");
    const int amax = pi1.max_digit();
    const auto& per = pi1.period();
    bool finitely = std::find(per.begin(), per.end(), amax) == per.end();
    // The last maximal digit sits in the preperiod, so the prefix must cover it.
    return periodic_approximants(pi1.prefix(std::max(prefix_len, pi1.pre_len() + 1)), amax, finitely, count);
}

struct SimpleApproximation {
    Approximant approximant;
    EvPeriodic canonical;     // genuine expansion of 1 at beta_n
    std::optional<Beta> beta_n;
    double beta_n_value = 0;
    std::optional<double> gap;  // |β − β_n|, empty when β_n is unresolved
    std::string note;
    bool simple_certified = false;
    bool candidate_evaluates_to_one = false;
};

struct SimpleApproximationReport {
    bool already_simple = false;
    std::optional<size_t> divergence_index;  // first difference of π(1) from the limit word
    DigitWord source_prefix;
    std::vector<SimpleApproximation> rows;
};

/// Simple bases approaching beta, one per approximant candidate.
inline SimpleApproximationReport approximate_simple_numbers(const Beta& beta, size_t count, size_t prefix_len,
                                                            size_t budget = kDefaultBudget) {
    SimpleApproximationReport rep;
    Beta exact = beta.as_exact();
    PiOfOne pi = pi_of_one(exact, budget);
    if (pi.expansion && pi.is_simple) {
        rep.already_simple = true;
        SimpleApproximation row{{*pi.expansion, pi.expansion->period_len(), ApproxCase::FinitelyManyMax, Side::Below},
                                *pi.expansion, exact, exact.to_double(), 0.0, "base is already simple", true, true};
        rep.rows.push_back(row);
        return rep;
    }

    ApproximantPlan plan;
    if (pi.expansion) {
        plan = periodic_approximants(*pi.expansion, count, prefix_len);
        rep.divergence_index = compare_with_limit_word(*pi.expansion).witness;
    } else {
        DigitWord prefix = expand(exact, Rational(1), prefix_len);
        plan = periodic_approximants(prefix, exact.alphabet_max(), false, count);
        DigitWord w = limit_word_prefix(prefix.size());
        rep.divergence_index = alt_compare_prefix(prefix, w).witness;
    }
    rep.source_prefix = plan.source_prefix;

    for (const auto& a : plan.candidates) {
        SimpleApproximation row{a, a.candidate, std::nullopt, 0.0, std::nullopt, "", false, false};
        Canonicalization c = canonicalize_expansion_candidate(a.candidate);
        if (c.ok) {
            if (!(c.result == a.candidate)) row.note = "rewritten to " + c.result.str();
            row.canonical = c.result;
            Beta bn = beta_from_expansion(c.result);
            Value v = evaluate(a.candidate, bn);
            row.candidate_evaluates_to_one = std::get<FieldPoint>(v).compare(Rational(1)) == 0;
            row.simple_certified = pi_of_one(bn, c.result.tail_count() + 1).is_simple;
            row.beta_n_value = bn.to_double();
            auto diff = bn.enclose(80);
            auto mine = exact.enclose(80);
            row.gap = std::abs(Rational((diff.first + diff.second) / 2 - (mine.first + mine.second) / 2).get_d());
            row.beta_n = std::move(bn);
        } else {
            Validity v = is_valid_expansion_of_one(c.result);
            row.note = "no valid partner (condition " + std::to_string(v.failed_condition) + ")";
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace negabeta
