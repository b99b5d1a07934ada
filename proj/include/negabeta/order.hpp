#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "negabeta/rational.hpp"
#include "negabeta/sequence.hpp"

namespace negabeta {

enum class Ordering { Less, Equal, Greater };

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
    }
    return "?";
}

struct AltOrdering {
    Ordering result = Ordering::Equal;
    std::optional<size_t> witness;  // first differing index, 1-based

    bool less() const { return result == Ordering::Less; }
    bool equal() const { return result == Ordering::Equal; }
    bool greater() const { return result == Ordering::Greater; }
};

namespace detail {

/// Ordering decided by digits a != b at 1-based index k.
inline AltOrdering decide(int a, int b, size_t k) {
    bool a_smaller = (k % 2 == 1) ? a < b : a > b;
    return {a_smaller ? Ordering::Less : Ordering::Greater, k};
}

}  // namespace detail

/// Alternating lexicographic comparison of two eventually periodic sequences.
inline AltOrdering alt_compare(const EvPeriodic& x, const EvPeriodic& y) {
    size_t bound = std::max(x.pre_len(), y.pre_len()) + std::lcm(x.period_len(), y.period_len());
    for (size_t k = 1; k <= bound; ++k) {
        int a = x.at(k), b = y.at(k);
        if (a != b) return detail::decide(a, b, k);
    }
    return {};
}

/// Compares two finite words over their common length. Equal without a
/// witness means the words agree on every shared index (undecided).
inline AltOrdering alt_compare_prefix(const DigitWord& x, const DigitWord& y) {
    size_t n = std::min(x.size(), y.size());
    for (size_t i = 0; i < n; ++i)
        if (x[i] != y[i]) return detail::decide(x[i], y[i], i + 1);
    return {};
}

inline std::optional<size_t> first_difference(const EvPeriodic& x, const EvPeriodic& y) {
    return alt_compare(x, y).witness;
}

/// ρ(x, y) = alphabet_max^{-k} with k the first differing index.
inline Rational rho_distance(const EvPeriodic& x, const EvPeriodic& y, int alphabet_max) {
    auto k = first_difference(x, y);
    if (!k) return 0;
    return 1 / pow(Rational(alphabet_max), static_cast<unsigned>(*k));
}

inline Rational rho_distance(const DigitWord& x, const DigitWord& y, int alphabet_max) {
    auto k = alt_compare_prefix(x, y).witness;
    if (!k) return 0;
    return 1 / pow(Rational(alphabet_max), static_cast<unsigned>(*k));
}

/// First n symbols of the fixed point of 2 -> 211, 1 -> 2.
inline DigitWord limit_word_prefix(size_t n) {
    DigitWord w{2};
    while (w.size() < n) {
        DigitWord next;
        next.reserve(w.size() * 2);
        for (int d : w) {
            if (d == 2) {
                next.insert(next.end(), {2, 1, 1});
            } else {
                next.push_back(2);
            }
        }
        w = std::move(next);
    }
    w.resize(n);
    return w;
}

/// Compares seq with the substitution word w. The word is aperiodic, so a
/// difference always exists; the witness is where it occurs.
inline AltOrdering compare_with_limit_word(const EvPeriodic& seq) {
    size_t n = 64;
    for (;;) {
        DigitWord w = limit_word_prefix(n);
        for (size_t k = 1; k <= n; ++k)
            if (seq.at(k) != w[k - 1]) return detail::decide(seq.at(k), w[k - 1], k);
        if (n > (size_t{1} << 24)) fail(ErrorKind::Internal, "no difference from the limit word found");
        n *= 2;
    }
}

struct SelfAdmissibility {
    bool ok = true;
    std::optional<size_t> violating_shift;
};

/// σ^k(seq) ⪯ seq for every k >= 1.
inline SelfAdmissibility is_self_admissible(const EvPeriodic& seq) {
    for (size_t k = 1; k < seq.tail_count(); ++k)
        if (alt_compare(seq.shifted(k), seq).greater()) return {false, k};
    return {};
}

/// Lower bound π*(0) of the tails of admissible sequences.
inline EvPeriodic star_zero(const EvPeriodic& pi1) {
    if (pi1.purely_periodic() && pi1.period_len() % 2 == 1) {
        DigitWord per{1};
        per.insert(per.end(), pi1.period().begin(), pi1.period().end());
        if (per.back() == 1) fail(ErrorKind::Domain, "lower bound would need digit 0: period ends in 1 with odd length");
        per.back() -= 1;
        return EvPeriodic::periodic(per);
    }
    return pi1.prepended({1});
}

/// Every tail t satisfies star_zero(pi1) ≺ t ⪯ pi1.
inline bool is_admissible(const EvPeriodic& pi1, const EvPeriodic& seq) {
    EvPeriodic lower = star_zero(pi1);
    for (size_t k = 0; k < seq.tail_count(); ++k) {
        EvPeriodic t = seq.shifted(k);
        if (!alt_compare(lower, t).less()) return false;
        if (alt_compare(t, pi1).greater()) return false;
    }
    return true;
}

/// Whether seq lies in {a, b}^∞ (infinite concatenations). Runs the parsing
/// automaton along seq and stops when (position, residual set) repeats.
inline bool in_concatenation_closure(const EvPeriodic& seq, const DigitWord& a, const DigitWord& b) {
    const DigitWord* blocks[2] = {&a, &b};
    using State = std::set<std::pair<int, size_t>>;  // (block, symbols consumed)
    State start{{0, 0}, {1, 0}};
    State cur = start;
    std::set<std::pair<size_t, State>> seen;
    for (size_t i = 1;; ++i) {
        size_t pos = i <= seq.pre_len() ? i : seq.pre_len() + 1 + (i - seq.pre_len() - 1) % seq.period_len();
        if (!seen.emplace(pos, cur).second) return true;
        int c = seq.at(i);
        State next;
        for (auto [blk, off] : cur) {
            const DigitWord& w = *blocks[blk];
            if (w.empty() || w[off] != c) continue;
            if (off + 1 == w.size()) {
                next.insert(start.begin(), start.end());
            } else {
                next.emplace(blk, off + 1);
            }
        }
        if (next.empty()) return false;
        cur = std::move(next);
    }
}

struct Validity {
    bool valid = true;
    int failed_condition = 0;  // 1..4, 0 when valid
    std::optional<size_t> witness_k;
};

/// Decides whether seq is the expansion of 1 for some base > 1.
inline Validity is_valid_expansion_of_one(const EvPeriodic& seq) {
    if (auto sa = is_self_admissible(seq); !sa.ok) return {false, 1, sa.violating_shift};

    AltOrdering vs_w = compare_with_limit_word(seq);
    if (!vs_w.greater()) return {false, 2, vs_w.witness};
    const size_t l = *vs_w.witness;

    auto above_w = [](const DigitWord& block) {
        for (int d : block)
            if (d < 1) return false;
        return compare_with_limit_word(EvPeriodic::periodic(block)).greater();
    };

    // Past this bound the blocks are longer than the part of seq that could
    // repeat them and every gate agrees with seq beyond its difference from w.
    const size_t bound = std::max(seq.pre_len() + 2 * seq.period_len(), l + 1) + seq.period_len() + 1;
    for (size_t k = 1; k <= bound; ++k) {
        DigitWord head = seq.prefix(k);

        DigitWord dec = head;
        dec.back() -= 1;
        dec.push_back(1);  // both blocks keep the value 1 where (head)^∞ does
        if (above_w(head) && in_concatenation_closure(seq, head, dec) && !(seq == EvPeriodic::periodic(head)))
            return {false, 3, k};

        DigitWord with_one = head;
        with_one.push_back(1);
        DigitWord inc = head;
        inc.back() += 1;
        if (above_w(inc) && in_concatenation_closure(seq, with_one, inc)) return {false, 4, k};
    }
    return {};
}

}  // namespace negabeta
