#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "negabeta/order.hpp"
#include "negabeta/rational.hpp"
#include "negabeta/sequence.hpp"

namespace negabeta {

struct TailBounds {
    EvPeriodic lower;  // strict
    EvPeriodic upper;  // weak
};

inline TailBounds tail_bounds(const EvPeriodic& pi1) { return {star_zero(pi1), pi1}; }

/// Deterministic automaton recognising the finite words of the shift.
/// Every state is reachable from start and has an outgoing edge.
struct SftAutomaton {
    int alphabet_max = 0;
    size_t start = 0;
    bool is_sft = false;  // pi1 purely periodic
    std::vector<std::vector<std::optional<size_t>>> next;  // next[state][digit - 1]

    size_t size() const { return next.size(); }

    std::optional<size_t> run(const DigitWord& u) const {
        size_t s = start;
        for (int d : u) {
            if (d < 1 || d > alphabet_max) return std::nullopt;
            auto t = next[s][static_cast<size_t>(d - 1)];
            if (!t) return std::nullopt;
            s = *t;
        }
        return s;
    }

    size_t edge_count() const {
        size_t n = 0;
        for (const auto& row : next)
            for (const auto& t : row) n += t.has_value();
        return n;
    }

    std::string to_dot() const {
        std::ostringstream os;
        os << "digraph sft {\n  rankdir=LR;\n  start [shape=point];\n  start -> s" << start << ";\n";
        for (size_t s = 0; s < size(); ++s)
            for (size_t d = 0; d < next[s].size(); ++d)
                if (next[s][d]) os << "  s" << s << " -> s" << *next[s][d] << " [label=\"" << d + 1 << "\"];\n";
        os << "}\n";
        return os.str();
    }
};

namespace detail {

/// Tie length with a bound, folded so that equal keys have identical futures
/// and identical comparison parity.
inline size_t fold_tie(const EvPeriodic& bound, size_t m) {
    if (m < bound.pre_len()) return m;
    return bound.pre_len() + (m - bound.pre_len()) % (2 * bound.period_len());
}

struct TieState {
    std::set<size_t> upper, lower;
    auto operator<=>(const TieState&) const = default;
};

/// Advances one tie with `bound` by digit c. Returns -1 if the tail breaks the
/// bound, 0 if it resolved safely, 1 if it stays tied. `is_upper` selects the side.
inline int advance_tie(const EvPeriodic& bound, size_t m, int c, bool is_upper) {
    const size_t idx = m + 1;
    const int b = bound.at(idx);
    if (c == b) return 1;
    bool tail_smaller = (idx % 2 == 1) ? c < b : c > b;
    if (is_upper) return tail_smaller ? 0 : -1;
    return tail_smaller ? -1 : 0;
}

inline SftAutomaton minimize(const SftAutomaton& a) {
    const size_t n = a.size();
    const size_t k = static_cast<size_t>(a.alphabet_max);
    std::vector<size_t> cls(n, 0);
    size_t classes = 1;
    for (;;) {
        std::map<std::vector<long>, size_t> sig_index;
        std::vector<size_t> fresh(n);
        for (size_t s = 0; s < n; ++s) {
            std::vector<long> sig{static_cast<long>(cls[s])};
            for (size_t d = 0; d < k; ++d) sig.push_back(a.next[s][d] ? static_cast<long>(cls[*a.next[s][d]]) : -1);
            auto it = sig_index.emplace(sig, sig_index.size()).first;
            fresh[s] = it->second;
        }
        size_t count = sig_index.size();
        cls = std::move(fresh);
        if (count == classes) break;
        classes = count;
    }
    SftAutomaton m;
    m.alphabet_max = a.alphabet_max;
    m.is_sft = a.is_sft;
    m.next.assign(classes, std::vector<std::optional<size_t>>(k));
    for (size_t s = 0; s < n; ++s)
        for (size_t d = 0; d < k; ++d)
            if (a.next[s][d]) m.next[cls[s]][d] = cls[*a.next[s][d]];
    // Renumber in breadth-first order from the start state.
    std::vector<long> order(classes, -1);
    std::vector<size_t> queue{cls[a.start]};
    order[cls[a.start]] = 0;
    for (size_t i = 0; i < queue.size(); ++i)
        for (const auto& t : m.next[queue[i]])
            if (t && order[*t] < 0) {
                order[*t] = static_cast<long>(queue.size());
                queue.push_back(*t);
            }
    SftAutomaton r;
    r.alphabet_max = m.alphabet_max;
    r.is_sft = m.is_sft;
    r.start = 0;
    r.next.assign(queue.size(), std::vector<std::optional<size_t>>(k));
    for (size_t s = 0; s < classes; ++s) {
        if (order[s] < 0) continue;
        for (size_t d = 0; d < k; ++d)
            if (m.next[s][d]) r.next[static_cast<size_t>(order[s])][d] = static_cast<size_t>(order[*m.next[s][d]]);
    }
    return r;
}

}  // namespace detail

/// Builds the bound-tracking automaton: a state records, for every position
/// whose tail is still tied with the upper or lower bound, how long the tie is.
inline SftAutomaton build_sft(const EvPeriodic& pi1) {
    const TailBounds tb = tail_bounds(pi1);
    const int amax = pi1.max_digit();
    const size_t k = static_cast<size_t>(amax);

    std::map<detail::TieState, size_t> index;
    std::vector<detail::TieState> states;
    std::vector<std::vector<std::optional<size_t>>> next;
    auto intern = [&](const detail::TieState& s) {
        auto [it, inserted] = index.emplace(s, states.size());
        if (inserted) {
            states.push_back(s);
            next.emplace_back(k);
        }
        return it->second;
    };
    intern({});
    for (size_t i = 0; i < states.size(); ++i) {
        for (int c = 1; c <= amax; ++c) {
            detail::TieState cur = states[i];
            cur.upper.insert(0);
            cur.lower.insert(0);
            detail::TieState out;
            bool ok = true;
            for (size_t m : cur.upper) {
                int r = detail::advance_tie(tb.upper, m, c, true);
                if (r < 0) ok = false;
                if (r > 0) out.upper.insert(detail::fold_tie(tb.upper, m + 1));
            }
            for (size_t m : cur.lower) {
                if (!ok) break;
                int r = detail::advance_tie(tb.lower, m, c, false);
                if (r < 0) ok = false;
                if (r > 0) out.lower.insert(detail::fold_tie(tb.lower, m + 1));
            }
            if (ok) {
                size_t j = intern(out);
                next[i][static_cast<size_t>(c - 1)] = j;
            }
        }
    }

    // Trim states without an infinite future.
    const size_t n = states.size();
    std::vector<bool> alive(n, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t s = 0; s < n; ++s) {
            if (!alive[s]) continue;
            bool has = false;
            for (const auto& t : next[s]) has = has || (t && alive[*t]);
            if (!has) {
                alive[s] = false;
                changed = true;
            }
        }
    }
    if (!alive[0]) fail(ErrorKind::Domain, "the bounds admit no infinite sequence");

    SftAutomaton a;
    a.alphabet_max = amax;
    a.is_sft = pi1.purely_periodic();
    a.start = 0;
    a.next.assign(n, std::vector<std::optional<size_t>>(k));
    for (size_t s = 0; s < n; ++s)
        for (size_t d = 0; d < k; ++d)
            if (alive[s] && next[s][d] && alive[*next[s][d]]) a.next[s][d] = next[s][d];
    return detail::minimize(a);
}

/// Whether u occurs in some sequence of the shift.
inline bool word_in_shift(const EvPeriodic& pi1, const DigitWord& u) { return build_sft(pi1).run(u).has_value(); }

/// |B_1|, ..., |B_n| by path counting from the start state.
inline std::vector<Integer> count_words(const SftAutomaton& a, size_t n) {
    std::vector<Integer> ways(a.size(), 0), out;
    ways[a.start] = 1;
    for (size_t len = 1; len <= n; ++len) {
        std::vector<Integer> nw(a.size(), 0);
        for (size_t s = 0; s < a.size(); ++s) {
            if (ways[s] == 0) continue;
            for (const auto& t : a.next[s])
                if (t) nw[*t] += ways[s];
        }
        ways = std::move(nw);
        Integer total = 0;
        for (const auto& w : ways) total += w;
        out.push_back(total);
    }
    return out;
}

inline std::vector<Integer> count_words(const EvPeriodic& pi1, size_t n) {
    if (n < 1) fail(ErrorKind::Domain, "word length must be >= 1");
    return count_words(build_sft(pi1), n);
}

struct EntropyEstimate {
    double estimate;     // log|B_n| / n
    double upper_bound;  // min_k log|B_k| / k
};

inline double log_integer(const Integer& z) {
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(m) + static_cast<double>(exp) * std::log(2.0);
}

inline EntropyEstimate entropy_estimate(const EvPeriodic& pi1, size_t n) {
    if (n < 2) fail(ErrorKind::Domain, "entropy estimate needs n >= 2");
    auto counts = count_words(pi1, n);
    double best = INFINITY;
    for (size_t k = 1; k <= n; ++k) best = std::min(best, log_integer(counts[k - 1]) / static_cast<double>(k));
    return {log_integer(counts.back()) / static_cast<double>(n), best};
}

/// Log of the spectral radius of the transition-count matrix.
inline double automaton_entropy(const SftAutomaton& a, double tol = 1e-10, size_t max_iter = 100000) {
    const size_t n = a.size();
    if (n == 0) fail(ErrorKind::Domain, "empty automaton");
    // Power iteration on A + I; the shift keeps the Perron root dominant for periodic A.
    std::vector<double> v(n, 1.0), w(n);
    double lambda = 0;
    for (size_t it = 0; it < max_iter; ++it) {
        for (size_t s = 0; s < n; ++s) w[s] = v[s];
        for (size_t s = 0; s < n; ++s)
            for (const auto& t : a.next[s])
                if (t) w[s] += v[*t];
        double norm = 0;
        for (double x : w) norm = std::max(norm, x);
        for (size_t s = 0; s < n; ++s) w[s] /= norm;
        double diff = 0;
        for (size_t s = 0; s < n; ++s) diff = std::max(diff, std::abs(w[s] - v[s]));
        v.swap(w);
        if (std::abs(norm - lambda) <= tol * norm && diff <= tol) return std::log(norm - 1.0);
        lambda = norm;
    }
    fail(ErrorKind::Unresolved, "power iteration did not converge");
}

}  // namespace negabeta
