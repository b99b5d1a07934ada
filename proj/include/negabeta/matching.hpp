#pragma once

#include <optional>
#include <string>

#include "negabeta/expansion.hpp"
#include "negabeta/numerics.hpp"

namespace negabeta {

/// Matching: T^n(0) = T^n(1) for some n, with T(0) := 1. Since T^n(0) = T^{n-1}(1),
/// this happens exactly when the orbit of 1 reaches a fixed point.
struct MatchingReport {
    enum class Verdict { Matched, Unmatched, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::optional<size_t> matching_time;
    std::optional<FieldPoint> fixed_point;
    size_t budget_used = 0;

    bool matched() const { return verdict == Verdict::Matched; }
};

inline const char* to_string(MatchingReport::Verdict v) {
    switch (v) {
        case MatchingReport::Verdict::Matched: return "matched";
        case MatchingReport::Verdict::Unmatched: return "unmatched";
        case MatchingReport::Verdict::Unknown: return "unknown";
    }
    return "?";
}

inline MatchingReport matching_time(const Beta& beta, size_t budget = kDefaultBudget) {
    if (budget < 1) fail(ErrorKind::Domain, "budget must be >= 1");
    MatchingReport rep;
    OrbitRecord r = orbit_of_one(beta.as_exact(), budget);
    rep.budget_used = r.digits.size();
    if (!r.classification.resolved()) return rep;
    const auto& c = r.classification;
    // The orbit points are distinct, so a fixed point can only be the last one with period 1.
    if (c.period_len == 1 && c.pre_len + 1 == r.points.size()) {
        const size_t j = c.pre_len;
        rep.verdict = MatchingReport::Verdict::Matched;
        rep.matching_time = j + 1;
        rep.fixed_point = std::get<FieldPoint>(r.points[j]);
    } else {
        rep.verdict = MatchingReport::Verdict::Unmatched;
    }
    return rep;
}

/// Closed form of T^k(1) for the root β of β^m = q(β^{m-1} + ... + 1).
inline FieldPoint multinacci_orbit(long q, long m, long k) {
    if (q < 1 || m < 2) fail(ErrorKind::Domain, "need q >= 1 and m >= 2");
    if (k < 0 || k > m) fail(ErrorKind::Domain, "need 0 <= k <= m");
    Beta b = make_beta("multinacci:q=" + std::to_string(q) + ",m=" + std::to_string(m));
    const FieldPoint g = b.generator();
    FieldPoint acc = FieldPoint::constant(b.field(), 0);
    if (k == 0) return acc + Rational(1);
    if (k == m) k = m - 1;
    const Rational qr(q);
    if (k % 2 == 1) {
        for (long i = 0; i <= (k - 1) / 2; ++i) acc = acc + g.pow(-(m - 2 * i)) * qr;
    } else {
        for (long i = 0; i <= k / 2; ++i) acc = acc + g.pow(-(m - 2 * i)) * qr;
        for (long i = 1; i <= m - k - 1; ++i) acc = acc + g.pow(-i) * qr;
    }
    return acc;
}

struct MultinacciCheck {
    bool pass = false;
    std::optional<long> first_discrepancy;  // k where the closed form and the orbit differ
    std::optional<size_t> matching_time;
    std::string message;
};

/// Compares the closed form with exact iteration for k = 0..m and checks
/// that the matching time is m.
inline MultinacciCheck verify_multinacci_matching(long q, long m) {
    MultinacciCheck out;
    Beta b = make_beta("multinacci:q=" + std::to_string(q) + ",m=" + std::to_string(m));
    Point x = b.one();
    for (long k = 0; k <= m; ++k) {
        FieldPoint expected = multinacci_orbit(q, m, k);
        if (compare_values(expected, std::get<FieldPoint>(x)) != 0) {
            out.first_discrepancy = k;
            out.message = "closed form differs from the orbit at k = " + std::to_string(k);
            return out;
        }
        x = step(b, x).next;
    }
    auto rep = matching_time(b, static_cast<size_t>(m) + 4);
    out.matching_time = rep.matching_time;
    if (!rep.matched() || *rep.matching_time != static_cast<size_t>(m)) {
        out.message = "matching time is not m";
        return out;
    }
    out.pass = true;
    out.message = "closed form agrees with the orbit; matching time " + std::to_string(m);
    return out;
}

}  // namespace negabeta
