#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "negabeta/expansion.hpp"
#include "negabeta/numerics.hpp"

namespace negabeta {

/// Piecewise-constant invariant density: values[i] on (breakpoints[i], breakpoints[i+1]].
/// Everything lives in the field of the base (degree one for decimal bases).
struct PiecewiseDensity {
    Beta beta;
    std::vector<FieldPoint> breakpoints;
    std::vector<FieldPoint> values;
    FieldPoint K;

    size_t pieces() const { return values.size(); }

    /// Value on the piece containing x, 0 < x <= 1.
    const FieldPoint& value_at(const FieldPoint& x) const {
        for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
            if (x.compare(breakpoints[i + 1]) <= 0) return values[i];
        fail(ErrorKind::Domain, "point outside (0, 1]");
    }
};

namespace detail {

struct ResolvedOrbit {
    Beta beta;  // exact
    std::vector<FieldPoint> points;
    size_t pre = 0, period = 0;
};

inline ResolvedOrbit resolved_orbit(const Beta& beta, size_t budget) {
    Beta b = beta.as_exact();
    OrbitRecord r = orbit_of_one(b, budget);
    if (!r.classification.resolved())
        fail(ErrorKind::Unresolved, "orbit of 1 not resolved within budget " + std::to_string(budget));
    ResolvedOrbit o{b, {}, r.classification.pre_len, r.classification.period_len};
    for (const auto& p : r.points) o.points.push_back(std::get<FieldPoint>(p));
    return o;
}

/// Σ_{n ≥ 0} c_n u^n where c_n = weight(T^n(1)) and u = (−β)^{−1}, summed in
/// closed form over the preperiod and one geometric tail per period.
template <class Weight>
FieldPoint orbit_series(const ResolvedOrbit& o, Weight weight) {
    const FieldPoint u = -o.beta.generator().inverse();
    FieldPoint head = FieldPoint::constant(o.beta.field(), 0), tail = head;
    FieldPoint un = FieldPoint::constant(o.beta.field(), 1);
    for (size_t n = 0; n < o.pre + o.period; ++n) {
        FieldPoint term = weight(o.points[n]) * un;
        (n < o.pre ? head : tail) = (n < o.pre ? head : tail) + term;
        un = un * u;
    }
    // un is now u^{pre + period}; the periodic block repeats with ratio u^period.
    FieldPoint ratio = u.pow(static_cast<long>(o.period));
    return head + tail * (FieldPoint::constant(o.beta.field(), 1) - ratio).inverse();
}

}  // namespace detail

/// K = Σ T^n(1)·(−β)^{−n}.
inline FieldPoint normalization(const Beta& beta, size_t budget = kDefaultBudget) {
    auto o = detail::resolved_orbit(beta, budget);
    return detail::orbit_series(o, [](const FieldPoint& p) { return p; });
}

/// Exact density h(x) = Σ_{n : T^n(1) ≥ x} (−β)^{−n}.
inline PiecewiseDensity density(const Beta& beta, size_t budget = kDefaultBudget) {
    auto o = detail::resolved_orbit(beta, budget);
    const auto& F = o.beta.field();
    std::vector<FieldPoint> bps{FieldPoint::constant(F, 0), FieldPoint::constant(F, 1)};
    for (const auto& p : o.points)
        if (p.compare(Rational(1)) < 0) bps.push_back(p);
    std::sort(bps.begin(), bps.end(), [](const auto& a, const auto& b) { return a.compare(b) < 0; });
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    PiecewiseDensity d{o.beta, bps, {}, FieldPoint::constant(F, 0)};
    FieldPoint integral = FieldPoint::constant(F, 0);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        const FieldPoint& right = bps[i + 1];
        FieldPoint one = FieldPoint::constant(F, 1), zero = FieldPoint::constant(F, 0);
        FieldPoint v = detail::orbit_series(o, [&](const FieldPoint& p) { return p.compare(right) >= 0 ? one : zero; });
        if (v.compare(Rational(0)) < 0) fail(ErrorKind::Internal, "negative density value");
        if (!d.values.empty() && d.values.back() == v)
            fail(ErrorKind::Internal, "density constant across an orbit point");
        integral = integral + v * (right - bps[i]);
        d.values.push_back(std::move(v));
    }
    d.K = normalization(o.beta, budget);
    if (!(d.K == integral)) fail(ErrorKind::Internal, "normalization series and integral disagree");
    return d;
}

/// Partial sum of the density series at x with a certified tail bound.
struct DensityValue {
    Value partial_sum;
    Rational tail_bound;
    size_t terms = 0;

    double approx() const { return to_double(partial_sum); }
};

inline DensityValue density_at(const Beta& beta, const Rational& x, const Rational& tol) {
    if (x <= 0 || x > 1) fail(ErrorKind::Domain, "x must lie in (0, 1]");
    if (tol <= 0) fail(ErrorKind::Domain, "tolerance must be positive");
    const Rational lo = beta.enclose(64).first;
    // Bounds are rounded up to a dyadic grid finer than tol so they stay small.
    const long tol_bits = static_cast<long>(mpz_sizeinbase(tol.get_den_mpz_t(), 2)) -
                          static_cast<long>(mpz_sizeinbase(tol.get_num_mpz_t(), 2)) + 1;
    const Rational grid = pow2(std::max(0L, tol_bits) + 64);
    auto round_up = [&](const Rational& q) {
        Rational r = Rational(ceil(Rational(q * grid))) / grid;
        r.canonicalize();
        return r;
    };
    size_t N = 0;
    Rational bound = round_up(1 / (1 - 1 / lo));
    while (bound > tol) {
        bound = round_up(bound / lo);
        ++N;
    }

    auto at_least_x = [&](const Point& p) {
        if (const auto* f = std::get_if<FieldPoint>(&p)) return f->compare(x) >= 0;
        const auto& dp = std::get<DecimalPoint>(p);
        Rational diff = dp.value() - x;
        if (abs(diff) <= dp.radius() && !(dp.exact() && diff == 0))
            fail(ErrorKind::PrecisionExhausted, "orbit point indistinguishable from x at working precision");
        return diff >= 0;
    };

    DensityValue out{Rational(0), bound, N};
    Point p = beta.one();
    if (beta.is_exact()) {
        const FieldPoint u = -beta.generator().inverse();
        FieldPoint un = FieldPoint::constant(beta.field(), 1), sum = FieldPoint::constant(beta.field(), 0);
        for (size_t n = 0; n < N; ++n) {
            if (at_least_x(p)) sum = sum + un;
            un = un * u;
            if (n + 1 < N) p = step(beta, p).next;
        }
        out.partial_sum = sum;
    } else {
        const Rational u = -1 / beta.decimal_value();
        Rational un = 1, sum = 0;
        for (size_t n = 0; n < N; ++n) {
            if (at_least_x(p)) sum += un;
            un *= u;
            if (n + 1 < N) p = step(beta, p).next;
        }
        out.partial_sum = sum;
    }
    return out;
}

/// ν((a, b]) = ∫_a^b h dλ / K.
inline FieldPoint measure_interval(const PiecewiseDensity& d, const FieldPoint& a, const FieldPoint& b) {
    if (a.compare(Rational(0)) < 0 || b.compare(Rational(1)) > 0 || a.compare(b) > 0)
        fail(ErrorKind::Domain, "need 0 <= a <= b <= 1");
    FieldPoint acc = FieldPoint::constant(d.beta.field(), 0);
    for (size_t i = 0; i + 1 < d.breakpoints.size(); ++i) {
        const FieldPoint& l = a.compare(d.breakpoints[i]) > 0 ? a : d.breakpoints[i];
        const FieldPoint& r = b.compare(d.breakpoints[i + 1]) < 0 ? b : d.breakpoints[i + 1];
        if (l.compare(r) < 0) acc = acc + d.values[i] * (r - l);
    }
    return acc / d.K;
}

inline FieldPoint measure_interval(const PiecewiseDensity& d, const Rational& a, const Rational& b) {
    return measure_interval(d, FieldPoint::constant(d.beta.field(), a), FieldPoint::constant(d.beta.field(), b));
}

struct DensityLimits {
    FieldPoint at_zero;
    std::optional<FieldPoint> at_one;   // empty when the orbit is unresolved
    std::optional<size_t> return_time;  // m when the orbit of 1 is periodic
};

/// Limits of h at 0+ and 1−. At 1 the value is β^m/(β^m − (−1)^m) for a
/// periodic orbit with minimal return time m, and 1 otherwise.
inline DensityLimits limits(const Beta& beta, size_t budget = kDefaultBudget) {
    Beta b = beta.as_exact();
    const FieldPoint g = b.generator();
    const FieldPoint one = FieldPoint::constant(b.field(), 1);
    DensityLimits out{g / (g + Rational(1)), std::nullopt, std::nullopt};
    OrbitRecord r = orbit_of_one(b, budget);
    if (!r.classification.resolved()) return out;
    if (r.classification.kind == OrbitClass::Kind::Periodic) {
        const size_t m = r.classification.period_len;
        FieldPoint bm = g.pow(static_cast<long>(m));
        out.at_one = bm / (bm - Rational(m % 2 == 0 ? 1 : -1));
        out.return_time = m;
    } else {
        out.at_one = one;
    }
    return out;
}

enum class Coincidence { Coincide, Differ, Unresolved };

inline const char* to_string(Coincidence c) {
    switch (c) {
        case Coincidence::Coincide: return "Coincide";
        case Coincidence::Differ: return "Differ";
        case Coincidence::Unresolved: return "Unresolved";
    }
    return "?";
}

struct CoincidenceReport {
    Coincidence verdict = Coincidence::Unresolved;
    bool predicted = false;  // {β1, β2} = {root of x² − qx − p with p ≤ q, that root + 1}
    std::string reason;
};

namespace detail {

/// (q, p) when β² = qβ + p with integers 1 <= p <= q.
inline std::optional<std::pair<Integer, Integer>> quadratic_pq(const Beta& beta) {
    Beta b = beta.as_exact();
    const FieldPoint g = b.generator();
    Integer q = b.floor();
    FieldPoint p = g * g - g * Rational(q);
    Integer pf = p.floor();
    if (!(p.compare(Rational(pf)) == 0)) return std::nullopt;
    if (pf < 1 || pf > q) return std::nullopt;
    return std::pair{q, pf};
}

inline bool predicted_pair(const Beta& a, const Beta& b) {
    auto check = [](const Beta& small, const Beta& big) {
        if (!quadratic_pq(small)) return false;
        FieldPoint s = small.as_exact().generator() + Rational(1);
        return compare_values(s, big.as_exact().generator()) == 0;
    };
    return check(a, b) || check(b, a);
}

}  // namespace detail

inline CoincidenceReport densities_coincide(const Beta& b1, const Beta& b2, size_t budget = kDefaultBudget) {
    CoincidenceReport rep;
    rep.predicted = detail::predicted_pair(b1, b2);
    std::optional<PiecewiseDensity> d1, d2;
    try {
        d1 = density(b1, budget);
        d2 = density(b2, budget);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Unresolved) throw;
        rep.reason = e.what();
        return rep;
    }
    rep.verdict = Coincidence::Differ;
    if (d1->breakpoints.size() != d2->breakpoints.size()) {
        rep.reason = "breakpoint counts differ";
        return rep;
    }
    for (size_t i = 0; i < d1->breakpoints.size(); ++i)
        if (compare_values(d1->breakpoints[i], d2->breakpoints[i]) != 0) {
            rep.reason = "breakpoint " + std::to_string(i) + " differs";
            return rep;
        }
    for (size_t i = 0; i < d1->values.size(); ++i)
        if (compare_values(d1->values[i] / d1->K, d2->values[i] / d2->K) != 0) {
            rep.reason = "normalized value on piece " + std::to_string(i) + " differs";
            return rep;
        }
    rep.verdict = Coincidence::Coincide;
    rep.reason = "same breakpoints and normalized values";
    return rep;
}

}  // namespace negabeta
