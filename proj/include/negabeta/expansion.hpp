#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "negabeta/numerics.hpp"
#include "negabeta/sequence.hpp"

namespace negabeta {

inline constexpr size_t kDefaultBudget = 10000;

struct StepResult {
    int digit;
    Point next;
};

/// One application of x ↦ −βx + ⌊βx⌋ + 1 together with the emitted digit ⌊βx⌋ + 1.
inline StepResult step(const Beta& beta, const Point& x) {
    if (const auto* fx = std::get_if<FieldPoint>(&x)) {
        FieldPoint y = beta.generator() * *fx;
        Integer n = y.floor();
        return {static_cast<int>(n.get_si()) + 1, Point(-y + Rational(n + 1))};
    }
    const auto& dx = std::get<DecimalPoint>(x);
    auto [y, n] = detail::decimal_times(beta, dx);
    Integer shift = Integer(n + 1) << dx.precision();
    return {static_cast<int>(n.get_si()) + 1, Point(DecimalPoint(shift - y.mantissa(), dx.precision(), y.error()))};
}

namespace detail {

inline void require_unit_interval(const Point& x) {
    bool ok = std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FieldPoint>) {
                return v.sign() > 0 && v.compare(Rational(1)) <= 0;
            } else {
                Rational val = v.value();
                return val > 0 && val <= 1;
            }
        },
        x);
    if (!ok) fail(ErrorKind::Domain, "point must lie in (0, 1]");
}

}  // namespace detail

/// First n digits of the expansion of x.
inline DigitWord expand(const Beta& beta, const Point& x, size_t n) {
    detail::require_unit_interval(x);
    DigitWord digits;
    digits.reserve(n);
    Point cur = x;
    for (size_t i = 0; i < n; ++i) {
        auto s = step(beta, cur);
        digits.push_back(s.digit);
        cur = std::move(s.next);
    }
    return digits;
}

inline DigitWord expand(const Beta& beta, const Rational& x, size_t n) { return expand(beta, beta.point(x), n); }

struct OrbitClass {
    enum class Kind { Periodic, EventuallyPeriodic, Truncated };
    Kind kind = Kind::Truncated;
    size_t pre_len = 0;     // EventuallyPeriodic
    size_t period_len = 0;  // Periodic / EventuallyPeriodic
    size_t budget = 0;      // Truncated: iterations performed

    bool resolved() const { return kind != Kind::Truncated; }
};

inline const char* to_string(OrbitClass::Kind k) {
    switch (k) {
        case OrbitClass::Kind::Periodic: return "Periodic";
        case OrbitClass::Kind::EventuallyPeriodic: return "EventuallyPeriodic";
        case OrbitClass::Kind::Truncated: return "Truncated";
    }
    return "?";
}

/// Orbit of 1. points[0] = 1; when resolved, points holds the distinct orbit
/// values T^0(1), ..., T^{pre+period-1}(1) and digits[i] is emitted from points[i].
struct OrbitRecord {
    std::vector<Point> points;
    DigitWord digits;
    OrbitClass classification;
    bool precision_exhausted = false;  // decimal orbit stopped early
};

namespace detail {

/// Buckets exact field points by a coarse approximation; equality is confirmed exactly.
class PointIndex {
public:
    std::optional<size_t> find_or_insert(const FieldPoint& p, size_t index) {
        auto [lo, hi] = p.enclose(52);
        Integer key = negabeta::floor(Rational(lo * pow2(40)));
        for (int d = -1; d <= 1; ++d) {
            auto it = buckets_.find(key + d);
            if (it == buckets_.end()) continue;
            for (const auto& [q, j] : it->second)
                if (q.coeffs() == p.coeffs() || q.compare(p) == 0) return j;
        }
        buckets_[key].emplace_back(p, index);
        return std::nullopt;
    }

private:
    std::map<Integer, std::vector<std::pair<FieldPoint, size_t>>> buckets_;
};

}  // namespace detail

/// Iterates from 1 with certified cycle detection. Decimal orbits are only
/// classified while every point is still exactly representable.
inline OrbitRecord orbit_of_one(const Beta& beta, size_t budget = kDefaultBudget) {
    if (budget < 1) fail(ErrorKind::Domain, "budget must be >= 1");
    OrbitRecord rec;
    rec.points.push_back(beta.one());

    auto close = [&](size_t j, size_t n) {
        // T^n(1) == T^j(1): π(1) = d_1..d_j (d_{j+1}..d_n)^∞.
        rec.points.resize(n);
        if (j == 0) {
            rec.classification = {OrbitClass::Kind::Periodic, 0, n, 0};
        } else {
            rec.classification = {OrbitClass::Kind::EventuallyPeriodic, j, n - j, 0};
        }
    };

    if (beta.is_exact()) {
        detail::PointIndex index;
        index.find_or_insert(std::get<FieldPoint>(rec.points[0]), 0);
        for (size_t n = 1; n <= budget; ++n) {
            auto s = step(beta, rec.points.back());
            rec.digits.push_back(s.digit);
            if (auto j = index.find_or_insert(std::get<FieldPoint>(s.next), n)) {
                close(*j, n);
                return rec;
            }
            rec.points.push_back(std::move(s.next));
        }
        rec.points.pop_back();
        rec.classification = {OrbitClass::Kind::Truncated, 0, 0, budget};
        rec.points.resize(rec.digits.size());
        return rec;
    }

    std::map<Integer, size_t> exact_seen;
    exact_seen[std::get<DecimalPoint>(rec.points[0]).mantissa()] = 0;
    bool all_exact = true;
    size_t n = 1;
    for (; n <= budget; ++n) {
        StepResult s{0, Point{}};
        try {
            s = step(beta, rec.points.back());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted) throw;
            rec.precision_exhausted = true;
            break;
        }
        rec.digits.push_back(s.digit);
        const auto& dp = std::get<DecimalPoint>(s.next);
        all_exact = all_exact && dp.exact();
        if (all_exact) {
            auto [it, inserted] = exact_seen.emplace(dp.mantissa(), n);
            if (!inserted) {
                close(it->second, n);
                return rec;
            }
        }
        rec.points.push_back(std::move(s.next));
    }
    rec.points.resize(rec.digits.size());
    rec.classification = {OrbitClass::Kind::Truncated, 0, 0, rec.digits.size()};
    return rec;
}

struct PiOfOne {
    std::optional<EvPeriodic> expansion;  // set when the orbit resolved
    DigitWord prefix;                     // digits computed
    bool truncated = true;
    bool is_simple = false;  // purely periodic
};

inline PiOfOne pi_of_one(const Beta& beta, size_t budget = kDefaultBudget) {
    OrbitRecord rec = orbit_of_one(beta, budget);
    PiOfOne out;
    out.prefix = rec.digits;
    if (!rec.classification.resolved()) return out;
    size_t k = rec.classification.pre_len;
    DigitWord pre(rec.digits.begin(), rec.digits.begin() + static_cast<long>(k));
    DigitWord per(rec.digits.begin() + static_cast<long>(k), rec.digits.end());
    out.expansion = EvPeriodic(pre, per);
    out.truncated = false;
    out.is_simple = out.expansion->purely_periodic();
    return out;
}

/// Numerator and denominator of the value of an eventually periodic digit
/// sequence as polynomials in u = −β: value = −S(u) / D(u).
struct ValueForm {
    Poly numerator;    // −S
    Poly denominator;  // D
};

inline ValueForm value_form(const EvPeriodic& seq) {
    const size_t k = seq.pre_len(), p = seq.period_len();
    // A(u) = Σ_{n≤k} d_n u^{k−n}, B(u) = Σ_{i≤p} e_i u^{p−i}
    Poly a, b;
    for (size_t n = 1; n <= k; ++n) a = a + Poly::monomial(seq.preperiod()[n - 1], static_cast<int>(k - n));
    for (size_t i = 1; i <= p; ++i) b = b + Poly::monomial(seq.period()[i - 1], static_cast<int>(p - i));
    Poly up1 = Poly::monomial(1, static_cast<int>(p)) - Poly::constant(1);
    Poly s = a * up1 + b;
    Poly d = Poly::monomial(1, static_cast<int>(k)) * up1;
    return {-s, d};
}

/// Polynomial in β whose roots are the bases at which seq evaluates to 1.
inline Poly value_equation(const EvPeriodic& seq) {
    ValueForm v = value_form(seq);
    return (v.denominator - v.numerator).reflected();
}

/// Exact value; a field element for exact bases, a rational for decimal ones.
using Value = std::variant<FieldPoint, Rational>;

inline double to_double(const Value& v) {
    if (const auto* f = std::get_if<FieldPoint>(&v)) return f->to_double();
    return std::get<Rational>(v).get_d();
}

inline Value evaluate(const EvPeriodic& seq, const Beta& beta) {
    ValueForm v = value_form(seq);
    Poly num = v.numerator.reflected(), den = v.denominator.reflected();  // in β
    if (beta.is_exact()) {
        FieldPoint n(beta.field(), num), d(beta.field(), den);
        return n / d;
    }
    const Rational& b = beta.decimal_value();
    return Value(num.eval(b) / den.eval(b));
}

struct PrefixValue {
    Value value;
    double truncation_bound;  // (⌊β⌋+1)·β^{−n}/(β−1)
};

inline PrefixValue evaluate(const DigitWord& prefix, const Beta& beta) {
    Poly sum;  // Σ −d_n (−β)^{−n}, multiplied through by (−β)^n with n = |prefix|
    const size_t n = prefix.size();
    for (size_t i = 1; i <= n; ++i) sum = sum + Poly::monomial(-prefix[i - 1], static_cast<int>(n - i));
    Poly num = sum.reflected();
    Poly den = Poly::monomial(1, static_cast<int>(n)).reflected();
    double b = beta.to_double();
    double bound = (beta.alphabet_max()) * std::pow(b, -static_cast<double>(n)) / (b - 1);
    if (beta.is_exact()) {
        FieldPoint nv(beta.field(), num), dv(beta.field(), den);
        return {nv / dv, bound};
    }
    const Rational& r = beta.decimal_value();
    return {Value(num.eval(r) / den.eval(r)), bound};
}

}  // namespace negabeta
