#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "negabeta/rational.hpp"

namespace negabeta {

/// Dense univariate polynomial over Q, coefficients stored lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> lowest_first) : c_(std::move(lowest_first)) { trim(); }

    static Poly constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

    static Poly monomial(const Rational& c, int k) {
        std::vector<Rational> v(static_cast<size_t>(k) + 1);
        v.back() = c;
        return Poly(std::move(v));
    }

    static Poly x() { return monomial(1, 1); }

    static Poly from_highest_first(const std::vector<Integer>& coeffs) {
        std::vector<Rational> v;
        v.reserve(coeffs.size());
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v.emplace_back(*it);
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    size_t size() const { return c_.size(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : Rational(0);
    }

    const Rational& leading() const {
        assert(!c_.empty());
        return c_.back();
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    int sign_at(const Rational& x) const { return sgn(eval(x)); }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return Poly(std::move(d));
    }

    Poly monic() const {
        if (c_.empty()) return {};
        Poly r = *this;
        Rational lc = leading();
        for (auto& c : r.c_) c /= lc;
        return r;
    }

    /// p(x - k).
    Poly shifted(const Rational& k) const {
        Poly result;
        Poly base(std::vector<Rational>{Rational(-k), Rational(1)});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) result = result * base + constant(*it);
        return result;
    }

    /// p(-x).
    Poly reflected() const {
        Poly r = *this;
        for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
        return r;
    }

    /// Integer coefficients, highest degree first, after clearing denominators.
    std::vector<Integer> integer_coeffs_highest_first() const {
        Integer l = 1;
        for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        Integer g = 0;
        std::vector<Integer> out;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Rational v = *it * l;
            out.push_back(v.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        }
        if (g > 1)
            for (auto& v : out) v /= g;
        if (!out.empty() && out.front() < 0)
            for (auto& v : out) v = -v;
        return out;
    }

    std::string str() const {
        std::string s = "[";
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (it != c_.rbegin()) s += ",";
            s += it->get_str();
        }
        return s + "]";
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }

    friend Poly operator*(const Rational& s, const Poly& p) {
        if (s == 0) return {};
        Poly r = p;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    assert(!b.is_zero());
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> quo(static_cast<size_t>(a.degree() - b.degree() + 1));
    const auto& bc = b.coeffs();
    const Rational& lb = b.leading();
    for (int i = a.degree(); i >= b.degree(); --i) {
        Rational f = rem[static_cast<size_t>(i)] / lb;
        quo[static_cast<size_t>(i - b.degree())] = f;
        if (f == 0) continue;
        for (int j = 0; j <= b.degree(); ++j) rem[static_cast<size_t>(i - b.degree() + j)] -= f * bc[static_cast<size_t>(j)];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

struct ExtGcd {
    Poly g, s, t;  // s*a + t*b = g, g monic
};

inline ExtGcd ext_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(1), s1;
    Poly t0, t1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational lc = 1 / r0.leading();
    return {lc * r0, lc * s0, lc * t0};
}

inline Poly squarefree(const Poly& p) {
    if (p.degree() <= 0) return p.monic();
    Poly g = gcd(p, p.derivative());
    return (p / g).monic();
}

/// Sturm chain; counts distinct real roots in half-open intervals (a, b].
class SturmSequence {
public:
    explicit SturmSequence(const Poly& p) {
        if (p.is_zero()) return;
        chain_.push_back(p);
        chain_.push_back(p.derivative());
        while (!chain_.back().is_zero()) {
            Poly r = chain_[chain_.size() - 2] % chain_.back();
            chain_.push_back(-r);
        }
        chain_.pop_back();
    }

    int variations(const Rational& x) const {
        int count = 0, last = 0;
        for (const auto& p : chain_) {
            int s = p.sign_at(x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

    const Poly& base() const { return chain_.front(); }

private:
    std::vector<Poly> chain_;
};

/// Enclosure of p over [lo, hi] with 0 <= lo; monomials are monotone there.
inline std::pair<Rational, Rational> eval_interval(const Poly& p, const Rational& lo, const Rational& hi) {
    Rational low = 0, high = 0;
    Rational plo = 1, phi = 1;
    for (const auto& c : p.coeffs()) {
        if (c >= 0) {
            low += c * plo;
            high += c * phi;
        } else {
            low += c * phi;
            high += c * plo;
        }
        plo *= lo;
        phi *= hi;
    }
    return {low, high};
}

/// Bound on the absolute value of every complex root.
inline Rational cauchy_bound(const Poly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.leading())));
    return m + 1;
}

struct RootInterval {
    Rational lo, hi;  // open interval holding exactly one root; endpoints are not roots
};

/// Isolates the distinct real roots of p inside the open interval (lo, hi).
/// Endpoints that are roots are excluded from the search.
inline std::vector<RootInterval> isolate_roots(const Poly& p, Rational lo, Rational hi, const Rational& max_width = 0) {
    std::vector<RootInterval> out;
    if (p.degree() <= 0) return out;
    Poly sq = squarefree(p);
    SturmSequence sturm(sq);

    // Nudges a split point off a root.
    auto nonroot_between = [&](const Rational& a, const Rational& b) {
        Rational w = b - a;
        Rational m = a + w / 2;
        for (int k = 3; sq.sign_at(m) == 0; ++k) m = a + w / 2 + w / Rational(Integer(1) << static_cast<unsigned>(k));
        return m;
    };
    if (sq.sign_at(lo) == 0) {
        Rational step = (hi - lo) / 2;
        Rational moved = nonroot_between(lo, lo + step);
        while (sturm.count(lo, moved) != 0) moved = nonroot_between(lo, lo + (step /= 2));
        lo = moved;
    }
    if (sq.sign_at(hi) == 0) {
        Rational step = (hi - lo) / 2;
        Rational moved = nonroot_between(hi - step, hi);
        // roots in [moved, hi) other than hi itself
        while (sturm.count(moved, hi) != 1) moved = nonroot_between(hi - (step /= 2), hi);
        hi = moved;
    }

    std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int n = sturm.count(a, b);
        if (n == 0) continue;
        if (n == 1 && (max_width == 0 || b - a <= max_width)) {
            out.push_back({a, b});
            continue;
        }
        Rational m = nonroot_between(a, b);
        stack.emplace_back(m, b);
        stack.emplace_back(a, m);
    }
    return out;
}

/// Shrinks an isolating interval of a squarefree-compatible polynomial until width <= w.
inline RootInterval refine_root(const Poly& p, RootInterval iv, const Rational& w) {
    Poly sq = squarefree(p);
    int slo = sq.sign_at(iv.lo);
    while (iv.hi - iv.lo > w) {
        Rational m = (iv.lo + iv.hi) / 2;
        int s = sq.sign_at(m);
        if (s == 0) {
            Rational d = std::min(Rational(w / 4), Rational((iv.hi - iv.lo) / 8));
            return {m - d, m + d};
        }
        if (s == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

}  // namespace negabeta
