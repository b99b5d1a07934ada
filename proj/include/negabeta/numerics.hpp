#pragma once

// Exact and controlled-precision representation of bases and orbit points.
//
// An exact base is the unique real root of a defining polynomial f inside a
// rational isolating interval. Orbit points live in Q[x]/(f); signs are decided
// by interval evaluation on a refined isolating interval, backed by an exact
// zero test through gcd with f when the enclosure straddles zero. f need not be
// irreducible or squarefree.

#include <compare>
#include <cstdlib>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "negabeta/error.hpp"
#include "negabeta/polynomial.hpp"
#include "negabeta/rational.hpp"

namespace negabeta {

inline constexpr unsigned kDefaultPrecisionBits = 256;

class NumberField {
public:
    /// `defining` may have rational coefficients; (lo, hi) must isolate exactly one root > 1.
    NumberField(Poly defining, Rational lo, Rational hi)
        : f_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
        if (f_.degree() < 1) fail(ErrorKind::Domain, "defining polynomial must have degree >= 1");
        if (lo_ >= hi_) fail(ErrorKind::Domain, "isolation interval is empty");
        if (lo_ < 1) fail(ErrorKind::Domain, "isolation interval must lie above 1");
        monic_ = f_.monic();
        sqf_ = squarefree(f_);
        sturm_ = std::make_shared<SturmSequence>(sqf_);
        if (sqf_.sign_at(lo_) == 0 || sqf_.sign_at(hi_) == 0)
            fail(ErrorKind::Domain, "isolation endpoint is a root of the defining polynomial");
        if (sturm_->count(lo_, hi_) != 1)
            fail(ErrorKind::Domain, "isolation interval must contain exactly one root");
        tlo_ = lo_;
        thi_ = hi_;
        sign_lo_ = sqf_.sign_at(tlo_);
        refine(tlo_, thi_, kTightBits, rational_root_);
    }

    const Poly& defining() const { return f_; }
    int degree() const { return f_.degree(); }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const Rational& tight_lo() const { return tlo_; }
    const Rational& tight_hi() const { return thi_; }
    /// Set when the base itself turned out to be rational during refinement.
    const std::optional<Rational>& rational_value() const { return rational_root_; }

    Poly reduce(const Poly& g) const {
        if (g.degree() < f_.degree()) return g;
        return g % monic_;
    }

    /// Enclosure of g(β) with width below 2^-bits.
    std::pair<Rational, Rational> enclose(const Poly& g, long bits) const {
        if (rational_root_) {
            Rational v = g.eval(*rational_root_);
            return {v, v};
        }
        Rational a = tlo_, b = thi_;
        auto target = pow2(-bits);
        std::optional<Rational> exact;
        for (;;) {
            auto iv = eval_interval(g, a, b);
            if (iv.second - iv.first <= target) return iv;
            bisect_once(a, b, exact);
            if (exact) {
                Rational v = g.eval(*exact);
                return {v, v};
            }
        }
    }

    bool is_zero(const Poly& g) const {
        if (g.is_zero()) return true;
        if (rational_root_) return g.eval(*rational_root_) == 0;
        auto iv = eval_interval(g, tlo_, thi_);
        if (iv.first > 0 || iv.second < 0) return false;
        Poly h = gcd(g, f_);
        if (h.degree() < 1) return false;
        SturmSequence s(h);
        return s.count(lo_, hi_) > 0;
    }

    int sign(const Poly& g) const {
        if (g.is_zero()) return 0;
        if (rational_root_) return sgn(g.eval(*rational_root_));
        auto iv = eval_interval(g, tlo_, thi_);
        if (iv.first > 0) return 1;
        if (iv.second < 0) return -1;
        if (is_zero(g)) return 0;
        Rational a = tlo_, b = thi_;
        std::optional<Rational> exact;
        for (;;) {
            for (int i = 0; i < 16; ++i) {
                bisect_once(a, b, exact);
                if (exact) return sgn(g.eval(*exact));
            }
            iv = eval_interval(g, a, b);
            if (iv.first > 0) return 1;
            if (iv.second < 0) return -1;
        }
    }

    /// Multiplicative inverse modulo the factor of f that vanishes at β.
    Poly inverse(const Poly& g) const {
        if (is_zero(g)) fail(ErrorKind::Domain, "division by zero in number field");
        if (rational_root_) return Poly::constant(1 / g.eval(*rational_root_));
        Poly m = monic_;
        for (;;) {
            Poly h = gcd(g, m);
            if (h.degree() < 1) break;
            m = (m / h).monic();
        }
        ExtGcd e = ext_gcd(reduce(g) % m, m);
        return reduce(e.s);
    }

    /// Characteristic polynomial of multiplication by g on Q[x]/(f).
    Poly charpoly(const Poly& g) const {
        const int n = degree();
        std::vector<std::vector<Rational>> a(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
        Poly col = reduce(g);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.coeff(i);
            col = reduce(col * Poly::x());
        }
        // Faddeev-LeVerrier.
        std::vector<Rational> c(static_cast<size_t>(n) + 1);
        c[static_cast<size_t>(n)] = 1;
        std::vector<std::vector<Rational>> m(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
        for (int k = 1; k <= n; ++k) {
            std::vector<std::vector<Rational>> am(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
            for (size_t i = 0; i < static_cast<size_t>(n); ++i)
                for (size_t j = 0; j < static_cast<size_t>(n); ++j) {
                    Rational s = 0;
                    for (size_t l = 0; l < static_cast<size_t>(n); ++l) s += a[i][l] * m[l][j];
                    am[i][j] = s;
                }
            for (size_t i = 0; i < static_cast<size_t>(n); ++i) am[i][i] += c[static_cast<size_t>(n - k + 1)];
            m = am;
            Rational tr = 0;
            for (size_t i = 0; i < static_cast<size_t>(n); ++i)
                for (size_t l = 0; l < static_cast<size_t>(n); ++l) tr += a[i][l] * m[l][i];
            c[static_cast<size_t>(n - k)] = -tr / k;
        }
        return Poly(std::move(c));
    }

    bool same_as(const NumberField& other) const {
        return this == &other || (f_ == other.f_ && lo_ == other.lo_ && hi_ == other.hi_);
    }

private:
    static constexpr long kTightBits = 128;

    void bisect_once(Rational& a, Rational& b, std::optional<Rational>& exact) const {
        Rational m = (a + b) / 2;
        int s = sqf_.sign_at(m);
        if (s == 0) {
            exact = m;
            return;
        }
        if (s == sign_lo_)
            a = m;
        else
            b = m;
    }

    void refine(Rational& a, Rational& b, long bits, std::optional<Rational>& exact) const {
        auto target = pow2(-bits);
        while (b - a > target) {
            bisect_once(a, b, exact);
            if (exact) return;
        }
    }

    Poly f_, monic_, sqf_;
    std::shared_ptr<const SturmSequence> sturm_;
    Rational lo_, hi_, tlo_, thi_;
    int sign_lo_ = 0;
    std::optional<Rational> rational_root_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Exact element of Q(β), stored reduced modulo the defining polynomial.
class FieldPoint {
public:
    FieldPoint() = default;
    FieldPoint(FieldPtr field, Poly coeffs) : field_(std::move(field)), c_(field_->reduce(coeffs)) {}

    static FieldPoint constant(FieldPtr field, const Rational& v) { return {std::move(field), Poly::constant(v)}; }
    static FieldPoint generator(FieldPtr field) { return {std::move(field), Poly::x()}; }

    const FieldPtr& field() const { return field_; }
    const Poly& coeffs() const { return c_; }

    friend FieldPoint operator+(const FieldPoint& a, const FieldPoint& b) { return {a.field_, a.c_ + b.c_}; }
    friend FieldPoint operator-(const FieldPoint& a, const FieldPoint& b) { return {a.field_, a.c_ - b.c_}; }
    friend FieldPoint operator*(const FieldPoint& a, const FieldPoint& b) { return {a.field_, a.c_ * b.c_}; }
    friend FieldPoint operator-(const FieldPoint& a) { return {a.field_, -a.c_}; }
    friend FieldPoint operator+(const FieldPoint& a, const Rational& r) { return {a.field_, a.c_ + Poly::constant(r)}; }
    friend FieldPoint operator-(const FieldPoint& a, const Rational& r) { return {a.field_, a.c_ - Poly::constant(r)}; }
    friend FieldPoint operator*(const FieldPoint& a, const Rational& r) { return {a.field_, r * a.c_}; }
    friend FieldPoint operator/(const FieldPoint& a, const FieldPoint& b) { return a * b.inverse(); }

    FieldPoint inverse() const { return {field_, field_->inverse(c_)}; }

    FieldPoint pow(long e) const {
        FieldPoint base = e < 0 ? inverse() : *this;
        unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
        FieldPoint r = constant(field_, 1);
        while (k) {
            if (k & 1u) r = r * base;
            k >>= 1u;
            if (k) base = base * base;
        }
        return r;
    }

    int sign() const { return field_->sign(c_); }
    bool is_zero() const { return field_->is_zero(c_); }

    std::strong_ordering compare(const FieldPoint& other) const {
        if (c_ == other.c_) return std::strong_ordering::equal;
        int s = (*this - other).sign();
        return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    std::strong_ordering compare(const Rational& r) const {
        int s = (*this - r).sign();
        return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// Value equality (not representation equality).
    friend bool operator==(const FieldPoint& a, const FieldPoint& b) { return a.compare(b) == 0; }

    std::pair<Rational, Rational> enclose(long bits) const { return field_->enclose(c_, bits); }

    Rational approx(long bits = 64) const {
        auto [a, b] = enclose(bits);
        return (a + b) / 2;
    }

    double to_double() const { return approx(64).get_d(); }

    std::string to_decimal(int digits) const {
        auto [a, b] = enclose(static_cast<long>(digits * 3.33) + 16);
        return negabeta::to_decimal((a + b) / 2, digits);
    }

    Integer floor() const {
        auto [a, b] = enclose(24);
        Integer n = negabeta::floor(a);
        // Exact fix-up against neighbouring integers.
        while (compare(Rational(n)) < 0) n -= 1;
        while (compare(Rational(n + 1)) >= 0) n += 1;
        return n;
    }

    /// Exact form as rational coefficients of 1, β, β², ...
    std::vector<std::string> exact_strings() const {
        std::vector<std::string> out;
        for (int i = 0; i < field_->degree(); ++i) out.push_back(c_.coeff(i).get_str());
        return out;
    }

private:
    FieldPtr field_;
    Poly c_;
};

/// Fixed-point approximation m / 2^precision with absolute error at most err / 2^precision.
class DecimalPoint {
public:
    DecimalPoint() = default;
    DecimalPoint(Integer mantissa, unsigned precision, Integer err)
        : m_(std::move(mantissa)), p_(precision), err_(std::move(err)) {}

    static DecimalPoint from_rational(const Rational& v, unsigned precision) {
        Rational scaled = v * pow2(precision);
        Integer m = negabeta::floor(scaled);
        return {m, precision, Rational(m) == scaled ? Integer(0) : Integer(1)};
    }

    const Integer& mantissa() const { return m_; }
    unsigned precision() const { return p_; }
    const Integer& error() const { return err_; }
    bool exact() const { return err_ == 0; }

    Rational value() const { return Rational(m_) / pow2(p_); }
    Rational radius() const { return Rational(err_) / pow2(p_); }

    double to_double() const { return value().get_d(); }

    std::string to_decimal(int digits) const { return negabeta::to_decimal(value(), digits); }

    friend bool operator==(const DecimalPoint& a, const DecimalPoint& b) {
        return a.p_ == b.p_ && a.m_ == b.m_ && a.err_ == b.err_;
    }

private:
    Integer m_;
    unsigned p_ = 0;
    Integer err_;
};

using Point = std::variant<FieldPoint, DecimalPoint>;

inline double to_double(const Point& p) {
    return std::visit([](const auto& v) { return v.to_double(); }, p);
}

inline std::string to_decimal(const Point& p, int digits) {
    return std::visit([&](const auto& v) { return v.to_decimal(digits); }, p);
}

class Beta {
public:
    enum class Kind { Exact, Decimal };

    /// Exact base from a defining polynomial (lowest degree first) and isolating interval.
    static Beta exact(Poly defining, Rational lo, Rational hi) {
        Beta b;
        b.kind_ = Kind::Exact;
        b.field_ = std::make_shared<const NumberField>(std::move(defining), std::move(lo), std::move(hi));
        b.floor_ = FieldPoint::generator(b.field_).floor();
        return b;
    }

    /// Decimal base; `literal` must be a finite decimal (or num/den) above 1.
    static Beta decimal(std::string_view literal, unsigned precision_bits = kDefaultPrecisionBits) {
        Beta b;
        b.kind_ = Kind::Decimal;
        b.value_ = parse_rational(literal);
        if (b.value_ <= 1) fail(ErrorKind::Domain, "base must exceed 1");
        if (precision_bits < 16) fail(ErrorKind::Domain, "precision must be at least 16 bits");
        b.literal_ = std::string(literal);
        b.precision_ = precision_bits;
        b.floor_ = negabeta::floor(b.value_);
        return b;
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }

    const FieldPtr& field() const {
        if (!field_) fail(ErrorKind::Domain, "decimal base has no number field");
        return field_;
    }

    const Rational& decimal_value() const { return value_; }
    unsigned precision() const { return precision_; }

    FieldPoint generator() const { return FieldPoint::generator(field()); }

    /// ⌊β⌋.
    const Integer& floor() const { return floor_; }
    int alphabet_max() const { return static_cast<int>(floor_.get_si()) + 1; }
    bool is_integer() const {
        return is_exact() ? generator().compare(Rational(floor_)) == 0 : value_ == Rational(floor_);
    }

    Point point(const Rational& v) const {
        if (is_exact()) return FieldPoint::constant(field_, v);
        return DecimalPoint::from_rational(v, precision_);
    }

    Point one() const { return point(1); }

    std::pair<Rational, Rational> enclose(long bits) const {
        if (is_exact()) return generator().enclose(bits);
        return {value_, value_};
    }

    double to_double() const { return is_exact() ? generator().to_double() : value_.get_d(); }

    std::string to_decimal(int digits) const {
        return is_exact() ? generator().to_decimal(digits) : negabeta::to_decimal(value_, digits);
    }

    /// Base-specification string that reconstructs this base.
    std::string spec() const {
        if (!is_exact()) return "dec:" + literal_;
        std::string s = "poly:[";
        auto coeffs = field_->defining().integer_coeffs_highest_first();
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i) s += ",";
            s += coeffs[i].get_str();
        }
        return s + "]@(" + format_rational(field_->lo()) + "," + format_rational(field_->hi()) + ")";
    }

    /// β + k as an exact base.
    Beta shifted(const Integer& k) const {
        if (!is_exact()) {
            Rational v = value_ + k;
            return decimal(format_rational(v), precision_);
        }
        return exact(field_->defining().shifted(Rational(k)), field_->lo() + k, field_->hi() + k);
    }

    /// Exact counterpart of a decimal base (its value is a rational number).
    Beta as_exact() const {
        if (is_exact()) return *this;
        Poly f(std::vector<Rational>{Rational(-value_), Rational(1)});
        return exact(f, Rational(value_ - Rational(1, 2)) > 1 ? Rational(value_ - Rational(1, 2)) : Rational((value_ + 1) / 2),
                     value_ + Rational(1, 2));
    }

private:
    Kind kind_ = Kind::Decimal;
    FieldPtr field_;
    Rational value_;
    std::string literal_;
    unsigned precision_ = kDefaultPrecisionBits;
    Integer floor_;
};

namespace detail {

inline std::vector<Integer> parse_integer_list(std::string_view text) {
    std::vector<Integer> out;
    std::string s(text);
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        Rational v = parse_rational(item);
        if (v.get_den() != 1) fail(ErrorKind::Domain, "polynomial coefficients must be integers");
        out.push_back(v.get_num());
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

/// Shrinks (lo, hi) to a width-1/10 interval with decimal endpoints when possible.
inline std::pair<Rational, Rational> decimal_isolation(const Poly& f, Rational lo, Rational hi) {
    Poly sq = squarefree(f);
    SturmSequence st(sq);
    Rational step(1, 10);
    for (Rational a = lo; a < hi; a += step) {
        Rational b = a + step;
        if (b > hi) b = hi;
        if (sq.sign_at(a) == 0 || sq.sign_at(b) == 0) return {lo, hi};
        if (st.count(a, b) == 1) return {a, b};
    }
    return {lo, hi};
}

inline std::pair<Integer, Integer> parse_pq(const std::string& body, const char* first, const char* second) {
    std::regex re(std::string("^") + first + "=(-?[0-9]+),\\s*" + second + "=(-?[0-9]+)$");
    std::smatch m;
    if (!std::regex_match(body, m, re)) fail(ErrorKind::Domain, "malformed base parameters: " + body);
    return {Integer(m[1].str(), 10), Integer(m[2].str(), 10)};
}

}  // namespace detail

/// Builds a base from "dec:<decimal>", "poly:[c_k,...,c_0]@(lo,hi)",
/// "pisot2:p=<p>,q=<q>" or "multinacci:q=<q>,m=<m>".
inline Beta make_beta(std::string_view spec, unsigned precision_bits = kDefaultPrecisionBits) {
    std::string s(spec);
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Domain, "base spec needs a kind prefix: " + s);
    std::string kind = s.substr(0, colon), body = s.substr(colon + 1);

    if (kind == "dec") return Beta::decimal(body, precision_bits);

    if (kind == "poly") {
        std::regex re(R"(^\[([^\]]*)\]@\(([^,()]+),([^,()]+)\)$)");
        std::smatch m;
        if (!std::regex_match(body, m, re)) fail(ErrorKind::Domain, "malformed poly spec: " + s);
        Poly f = Poly::from_highest_first(detail::parse_integer_list(m[1].str()));
        return Beta::exact(f, parse_rational(m[2].str()), parse_rational(m[3].str()));
    }

    if (kind == "pisot2") {
        auto [p, q] = detail::parse_pq(body, "p", "q");
        if (p < 1 || q < 1) fail(ErrorKind::Domain, "pisot2 needs p, q >= 1");
        if (p > q) fail(ErrorKind::Domain, "pisot2 needs p <= q");
        Poly f = Poly::from_highest_first({Integer(1), Integer(-q), Integer(-p)});
        auto [lo, hi] = detail::decimal_isolation(f, Rational(q), Rational(q + 1));
        return Beta::exact(f, lo, hi);
    }

    if (kind == "multinacci") {
        auto [q, m] = detail::parse_pq(body, "q", "m");
        if (q < 1 || m < 2) fail(ErrorKind::Domain, "multinacci needs q >= 1 and m >= 2");
        if (m > 64) fail(ErrorKind::Domain, "multinacci order too large");
        std::vector<Integer> c(static_cast<size_t>(m.get_si()) + 1, Integer(-q));
        c[0] = 1;
        Poly f = Poly::from_highest_first(c);
        auto [lo, hi] = detail::decimal_isolation(f, Rational(q), Rational(q + 1));
        return Beta::exact(f, lo, hi);
    }

    fail(ErrorKind::Domain, "unknown base kind: " + kind);
}

/// ⌊β·x⌋ for an exact orbit point.
inline Integer floor_beta_times(const Beta& beta, const FieldPoint& x) { return (beta.generator() * x).floor(); }

namespace detail {

struct DecimalProduct {
    DecimalPoint value;
    Integer floor;
};

/// β·x in fixed point, with the floor decided or precision exhaustion reported.
inline DecimalProduct decimal_times(const Beta& beta, const DecimalPoint& x) {
    const Rational& b = beta.decimal_value();
    Integer num = b.get_num() * x.mantissa();
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), b.get_den_mpz_t());
    Integer err;
    Integer scaled_err = b.get_num() * x.error();
    mpz_cdiv_q(err.get_mpz_t(), scaled_err.get_mpz_t(), b.get_den_mpz_t());
    if (r != 0) err += 1;
    DecimalPoint y(q, x.precision(), err);
    Integer lo = q - err, hi = q + err;
    Integer flo, fhi;
    mpz_fdiv_q_2exp(flo.get_mpz_t(), lo.get_mpz_t(), x.precision());
    mpz_fdiv_q_2exp(fhi.get_mpz_t(), hi.get_mpz_t(), x.precision());
    if (flo != fhi)
        fail(ErrorKind::PrecisionExhausted,
             "beta*x lies within the error bound of an integer; raise precision or use an exact base");
    return {y, flo};
}

}  // namespace detail

/// ⌊β·x⌋ for a decimal point; throws PrecisionExhausted at unresolvable ties.
inline Integer floor_beta_times(const Beta& beta, const DecimalPoint& x) {
    return detail::decimal_times(beta, x).floor;
}

inline Integer floor_beta_times(const Beta& beta, const Point& x) {
    return std::visit([&](const auto& v) { return floor_beta_times(beta, v); }, x);
}

inline std::strong_ordering compare_to_rational(const FieldPoint& x, const Rational& r) { return x.compare(r); }

/// Orders two algebraic numbers that may live in different fields.
inline std::strong_ordering compare_values(const FieldPoint& a, const FieldPoint& b) {
    if (a.field() == b.field() || a.field()->same_as(*b.field())) {
        FieldPoint bb(a.field(), b.coeffs());
        return a.compare(bb);
    }
    auto order_of = [](const std::pair<Rational, Rational>& x, const std::pair<Rational, Rational>& y) {
        if (x.second < y.first) return std::optional(std::strong_ordering::less);
        if (y.second < x.first) return std::optional(std::strong_ordering::greater);
        return std::optional<std::strong_ordering>{};
    };
    long bits = 64;
    auto ea = a.enclose(bits), eb = b.enclose(bits);
    if (auto o = order_of(ea, eb)) return *o;

    Poly ra = squarefree(a.field()->charpoly(a.coeffs()));
    Poly rb = squarefree(b.field()->charpoly(b.coeffs()));
    Poly g = gcd(ra, rb);
    bool may_be_equal = g.degree() >= 1;
    SturmSequence sa(ra), sb(rb), sg(g.degree() >= 1 ? g : Poly::constant(1));
    for (;;) {
        ea = a.enclose(bits);
        eb = b.enclose(bits);
        if (auto o = order_of(ea, eb)) return *o;
        if (may_be_equal) {
            Rational lo = std::min(ea.first, eb.first), hi = std::max(ea.second, eb.second);
            Rational pad = (hi - lo) / 4 + pow2(-bits - 8);
            lo -= pad;
            hi += pad;
            bool clean = ra.sign_at(lo) != 0 && ra.sign_at(hi) != 0 && rb.sign_at(lo) != 0 && rb.sign_at(hi) != 0;
            if (clean) {
                int cg = sg.count(lo, hi);
                if (cg == 0) may_be_equal = false;
                else if (sa.count(lo, hi) == 1 && sb.count(lo, hi) == 1)
                    return std::strong_ordering::equal;
            }
        }
        bits += 64;
        if (bits > 1 << 16) fail(ErrorKind::Internal, "cross-field comparison did not converge");
    }
}

}  // namespace negabeta
