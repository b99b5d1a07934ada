#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "negabeta/error.hpp"

namespace negabeta {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational pow2(long e) {
    Rational r(1);
    if (e >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
}

inline Rational pow(const Rational& q, unsigned e) {
    Rational r(1);
    Rational b = q;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

/// Parses "-12", "3/4" or a plain decimal such as "1.324717" exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) fail(ErrorKind::Domain, "empty number");

    auto digits_only = [](std::string_view v, bool allow_sign) {
        if (v.empty()) return false;
        size_t i = 0;
        if (allow_sign && (v[0] == '-' || v[0] == '+')) i = 1;
        if (i == v.size()) return false;
        for (; i < v.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
        return true;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!digits_only(num, true) || !digits_only(den, false)) fail(ErrorKind::Domain, "bad rational: " + s);
        if (num[0] == '+') num = num.substr(1);
        Integer n(num, 10), d(den, 10);
        if (d == 0) fail(ErrorKind::Domain, "zero denominator: " + s);
        Rational q(n, d);
        q.canonicalize();
        return q;
    }

    bool negative = false;
    std::string body = s;
    if (body[0] == '-' || body[0] == '+') {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    std::string whole = body, frac;
    if (auto dot = body.find('.'); dot != std::string::npos) {
        whole = body.substr(0, dot);
        frac = body.substr(dot + 1);
    }
    if (whole.empty()) whole = "0";
    if (body == "." || !digits_only(whole, false) || (!frac.empty() && !digits_only(frac, false)))
        fail(ErrorKind::Domain, "bad decimal: " + s);
    Integer scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational q{Integer(whole + frac, 10), scale};
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

/// Finite decimals render as decimals, everything else as "num/den".
inline std::string format_rational(const Rational& q) {
    Integer den = q.get_den();
    int twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den != 1 || std::max(twos, fives) > 40) return q.get_str();
    int places = std::max(twos, fives);
    if (places == 0) return q.get_num().get_str();
    Integer scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    Integer scaled = q.get_num() * scale / q.get_den();
    bool negative = scaled < 0;
    std::string digits = Integer(abs(scaled)).get_str();
    while (static_cast<int>(digits.size()) <= places) digits.insert(digits.begin(), '0');
    digits.insert(digits.end() - places, '.');
    return negative ? "-" + digits : digits;
}

/// Decimal rendering truncated toward zero to `digits` fractional places.
inline std::string to_decimal(const Rational& q, int digits) {
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rational scaled_q = abs(q) * scale;
    Integer scaled = floor(scaled_q);
    std::string s = scaled.get_str();
    if (digits > 0) {
        while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
        s.insert(s.end() - digits, '.');
    }
    return (q < 0 && scaled != 0) ? "-" + s : s;
}

}  // namespace negabeta
