#pragma once

#include <json.hpp>

#include <string>

#include "negabeta/expansion.hpp"
#include "negabeta/matching.hpp"
#include "negabeta/measure.hpp"
#include "negabeta/order.hpp"
#include "negabeta/shiftspace.hpp"
#include "negabeta/solver.hpp"

namespace negabeta::io {

using json = nlohmann::ordered_json;

/// "num/den", or "num" for integers.
inline json rational(const Rational& q) { return q.get_str(); }

inline json word(const DigitWord& w) { return json(w); }

inline json sequence(const EvPeriodic& s) { return s.str(); }

/// Field element as coefficients in powers of β, lowest first, plus a decimal rendering.
inline json field_point(const FieldPoint& x, int digits) {
    json coeffs = json::array();
    for (const auto& c : x.coeffs().coeffs()) coeffs.push_back(rational(c));
    if (coeffs.empty()) coeffs.push_back("0");
    return {{"coeffs", coeffs}, {"decimal", x.to_decimal(digits)}};
}

inline json value(const Value& v, int digits) {
    if (const auto* f = std::get_if<FieldPoint>(&v)) return field_point(*f, digits);
    const auto& q = std::get<Rational>(v);
    return {{"exact", rational(q)}, {"decimal", to_decimal(q, digits)}};
}

inline json point(const Point& p, int digits) {
    if (const auto* f = std::get_if<FieldPoint>(&p)) return field_point(*f, digits);
    const auto& d = std::get<DecimalPoint>(p);
    json out{{"decimal", d.to_decimal(digits)}};
    if (d.exact()) out["exact"] = rational(d.value());
    return out;
}

inline json beta(const Beta& b, int digits) {
    json out{{"spec", b.spec()}, {"decimal", b.to_decimal(digits)}};
    if (b.is_exact()) {
        json poly = json::array();
        for (const auto& c : b.field()->defining().integer_coeffs_highest_first()) poly.push_back(c.get_str());
        out["polynomial"] = poly;
    }
    return out;
}

inline json validity(const Validity& v) {
    return {{"valid", v.valid},
            {"failed_condition", v.failed_condition ? json(v.failed_condition) : json(nullptr)},
            {"witness_k", v.witness_k ? json(*v.witness_k) : json(nullptr)}};
}

inline json orbit(const OrbitRecord& r, int digits) {
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back(point(p, digits));
    json out{{"kind", to_string(r.classification.kind)}, {"digits", word(r.digits)}, {"points", pts}};
    if (r.classification.resolved()) {
        out["pre_len"] = r.classification.pre_len;
        out["period_len"] = r.classification.period_len;
        const size_t k = r.classification.pre_len;
        out["expansion"] = EvPeriodic(DigitWord(r.digits.begin(), r.digits.begin() + static_cast<long>(k)),
                                      DigitWord(r.digits.begin() + static_cast<long>(k), r.digits.end()))
                               .str();
    } else {
        out["budget"] = r.classification.budget;
        out["precision_exhausted"] = r.precision_exhausted;
    }
    return out;
}

inline json density(const PiecewiseDensity& d, bool normalized, int digits) {
    json bps = json::array(), vals = json::array();
    for (const auto& b : d.breakpoints) bps.push_back(field_point(b, digits));
    for (const auto& v : d.values) vals.push_back(field_point(normalized ? v / d.K : v, digits));
    return {{"breakpoints", bps}, {"values", vals}, {"K", field_point(d.K, digits)},
            {"normalized", normalized}, {"indicator", "geq"}};
}

inline json limits(const DensityLimits& l, int digits) {
    return {{"at_zero", field_point(l.at_zero, digits)},
            {"at_one", l.at_one ? field_point(*l.at_one, digits) : json(nullptr)},
            {"return_time", l.return_time ? json(*l.return_time) : json(nullptr)}};
}

inline json coincidence(const CoincidenceReport& r) {
    return {{"verdict", to_string(r.verdict)}, {"predicted", r.predicted}, {"reason", r.reason}};
}

inline json matching(const MatchingReport& r, int digits) {
    return {{"verdict", to_string(r.verdict)},
            {"matching_time", r.matching_time ? json(*r.matching_time) : json(nullptr)},
            {"fixed_point", r.fixed_point ? field_point(*r.fixed_point, digits) : json(nullptr)},
            {"budget_used", r.budget_used}};
}

inline json automaton(const SftAutomaton& a) {
    json edges = json::array();
    for (size_t s = 0; s < a.size(); ++s)
        for (size_t d = 0; d < a.next[s].size(); ++d)
            if (a.next[s][d]) edges.push_back({{"from", s}, {"digit", d + 1}, {"to", *a.next[s][d]}});
    return {{"states", a.size()}, {"start", a.start}, {"edges", edges}};
}

inline json approximation(const SimpleApproximation& r, int digits) {
    json out{{"candidate", sequence(r.approximant.candidate)},
             {"case", to_string(r.approximant.kind)},
             {"side", to_string(r.approximant.side)},
             {"canonical", sequence(r.canonical)},
             {"beta_n", r.beta_n ? beta(*r.beta_n, digits) : json(nullptr)},
             {"gap", r.gap ? json(*r.gap) : json(nullptr)},
             {"simple_certified", r.simple_certified}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

}  // namespace negabeta::io
