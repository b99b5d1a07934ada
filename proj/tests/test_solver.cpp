#include <gtest/gtest.h>

#include "negabeta/solver.hpp"
#include "oracles.hpp"

using namespace negabeta;

namespace {

EvPeriodic seq(const char* s) { return EvPeriodic::parse(s); }

bool same_base(const Beta& a, const Beta& b) { return compare_values(a.generator(), b.generator()) == 0; }

std::vector<Integer> poly_of(const Beta& b) { return b.field()->defining().integer_coeffs_highest_first(); }

/// Root-isolation round trip: some root > 1 of the value equation re-expands to seq.
bool round_trips(const EvPeriodic& s) {
    for (const auto& iv : detail::value_equation_roots(s)) {
        Beta b = detail::beta_from_root(s, iv, Rational(1, 1000000));
        if (b.floor() + 1 == s.at(1) && certify_expansion(b, s)) return true;
    }
    return false;
}

std::vector<EvPeriodic> family(int alphabet, size_t max_pre, size_t max_period) {
    std::set<EvPeriodic> out;
    for (size_t pre = 0; pre <= max_pre; ++pre)
        for (size_t per = 1; per <= max_period; ++per)
            for (const auto& a : oracle::all_words(alphabet, pre))
                for (const auto& b : oracle::all_words(alphabet, per)) out.insert(EvPeriodic(a, b));
    return {out.begin(), out.end()};
}

}  // namespace

TEST(BetaFromExpansion, Examples) {
    Beta a = beta_from_expansion(seq("|32"));
    EXPECT_EQ(poly_of(a), (std::vector<Integer>{1, -3, 1}));
    EXPECT_GT(a.to_double(), 2.5);
    EXPECT_LT(a.to_double(), 2.7);
    EXPECT_TRUE(same_base(a, make_beta("pisot2:p=1,q=1").shifted(1)));

    Beta b = beta_from_expansion(seq("|3"));
    EXPECT_TRUE(b.is_integer());
    EXPECT_EQ(b.floor(), 2);

    Beta c = beta_from_expansion(seq("|212"));
    EXPECT_EQ(poly_of(c), (std::vector<Integer>{1, -2, 1, -1}));
    EXPECT_NEAR(c.to_double(), 1.7548776662, 1e-9);

    try {
        beta_from_expansion(seq("|2111"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST(BetaFromExpansion, NonPeriodicTarget) {
    Beta phi = beta_from_expansion(seq("2|1"));
    EXPECT_TRUE(same_base(phi, make_beta("pisot2:p=1,q=1")));
    Beta t = beta_from_expansion(seq("212|1"));
    EXPECT_EQ(poly_of(t), (std::vector<Integer>{1, -1, -1, -1, -1}));
}

TEST(Canonicalize, Examples) {
    auto a = canonicalize_expansion_candidate(seq("|2111"));
    ASSERT_TRUE(a.ok);
    EXPECT_EQ(a.result, seq("|212"));
    Beta b = beta_from_expansion(a.result);
    EXPECT_EQ(compare_values(std::get<FieldPoint>(evaluate(seq("|2111"), b)), FieldPoint::constant(b.field(), 1)),
              std::strong_ordering::equal);

    auto c = canonicalize_expansion_candidate(seq("|21"));
    ASSERT_TRUE(c.ok);
    EXPECT_EQ(c.result, seq("|3"));

    auto d = canonicalize_expansion_candidate(seq("|32"));
    ASSERT_TRUE(d.ok);
    EXPECT_EQ(d.result, seq("|32"));
    EXPECT_EQ(d.trace.size(), 1u);
}

TEST(Canonicalize, PartnerHasSameBase) {
    // Every self-admissible period over {1,2,3} that fails validity is rewritten to a
    // valid sequence evaluating to 1 at the candidate's own base.
    int rewritten = 0;
    for (const auto& s : family(3, 0, 5)) {
        if (!is_self_admissible(s).ok || is_valid_expansion_of_one(s).valid) continue;
        auto c = canonicalize_expansion_candidate(s);
        if (!c.ok) continue;
        ++rewritten;
        Beta b = beta_from_expansion(c.result);
        Value v = evaluate(s, b);
        EXPECT_EQ(std::get<FieldPoint>(v).compare(Rational(1)), std::strong_ordering::equal) << s.str();
    }
    EXPECT_GT(rewritten, 5);
}

TEST(Approximants, FinitelyManyMaximalDigits) {
    auto plan = periodic_approximants(seq("212|1"), 6, 14);
    ASSERT_GE(plan.candidates.size(), 3u);
    for (const auto& a : plan.candidates) {
        const auto& w = a.candidate.period();
        ASSERT_GE(w.size(), 5u);
        EXPECT_EQ(DigitWord(w.begin(), w.begin() + 4), (DigitWord{2, 1, 2, 1})) << a.candidate.str();
        for (size_t i = 4; i < w.size(); ++i) EXPECT_EQ(w[i], 1) << a.candidate.str();
        EXPECT_EQ(a.kind, ApproxCase::FinitelyManyMax);
    }

    auto golden = periodic_approximants(seq("2|1"), 5, 10);
    for (const auto& a : golden.candidates) {
        const auto& w = a.candidate.period();
        EXPECT_EQ(w[0], 2);
        for (size_t i = 1; i < w.size(); ++i) EXPECT_EQ(w[i], 1);
    }
    EXPECT_EQ(golden.candidates.front().candidate, seq("|2"));  // n = 1
}

TEST(Approximants, InfinitelyManyMaximalDigits) {
    EvPeriodic pi = seq("21212211|21212212");
    auto plan = periodic_approximants(pi, 20, 40);
    std::set<EvPeriodic> got;
    for (const auto& a : plan.candidates) {
        got.insert(a.candidate);
        EXPECT_NE(a.kind, ApproxCase::FinitelyManyMax);
    }
    for (size_t len : {9u, 17u, 25u}) EXPECT_TRUE(got.count(EvPeriodic::periodic(pi.prefix(len)))) << len;
}

TEST(Approximants, Invariants) {
    for (const char* s : {"2|1", "212|1", "21212211|21212212", "211|2", "3|1", "32|2"}) {
        auto plan = periodic_approximants(seq(s), 8, 30);
        for (const auto& a : plan.candidates) {
            EXPECT_TRUE(is_self_admissible(a.candidate).ok) << s << " " << a.candidate.str();
            EXPECT_EQ(a.side, a.candidate.period_len() % 2 ? Side::Below : Side::Above);
        }
    }
    EXPECT_THROW(periodic_approximants(seq("|32"), 4, 10), Error);
}

TEST(ApproximateSimple, GoldenRows) {
    auto rep = approximate_simple_numbers(make_beta("pisot2:p=1,q=1"), 8, 12);
    EXPECT_FALSE(rep.already_simple);
    bool saw = false;
    for (const auto& r : rep.rows)
        if (r.approximant.candidate == seq("|2111")) {
            saw = true;
            EXPECT_EQ(r.canonical, seq("|212"));
            EXPECT_NEAR(r.beta_n_value, 1.7548776662, 1e-9);
            EXPECT_NEAR(*r.gap, 0.1369, 1e-3);
            EXPECT_TRUE(r.simple_certified);
            EXPECT_TRUE(r.candidate_evaluates_to_one);
        }
    EXPECT_TRUE(saw);

    auto s = approximate_simple_numbers(make_beta("pisot2:p=1,q=1").shifted(1), 3, 10);
    EXPECT_TRUE(s.already_simple);
    ASSERT_EQ(s.rows.size(), 1u);
    EXPECT_EQ(*s.rows[0].gap, 0.0);
}

TEST(ApproximateSimple, TetranacciFamilyShrinks) {
    auto rep = approximate_simple_numbers(make_beta("poly:[1,-1,-1,-1,-1]@(1.9,2)"), 6, 16);
    std::optional<double> prev;
    for (const auto& r : rep.rows) {
        if (!r.gap) continue;
        if (prev) EXPECT_LT(*r.gap, *prev) << r.approximant.candidate.str();
        prev = r.gap;
    }
    EXPECT_TRUE(prev);
}

TEST(Properties, MonotoneCorrespondence) {
    std::vector<std::pair<EvPeriodic, Beta>> valid;
    for (const auto& s : family(3, 1, 4))
        if (is_valid_expansion_of_one(s).valid) valid.emplace_back(s, beta_from_expansion(s));
    ASSERT_GT(valid.size(), 20u);
    for (size_t i = 0; i < valid.size(); ++i)
        for (size_t j = 0; j < valid.size(); ++j) {
            if (!alt_compare(valid[i].first, valid[j].first).less()) continue;
            EXPECT_TRUE(compare_values(valid[i].second.generator(), valid[j].second.generator()) < 0)
                << valid[i].first.str() << " vs " << valid[j].first.str();
        }
}

TEST(Properties, ValidityAgreesWithRoundTrip) {
    for (const auto& s : family(2, 2, 4))
        EXPECT_EQ(is_valid_expansion_of_one(s).valid, round_trips(s)) << s.str();
}

TEST(Properties, SidesAndRoundTrip) {
    for (const char* spec : {"pisot2:p=1,q=1", "poly:[1,-1,-1,-1,-1]@(1.9,2)", "poly:[1,0,-1,-1]@(1.3,1.4)"}) {
        Beta b = make_beta(spec);
        auto rep = approximate_simple_numbers(b, 8, 16);
        for (const auto& r : rep.rows) {
            if (!r.beta_n) continue;
            const auto cmp = compare_values(r.beta_n->generator(), b.generator());
            EXPECT_EQ(r.approximant.side == Side::Below ? cmp < 0 : cmp > 0, true)
                << spec << " " << r.approximant.candidate.str();
            EXPECT_TRUE(r.candidate_evaluates_to_one);
            if (r.simple_certified) {
                auto pi = pi_of_one(*r.beta_n, 200);
                EXPECT_TRUE(pi.is_simple);
                ASSERT_TRUE(pi.expansion);
                EXPECT_EQ(*pi.expansion, r.canonical);
            }
        }
    }
}
