#include <gtest/gtest.h>

#include "negabeta/expansion.hpp"
#include "negabeta/order.hpp"
#include "oracles.hpp"

using namespace negabeta;

namespace {

Beta golden() { return make_beta("pisot2:p=1,q=1"); }
Beta golden_sq() { return golden().shifted(1); }
Beta plastic() { return make_beta("poly:[1,0,-1,-1]@(1.3,1.4)"); }

FieldPoint fp(const Beta& b, std::vector<Rational> lowest_first) { return {b.field(), Poly(std::move(lowest_first))}; }

const FieldPoint& as_field(const Point& p) { return std::get<FieldPoint>(p); }

}  // namespace

TEST(Step, Examples) {
    Beta phi = golden();
    auto s = step(phi, phi.one());
    EXPECT_EQ(s.digit, 2);
    EXPECT_TRUE((as_field(s.next) - fp(phi, {2, -1})).is_zero());

    Beta b2 = golden_sq();
    // 2 - φ written in the field of φ + 1: φ = β - 1, so 2 - φ = 3 - β.
    auto t = step(b2, Point(fp(b2, {3, -1})));
    EXPECT_EQ(t.digit, 2);
    EXPECT_EQ(as_field(t.next).compare(Rational(1)), std::strong_ordering::equal);

    Beta d = make_beta("dec:2.5");
    auto u = step(d, d.one());
    EXPECT_EQ(u.digit, 3);
    EXPECT_EQ(std::get<DecimalPoint>(u.next).value(), Rational(1, 2));
}

TEST(Expand, Examples) {
    EXPECT_EQ(to_string(expand(golden(), Rational(1), 5)), "21111");
    EXPECT_EQ(to_string(expand(golden_sq(), Rational(1), 6)), "323232");
    EXPECT_EQ(to_string(expand(make_beta("dec:2.5"), Rational(1), 4)), "3221");
    EXPECT_TRUE(expand(golden(), Rational(1, 2), 0).empty());
    EXPECT_THROW(expand(golden(), Rational(0), 3), Error);
    EXPECT_THROW(expand(golden(), Rational(3, 2), 3), Error);
}

TEST(Orbit, Classifications) {
    auto a = orbit_of_one(golden());
    EXPECT_EQ(a.classification.kind, OrbitClass::Kind::EventuallyPeriodic);
    EXPECT_EQ(a.classification.pre_len, 1u);
    EXPECT_EQ(a.classification.period_len, 1u);
    ASSERT_EQ(a.points.size(), 2u);
    EXPECT_EQ(as_field(a.points[0]).compare(Rational(1)), std::strong_ordering::equal);

    auto b = orbit_of_one(golden_sq());
    EXPECT_EQ(b.classification.kind, OrbitClass::Kind::Periodic);
    EXPECT_EQ(b.classification.period_len, 2u);

    Beta t = make_beta("multinacci:q=1,m=3");
    auto c = orbit_of_one(t);
    EXPECT_EQ(c.classification.kind, OrbitClass::Kind::EventuallyPeriodic);
    EXPECT_EQ(c.classification.pre_len, 2u);
    EXPECT_EQ(c.classification.period_len, 1u);
    FieldPoint fixed = FieldPoint::constant(t.field(), 1) - t.generator().pow(-2);
    EXPECT_TRUE((as_field(c.points[2]) - fixed).is_zero());
}

TEST(Orbit, DecimalIsTruncatedUnlessExact) {
    auto d = orbit_of_one(make_beta("dec:2.5"), 50);
    EXPECT_FALSE(d.classification.resolved());
    // β = 2: the orbit of 1 is the fixed point 1 and every point stays dyadic.
    auto e = orbit_of_one(make_beta("dec:2"), 50);
    EXPECT_EQ(e.classification.kind, OrbitClass::Kind::Periodic);
    EXPECT_EQ(e.classification.period_len, 1u);
}

TEST(Orbit, BudgetExhaustionIsTruncated) {
    // Salem-like base with a long orbit; a tiny budget cannot resolve it.
    auto r = orbit_of_one(make_beta("multinacci:q=1,m=6"), 3);
    EXPECT_EQ(r.classification.kind, OrbitClass::Kind::Truncated);
    EXPECT_EQ(r.digits.size(), 3u);
    EXPECT_THROW(orbit_of_one(golden(), 0), Error);
}

TEST(PiOfOne, Examples) {
    auto a = pi_of_one(golden_sq());
    ASSERT_TRUE(a.expansion);
    EXPECT_EQ(a.expansion->str(), "|32");
    EXPECT_TRUE(a.is_simple);

    auto b = pi_of_one(golden());
    ASSERT_TRUE(b.expansion);
    EXPECT_EQ(b.expansion->str(), "2|1");
    EXPECT_FALSE(b.is_simple);

    auto c = pi_of_one(plastic());
    ASSERT_TRUE(c.expansion);
    EXPECT_EQ(c.expansion->str(), "211|2");
    EXPECT_FALSE(c.is_simple);
}

TEST(Evaluate, Examples) {
    Value a = evaluate(EvPeriodic::parse("|32"), golden_sq());
    EXPECT_EQ(std::get<FieldPoint>(a).compare(Rational(1)), std::strong_ordering::equal);
    Value b = evaluate(EvPeriodic::parse("2|1"), golden());
    EXPECT_EQ(std::get<FieldPoint>(b).compare(Rational(1)), std::strong_ordering::equal);
    Value c = evaluate(EvPeriodic::parse("|3"), make_beta("dec:2"));
    EXPECT_EQ(std::get<Rational>(c), Rational(1));
}

TEST(Evaluate, ValueEquationRoots) {
    // (212)^∞ = 1 exactly at the root of x^3 - 2x^2 + x - 1.
    Poly p = value_equation(EvPeriodic::parse("|212"));
    Poly expected = Poly::from_highest_first({1, -2, 1, -1});
    EXPECT_EQ(gcd(p, expected), expected.monic());
    EXPECT_EQ(value_equation(EvPeriodic::parse("|3")).monic(), Poly::from_highest_first({1, -2}));
}

TEST(Evaluate, PeriodicOrbitEvaluatesToOne) {
    for (const char* s : {"pisot2:p=1,q=2", "pisot2:p=1,q=3", "poly:[1,-2,1,-1]@(1.7,1.8)"}) {
        Beta b = make_beta(s);
        auto pi = pi_of_one(b);
        ASSERT_TRUE(pi.expansion) << s;
        Value v = evaluate(*pi.expansion, b);
        EXPECT_EQ(std::get<FieldPoint>(v).compare(Rational(1)), std::strong_ordering::equal) << s;
    }
}

namespace {

struct OracleBase {
    std::string spec;
    std::vector<long> poly;
};

std::vector<OracleBase> quadratic_cubic_bases() {
    return {{"pisot2:p=1,q=1", {1, -1, -1}},           {"pisot2:p=1,q=2", {1, -2, -1}},
            {"pisot2:p=2,q=3", {1, -3, -2}},           {"multinacci:q=1,m=3", {1, -1, -1, -1}},
            {"poly:[1,0,-1,-1]@(1.3,1.4)", {1, 0, -1, -1}}, {"poly:[1,-2,1,-1]@(1.7,1.8)", {1, -2, 1, -1}},
            {"poly:[1,-3,1]@(2.6,2.7)", {1, -3, 1}},   {"poly:[1,-2,-1,1]@(2.2,2.3)", {1, -2, -1, 1}}};
}

}  // namespace

TEST(Properties, RoundTripTruncationBound) {
    oracle::Rng rng(99);
    auto bases = quadratic_cubic_bases();
    const size_t n = 60;
    std::vector<std::pair<oracle::Q, oracle::Q>> roots;
    for (const auto& c : bases) {
        Beta b = make_beta(c.spec);
        roots.push_back(oracle::bisect_root(oracle::to_q(c.poly), b.field()->lo(), b.field()->hi(), 200));
    }
    for (int i = 0; i < 200; ++i) {
        const size_t which = static_cast<size_t>(i) % bases.size();
        const auto& c = bases[which];
        Beta b = make_beta(c.spec);
        Rational x = rng.unit_rational(97);
        DigitWord d = expand(b, x, n);
        for (int digit : d) {
            EXPECT_GE(digit, 1);
            EXPECT_LE(digit, b.alphabet_max());
        }
        // Independent evaluation with a 200-bit root enclosure.
        auto [lo, hi] = roots[which];
        oracle::Q beta = (lo + hi) / 2, u = -beta, acc = 0, un = 1;
        for (size_t k = 0; k < n; ++k) {
            acc = acc * u - d[k];
            un *= u;
        }
        oracle::Q value = acc / un;
        double bound = b.alphabet_max() * std::pow(beta.get_d(), -static_cast<double>(n)) / (beta.get_d() - 1);
        EXPECT_LE(std::abs(oracle::Q(value - x).get_d()), bound) << c.spec << " x=" << x;
        auto pv = evaluate(d, b);
        FieldPoint err = std::get<FieldPoint>(pv.value) - x;
        Rational slack(pv.truncation_bound * (1 + 1e-9));
        EXPECT_TRUE(err.compare(slack) <= 0);
        EXPECT_TRUE(err.compare(Rational(-slack)) >= 0);
    }
}

TEST(Properties, OrderCompatibility) {
    oracle::Rng rng(5);
    auto bases = quadratic_cubic_bases();
    for (int i = 0; i < 200; ++i) {
        Beta b = make_beta(bases[static_cast<size_t>(i) % bases.size()].spec);
        Rational x = rng.unit_rational(1000), y = rng.unit_rational(1000);
        if (x == y) continue;
        if (y < x) std::swap(x, y);
        auto o = alt_compare_prefix(expand(b, x, 60), expand(b, y, 60));
        ASSERT_TRUE(o.witness);
        EXPECT_TRUE(o.less());
    }
}
