#include <gtest/gtest.h>

#include "negabeta/measure.hpp"
#include "oracles.hpp"

using namespace negabeta;

namespace {

Beta golden() { return make_beta("pisot2:p=1,q=1"); }

FieldPoint c(const Beta& b, const Rational& v) { return FieldPoint::constant(b.field(), v); }

struct Case {
    std::string spec;
    std::vector<long> poly;  // highest first
};

std::vector<Case> cases() {
    return {{"pisot2:p=1,q=1", {1, -1, -1}},          {"pisot2:p=1,q=2", {1, -2, -1}},
            {"pisot2:p=2,q=2", {1, -2, -2}},          {"multinacci:q=1,m=3", {1, -1, -1, -1}},
            {"poly:[1,0,-1,-1]@(1.3,1.4)", {1, 0, -1, -1}}, {"poly:[1,-2,1,-1]@(1.7,1.8)", {1, -2, 1, -1}},
            {"poly:[1,-3,1]@(2.6,2.7)", {1, -3, 1}},  {"poly:[1,-2,-1,1]@(2.2,2.3)", {1, -2, -1, 1}}};
}

/// K by summing the orbit series with a 400-bit rational approximation of β.
double series_oracle(const Case& cs, const Beta& b) {
    auto [lo, hi] = oracle::bisect_root(oracle::to_q(cs.poly), b.field()->lo(), b.field()->hi(), 400);
    oracle::Q beta = (lo + hi) / 2, x = 1, sum = 0, un = 1;
    for (int n = 0; n < 80; ++n) {
        sum += x * un;
        un /= -beta;
        oracle::Q y = beta * x;
        // An exact integer product shows up as a near miss at this precision.
        oracle::Z r = oracle::floor_q(y + oracle::Q(1, 2));
        if (abs(y - r) < oracle::Q(1, oracle::Z(1) << 300)) y = r;
        x = -y + oracle::floor_q(y) + 1;
    }
    return sum.get_d();
}

}  // namespace

TEST(Density, Golden) {
    Beta phi = golden();
    auto d = density(phi);
    FieldPoint g = phi.generator();
    ASSERT_EQ(d.breakpoints.size(), 3u);
    EXPECT_TRUE(d.breakpoints[1] == c(phi, 2) - g);
    EXPECT_TRUE(d.values[0] == g / (g + Rational(1)));
    EXPECT_TRUE(d.values[1] == c(phi, 1));
    EXPECT_NEAR(d.K.to_double(), 0.8541019662, 1e-10);
}

TEST(Density, GoldenSquared) {
    Beta b = golden().shifted(1);
    auto d = density(b);
    FieldPoint g = b.generator();
    ASSERT_EQ(d.breakpoints.size(), 3u);
    EXPECT_TRUE(d.breakpoints[1] == c(b, 3) - g);  // 2 − φ
    EXPECT_TRUE(d.values[0] == g / (g + Rational(1)));
    EXPECT_TRUE(d.values[1] == g * g / (g * g - Rational(1)));
    EXPECT_EQ(d.K.compare(Rational(1)), std::strong_ordering::equal);
}

TEST(Density, Tribonacci) {
    Beta b = make_beta("multinacci:q=1,m=3");
    auto d = density(b);
    FieldPoint g = b.generator();
    ASSERT_EQ(d.breakpoints.size(), 4u);
    EXPECT_TRUE(d.breakpoints[1] == g.pow(-3));
    EXPECT_TRUE(d.breakpoints[2] == c(b, 1) - g.pow(-2));
    FieldPoint integral = c(b, 0);
    for (size_t i = 0; i < 3; ++i) integral = integral + d.values[i] * (d.breakpoints[i + 1] - d.breakpoints[i]);
    EXPECT_TRUE(integral == d.K);
}

TEST(Density, UnresolvedOrbitIsRefused) {
    try {
        density(make_beta("dec:2.5"), 50);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Unresolved);
    }
}

TEST(Normalization, Examples) {
    EXPECT_NEAR(normalization(golden()).to_double(), 0.8541019662, 1e-10);
    EXPECT_EQ(normalization(golden().shifted(1)).compare(Rational(1)), std::strong_ordering::equal);
    EXPECT_EQ(normalization(make_beta("dec:2")).compare(Rational(2, 3)), std::strong_ordering::equal);
}

TEST(Normalization, MatchesSeriesOracle) {
    for (const auto& cs : cases()) {
        Beta b = make_beta(cs.spec);
        EXPECT_NEAR(normalization(b).to_double(), series_oracle(cs, b), 1e-9) << cs.spec;
    }
}

TEST(DensityAt, Examples) {
    const Rational tol(1, 1000000000000);
    const double phi = golden().to_double();
    auto a = density_at(golden(), Rational(9, 10), tol);
    EXPECT_NEAR(a.approx(), 1.0, 1e-12);
    auto b = density_at(golden(), Rational(1, 10), tol);
    EXPECT_NEAR(b.approx(), phi / (phi + 1), 1e-11);
    EXPECT_NEAR(b.approx(), 0.6180339887, 1e-10);
    auto s = density_at(golden().shifted(1), Rational(1, 10), tol);
    EXPECT_NEAR(s.approx(), 0.7236067977, 1e-10);
    EXPECT_LE(b.tail_bound, tol);
    EXPECT_THROW(density_at(golden(), Rational(0), tol), Error);
    // 1/2 is an orbit point of β = 2.5 (T(1) = 1/2) but stays exactly representable.
    auto d = density_at(make_beta("dec:2.5"), Rational(1, 2), Rational(1, 1000));
    EXPECT_GT(d.approx(), 0);
}

TEST(MeasureInterval, Examples) {
    Beta phi = golden();
    FieldPoint g = phi.generator();
    auto d = density(phi);
    FieldPoint expected = (g + Rational(2)).inverse();
    EXPECT_TRUE(measure_interval(d, c(phi, 0), c(phi, 2) - g) == expected);
    EXPECT_NEAR(expected.to_double(), 0.2763932, 1e-7);
    EXPECT_EQ(measure_interval(d, Rational(0), Rational(1)).compare(Rational(1)), std::strong_ordering::equal);

    Beta b2 = phi.shifted(1);
    auto d2 = density(b2);
    FieldPoint v = measure_interval(d2, c(b2, 0), c(b2, 3) - b2.generator());
    EXPECT_EQ(compare_values(v, expected), std::strong_ordering::equal);
}

TEST(Limits, Examples) {
    Beta phi = golden();
    FieldPoint g = phi.generator();
    auto a = limits(phi);
    EXPECT_TRUE(a.at_zero == g / (g + Rational(1)));
    ASSERT_TRUE(a.at_one);
    EXPECT_EQ(a.at_one->compare(Rational(1)), std::strong_ordering::equal);
    EXPECT_FALSE(a.return_time);

    auto b = limits(phi.shifted(1));
    ASSERT_TRUE(b.at_one);
    EXPECT_EQ(b.return_time, 2u);
    EXPECT_NEAR(b.at_one->to_double(), 1.1708204, 1e-7);

    auto c2 = limits(make_beta("dec:2"));
    EXPECT_EQ(c2.at_zero.compare(Rational(2, 3)), std::strong_ordering::equal);
    EXPECT_EQ(c2.at_one->compare(Rational(2, 3)), std::strong_ordering::equal);

    auto u = limits(make_beta("dec:2.5"), 40);
    EXPECT_FALSE(u.at_one);
}

TEST(Limits, AgreeWithDensityPieces) {
    for (const auto& cs : cases()) {
        Beta b = make_beta(cs.spec);
        auto d = density(b);
        auto l = limits(b);
        EXPECT_TRUE(d.values.front() == l.at_zero) << cs.spec;
        EXPECT_TRUE(d.values.back() == *l.at_one) << cs.spec;
    }
}

TEST(Coincide, Examples) {
    Beta phi = golden();
    auto a = densities_coincide(phi, phi.shifted(1));
    EXPECT_EQ(a.verdict, Coincidence::Coincide);
    EXPECT_TRUE(a.predicted);

    Beta p22 = make_beta("pisot2:p=2,q=2");
    auto b = densities_coincide(p22, p22.shifted(1));
    EXPECT_EQ(b.verdict, Coincidence::Coincide);
    EXPECT_TRUE(b.predicted);

    auto c3 = densities_coincide(phi, make_beta("multinacci:q=1,m=3"));
    EXPECT_EQ(c3.verdict, Coincidence::Differ);
    EXPECT_FALSE(c3.predicted);
}

TEST(Coincide, MatchesPredictionOnQuadraticFamily) {
    for (long q = 1; q <= 4; ++q)
        for (long p = 1; p <= q; ++p) {
            Beta b = make_beta("pisot2:p=" + std::to_string(p) + ",q=" + std::to_string(q));
            auto r = densities_coincide(b, b.shifted(1));
            EXPECT_EQ(r.verdict, Coincidence::Coincide) << p << "," << q;
            EXPECT_TRUE(r.predicted);
            Beta other = make_beta("pisot2:p=1,q=" + std::to_string(q + 2));
            auto s = densities_coincide(b, other);
            EXPECT_EQ(s.verdict, Coincidence::Differ) << p << "," << q;
            EXPECT_FALSE(s.predicted);
        }
}

TEST(Properties, Invariance) {
    for (const auto& cs : cases()) {
        Beta b = make_beta(cs.spec);
        auto d = density(b);
        const FieldPoint g = b.generator(), inv = g.inverse();
        for (size_t i = 0; i + 1 < d.breakpoints.size(); ++i) {
            const FieldPoint &lo = d.breakpoints[i], &hi = d.breakpoints[i + 1];
            // T^{-1}(lo, hi] on branch k is [(k − hi)/β, (k − lo)/β) clipped to (0, 1].
            FieldPoint pre = c(b, 0);
            for (int k = 1; k <= b.alphabet_max(); ++k) {
                FieldPoint a = (c(b, k) - hi) * inv, z = (c(b, k) - lo) * inv;
                if (z.compare(Rational(1)) > 0) z = c(b, 1);
                if (a.compare(z) < 0) pre = pre + measure_interval(d, a, z);
            }
            EXPECT_TRUE(pre == measure_interval(d, lo, hi)) << cs.spec << " piece " << i;
        }
    }
}

TEST(Properties, DensityAtMatchesPieces) {
    oracle::Rng rng(31);
    const Rational tol(1, 1000000000000);
    for (const auto& cs : cases()) {
        Beta b = make_beta(cs.spec);
        auto d = density(b);
        for (int i = 0; i < 100 / static_cast<int>(cases().size()) + 1; ++i) {
            Rational x = rng.unit_rational(1000);
            FieldPoint xf = c(b, x);
            bool on_breakpoint = false;
            for (const auto& p : d.breakpoints) on_breakpoint = on_breakpoint || p == xf;
            if (on_breakpoint) continue;
            auto v = density_at(b, x, tol);
            FieldPoint diff = d.value_at(xf) - std::get<FieldPoint>(v.partial_sum);
            EXPECT_TRUE(diff.compare(v.tail_bound) <= 0) << cs.spec;
            EXPECT_TRUE(diff.compare(Rational(-v.tail_bound)) >= 0) << cs.spec;
        }
    }
}

TEST(Properties, NoEqualAdjacentValues) {
    for (const auto& cs : cases()) {
        auto d = density(make_beta(cs.spec));
        for (size_t i = 0; i + 1 < d.values.size(); ++i) EXPECT_FALSE(d.values[i] == d.values[i + 1]) << cs.spec;
        // Below the golden ratio the density vanishes on a piece; above it every value is positive.
        const bool above_golden = make_beta(cs.spec).to_double() > 1.618;
        for (const auto& v : d.values)
            EXPECT_TRUE(above_golden ? v.compare(Rational(0)) > 0 : v.compare(Rational(0)) >= 0) << cs.spec;
    }
}
