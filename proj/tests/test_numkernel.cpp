#include <gtest/gtest.h>

#include "lilambda/numkernel.hpp"
#include "lilambda/quadrature.hpp"
#include "lilambda/summation.hpp"

using namespace lilambda;

namespace {

// mpmath, 50 digits
const char* zeta3 = "1.2020569031595942853997381615114499907649862923405";
const char* zeta5 = "1.0369277551433699263313654864570341680570809195019";
const char* zeta25 = "1.0000000298035035146522801860637050693660118447309";

double rel(const Real& a, const Real& b) { return static_cast<double>(abs(a - b) / abs(b)); }

}  // namespace

TEST(Binomial, SmallValuesAndEdges) {
    EXPECT_EQ(binomial(10, 3), 120);
    EXPECT_EQ(binomial(0, 0), 1);
    EXPECT_EQ(binomial(5, 6), 0);
    EXPECT_EQ(binomial(5, -1), 0);
    EXPECT_THROW(binomial(-1, 0), InvalidArgument);
    EXPECT_EQ(binomial(100, 50), Integer("100891344545564193334812497256"));
}

TEST(Bernoulli, KnownValues) {
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(4), Rational(-1, 30));
    EXPECT_EQ(bernoulli(8), Rational(-1, 30));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
    EXPECT_THROW(bernoulli(3), InvalidArgument);
    EXPECT_THROW(bernoulli(-2), InvalidArgument);
    // beyond the cache
    EXPECT_EQ(bernoulli(202), detail::bernoulli_table(202)[202]);
}

TEST(Zeta, OddIntegersAgainstReference) {
    const PrecisionContext ctx(60);
    PrecisionGuard g(ctx);
    EXPECT_LT(rel(zeta_int(3, ctx), Real(zeta3)), 1e-48);
    EXPECT_LT(rel(zeta_int(5, ctx), Real(zeta5)), 1e-48);
    EXPECT_LT(rel(zeta_int(25, ctx), Real(zeta25)), 1e-48);
}

TEST(Zeta, EvenClosedFormMatchesSeries) {
    const PrecisionContext ctx(80);
    for (int j : {2, 4, 10, 30}) {
        PrecisionGuard g(ctx);
        EXPECT_LT(rel(zeta_int(j, ctx), zeta_int_series(j, ctx)), 1e-75) << j;
    }
    const Constants c = constants(ctx);
    PrecisionGuard g(ctx);
    EXPECT_LT(rel(zeta_int(2, ctx), c.pi * c.pi / 6), 1e-78);
}

TEST(Zeta, RejectsPole) {
    const PrecisionContext ctx(30);
    EXPECT_THROW(zeta_int(1, ctx), InvalidArgument);
}

TEST(Digamma, HalfIntegers) {
    const PrecisionContext ctx(50);
    PrecisionGuard g(ctx);
    EXPECT_LT(rel(digamma_half_plus(0, ctx), Real("-1.963510026021423479440976332998755567193")), 1e-38);
    EXPECT_LT(rel(digamma_half_plus(100, ctx), Real("4.605174352581845211868678785604714548573")), 1e-38);
}

TEST(Precision, PolicyArithmetic) {
    EXPECT_EQ(PrecisionContext::policy_digits(100, 10), 61u + 10u + 20u);
    EXPECT_EQ(PrecisionContext::policy_digits(1, 0), 21u);
    EXPECT_EQ(PrecisionContext::for_alternating_sum(1, 0).digits(), 30u);
    EXPECT_THROW(PrecisionContext(29), InvalidArgument);
    EXPECT_TRUE(PrecisionContext(81).satisfies_policy(100));
    EXPECT_FALSE(PrecisionContext(80).satisfies_policy(100));
}

TEST(Precision, GuardRestoresDefault) {
    const unsigned before = Real::default_precision();
    {
        PrecisionGuard g(123);
        EXPECT_EQ(Real::default_precision(), 123u);
    }
    EXPECT_EQ(Real::default_precision(), before);
}

TEST(Precision, DecimalRenderingIgnoresLocale) {
    PrecisionGuard g(40);
    EXPECT_EQ(to_decimal(Real("0.125"), 4), "1.250e-01");
    EXPECT_EQ(to_decimal(-2.5, 3), "-2.50e+00");
}

TEST(Summation, CompensatedBeatsNaive) {
    CompensatedSum s;
    double naive = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (double v : {1e16, 1.0, -1e16}) {
            s += v;
            naive += v;
        }
    }
    EXPECT_EQ(s.value(), 10.0);
    EXPECT_NE(naive, 10.0);
}

TEST(Quadrature, GaussLegendreExactOnPolynomials) {
    const GaussLegendre<double> rule(10);
    EXPECT_NEAR(rule.apply([](double x) { return std::pow(x, 19); }, 0.0, 1.0), 1.0 / 20.0, 1e-15);
}

TEST(Quadrature, AdaptiveHandlesEndpointLog) {
    auto r = integrate_adaptive<double>([](double x) { return x > 0 ? x * std::log(x) : 0.0; }, 0.0, 1.0, 1e-12);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, -0.25, 1e-12);
}

TEST(Quadrature, AdaptiveAtHighPrecision) {
    PrecisionGuard g(50);
    auto r = integrate_adaptive<Real>([](const Real& x) { return exp(-x * x); }, Real(0), Real(1), Real("1e-40"));
    EXPECT_TRUE(r.converged);
    // sqrt(pi)/2 erf(1), mpmath
    EXPECT_LT(static_cast<double>(abs(r.value - Real("0.74682413281242702539946743613185300535449968681"))), 1e-39);
}
