#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "lilambda/secondary_zeta.hpp"

using namespace lilambda;

namespace {

ZeroCatalog three_zeros() {
    std::istringstream in("14.134725141734693790\n21.022039638771554993\n25.010857580145688763\n");
    return load_zeros(in, 50);
}

const ZeroCatalog& riemann_100k() {
    static const ZeroCatalog c = load_zeros(std::string(LILAMBDA_DATA_DIR) + "/riemann_zeros_100k.txt", 30);
    return c;
}

double diff(const Real& a, const char* b) { return static_cast<double>(abs(a - Real(b))); }

}  // namespace

TEST(ZValue, TruncatedSumMatchesReference) {
    const auto cat = three_zeros();
    const SecondaryZetaEvaluator ev(cat, CountingModel::riemann_zeta(), std::nullopt, TailMode::none);
    const PrecisionContext ctx(50);
    PrecisionGuard g(ctx);
    // mpmath, 50 digits
    EXPECT_LT(diff(ev.z_value(1.0, ctx).value, "0.0088585034790710052648918472400598623750212171864163"), 1e-48);
    EXPECT_LT(diff(ev.z_value(1.5, ctx).value, "0.00052487369555374531622296531826682411002254833954136"), 1e-48);
    EXPECT_LT(diff(ev.z_value(0.75, ctx).value, "0.037163150294984313464589042911672249352349698491126"), 1e-48);
    EXPECT_EQ(ev.z_value(1.0, ctx).tail, 0);
}

TEST(ZValue, OffAxisPairIsRealAndMatchesReference) {
    const auto stub = inject_off_axis(three_zeros().truncated(0), 0.7, 2.0);
    const SecondaryZetaEvaluator ev(stub, CountingModel::riemann_zeta(), std::nullopt, TailMode::none);
    const PrecisionContext ctx(50);
    PrecisionGuard g(ctx);
    // 2 Re[(1/4 + tau^2)^(-sigma)], tau = 2 + 0.2i
    EXPECT_LT(diff(ev.z_value(1.0, ctx).value, "0.45850327541235345048219079617296791021612820666409"), 1e-45);
    EXPECT_LT(diff(ev.z_value(0.75, ctx).value, "0.66484412028083327625392906021059351198374169495162"), 1e-45);
    const auto ints = ev.z_values_integer(2, ctx);
    EXPECT_LT(diff(ints[1].value, "0.10131711213574398163046631764019961795131803356068"), 1e-45);
}

TEST(ZValue, Preconditions) {
    const auto cat = three_zeros();
    const SecondaryZetaEvaluator ev(cat, CountingModel::riemann_zeta());
    const PrecisionContext ctx(30);
    EXPECT_THROW(ev.z_value(0.5, ctx), DomainError);
    EXPECT_THROW(ev.z_value(0.3, ctx), DomainError);
    const ZeroCatalog empty;
    const SecondaryZetaEvaluator ev0(empty, CountingModel::riemann_zeta());
    EXPECT_THROW(ev0.z_value(1.0, ctx), InvalidState);
    EXPECT_THROW(SecondaryZetaEvaluator(cat, CountingModel::riemann_zeta(), 1000.0), InvalidArgument);
}

TEST(ZValue, IntegerPassAgreesWithSingleEvaluation) {
    const auto cat = riemann_100k().truncated(2000);
    const SecondaryZetaEvaluator ev(cat, CountingModel::riemann_zeta());
    const PrecisionContext ctx(60);
    const auto ints = ev.z_values_integer(6, ctx);
    PrecisionGuard g(ctx);
    for (int j = 1; j <= 6; ++j) {
        const Real one = ev.z_value(Real(j), ctx).value;
        EXPECT_LT(static_cast<double>(abs(one - ints[static_cast<std::size_t>(j - 1)].value) / one), 1e-45) << j;
    }
}

TEST(ZValue, StrictlyDecreasingInSigma) {
    const SecondaryZetaEvaluator ev(riemann_100k(), CountingModel::riemann_zeta());
    const PrecisionContext ctx(30);
    double prev = std::numeric_limits<double>::infinity();
    for (double s : {0.55, 0.6, 0.75, 1.0, 1.5, 2.0, 3.0}) {
        const double z = static_cast<double>(ev.z_value(s, ctx).value);
        EXPECT_LT(z, prev) << s;
        prev = z;
    }
}

TEST(ZValue, DoublePoleSignature) {
    const SecondaryZetaEvaluator ev(riemann_100k(), CountingModel::riemann_zeta());
    const PrecisionContext ctx(30);
    for (double e : {0.2, 0.1, 0.05}) {
        const double y = e * e * static_cast<double>(ev.z_value(0.5 + e, ctx).value);
        EXPECT_GT(y, 0.0);
        EXPECT_LT(y, 0.1);
    }
}

TEST(ZValue, MovingTheCutStaysInsideTailBudget) {
    const auto& cat = riemann_100k();
    const CountingModel m = CountingModel::riemann_zeta();
    const PrecisionContext ctx(40);
    const SecondaryZetaEvaluator full(cat, m);
    const SecondaryZetaEvaluator half(cat, m, cat.pairs()[49999].re);
    for (double s : {1.0, 2.0}) {
        const auto a = full.z_value(s, ctx), b = half.z_value(s, ctx);
        EXPECT_LE(std::abs(static_cast<double>(a.value - b.value)), a.tail_estimate + b.tail_estimate) << s;
    }
}

TEST(ZValue, TailModesOrderedByAccuracy) {
    // Z(1) of the first 10^4 zeros against the full catalog of 10^5
    const CountingModel m = CountingModel::riemann_zeta();
    const PrecisionContext ctx(40);
    const auto small = riemann_100k().truncated(10000);
    const double ref = static_cast<double>(SecondaryZetaEvaluator(riemann_100k(), m).z_value(1.0, ctx).value);
    auto err = [&](TailMode mode) {
        return std::abs(static_cast<double>(SecondaryZetaEvaluator(small, m, std::nullopt, mode).z_value(1.0, ctx).value) - ref);
    };
    const double e_none = err(TailMode::none), e_smooth = err(TailMode::smooth), e_stair = err(TailMode::staircase);
    EXPECT_LT(e_smooth, e_none);
    EXPECT_LT(e_stair, e_smooth);
    EXPECT_LT(e_stair, 1e-10);
}

TEST(PolarFit, SyntheticModelRecoversR2) {
    const auto m = CountingModel::custom(0.1, 0.0);
    const auto cat = synthesize_online_catalog(m, 20000);
    const SecondaryZetaEvaluator ev(cat, m);
    const auto fit = polar_fit(ev, {0.05, 0.1}, PrecisionContext(30));
    EXPECT_NEAR(fit.r_minus2, 0.1, 0.002);
    EXPECT_FALSE(fit.constant.has_value());
}

TEST(PolarFit, RiemannCatalog) {
    const SecondaryZetaEvaluator ev(riemann_100k(), CountingModel::riemann_zeta());
    const double r2 = 1.0 / (8.0 * std::numbers::pi), r1 = -std::log(2.0 * std::numbers::pi) / (4.0 * std::numbers::pi);
    const auto two = polar_fit(ev, {0.05, 0.1}, PrecisionContext(30));
    EXPECT_NEAR(two.r_minus2 / r2, 1.0, 0.05);
    const auto three = polar_fit(ev, {0.02, 0.05, 0.1}, PrecisionContext(30));
    EXPECT_NEAR(three.r_minus2 / r2, 1.0, 0.01);
    EXPECT_NEAR(three.r_minus1 / r1, 1.0, 0.05);
    ASSERT_TRUE(three.constant.has_value());
    // finite part of Z at 1/2, about 0.25
    EXPECT_NEAR(*three.constant, 0.25, 0.05);
}

TEST(PolarFit, Preconditions) {
    const auto cat = three_zeros();
    const SecondaryZetaEvaluator ev(cat, CountingModel::riemann_zeta());
    const PrecisionContext ctx(30);
    EXPECT_THROW(polar_fit(ev, {0.1}, ctx), InvalidArgument);
    EXPECT_THROW(polar_fit(ev, {0.1, 0.1}, ctx), InvalidArgument);
    EXPECT_THROW(polar_fit(ev, {0.1, 0.3}, ctx), InvalidArgument);
}
