#include <gtest/gtest.h>

#include <sstream>

#include "lilambda/zero_catalog.hpp"

using namespace lilambda;

namespace {

ZeroCatalog parse(const std::string& text) {
    std::istringstream in(text);
    return load_zeros(in, 40);
}

}  // namespace

TEST(LoadZeros, ParsesCommentsAndBlankLines) {
    auto c = parse("# header\n14.134725141734693790\n\n  21.022039638771554993 \n25.010857580145688763\n");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.online_count(), 3);
    EXPECT_DOUBLE_EQ(c.height_max(), 25.010857580145688763);
    PrecisionGuard g(40);
    EXPECT_EQ(c.pairs()[0].tau_re, Real("14.134725141734693790"));
}

TEST(LoadZeros, MalformedLineReportsLineNumber) {
    try {
        parse("14.13\n21.02\nabc\n");
        FAIL() << "no exception";
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse("14.13 21.02\n"), FormatError);
}

TEST(LoadZeros, OrderingAndPositivity) {
    EXPECT_THROW(parse("21.02\n14.13\n"), ValidationError);
    EXPECT_THROW(parse("-1.0\n"), ValidationError);
    EXPECT_THROW(parse("0\n"), ValidationError);
}

TEST(LoadZeros, RepeatsFoldIntoMultiplicity) {
    auto c = parse("14.13\n14.13\n21.02\n");
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.pairs()[0].multiplicity, 2);
    EXPECT_EQ(c.online_count(), 3);
    EXPECT_EQ(c.staircase(20.0), 2);
    EXPECT_EQ(c.staircase(30.0), 3);
}

TEST(LoadZeros, MaxCountAndMissingFile) {
    auto c = load_zeros(std::string(LILAMBDA_DATA_DIR) + "/riemann_zeros_100k.txt", 30, 100);
    EXPECT_EQ(c.size(), 100u);
    EXPECT_NEAR(c.height_max(), 236.524229665816205802, 1e-9);
    EXPECT_THROW(load_zeros(std::string("/nonexistent/zeros.txt"), 30), InvalidArgument);
}

TEST(CountingModel, RiemannConstants) {
    const auto m = CountingModel::riemann_zeta();
    EXPECT_NEAR(m.r_minus2, 0.039788735772973833942, 1e-17);
    EXPECT_NEAR(m.r_minus1, -0.14625360995713946, 1e-15);
    EXPECT_THROW(CountingModel::custom(-0.1, 0.0), InvalidArgument);
    // Nbar(T) = T/(2 pi) (log(T / 2 pi) - 1)
    const double t = 1000.0, pi = std::numbers::pi;
    EXPECT_NEAR(smooth_count(m, t), t / (2 * pi) * (std::log(t / (2 * pi)) - 1), 1e-10);
}

TEST(CountingModel, ThetaMapRoundTrip) {
    for (double t : {0.1, 1.0, 14.13, 1e4}) EXPECT_NEAR(theta_inverse(theta_map(t)), t, 1e-12 * t);
    EXPECT_THROW(theta_map(0.0), InvalidArgument);
    EXPECT_THROW(theta_inverse(-1.0), InvalidArgument);
}

TEST(Inject, AddsOffAxisPair) {
    auto base = parse("14.13\n21.02\n");
    auto c = inject_off_axis(base, 0.7, 2.0);
    EXPECT_TRUE(c.has_off_axis());
    EXPECT_FALSE(base.has_off_axis());
    EXPECT_EQ(c.online_count(), 2);
    EXPECT_DOUBLE_EQ(c.height_max(), 21.02);
    const auto& p = c.pairs().back();
    EXPECT_DOUBLE_EQ(p.re, 2.0);
    EXPECT_NEAR(p.im, 0.2, 1e-15);
    PrecisionGuard g(40);
    EXPECT_LT(static_cast<double>(abs(p.tau_im - Real("0.2"))), 1e-38);
    EXPECT_THROW(inject_off_axis(base, 0.5, 2.0), InvalidArgument);
    EXPECT_THROW(inject_off_axis(base, 1.0, 2.0), InvalidArgument);
}

TEST(Inject, DetectionThreshold) {
    EXPECT_NEAR(detection_threshold(2.0, 0.2), 20.2, 1e-12);
    EXPECT_THROW(detection_threshold(2.0, 0.0), InvalidArgument);
}

TEST(Synthetic, SolvesCountingEquation) {
    const auto m = CountingModel::custom(0.1, 0.0);
    auto c = synthesize_online_catalog(m, 200, 40);
    ASSERT_EQ(c.size(), 200u);
    for (std::size_t k = 0; k < c.size(); k += 37)
        EXPECT_NEAR(smooth_count(m, c.pairs()[k].re), static_cast<double>(k) + 0.5, 1e-9);
    EXPECT_NEAR(staircase_offset(c, m), 0.0, 1e-9);
}

TEST(Staircase, RiemannOffsetNearSevenEighths) {
    auto c = load_zeros(std::string(LILAMBDA_DATA_DIR) + "/riemann_zeros_100k.txt", 30, 10000);
    EXPECT_NEAR(staircase_offset(c, CountingModel::riemann_zeta()), 0.875, 0.01);
}

TEST(Truncated, KeepsLowestPairs) {
    auto c = inject_off_axis(parse("14.13\n21.02\n25.01\n"), 0.7, 2.0).truncated(2);
    EXPECT_EQ(c.online_count(), 2);
    EXPECT_DOUBLE_EQ(c.height_max(), 21.02);
    EXPECT_TRUE(c.has_off_axis());
}
