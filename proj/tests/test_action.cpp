#include <gtest/gtest.h>

#include <cmath>

#include "core/action.hpp"
#include "core/error.hpp"
#include "harness/oracles.hpp"

using namespace softqed;

TEST(Action, ZeroCharge) {
    ActionOptions o;
    o.charge = 0.0;
    const auto r = classical_action_extrapolated(oracle::skew_quadrilateral(), o);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_FALSE(std::signbit(r.value));
    EXPECT_EQ(classical_action(oracle::skew_quadrilateral(), 1.0, true, 0.0), 0.0);
}

TEST(Action, QuadraticInCharge) {
    const auto loop = oracle::skew_quadrilateral();
    const double a = classical_action(loop, 3.0, true, 1.0);
    const double b = classical_action(loop, 3.0, true, 2.0);
    EXPECT_DOUBLE_EQ(b, 4.0 * a);
}

TEST(Action, CrossEdgesMatchRootLocusOracle) {
    for (const auto& loop : {oracle::skew_quadrilateral(), oracle::spatial_triangle()}) {
        const auto r = classical_action_extrapolated(loop);
        const double expected = oracle::cross_action(loop);
        EXPECT_LT(std::abs(r.value - expected), 1e-2 * std::abs(expected));
        EXPECT_LT(std::abs(r.value - expected), 1e-3 * std::abs(expected));
        EXPECT_LE(r.error, 1e-3 * std::abs(r.value));
    }
}

TEST(Action, OracleSeesCornersOnly) {
    // spatial triangle: no crossing inside the edge pairs, every contribution is a corner
    const auto loop = oracle::spatial_triangle();
    EXPECT_GT(std::abs(oracle::cross_action(loop)), 0.0);
}

TEST(Action, SelfPairsReportedAndRefused) {
    const auto loop = oracle::skew_quadrilateral();
    const auto r = classical_action_extrapolated(loop);
    ASSERT_EQ(r.self_pairs.size(), loop.size());
    for (const auto& s : r.self_pairs) {
        EXPECT_TRUE(s.divergent);
        EXPECT_EQ(s.values.size(), r.etas.size());
    }
    ActionOptions o;
    o.exclude_self = false;
    try {
        (void)classical_action_extrapolated(loop, o);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonConvergent);
    }
}

TEST(Action, InvariantUnderReversalAndTranslation) {
    const auto loop = oracle::skew_quadrilateral();
    const double a = classical_action(loop, 3.0, true);
    EXPECT_NEAR(classical_action(loop.reversed(), 3.0, true), a, 1e-10 * std::abs(a));
    EXPECT_NEAR(classical_action(loop.translated(FourVector{1.0, 2.0, -3.0, 0.5}), 3.0, true), a,
                1e-10 * std::abs(a));
}

TEST(Action, LorentzianConvergesLinearlyInEta) {
    const auto loop = oracle::skew_quadrilateral();
    const double exact = oracle::cross_action(loop);
    const double e1 = std::abs(classical_action(loop, 2.0, true) - exact);
    const double e2 = std::abs(classical_action(loop, 1.0, true) - exact);
    EXPECT_NEAR(e1 / e2, 2.0, 0.3);
}

TEST(Action, BadEtaRejected) {
    EXPECT_THROW((void)classical_action(oracle::spatial_triangle(), 0.0, true), Error);
    ActionOptions o;
    o.eta_factors = {0.1};
    EXPECT_THROW((void)classical_action_extrapolated(oracle::spatial_triangle(), o), Error);
}

TEST(Action, NullCorners) {
    EXPECT_TRUE(null_corners(oracle::skew_quadrilateral()).empty());
    EXPECT_TRUE(null_corners(oracle::spatial_triangle()).empty());
    // future-timelike into past-timelike turns through the light cone
    const auto cusps = null_corners(oracle::mesoscopic_triangle());
    EXPECT_FALSE(cusps.empty());
    EXPECT_THROW((void)classical_action_extrapolated(oracle::mesoscopic_triangle()), Error);
}
