#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "core/current.hpp"
#include "core/error.hpp"
#include "core/random.hpp"
#include "harness/oracles.hpp"

using namespace softqed;

namespace {

double l1(const FourVector& v) {
    double s = 0.0;
    for (std::size_t mu = 0; mu < 4; ++mu) s += std::abs(v[mu]);
    return s;
}

LoopPath random_loop(Rng& rng, std::size_t n, double size) {
    std::vector<FourVector> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(rng.four_vector(-size, size));
    return LoopPath(xs);
}

Eigen::Matrix3d rotation(double a, double b, double c) {
    return (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(c, Eigen::Vector3d::UnitZ()))
        .toRotationMatrix();
}

double photon_number(const LoopPath& loop, const PhotonModeGrid& grid) {
    auto j = [&](const FourVector& k) { return loop_current(loop, k); };
    return pairing(j, j, grid).real();
}

}  // namespace

TEST(SegmentCurrent, StationaryPhaseLimit) {
    const FourVector xm{0.5, 1.0, 2.0, 0.0};
    const FourVector xp{0.5, 2.0, 2.0, 0.0};
    const FourVector k{1.0, 0.0, 1.0, 0.0};  // k.z = 0 exactly
    const FourVector j = segment_current(xm, xp, k);
    const FourVector expected = std::exp(complex(0.0, 1.0) * minkowski(k, xm)) * (xp - xm);
    EXPECT_LT((j - expected).max_abs(), 1e-15);
}

TEST(SegmentCurrent, ZeroMomentumIsEdge) {
    const FourVector xm{0.5, 1.0, 2.0, 0.0};
    const FourVector xp{1.5, -2.0, 2.0, 3.0};
    EXPECT_LT((segment_current(xm, xp, FourVector{}) - (xp - xm)).max_abs(), 1e-15);
}

TEST(SegmentCurrent, MatchesBruteForceLineIntegral) {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const FourVector xm = rng.four_vector(-1.0, 1.0);
        const FourVector xp = rng.four_vector(-1.0, 1.0);
        const FourVector k = rng.four_vector(-2.0, 2.0);
        const FourVector d = segment_current(xm, xp, k) - oracle::brute_segment_current(xm, xp, k);
        EXPECT_LT(d.max_abs(), 1e-10);
    }
}

TEST(SegmentCurrent, SeriesAgreesWithClosedFormNearSwitch) {
    const FourVector xm{0.3, 0.0, 0.0, 0.0};
    const FourVector xp{0.3, 1.0, 0.0, 0.0};
    const complex I{0.0, 1.0};
    for (double f : {0.5, 0.99, 1.01, 2.0}) {
        // k.z = -k^1
        const FourVector k{1.0, f * kSeriesSwitch, 0.0, 0.0};
        const double theta = minkowski(k, xp - xm).real();
        // e^{i theta} - 1 without cancellation
        const complex num(-2.0 * std::pow(std::sin(0.5 * theta), 2), std::sin(theta));
        const complex closed = std::exp(I * minkowski(k, xm)) * num / (I * theta);
        const FourVector d = segment_current(xm, xp, k) - closed * (xp - xm);
        EXPECT_LT(d.max_abs(), 1e-15);
    }
}

TEST(LoopCurrent, GaugeCondition) {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const LoopPath loop = random_loop(rng, 3 + rng.below(4), 3.0);
        const FourVector k = rng.four_vector(-2.0, 2.0);
        const FourVector j = loop_current(loop, k);
        EXPECT_LE(std::abs(minkowski(k, j)), 1e-12 * l1(j));
    }
}

TEST(LoopCurrent, OrientationReversal) {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const LoopPath loop = random_loop(rng, 5, 2.0);
        const FourVector k = rng.four_vector(-2.0, 2.0);
        EXPECT_LT((loop_current(loop.reversed(), k) + loop_current(loop, k)).max_abs(), 1e-14);
    }
}

TEST(LoopCurrent, BackAndForthCancels) {
    const LoopPath loop({FourVector{0.0, 0.0, 0.0, 0.0}, FourVector{2.0, 1.0, 0.5, 0.0},
                         FourVector{1.0, 0.5, 0.25, 0.0}});
    const FourVector k{0.7, 0.3, -0.2, 0.5};
    EXPECT_LT(loop_current(loop, k).max_abs(), 1e-14);
}

TEST(LoopCurrent, SharedEdgeCancelsInUnion) {
    const FourVector a{0.0, 0.0, 0.0, 0.0}, b{1.0, 2.0, 0.0, 0.0}, c{1.5, 2.0, 2.0, 0.5}, d{0.5, 0.0, 2.0, 1.0};
    const LoopPath square({a, b, c, d});
    const LoopPath t1({a, b, c});
    const LoopPath t2({a, c, d});
    const FourVector k{0.9, 0.3, -0.4, 0.2};
    const FourVector diff = loop_current(square, k) - loop_current(t1, k) - loop_current(t2, k);
    EXPECT_LT(diff.max_abs(), 1e-12);
}

TEST(LoopPath, Validation) {
    EXPECT_THROW(LoopPath({FourVector{0, 0, 0, 0}, FourVector{1, 0, 0, 0}}), Error);
    try {
        LoopPath({FourVector{0, 0, 0, 0}, FourVector{0, 0, 0, 0}, FourVector{1, 0, 0, 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidLoop);
    }
    const LoopPath ok({FourVector{0, 0, 0, 0}, FourVector{1, 0, 0, 0}, FourVector{0, 1, 0, 0}});
    EXPECT_EQ(ok.closure_residual(), 0.0);
}

TEST(Grid, NodesOnShellWithPositiveWeights) {
    const auto grid = PhotonModeGrid::build({1e-3, 1.0, 24, 6}, rotation(0.3, 1.1, -0.4));
    EXPECT_EQ(grid.size(), 24u * 6u * 12u);
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& k = grid.nodes()[i];
        const double k3 = std::hypot(k[1].real(), k[2].real(), k[3].real());
        EXPECT_NEAR(k[0].real(), k3, 1e-15 * k3);
        EXPECT_GT(grid.weights()[i], 0.0);
        total += grid.weights()[i];
    }
    // int d^3k/((2 pi)^3 2|k|) = (k_max^2 - k_min^2) / (8 pi^2)
    const double pi = std::numbers::pi;
    EXPECT_NEAR(total, (1.0 - 1e-6) / (8.0 * pi * pi), 1e-13);
}

TEST(Grid, PolarizationsTransverseAndOrthonormal) {
    const auto grid = PhotonModeGrid::build({1e-2, 1.0, 2, 4});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& k = grid.nodes()[i];
        const Eigen::Vector3d n(k[1].real(), k[2].real(), k[3].real());
        const auto e = grid.polarizations(i);
        EXPECT_NEAR(e[0].dot(n), 0.0, 1e-14);
        EXPECT_NEAR(e[1].dot(n), 0.0, 1e-14);
        EXPECT_NEAR(e[0].dot(e[1]), 0.0, 1e-14);
        EXPECT_NEAR(e[0].norm(), 1.0, 1e-14);
        EXPECT_NEAR(e[1].norm(), 1.0, 1e-14);
    }
}

TEST(Grid, EmptyGrid) {
    EXPECT_EQ(PhotonModeGrid::build({1e-3, 1.0, 0, 8}).size(), 0u);
    EXPECT_THROW(PhotonModeGrid::build({1.0, 0.5, 4, 4}), Error);
}

TEST(Pairing, Hermitian) {
    const auto grid = PhotonModeGrid::build({1e-2, 1.0, 6, 4});
    const LoopPath a({FourVector{0, 0, 0, 0}, FourVector{2, 1, 0, 0}, FourVector{3, 0, 1, 0.5}});
    const LoopPath b({FourVector{0, 1, 0, 0}, FourVector{1, 0, 2, 0}, FourVector{4, 0, 0, 1}});
    auto ja = [&](const FourVector& k) { return loop_current(a, k); };
    auto jb = [&](const FourVector& k) { return loop_current(b, k); };
    EXPECT_EQ(pairing(ja, jb, grid), std::conj(pairing(jb, ja, grid)));
    const complex aa = pairing(ja, ja, grid);
    EXPECT_EQ(aa.imag(), 0.0);
    EXPECT_GE(aa.real(), 0.0);
}

TEST(Pairing, InfraredGrowth) {
    const LoopPath loop = oracle::mesoscopic_triangle();
    const double n1 = photon_number(loop, PhotonModeGrid::build({1e-2, 1.0, 32, 12}));
    const double n2 = photon_number(loop, PhotonModeGrid::build({5e-3, 1.0, 32, 12}));
    EXPECT_GT(n2, n1);
}

TEST(Pairing, LogarithmicInCutoff) {
    const LoopPath loop = oracle::mesoscopic_triangle();
    std::vector<double> x, y;
    for (double kmin : {1e-1, 1e-2, 1e-3, 1e-4}) {
        x.push_back(std::log(1.0 / kmin));
        y.push_back(photon_number(loop, PhotonModeGrid::build({kmin, 1.0, 48, 16})));
    }
    Eigen::MatrixXd a(4, 2);
    Eigen::VectorXd b(4);
    for (int i = 0; i < 4; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = x[static_cast<std::size_t>(i)];
        b(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    EXPECT_GT(c(1), 0.0);
    for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(a.row(i).dot(c) - b(i)) / b(i), 0.02);
}

TEST(Pairing, TranslationAndRotationInvariance) {
    const LoopPath loop({FourVector{0, 0, 0, 0}, FourVector{2, 1, 0, 0}, FourVector{3, 0, 1, 0.5}});
    const GridParameters params{1e-2, 2.0, 24, 12};
    const double base = photon_number(loop, PhotonModeGrid::build(params));
    const double moved = photon_number(loop.translated(FourVector{5.0, -3.0, 2.0, 1.0}), PhotonModeGrid::build(params));
    EXPECT_NEAR(moved, base, 1e-12 * base);
    const Eigen::Matrix3d r = rotation(0.4, 0.9, -1.3);
    const double rotated = photon_number(loop.rotated(r), PhotonModeGrid::build(params, r));
    EXPECT_NEAR(rotated, base, 1e-10 * base);
}

TEST(Pairing, RefinementStableForResolvedLoop) {
    const LoopPath loop({FourVector{0, 0, 0, 0}, FourVector{2, 1, 0, 0}, FourVector{3, 0, 1, 0.5}});
    auto j = [&](const FourVector& k) { return loop_current(loop, k); };
    const auto r = pairing_with_refinement(j, j, {1e-2, 2.0, 24, 12}, 5e-3);
    EXPECT_TRUE(r.stable) << r.relative_change;
    const auto coarse = pairing_with_refinement(j, j, {1e-2, 2.0, 2, 12}, 5e-3);
    EXPECT_FALSE(coarse.stable);
}
