#include "oracles.hpp"

#include <zlb/errors.hpp>
#include <zlb/guidance.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace zlb;

namespace {

ModelParams damped_calibration() {
    ModelParams g;
    g.M = 0.85;
    g.Mf = 0.8;
    g.lambda = 0.11;
    g.sigma = 0.2;
    return g;
}

ModelParams puzzle_calibration() {
    ModelParams k;
    k.M = 0.97;
    k.sigma = 0.375;
    return k;
}

}  // namespace

TEST(Guidance, ImpactIsMatrixPowerTimesRateLoading) {
    for (const ModelParams& m : {damped_calibration(), puzzle_calibration(), ModelParams{}}) {
        const Mat2 A = a_brz(m);
        Mat2 P = Mat2::Identity();
        const auto scan = fg_impact_scan(m, 60);
        for (int T = 0; T <= 60; ++T) {
            const Vec2 d = P * Vec2(-m.sigma, -m.lambda * m.sigma);
            EXPECT_NEAR(scan.dx0_diT[T], d(0), 1e-12 * (1.0 + std::abs(d(0))));
            EXPECT_NEAR(scan.dpi0_diT[T], d(1), 1e-12 * (1.0 + std::abs(d(1))));
            P = A * P;
        }
    }
}

TEST(Guidance, PathDerivativeIsLinearInTheRate) {
    const ModelParams m = puzzle_calibration();
    const FGConfig a{20, -0.01}, b{20, -0.02};
    const FGPath pa = fg_path_bre(m, a), pb = fg_path_bre(m, b);
    EXPECT_NEAR((pb.outcomes[0](1) - pa.outcomes[0](1)) / -0.01, pa.dpi0_diT, 1e-10);
    EXPECT_NEAR(pa.dpi0_diT, fg_impact_scan(m, 20).dpi0_diT[20], 1e-14);
    EXPECT_NEAR(pa.log_abs_dpi0, std::log(std::abs(pa.dpi0_diT)), 1e-12);
}

TEST(Guidance, CharacteristicPolynomialAtOneIsMinusDelta) {
    oracle::Sampler rng(81);
    for (int d = 0; d < 100; ++d) {
        const ModelParams m = rng.draw(true).params;
        EXPECT_NEAR((Mat2::Identity() - a_brz(m)).determinant(), -delta(m), 1e-13);
    }
}

TEST(Guidance, PuzzleIffSpectralRadiusAtLeastOne) {
    oracle::Sampler rng(82);
    int puzzles = 0;
    for (int d = 0; d < 300; ++d) {
        const ModelParams m = rng.draw(true).params;
        if (std::abs(delta(m)) < 1e-9) continue;
        const bool puzzle = puzzle_predicate(m);
        puzzles += puzzle;
        EXPECT_EQ(puzzle, spectral_radius(a_brz(m)) >= 1.0) << "draw " << d;
    }
    EXPECT_GT(puzzles, 0);
    EXPECT_LT(puzzles, 300);
}

TEST(Guidance, ImpactVanishesOrExplodesWithHorizon) {
    const auto g = fg_impact_scan(damped_calibration(), 400);
    EXPECT_LT(std::abs(g.dpi0_diT[400]), 1e-3 * std::abs(g.dpi0_diT[0]));
    const auto k = fg_impact_scan(puzzle_calibration(), 400);
    EXPECT_GT(std::abs(k.dpi0_diT[400]), std::abs(k.dpi0_diT[0]));
    EXPECT_GT(k.log_abs_dpi0[400], k.log_abs_dpi0[200]);
}

TEST(Guidance, OverflowIsTrackedInLogs) {
    ModelParams m;
    m.sigma = 2.0;
    m.lambda = 0.2;
    const auto scan = fg_impact_scan(m, 5000);
    ASSERT_GE(scan.overflow_from, 0);
    EXPECT_TRUE(std::isinf(scan.dpi0_diT[5000]));
    EXPECT_TRUE(std::isfinite(scan.log_abs_dpi0[5000]));
    const double slope = scan.log_abs_dpi0[5000] - scan.log_abs_dpi0[4999];
    EXPECT_NEAR(slope, std::log(spectral_radius(a_brz(m))), 1e-8);
}

TEST(Guidance, LearningBenchmarks) {
    const ModelParams m;
    for (int T : {0, 5, 40}) {
        const FGConfig cfg{T, -0.01};
        EXPECT_EQ(fg_effect_learning(FGKind::euler_learning, m, cfg), Vec2::Zero());
        EXPECT_EQ(fg_effect_learning(FGKind::ih_not_credible, m, cfg), Vec2::Zero());
        const Vec2 now = fg_effect_learning(FGKind::ih_credible, m, cfg);
        const Vec2 next = fg_effect_learning(FGKind::ih_credible, m, FGConfig{T + 1, -0.01});
        EXPECT_NEAR(next(1) / now(1), m.beta, 1e-14);
        EXPECT_NEAR(now(0), -m.sigma * std::pow(m.beta, T), 1e-15);
    }
}

TEST(Guidance, SpectralRadiusOfComplexPair) {
    Mat2 A;
    A << 0.0, -2.0, 2.0, 0.0;
    EXPECT_NEAR(spectral_radius(A), 2.0, 1e-15);
}

TEST(Guidance, Validation) {
    EXPECT_THROW((FGConfig{-1, -0.01}.validate()), InvalidParameter);
    EXPECT_EQ(parse_fg_kind("ih-credible"), FGKind::ih_credible);
    EXPECT_FALSE(parse_fg_kind("bogus").has_value());
}
