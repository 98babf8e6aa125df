#include <zlb/errors.hpp>
#include <zlb/model_core.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace zlb;

TEST(ModelCore, BindingLoadingAtUnitDiscounts) {
    ModelParams m;
    const StructuralMatrices sm = build_matrices(m, MarkovShock{0.0, 0.0, 0.85, 0.98});
    EXPECT_DOUBLE_EQ(sm.A_Z(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(sm.A_Z(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(sm.A_Z(1, 0), 0.02);
    EXPECT_NEAR(sm.A_Z(1, 1), 1.01, 1e-15);
}

TEST(ModelCore, AbsorbingStatesGiveIdentityChain) {
    EXPECT_TRUE(transition_matrix(1.0, 1.0).isIdentity());
}

TEST(ModelCore, QMatchesUnitDiscountForm) {
    ModelParams m;
    const MarkovShock s{0.0, 0.0, 0.7, 0.9};
    const Mat2 K = transition_matrix(s.p, s.q);
    const Mat2 expect = Mat2::Identity() - (1.0 + m.beta + m.lambda * m.sigma) * K + m.beta * K * K;
    EXPECT_TRUE(build_matrices(m, s).Q.isApprox(expect, 1e-14));
}

TEST(ModelCore, SlackLoadingSolvesStructuralEquations) {
    // x = M xe - sigma(psi pi - N pie), pi = lambda x + Mf beta pie
    ModelParams m;
    m.M = 0.9;
    m.Mf = 0.8;
    m.N = 0.95;
    const StructuralMatrices sm = build_matrices(m, MarkovShock{});
    const Vec2 ye(0.3, -0.2);
    const Vec2 y = sm.A_P * ye + sm.B_P(0.01);
    EXPECT_NEAR(y(0), m.M * ye(0) - m.sigma * (m.psi * y(1) - m.N * ye(1)) + 0.01, 1e-14);
    EXPECT_NEAR(y(1), m.lambda * y(0) + m.Mf * m.beta * ye(1), 1e-14);
}

TEST(ModelCore, ErgodicWeight) {
    EXPECT_NEAR(ergodic_weight(MarkovShock{0.0, 0.0, 0.85, 0.98}), 0.15 / 0.17, 1e-15);
    EXPECT_DOUBLE_EQ(ergodic_weight(MarkovShock{0.0, 0.0, 0.6, 1.0}), 1.0);
    EXPECT_DOUBLE_EQ(ergodic_weight(MarkovShock{0.0, 0.0, 0.5, 0.5}), 0.5);
    EXPECT_THROW(ergodic_weight(MarkovShock{0.0, 0.0, 1.0, 1.0}), DegenerateChain);
}

TEST(ModelCore, Nu) {
    ModelParams m;
    EXPECT_NEAR(nu(m, 0.85), 1.0 + 0.02 / (1.0 - 0.99 * 0.85), 1e-15);
    EXPECT_NEAR(nu(m, 0.85), 1.12618, 5e-6);
    EXPECT_DOUBLE_EQ(nu(m, 0.0), m.M + m.N * m.lambda * m.sigma);
    for (double pr : {0.01, 0.3, 0.9, 1.0}) EXPECT_GT(nu(m, pr), 1.0);
}

TEST(ModelCore, DeltaPrintedCalibrations) {
    ModelParams g;
    g.M = 0.85;
    g.Mf = 0.8;
    g.lambda = 0.11;
    g.sigma = 0.2;
    EXPECT_NEAR(delta(g), -0.0092, 1e-4);

    ModelParams k;
    k.M = 0.97;
    k.sigma = 0.375;
    EXPECT_NEAR(delta(k), 0.0072, 1e-4);

    ModelParams u;
    EXPECT_DOUBLE_EQ(delta(u), u.lambda * u.sigma);
}

TEST(ModelCore, SlackPlusTaylorMatrixHasPositiveDeterminant) {
    ModelParams m;
    for (double p : {0.1, 0.5, 0.9})
        for (double q : {0.2, 0.6, 0.95}) {
            const Mat2 Q = build_matrices(m, MarkovShock{0.0, 0.0, p, q}).Q;
            EXPECT_GT((Q + m.lambda * m.sigma * m.psi * Mat2::Identity()).determinant(), 0.0);
        }
}

TEST(ModelCore, Validation) {
    ModelParams m;
    m.beta = 1.0;
    EXPECT_THROW(m.validate(), InvalidParameter);
    MarkovShock s{0.0, -0.01, 0.5, 0.5};
    EXPECT_NO_THROW(s.validate());
    EXPECT_THROW(s.validate_for_solver(), InvalidParameter);
}

TEST(ModelCore, PolicyRate) {
    ModelParams m;
    EXPECT_DOUBLE_EQ(policy_rate(m, 0.01), 0.02);
    EXPECT_DOUBLE_EQ(policy_rate(m, -0.01), -m.mu);
}
