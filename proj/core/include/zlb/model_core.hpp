#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace zlb {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

// Relative tolerance for "singular" determinants, scaled by the matrix norm.
inline constexpr double kSingularTol = 1e-12;

struct ModelParams {
    double beta = 0.99;
    double sigma = 1.0;
    double lambda = 0.02;
    double psi = 2.0;
    double mu = -std::log(0.99);
    double M = 1.0;   // demand-side cognitive discount
    double Mf = 1.0;  // supply-side cognitive discount
    double N = 1.0;   // discount on expected inflation in the IS curve

    // Throws InvalidParameter on violated invariants. psi <= 1 is allowed here.
    void validate() const;
    bool taylor_principle() const { return psi > 1.0; }
    bool unit_discounts() const { return M == 1.0 && Mf == 1.0 && N == 1.0; }
    ModelParams with_unit_discounts() const;
};

// Two-state Markov demand shock: state 1 is the low state.
struct MarkovShock {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double p = 0.5;  // Pr(stay in state 1)
    double q = 0.5;  // Pr(stay in state 2)

    void validate() const;
    // Additionally rejects eps2 < 0 (assumed by every existence result).
    void validate_for_solver() const;
    double rho() const { return p + q - 1.0; }
    double eps(int state) const { return state == 0 ? eps1 : eps2; }
};

struct StateOutcome {
    double x = 0.0;
    double pi = 0.0;
    double i = 0.0;
};

struct StructuralMatrices {
    Mat2 K;
    Mat2 Q;
    Mat2 A_P;  // slack-regime loading on (x^e, pi^e)
    Mat2 A_Z;  // binding-regime loading

    Vec2 B_P(double eps) const { return bp_scale * Vec2(eps, lambda * eps); }
    Vec2 B_Z(double eps) const { return Vec2(eps + sigma * mu, lambda * (eps + sigma * mu)); }

    double bp_scale = 1.0;
    double lambda = 0.0;
    double sigma = 0.0;
    double mu = 0.0;
};

Mat2 transition_matrix(double p, double q);

StructuralMatrices build_matrices(const ModelParams& params, const MarkovShock& shock);

// Pr(state 2) under the stationary distribution. 1 when q = 1.
double ergodic_weight(const MarkovShock& shock);

// nu(pr) = M + N*lambda*sigma/(1 - beta*Mf*pr).
double nu(const ModelParams& params, double pr);

// (M-1)(1-Mf*beta) + lambda*sigma*N.
double delta(const ModelParams& params);

// Interest rate implied by the policy rule.
inline double policy_rate(const ModelParams& params, double pi) {
    return std::max(params.psi * pi, -params.mu);
}

inline bool slack_consistent(const ModelParams& params, double pi) {
    return params.psi * pi > -params.mu;
}

// |det| below kSingularTol * ||A||^2.
bool near_singular(const Mat2& A);

}  // namespace zlb
