#pragma once

#include "zlb/equilibrium.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace zlb {

inline constexpr double kEStabilityMargin = 1e-10;

using Eigenvalues = std::vector<std::complex<double>>;

struct EStabilityVerdict {
    Regime regime = Regime::PP;
    Concept concept_type = Concept::REE;
    Eigen::MatrixXd jacobian;  // 4x4 for REE/BRE, 2x2 for RPE/BRRPE
    Eigenvalues eigenvalues;
    double max_real_part = 0.0;
    bool estable = false;
    bool boundary = false;  // |max real part| within the margin
};

struct Classified {
    CandidateSolution solution;
    EStabilityVerdict verdict;
};

// Block Jacobian of the state-contingent learning ODE under transition (p, q),
// using the hatted loadings of `params`.
Mat4 jacobian_msv(Regime r, const ModelParams& params, double p, double q);

// REE version: discounts forced to one.
Mat4 jacobian_ree(Regime r, const ModelParams& params, const MarkovShock& shock);

// Mean-belief ODE Jacobian: probability-weighted mix of A_P and A_Z minus I.
// Hatted loadings of `params` are used as given (pass unit discounts for RPE).
Mat2 jacobian_rpe(Regime r, const ModelParams& params, double qbar);

Eigenvalues eigenvalues_2x2(const Mat2& A);
// General real eigen solver.
Eigenvalues eigenvalues_general(const Eigen::MatrixXd& A);
// Uses the Kronecker structure K (x) A - I when both states share a loading,
// the general solver otherwise.
Eigenvalues eigenvalues_msv(Regime r, const ModelParams& params, double p, double q);

double max_real_part(const Eigenvalues& ev);

EStabilityVerdict assess(Concept c, Regime r, const ModelParams& params, const MarkovShock& shock);

// Verdicts for every consistent candidate.
std::vector<Classified> assess_all(Concept c, const ModelParams& params, const MarkovShock& shock);

// The consistent, E-stable candidate if there is one.
std::optional<Classified> classify(Concept c, const ModelParams& params, const MarkovShock& shock);

}  // namespace zlb
