#include "zlb/model_core.hpp"

#include "zlb/errors.hpp"

#include <string>

namespace zlb {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameter(what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void ModelParams::validate() const {
    require(finite(beta) && beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
    require(finite(sigma) && sigma > 0.0, "sigma must be positive");
    require(finite(lambda) && lambda > 0.0, "lambda must be positive");
    require(finite(mu) && mu > 0.0, "mu must be positive");
    require(finite(psi), "psi must be finite");
    require(finite(M) && M > 0.0 && M <= 1.0, "M must lie in (0,1]");
    require(finite(Mf) && Mf > 0.0 && Mf <= 1.0, "Mf must lie in (0,1]");
    require(finite(N) && N > 0.0 && N <= 1.0, "N must lie in (0,1]");
}

ModelParams ModelParams::with_unit_discounts() const {
    ModelParams out = *this;
    out.M = out.Mf = out.N = 1.0;
    return out;
}

void MarkovShock::validate() const {
    require(finite(eps1) && finite(eps2), "shock values must be finite");
    require(finite(p) && p > 0.0 && p <= 1.0, "p must lie in (0,1]");
    require(finite(q) && q > 0.0 && q <= 1.0, "q must lie in (0,1]");
}

void MarkovShock::validate_for_solver() const {
    validate();
    require(eps2 >= 0.0, "eps2 must be non-negative");
}

Mat2 transition_matrix(double p, double q) {
    Mat2 K;
    K << p, 1.0 - p, 1.0 - q, q;
    return K;
}

StructuralMatrices build_matrices(const ModelParams& prm, const MarkovShock& shock) {
    StructuralMatrices s;
    s.K = transition_matrix(shock.p, shock.q);
    const double a = prm.lambda * prm.sigma;
    s.Q = Mat2::Identity() - (prm.M + prm.Mf * prm.beta + a * prm.N) * s.K +
          prm.beta * prm.M * prm.Mf * s.K * s.K;

    const double d = 1.0 + a * prm.psi;
    s.A_Z << prm.M, prm.N * prm.sigma,
             prm.M * prm.lambda, prm.Mf * prm.beta + prm.N * a;
    s.A_P << prm.M, prm.N * prm.sigma - prm.Mf * prm.beta * prm.sigma * prm.psi,
             prm.M * prm.lambda, prm.Mf * prm.beta + prm.N * a;
    s.A_P /= d;

    s.bp_scale = 1.0 / d;
    s.lambda = prm.lambda;
    s.sigma = prm.sigma;
    s.mu = prm.mu;
    return s;
}

double ergodic_weight(const MarkovShock& shock) {
    if (shock.p == 1.0 && shock.q == 1.0)
        throw DegenerateChain("ergodic weight undefined for p = q = 1");
    if (shock.q == 1.0) return 1.0;
    return (1.0 - shock.p) / (2.0 - shock.p - shock.q);
}

double nu(const ModelParams& prm, double pr) {
    const double den = 1.0 - prm.beta * prm.Mf * pr;
    if (std::abs(den) < kSingularTol) throw Singularity("nu: beta*Mf*pr equals 1");
    return prm.M + prm.N * prm.lambda * prm.sigma / den;
}

double delta(const ModelParams& prm) {
    return (prm.M - 1.0) * (1.0 - prm.Mf * prm.beta) + prm.lambda * prm.sigma * prm.N;
}

bool near_singular(const Mat2& A) {
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    return std::abs(A.determinant()) < kSingularTol * scale * scale;
}

}  // namespace zlb
