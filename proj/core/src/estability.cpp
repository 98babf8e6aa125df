#include "zlb/estability.hpp"

#include "zlb/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace zlb {

namespace {

const Mat2& loading(const StructuralMatrices& sm, Regime r, int state) {
    return binds(r, state) ? sm.A_Z : sm.A_P;
}

}  // namespace

Mat4 jacobian_msv(Regime r, const ModelParams& params, double p, double q) {
    const StructuralMatrices sm = build_matrices(params, MarkovShock{0.0, 0.0, p, q});
    Mat4 J;
    for (int j = 0; j < 2; ++j) {
        const Mat2& A = loading(sm, r, j);
        for (int k = 0; k < 2; ++k) J.block<2, 2>(2 * j, 2 * k) = sm.K(j, k) * A;
    }
    return J - Mat4::Identity();
}

Mat4 jacobian_ree(Regime r, const ModelParams& params, const MarkovShock& shock) {
    return jacobian_msv(r, params.with_unit_discounts(), shock.p, shock.q);
}

Mat2 jacobian_rpe(Regime r, const ModelParams& params, double qbar) {
    const StructuralMatrices sm = build_matrices(params, MarkovShock{});
    // Probability that the realized state is slack.
    double w_slack = 0.0;
    if (!binds(r, 0)) w_slack += 1.0 - qbar;
    if (!binds(r, 1)) w_slack += qbar;
    return w_slack * sm.A_P + (1.0 - w_slack) * sm.A_Z - Mat2::Identity();
}

Eigenvalues eigenvalues_2x2(const Mat2& A) {
    const double half_tr = 0.5 * A.trace();
    const std::complex<double> disc = std::sqrt(std::complex<double>(half_tr * half_tr - A.determinant()));
    return {half_tr + disc, half_tr - disc};
}

Eigenvalues eigenvalues_general(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    if (es.info() != Eigen::Success) throw NumericFailure("eigen solver did not converge");
    const auto& v = es.eigenvalues();
    return Eigenvalues(v.data(), v.data() + v.size());
}

Eigenvalues eigenvalues_msv(Regime r, const ModelParams& params, double p, double q) {
    if (r == Regime::PP || r == Regime::ZZ) {
        // eig(K (x) A) = {k * a}; eig(K) = {1, p + q - 1}.
        const StructuralMatrices sm = build_matrices(params, MarkovShock{0.0, 0.0, p, q});
        const Eigenvalues a = eigenvalues_2x2(loading(sm, r, 0));
        Eigenvalues out;
        for (double k : {1.0, p + q - 1.0})
            for (const auto& ai : a) out.push_back(k * ai - 1.0);
        return out;
    }
    return eigenvalues_general(jacobian_msv(r, params, p, q));
}

double max_real_part(const Eigenvalues& ev) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& e : ev) m = std::max(m, e.real());
    return m;
}

EStabilityVerdict assess(Concept c, Regime r, const ModelParams& params, const MarkovShock& shock) {
    if (c == Concept::LEE) throw InvalidParameter("no E-stability map for LEE");
    const ModelParams prm = effective_params(c, params);

    EStabilityVerdict v;
    v.regime = r;
    v.concept_type = c;
    if (c == Concept::REE || c == Concept::BRE) {
        v.jacobian = jacobian_msv(r, prm, shock.p, shock.q);
        v.eigenvalues = eigenvalues_msv(r, prm, shock.p, shock.q);
    } else {
        const Mat2 J = jacobian_rpe(r, prm, ergodic_weight(shock));
        v.jacobian = J;
        v.eigenvalues = eigenvalues_2x2(J);
    }
    v.max_real_part = max_real_part(v.eigenvalues);
    v.estable = v.max_real_part < -kEStabilityMargin;
    v.boundary = std::abs(v.max_real_part) <= kEStabilityMargin;
    return v;
}

std::vector<Classified> assess_all(Concept c, const ModelParams& params, const MarkovShock& shock) {
    std::vector<Classified> out;
    for (auto& s : enumerate_equilibria(c, params, shock))
        out.push_back({s, assess(c, s.regime, params, shock)});
    return out;
}

std::optional<Classified> classify(Concept c, const ModelParams& params, const MarkovShock& shock) {
    for (auto& cl : assess_all(c, params, shock))
        if (cl.verdict.estable) return cl;
    return std::nullopt;
}

}  // namespace zlb
