#include "zlb/equilibrium.hpp"

#include "zlb/errors.hpp"

#include <cmath>

namespace zlb {

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::PP: return "PP";
        case Regime::ZP: return "ZP";
        case Regime::PZ: return "PZ";
        case Regime::ZZ: return "ZZ";
    }
    return "?";
}

std::string_view to_string(Concept c) {
    switch (c) {
        case Concept::REE: return "REE";
        case Concept::RPE: return "RPE";
        case Concept::BRE: return "BRE";
        case Concept::BRRPE: return "BRRPE";
        case Concept::LEE: return "LEE";
    }
    return "?";
}

std::string_view to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::none: return "none";
        case Degeneracy::continuum: return "continuum";
        case Degeneracy::nonexistent_singular: return "nonexistent-singular";
    }
    return "?";
}

std::string_view to_string(CutoffBranch b) {
    switch (b) {
        case CutoffBranch::finite: return "finite";
        case CutoffBranch::minus_infinity_q1: return "minus-infinity-q1";
        case CutoffBranch::minus_infinity_delta: return "minus-infinity-delta";
    }
    return "?";
}

std::optional<Regime> parse_regime(std::string_view s) {
    for (Regime r : kAllRegimes)
        if (to_string(r) == s) return r;
    return std::nullopt;
}

std::optional<Concept> parse_concept(std::string_view s) {
    for (Concept c : {Concept::REE, Concept::RPE, Concept::BRE, Concept::BRRPE, Concept::LEE})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

EffectiveChain effective_transition(Concept c, const MarkovShock& shock) {
    if (c == Concept::RPE || c == Concept::BRRPE) {
        const double qbar = ergodic_weight(shock);
        return {1.0 - qbar, qbar};
    }
    return {shock.p, shock.q};
}

ModelParams effective_params(Concept c, const ModelParams& params) {
    if (c == Concept::REE || c == Concept::RPE || c == Concept::LEE)
        return params.with_unit_discounts();
    return params;
}

namespace {

void check_solver_inputs(const ModelParams& params, const MarkovShock& shock) {
    params.validate();
    shock.validate_for_solver();
    if (!params.taylor_principle()) throw InvalidParameter("solver requires psi > 1");
}

bool regime_consistent(Regime r, const ModelParams& prm, const Vec2& pi) {
    for (int j = 0; j < 2; ++j) {
        const bool slack = slack_consistent(prm, pi(j));
        if (binds(r, j) == slack) return false;
    }
    return true;
}

}  // namespace

CandidateSolution solve_candidate(Concept c, Regime r, const ModelParams& params,
                                  const MarkovShock& shock) {
    if (c == Concept::LEE) throw InvalidParameter("LEE candidates come from lee_solution");
    check_solver_inputs(params, shock);

    const ModelParams prm = effective_params(c, params);
    const EffectiveChain ch = effective_transition(c, shock);
    const MarkovShock eff{shock.eps1, shock.eps2, ch.p, ch.q};
    const StructuralMatrices sm = build_matrices(prm, eff);

    const double a = prm.lambda * prm.sigma;
    Mat2 S = sm.Q;
    Vec2 rhs(prm.lambda * shock.eps1, prm.lambda * shock.eps2);
    for (int j = 0; j < 2; ++j) {
        if (binds(r, j))
            rhs(j) += a * prm.mu;
        else
            S(j, j) += a * prm.psi;
    }

    CandidateSolution out;
    out.regime = r;
    out.concept_type = c;

    Vec2 pi;
    if (near_singular(S)) {
        Eigen::CompleteOrthogonalDecomposition<Mat2> cod(S);
        pi = cod.solve(rhs);
        const double resid = (S * pi - rhs).norm();
        const double scale = S.norm() * pi.norm() + rhs.norm();
        if (resid <= 1e-10 * std::max(scale, 1e-300)) {
            out.degenerate = Degeneracy::continuum;
        } else {
            out.degenerate = Degeneracy::nonexistent_singular;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out.Y1 = out.Y2 = StateOutcome{nan, nan, nan};
            return out;
        }
    } else {
        pi = S.partialPivLu().solve(rhs);
    }

    const Vec2 Epi = sm.K * pi;
    StateOutcome* Y[2] = {&out.Y1, &out.Y2};
    for (int j = 0; j < 2; ++j) {
        Y[j]->pi = pi(j);
        Y[j]->x = (pi(j) - prm.Mf * prm.beta * Epi(j)) / prm.lambda;
        Y[j]->i = policy_rate(prm, pi(j));
    }
    out.consistent = regime_consistent(r, prm, pi);
    return out;
}

std::vector<CandidateSolution> enumerate_equilibria(Concept c, const ModelParams& params,
                                                    const MarkovShock& shock) {
    std::vector<CandidateSolution> out;
    if (c == Concept::LEE) {
        CandidateSolution lee = lee_solution(params, shock);
        if (lee.consistent) out.push_back(lee);
        return out;
    }
    for (Regime r : kAllRegimes) {
        CandidateSolution s = solve_candidate(c, r, params, shock);
        if (s.consistent) out.push_back(s);
    }
    return out;
}

bool exists(Concept c, const ModelParams& params, const MarkovShock& shock) {
    return !enumerate_equilibria(c, params, shock).empty();
}

namespace {

struct ZpParts {
    double num;  // eps^ZP_2 = num / ((q - 1) * den)
    double den;
};

// Unit-discount closed forms.
double eps_pp_ree(const ModelParams& m, double e2, double p, double q) {
    const double a = m.lambda * m.sigma, rho = p + q - 1.0, psi = m.psi, b = m.beta, mu = m.mu,
                 l = m.lambda;
    const double num = a * a * mu * (psi - 1.0) * (rho - psi) +
                       a * (l * e2 * (p - 1.0) * psi + mu * (psi - 1.0) * (1.0 - rho) * (b * rho - 1.0)) -
                       l * e2 * (p - 1.0) * psi * (b * rho - 1.0);
    const double den = l * psi * (1.0 - (a + 1.0) * q + a * psi + b * (q - 1.0) * rho);
    return num / den;
}

ZpParts eps_zp2_ree(const ModelParams& m, double e2, double p, double q) {
    const double a = m.lambda * m.sigma, rho = p + q - 1.0, psi = m.psi, b = m.beta, mu = m.mu,
                 l = m.lambda;
    const double num = a * a * mu * (psi - 1.0) * rho - l * e2 * (p - 1.0) * psi * (b * rho - 1.0) +
                       a * (l * e2 * p * psi + mu * (psi - 1.0) * (1.0 - rho) * (b * rho - 1.0));
    return {num, l * psi * (b * rho - a - 1.0)};
}

double eps_pp_br(const ModelParams& m, double e2, double p, double q) {
    const double a = m.lambda * m.sigma, rho = p + q - 1.0, psi = m.psi, b = m.beta, mu = m.mu,
                 l = m.lambda, M = m.M, Mf = m.Mf, N = m.N;
    const double eta1 = a * (psi - N) + (1.0 - M) * (1.0 - Mf * b);
    const double eta2 = a * (N + psi) - (p + q) * (a * N + b * Mf) + M * rho * (b * Mf * rho - 1.0) +
                        b * Mf + 1.0;
    const double den = ((1.0 - M * rho) * (1.0 - Mf * b * rho) + a * (psi - N * rho)) *
                       ((1.0 - M) * (1.0 - Mf * b) + a * (psi - N));
    const double eta3 =
        l * e2 * (1.0 - p) * psi * (b * Mf * (M * (p + q) - 1.0) - a * N - M) / den - mu;
    const double num1 =
        l * (a * psi + b * M * Mf * (q * (p + q) - rho) - M * q - q * (b * Mf + a * N) + 1.0);
    return eta1 * eta2 * eta3 / (psi * num1);
}

ZpParts eps_zp2_br(const ModelParams& m, double e2, double p, double q) {
    const double a = m.lambda * m.sigma, rho = p + q - 1.0, psi = m.psi, b = m.beta, mu = m.mu,
                 l = m.lambda, M = m.M, Mf = m.Mf, N = m.N;
    const double eta1 = a * (psi - N) + (1.0 - M) * (1.0 - Mf * b);
    const double d = a * N - b * M * Mf * (p + q) + M + b * Mf;
    const double E = a * N - (p + q) * (a * N + b * Mf) + M * rho * (b * Mf * rho - 1.0) + b * Mf + 1.0;
    const double F = a * N * p + b * Mf * (M * (q - p * rho - 1.0) + p) + M * p - 1.0;
    // Common denominator l*psi*d; the second term carries an extra psi.
    return {mu * eta1 * E - e2 * l * psi * F, l * psi * d};
}

double zp2_value(const ZpParts& z, double q) {
    if (q < 1.0) return z.num / ((q - 1.0) * z.den);
    // q -> 1 from below: (q - 1) -> 0^-.
    const double s = z.num / z.den;
    return s > 0.0 ? kMinusInf : kPlusInf;
}

}  // namespace

CutoffReport cutoff_components(Concept c, const ModelParams& params, const MarkovShock& shock) {
    if (c == Concept::LEE) throw InvalidParameter("no cutoff formula for LEE");
    params.validate();
    shock.validate_for_solver();
    if (!params.taylor_principle()) throw InvalidParameter("cutoffs require psi > 1");

    const ModelParams prm = effective_params(c, params);
    const EffectiveChain ch = effective_transition(c, shock);
    const bool unit = (c == Concept::REE || c == Concept::RPE);

    CutoffReport rep;
    rep.concept_type = c;
    rep.delta = delta(prm);
    if (unit) {
        rep.eps_PP = eps_pp_ree(prm, shock.eps2, ch.p, ch.q);
        rep.eps_ZP2 = zp2_value(eps_zp2_ree(prm, shock.eps2, ch.p, ch.q), ch.q);
    } else {
        rep.eps_PP = eps_pp_br(prm, shock.eps2, ch.p, ch.q);
        rep.eps_ZP2 = zp2_value(eps_zp2_br(prm, shock.eps2, ch.p, ch.q), ch.q);
    }

    if (!unit && rep.delta < 0.0) {
        rep.eps_bar = kMinusInf;
        rep.branch = CutoffBranch::minus_infinity_delta;
    } else if (c == Concept::RPE && shock.q == 1.0) {
        rep.eps_bar = kMinusInf;
        rep.branch = CutoffBranch::minus_infinity_q1;
    } else {
        rep.eps_bar = std::min(rep.eps_PP, rep.eps_ZP2);
        rep.branch = std::isinf(rep.eps_bar) ? CutoffBranch::minus_infinity_q1 : CutoffBranch::finite;
    }
    return rep;
}

bool cutoff_ordering_check(const ModelParams& params, const MarkovShock& shock) {
    if (shock.q >= 1.0) throw InvalidParameter("ordering check requires q < 1");
    const double ree = cutoff_components(Concept::REE, params, shock).eps_bar;
    const double rpe = cutoff_components(Concept::RPE, params, shock).eps_bar;
    const double tol = 1e-12 * (1.0 + std::max(std::abs(ree), std::abs(rpe)));
    const bool ree_ge = ree >= rpe - tol;
    return ree_ge == (shock.p + shock.q >= 1.0);
}

double binding_output(const ModelParams& params, double pr, double eps1) {
    const double den = 1.0 - pr * nu(params, pr);
    if (std::abs(den) < kSingularTol) throw Singularity("binding_output: pr*nu(pr) equals 1");
    return (params.sigma * params.mu + eps1) / den;
}

CandidateSolution lee_solution(const ModelParams& params, const MarkovShock& shock) {
    check_solver_inputs(params, shock);
    if (shock.q != 1.0 || shock.eps2 != 0.0)
        throw InvalidParameter("LEE requires q = 1 and eps2 = 0");
    const ModelParams prm = params.with_unit_discounts();
    const double p2 = shock.p * shock.p;
    const double phil = prm.lambda / (1.0 - prm.beta * p2);  // pi = phil * x
    const double base = 1.0 - p2 * nu(prm, p2);
    if (std::abs(base) < kSingularTol) throw Singularity("LEE: p^2*nu(p^2) equals 1");

    CandidateSolution out;
    out.concept_type = Concept::LEE;
    out.Y2 = StateOutcome{0.0, 0.0, 0.0};

    const double slack_den = base + prm.sigma * prm.psi * phil;
    const double xs = shock.eps1 / slack_den;
    if (slack_consistent(prm, phil * xs)) {
        out.regime = Regime::PP;
        out.Y1 = StateOutcome{xs, phil * xs, prm.psi * phil * xs};
        out.consistent = true;
        return out;
    }
    const double xb = (prm.sigma * prm.mu + shock.eps1) / base;
    out.regime = Regime::ZP;
    out.Y1 = StateOutcome{xb, phil * xb, policy_rate(prm, phil * xb)};
    out.consistent = !slack_consistent(prm, phil * xb);
    return out;
}

double ih_rpe_residual(const CandidateSolution& rpe, const ModelParams& params,
                       const MarkovShock& shock) {
    const ModelParams prm = params.with_unit_discounts();
    const double qbar = ergodic_weight(shock);
    Mat2 Kt;
    Kt << 1.0 - qbar, qbar, 1.0 - qbar, qbar;
    const double a = prm.lambda * prm.sigma;
    const Vec2 pi(rpe.Y1.pi, rpe.Y2.pi);
    const Vec2 i(rpe.Y1.i, rpe.Y2.i);
    const Vec2 eps(shock.eps1, shock.eps2);
    const Vec2 r = (Mat2::Identity() - (1.0 + a) * Kt) * pi + a * i - prm.lambda * eps;
    return r.cwiseAbs().maxCoeff();
}

bool verify_ih_rpe_equivalence(const ModelParams& params, const MarkovShock& shock, double tol) {
    for (const auto& s : enumerate_equilibria(Concept::RPE, params, shock))
        if (!(ih_rpe_residual(s, params, shock) <= tol)) return false;
    return true;
}

}  // namespace zlb
