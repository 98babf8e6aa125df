#include "zlb/attention.hpp"

#include "zlb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace zlb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFixedPointTol = 1e-10;
constexpr double kDamping = 0.5;
constexpr int kMaxIter = 20000;
constexpr std::size_t kTraceLen = 16;

void check_setting(const ModelParams& params, const MarkovShock& shock) {
    params.validate();
    shock.validate();
    if (shock.q != 1.0) throw InvalidParameter("endogenous attention requires q = 1");
    if (shock.eps2 != 0.0) throw InvalidParameter("endogenous attention requires eps2 = 0");
    if (params.sigma != 1.0) throw InvalidParameter("endogenous attention requires sigma = 1");
    if (!(shock.p < 1.0)) throw InvalidParameter("endogenous attention requires p < 1");
}

double optimal(double m_default, double xi, double E) {
    if (!(E > 0.0)) return m_default;
    return std::max(m_default, 1.0 - xi * xi / E);
}

bool usable(double den) { return std::isfinite(den) && std::abs(den) > 1e-14; }

}  // namespace

double calvo_theta(double slope, double beta) {
    if (!(slope > 0.0) || !(beta > 0.0 && beta < 1.0)) throw InvalidParameter("calvo_theta: bad inputs");
    // beta*theta^2 - (1 + beta + slope)*theta + 1 = 0, smaller root.
    const double b = 1.0 + beta + slope;
    return 2.0 / (b + std::sqrt(b * b - 4.0 * beta));
}

double calvo_slope(double theta, double beta) { return (1.0 - beta * theta) * (1.0 - theta) / theta; }

void AttentionParams::validate() const {
    if (!(xi_c > 0.0) || !(xi_f > 0.0)) throw InvalidParameter("attention costs must be positive");
    for (double d : {m_d1, m_d2, m_df1, m_df2})
        if (!(d >= 0.0 && d <= 1.0)) throw InvalidParameter("default attention must lie in [0,1]");
    if (!(theta > 0.0 && theta < 1.0)) throw InvalidParameter("theta must lie in (0,1)");
    if (!(phi_labor >= 0.0 && std::isfinite(phi_labor))) throw InvalidParameter("phi_labor must be >= 0");
}

AttentionParams AttentionParams::calibrated(const ModelParams& params, double phi_labor) {
    AttentionParams a;
    a.phi_labor = phi_labor;
    a.theta = calvo_theta(params.lambda / (phi_labor + params.sigma), params.beta);
    return a;
}

double firm_discount(double mf, double theta, double beta) {
    const double bt = beta * theta;
    return mf * (theta + (1.0 - theta) * (1.0 - bt) / (1.0 - bt * mf));
}

AttentionOutcomes attention_outcomes(Regime r, double M1, double M2, double Mf1, double Mf2,
                                     const ModelParams& params, const MarkovShock& shock,
                                     const AttentionParams& attn) {
    const double b = params.beta, s = params.sigma, l = params.lambda, psi = params.psi, mu = params.mu;
    const double p = shock.p, e1 = shock.eps1;
    const double mcs = attn.phi_labor + s;

    AttentionOutcomes out;
    AttentionState& h = out.s2;
    if (binds(r, 1)) {
        const double a2 = 1.0 - b * Mf2;
        const double den = 1.0 - M2 - s * l / a2;
        if (!usable(a2) || !usable(den)) {
            out.finite = false;
            return out;
        }
        h.x = s * mu / den;
        h.pi = l * h.x / a2;
        h.r = -mu - h.pi;
        h.i = -mu;
    }
    h.mc = mcs * h.x;

    AttentionState& lo = out.s1;
    const double a1 = 1.0 - p * b * Mf1;
    if (!usable(a1)) {
        out.finite = false;
        return out;
    }
    if (binds(r, 0)) {
        const double den = 1.0 - p * M1 - p * s * l / a1;
        if (!usable(den)) {
            out.finite = false;
            return out;
        }
        lo.x = ((1.0 - p) * (M1 * h.x + (p * s * Mf1 * b / a1 + s) * h.pi) + e1 + s * mu) / den;
        lo.pi = (l * lo.x + Mf1 * b * (1.0 - p) * h.pi) / a1;
        lo.r = -mu - p * lo.pi - (1.0 - p) * h.pi;
        lo.i = -mu;
    } else {
        const double den = 1.0 - p * M1 + (psi - p) * s * l / a1;
        if (!usable(den)) {
            out.finite = false;
            return out;
        }
        lo.x = ((1.0 - p) * (M1 * h.x + ((p - psi) * s * Mf1 * b / a1 + s) * h.pi) + e1) / den;
        lo.pi = (l * lo.x + Mf1 * b * (1.0 - p) * h.pi) / a1;
        lo.r = psi * lo.pi - p * lo.pi - (1.0 - p) * h.pi;
        lo.i = psi * lo.pi;
    }
    lo.mc = mcs * lo.x;

    out.finite = std::isfinite(lo.x) && std::isfinite(lo.pi) && std::isfinite(h.x) && std::isfinite(h.pi);
    out.consistent = out.finite && slack_consistent(params, lo.pi) != binds(r, 0) &&
                     slack_consistent(params, h.pi) != binds(r, 1);
    return out;
}

double low_state_price(double mf1, double mf2, double mc1, double mc2, double pi1, double pi2, double p,
                       double bt) {
    const double A = 1.0 - p * bt * mf1;
    const double B = 1.0 - bt * mf2;
    const double c = 1.0 - bt;
    return c / A * mc1 + c * (1.0 - p) * bt * mf2 / (B * A) * mc2 +
           (c * p * bt * mf1 / (A * A) + c * (1.0 - p) * p * bt * bt * mf1 * mf2 / (A * A * B)) * pi1 +
           c * (1.0 - p) * bt * mf2 / (A * B * B) * pi2;
}

Vec2 low_state_price_gradient(double mf1, double mf2, double mc1, double mc2, double pi1, double pi2, double p,
                              double bt) {
    const double A = 1.0 - p * bt * mf1;
    const double B = 1.0 - bt * mf2;
    const double c = 1.0 - bt;
    const double A2 = A * A;
    const double B2 = B * B;
    const double pi1_coef1 = c * p * bt + c * (1.0 - p) * p * bt * bt * mf2 / B;
    const double d1 = c * p * bt / A2 * mc1 + c * (1.0 - p) * bt * mf2 / B * p * bt / A2 * mc2 +
                      pi1_coef1 * (1.0 + p * bt * mf1) / (A2 * A) * pi1 +
                      c * (1.0 - p) * bt * mf2 / B2 * p * bt / A2 * pi2;
    const double d2 = c * (1.0 - p) * bt / (A * B2) * mc2 + c * (1.0 - p) * p * bt * bt * mf1 / (A2 * B2) * pi1 +
                      c * (1.0 - p) * bt * (1.0 + bt * mf2) / (A * B2 * B) * pi2;
    return {d1, d2};
}

DerivativeQuantities derivative_quantities(Regime r, const AttentionOutcomes& out, const Attentions& m,
                                           const ModelParams& params, const MarkovShock& shock,
                                           const AttentionParams& attn) {
    const double b = params.beta, p = shock.p;
    const double bt = b * attn.theta;
    const AttentionState& lo = out.s1;
    const AttentionState& h = out.s2;
    const double X1 = (1.0 - b) * lo.x - b * (lo.r - shock.eps1);
    const double X2 = (1.0 - b) * h.x - b * h.r;

    DerivativeQuantities d;
    d.high_defined = binds(r, 1) && X2 != 0.0;
    const double m2 = m[2];
    const double k1 = 1.0 - b * p * attn.m_d1;
    d.Ec1 = std::pow(b * p * (X1 * (1.0 - m2 * b) + m2 * (1.0 - p) * b * X2), 2) /
            (std::pow(k1, 4) * std::pow(1.0 - m2 * b, 2));

    double dq1 = 0.0;
    if (d.high_defined) {
        dq1 = low_state_price_gradient(attn.m_df1, m[3], lo.mc, h.mc, lo.pi, h.pi, p, bt)[0];
        const double k2 = 1.0 - b * attn.m_d2;
        d.Ec2 = std::pow(b * X2, 2) / std::pow(k2, 4);
        const double kf = 1.0 - bt * attn.m_df2;
        const double dq2 = bt * (1.0 - bt) * (h.mc * kf + h.pi * (1.0 + attn.m_df2 * bt)) / std::pow(kf, 3);
        d.Eq2 = dq2 * dq2;
    } else {
        // High-state attention is tied to the low state, so both arguments move together.
        dq1 = low_state_price_gradient(attn.m_df1, attn.m_df1, lo.mc, h.mc, lo.pi, h.pi, p, bt).sum();
        d.Ec2 = kNaN;
        d.Eq2 = kNaN;
    }
    d.Eq1 = dq1 * dq1;
    return d;
}

namespace {

AttentionOutcomes outcomes_at(Regime r, const Attentions& m, const ModelParams& params,
                              const MarkovShock& shock, const AttentionParams& attn) {
    return attention_outcomes(r, m[0], m[2], firm_discount(m[1], attn.theta, params.beta),
                              firm_discount(m[3], attn.theta, params.beta), params, shock, attn);
}

double sup_diff(const Attentions& a, const Attentions& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return std::isnan(d) ? kNaN : d;
}

bool all_finite(const Attentions& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

struct RunResult {
    Attentions m;
    bool converged = false;
    int iterations = 0;
    double residual = kNaN;
    std::vector<double> trace;
};

RunResult iterate(Regime r, Attentions m, double damping, const ModelParams& params, const MarkovShock& shock,
                  const AttentionParams& attn) {
    RunResult res;
    for (int it = 0; it < kMaxIter; ++it) {
        const Attentions g = attention_best_response(r, m, params, shock, attn);
        const double step = sup_diff(g, m);
        res.iterations = it + 1;
        if (!all_finite(g) || std::isnan(step)) break;
        res.trace.push_back(step);
        if (res.trace.size() > kTraceLen) res.trace.erase(res.trace.begin());
        if (step < kFixedPointTol) {
            res.m = m;
            res.converged = true;
            res.residual = step;
            return res;
        }
        for (std::size_t k = 0; k < 4; ++k) m[k] = (1.0 - damping) * m[k] + damping * g[k];
    }
    res.m = m;
    return res;
}

}  // namespace

Attentions attention_best_response(Regime r, const Attentions& m, const ModelParams& params,
                                   const MarkovShock& shock, const AttentionParams& attn) {
    const AttentionOutcomes out = outcomes_at(r, m, params, shock, attn);
    if (!out.finite) return {kNaN, kNaN, kNaN, kNaN};
    const DerivativeQuantities d = derivative_quantities(r, out, m, params, shock, attn);
    Attentions g;
    g[0] = optimal(attn.m_d1, attn.xi_c, d.Ec1);
    g[1] = optimal(attn.m_df1, attn.xi_f, d.Eq1);
    if (d.high_defined) {
        g[2] = optimal(attn.m_d2, attn.xi_c, d.Ec2);
        g[3] = optimal(attn.m_df2, attn.xi_f, d.Eq2);
    } else {
        g[2] = g[0];
        g[3] = g[1];
    }
    return g;
}

AttentionSolution solve_endogenous_bre(Regime r, const ModelParams& params, const MarkovShock& shock,
                                       const AttentionParams& attn) {
    check_setting(params, shock);
    attn.validate();

    const std::array<Attentions, 2> starts{Attentions{attn.m_d1, attn.m_df1, attn.m_d2, attn.m_df2},
                                           Attentions{1.0, 1.0, 1.0, 1.0}};
    std::vector<RunResult> fixed_points;
    RunResult first_failure;
    bool have_failure = false;
    for (const Attentions& start : starts) {
        RunResult run = iterate(r, start, kDamping, params, shock, attn);
        if (!run.converged) run = iterate(r, start, 1.0, params, shock, attn);
        if (run.converged) {
            const bool seen = std::any_of(fixed_points.begin(), fixed_points.end(),
                                          [&](const RunResult& f) { return sup_diff(f.m, run.m) < 1e-8; });
            if (!seen) fixed_points.push_back(run);
        } else if (!have_failure) {
            first_failure = run;
            have_failure = true;
        }
    }

    AttentionSolution sol;
    sol.regime = r;
    sol.eps1 = shock.eps1;
    const RunResult* chosen = nullptr;
    for (const RunResult& f : fixed_points) {
        if (outcomes_at(r, f.m, params, shock, attn).consistent) {
            chosen = &f;
            break;
        }
    }
    if (chosen == nullptr && !fixed_points.empty()) chosen = &fixed_points.front();
    if (chosen == nullptr) chosen = &first_failure;

    const Attentions& m = chosen->m;
    sol.m1 = m[0];
    sol.mf1 = m[1];
    sol.m2 = m[2];
    sol.mf2 = m[3];
    sol.M1 = m[0];
    sol.M2 = m[2];
    sol.Mf1 = firm_discount(m[1], attn.theta, params.beta);
    sol.Mf2 = firm_discount(m[3], attn.theta, params.beta);
    sol.outcomes = outcomes_at(r, m, params, shock, attn);
    sol.converged = chosen->converged;
    sol.exists = sol.converged && sol.outcomes.consistent;
    sol.iterations = chosen->iterations;
    sol.residual = chosen->residual;
    if (!sol.converged) sol.trace = chosen->trace;
    for (const RunResult& f : fixed_points)
        if (&f != chosen) sol.other_fixed_points.push_back(f.m);
    return sol;
}

namespace {

bool any_exists(std::span<const Regime> regimes, const ModelParams& params, MarkovShock shock,
                const AttentionParams& attn, double eps1) {
    shock.eps1 = eps1;
    return std::any_of(regimes.begin(), regimes.end(),
                       [&](Regime r) { return solve_endogenous_bre(r, params, shock, attn).exists; });
}

}  // namespace

std::optional<double> existence_boundary(std::span<const double> eps1, const std::vector<bool>& exists) {
    std::vector<std::size_t> order(eps1.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps1[a] < eps1[b]; });
    for (std::size_t k = order.size(); k-- > 1;) {
        const std::size_t below = order[k - 1];
        const std::size_t above = order[k];
        if (!exists[below] && exists[above]) return 0.5 * (eps1[below] + eps1[above]);
    }
    return std::nullopt;
}

AttentionScan attention_existence_scan(std::span<const Regime> regimes, const ModelParams& params,
                                       const MarkovShock& shock, const AttentionParams& attn,
                                       std::span<const double> eps1_grid) {
    AttentionScan scan;
    scan.eps1.assign(eps1_grid.begin(), eps1_grid.end());
    scan.rows.resize(regimes.size());
    scan.any_exists.assign(eps1_grid.size(), false);
    for (std::size_t k = 0; k < regimes.size(); ++k) {
        for (std::size_t g = 0; g < eps1_grid.size(); ++g) {
            MarkovShock s = shock;
            s.eps1 = eps1_grid[g];
            scan.rows[k].push_back(solve_endogenous_bre(regimes[k], params, s, attn));
            if (scan.rows[k].back().exists) scan.any_exists[g] = true;
        }
    }

    scan.boundary = existence_boundary(eps1_grid, scan.any_exists);
    return scan;
}

double refine_existence_boundary(std::span<const Regime> regimes, const ModelParams& params,
                                 const MarkovShock& shock, const AttentionParams& attn, double lo, double hi,
                                 double tol) {
    const bool f_lo = any_exists(regimes, params, shock, attn, lo);
    const bool f_hi = any_exists(regimes, params, shock, attn, hi);
    if (f_lo == f_hi) throw NumericFailure("existence boundary is not bracketed");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (any_exists(regimes, params, shock, attn, mid) == f_hi)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace zlb
