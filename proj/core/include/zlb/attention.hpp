#pragma once

#include "zlb/equilibrium.hpp"
#include "zlb/model_core.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace zlb {

// Smaller root of (1 - beta*theta)(1 - theta)/theta = slope.
double calvo_theta(double slope, double beta);
double calvo_slope(double theta, double beta);

struct AttentionParams {
    double xi_c = 0.01;
    double xi_f = 0.01;
    double m_d1 = 0.7;
    double m_d2 = 0.7;
    double m_df1 = 0.7;
    double m_df2 = 0.7;
    double theta = 10.0 / 11.0;
    double phi_labor = 1.0;

    void validate() const;

    // theta from the Phillips-curve slope lambda = kappa*(phi + sigma).
    static AttentionParams calibrated(const ModelParams& params, double phi_labor = 1.0);
};

// Order used by every 4-vector of attentions: (m1, mf1, m2, mf2).
using Attentions = std::array<double, 4>;

struct AttentionState {
    double x = 0.0;
    double pi = 0.0;
    double i = 0.0;
    double r = 0.0;
    double mc = 0.0;
};

struct AttentionOutcomes {
    AttentionState s1;
    AttentionState s2;
    bool finite = true;
    bool consistent = false;
};

struct DerivativeQuantities {
    double Ec1 = 0.0;  // E[(dc/dm1)^2]
    double Eq1 = 0.0;  // E[(dq/dmf1)^2]
    double Ec2 = 0.0;  // E[(dc/dm2)^2], NaN when the high state is inactive
    double Eq2 = 0.0;
    bool high_defined = true;
};

struct AttentionSolution {
    Regime regime = Regime::PP;
    double eps1 = 0.0;
    double m1 = 0.0, m2 = 0.0, mf1 = 0.0, mf2 = 0.0;
    double M1 = 0.0, M2 = 0.0, Mf1 = 0.0, Mf2 = 0.0;
    AttentionOutcomes outcomes;
    bool converged = false;
    bool exists = false;
    int iterations = 0;
    double residual = 0.0;
    // Further converged fixed points reached from other starting values.
    std::vector<Attentions> other_fixed_points;
    // Sup-norm step sizes of the last iterations when convergence failed.
    std::vector<double> trace;
};

// Cognitive discount implied by a firm attention level.
double firm_discount(double mf, double theta, double beta);

// Outcomes in both states for given discounts. q = 1 and eps2 = 0 are assumed.
AttentionOutcomes attention_outcomes(Regime r, double M1, double M2, double Mf1, double Mf2,
                                     const ModelParams& params, const MarkovShock& shock,
                                     const AttentionParams& attn);

// Low-state relative price as a function of firm attentions and outcomes.
double low_state_price(double mf1, double mf2, double mc1, double mc2, double pi1, double pi2,
                       double p, double beta_theta);

// Gradient of low_state_price in (mf1, mf2).
Vec2 low_state_price_gradient(double mf1, double mf2, double mc1, double mc2, double pi1, double pi2,
                              double p, double beta_theta);

DerivativeQuantities derivative_quantities(Regime r, const AttentionOutcomes& out, const Attentions& m,
                                           const ModelParams& params, const MarkovShock& shock,
                                           const AttentionParams& attn);

// One application of the best-response map.
Attentions attention_best_response(Regime r, const Attentions& m, const ModelParams& params,
                                   const MarkovShock& shock, const AttentionParams& attn);

AttentionSolution solve_endogenous_bre(Regime r, const ModelParams& params, const MarkovShock& shock,
                                       const AttentionParams& attn);

struct AttentionScan {
    std::vector<double> eps1;
    // rows[k][g]: regime k at grid point g.
    std::vector<std::vector<AttentionSolution>> rows;
    std::vector<bool> any_exists;
    // Midpoint of the highest false -> true transition in eps1, if any.
    std::optional<double> boundary;
};

// Midpoint of the highest false -> true switch of `exists` along ascending eps1.
std::optional<double> existence_boundary(std::span<const double> eps1, const std::vector<bool>& exists);

AttentionScan attention_existence_scan(std::span<const Regime> regimes, const ModelParams& params,
                                       const MarkovShock& shock, const AttentionParams& attn,
                                       std::span<const double> eps1_grid);

// Bisection on eps1 in [lo, hi] for the existence switch; exists(hi) != exists(lo) required.
double refine_existence_boundary(std::span<const Regime> regimes, const ModelParams& params,
                                 const MarkovShock& shock, const AttentionParams& attn, double lo,
                                 double hi, double tol = 1e-9);

}  // namespace zlb
