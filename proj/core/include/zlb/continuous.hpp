#pragma once

#include "zlb/model_core.hpp"

#include <vector>

namespace zlb {

// eps_t = rho_c * eps_{t-1} + v_t, v_t ~ N(0, sigma_v^2).
struct ContinuousShock {
    double rho_c = 0.8;
    double sigma_v = 0.1;

    void validate() const;
    double sigma_eps() const;
};

struct ContinuousRpeResult {
    double a_star = 0.0;
    double h_at_star_minus_star = 0.0;
    std::vector<double> fixed_points;            // ascending; empty or two roots
    std::vector<double> binding_probabilities;  // Pr(ZLB binds) at each fixed point
};

// Standardized shock value below which the ZLB binds, given mean belief a_pi.
double L(double a_pi, const ModelParams& params, const ContinuousShock& cs);

// Unconditional mean of inflation implied by the belief a_pi.
double h(double a_pi, const ModelParams& params, const ContinuousShock& cs);
double h_prime(double a_pi, const ModelParams& params, const ContinuousShock& cs);

// Inflation in period t under belief a_pi and shock eps.
double continuous_inflation(double a_pi, double eps, const ModelParams& params);

// Maximizer of h(a) - a. Requires psi > 1.
double a_star(const ModelParams& params, const ContinuousShock& cs);

ContinuousRpeResult find_rpe_continuous(const ModelParams& params, const ContinuousShock& cs);

}  // namespace zlb
