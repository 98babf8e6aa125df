#include "zlb/continuous.hpp"

#include "zlb/errors.hpp"
#include "zlb/normal.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

namespace zlb {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("normal_quantile needs p in (0,1)");
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

void ContinuousShock::validate() const {
    if (!(rho_c >= 0.0 && rho_c < 1.0)) throw InvalidParameter("rho_c must lie in [0,1)");
    if (!(sigma_v > 0.0 && std::isfinite(sigma_v))) throw InvalidParameter("sigma_v must be positive");
}

double ContinuousShock::sigma_eps() const { return sigma_v / std::sqrt(1.0 - rho_c * rho_c); }

double L(double a, const ModelParams& m, const ContinuousShock& cs) {
    const double ls = m.lambda * m.sigma;
    return (-m.mu / m.psi - (1.0 + ls) * a - ls * m.mu) / (cs.sigma_eps() * m.lambda);
}

double h(double a, const ModelParams& m, const ContinuousShock& cs) {
    const double ls = m.lambda * m.sigma;
    const double d = 1.0 + ls * m.psi;
    const double z = L(a, m, cs);
    return (1.0 + ls) / d * a + normal_cdf(z) * ((1.0 + ls) * ls * m.psi / d * a + ls * m.mu) -
           normal_pdf(z) * m.lambda * m.lambda * cs.sigma_eps() * m.sigma * m.psi / d;
}

double h_prime(double a, const ModelParams& m, const ContinuousShock& cs) {
    const double ls = m.lambda * m.sigma;
    const double d = 1.0 + ls * m.psi;
    return 1.0 + ls * (1.0 - m.psi) / d + normal_cdf(L(a, m, cs)) * ls * m.psi * (1.0 + ls) / d;
}

double continuous_inflation(double a, double eps, const ModelParams& m) {
    const double ls = m.lambda * m.sigma;
    const double slack = ((1.0 + ls) * a + m.lambda * eps) / (1.0 + ls * m.psi);
    if (slack_consistent(m, slack)) return slack;
    return (1.0 + ls) * a + ls * m.mu + m.lambda * eps;
}

double a_star(const ModelParams& m, const ContinuousShock& cs) {
    m.validate();
    cs.validate();
    if (!m.taylor_principle()) throw InvalidParameter("a_star requires psi > 1");
    const double ls = m.lambda * m.sigma;
    const double z = normal_quantile((m.psi - 1.0) / ((1.0 + ls) * m.psi));
    return (-m.mu / m.psi - ls * m.mu - cs.sigma_eps() * m.lambda * z) / (1.0 + ls);
}

namespace {

// Root of g on [lo, hi] with g(lo), g(hi) of opposite signs.
template <class F>
double bisect(F g, double lo, double hi) {
    double glo = g(lo);
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ContinuousRpeResult find_rpe_continuous(const ModelParams& m, const ContinuousShock& cs) {
    ContinuousRpeResult res;
    res.a_star = a_star(m, cs);
    const auto g = [&](double a) { return h(a, m, cs) - a; };
    res.h_at_star_minus_star = g(res.a_star);
    if (res.h_at_star_minus_star < 0.0) return res;
    if (res.h_at_star_minus_star == 0.0) {
        res.fixed_points = {res.a_star};
        res.binding_probabilities = {normal_cdf(L(res.a_star, m, cs))};
        return res;
    }

    double A = std::max(1e-3, std::abs(res.a_star));
    int doublings = 0;
    while (!(g(res.a_star - A) < 0.0 && g(res.a_star + A) < 0.0)) {
        if (++doublings > 200) throw NumericFailure("continuous RPE: bracket expansion failed");
        A *= 2.0;
    }
    res.fixed_points = {bisect(g, res.a_star - A, res.a_star), bisect(g, res.a_star, res.a_star + A)};
    for (double a : res.fixed_points) res.binding_probabilities.push_back(normal_cdf(L(a, m, cs)));
    return res;
}

}  // namespace zlb
