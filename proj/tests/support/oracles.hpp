#pragma once

// Reference computations used only by the test suites. They rebuild each quantity from
// the structural equations instead of reusing the library's reduced forms.

#include <zlb/equilibrium.hpp>
#include <zlb/rng.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace oracle {

using zlb::Concept;
using zlb::MarkovShock;
using zlb::ModelParams;
using zlb::Regime;

struct Draw {
    ModelParams params;
    MarkovShock shock;
};

// Parameter draws inside the solver's domain. Counters are spaced per draw.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed, 3) {}

    double u(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }

    Draw draw(bool bounded_rationality, double q_max = 0.99) {
        Draw d;
        d.params.beta = u(0.95, 0.995);
        d.params.sigma = u(0.5, 2.0);
        d.params.lambda = u(0.01, 0.2);
        d.params.psi = u(1.05, 3.0);
        if (bounded_rationality) {
            d.params.M = u(0.7, 1.0);
            d.params.Mf = u(0.7, 1.0);
            d.params.N = u(0.7, 1.0);
        }
        d.shock.p = u(0.3, 0.99);
        d.shock.q = u(0.3, q_max);
        d.shock.eps2 = u(0.0, 0.02);
        d.shock.eps1 = u(-0.1, 0.0);
        return d;
    }

private:
    zlb::CounterRng rng_;
};

inline Eigen::Matrix2d chain(Concept c, const MarkovShock& s) {
    Eigen::Matrix2d K;
    if (c == Concept::RPE || c == Concept::BRRPE) {
        const double qbar = s.q == 1.0 ? 1.0 : (1.0 - s.p) / (2.0 - s.p - s.q);
        K << 1.0 - qbar, qbar, 1.0 - qbar, qbar;
    } else {
        K << s.p, 1.0 - s.p, 1.0 - s.q, s.q;
    }
    return K;
}

inline ModelParams discounts(Concept c, ModelParams m) {
    if (c == Concept::REE || c == Concept::RPE || c == Concept::LEE) m.M = m.Mf = m.N = 1.0;
    return m;
}

struct Candidate {
    Eigen::Vector4d Y;  // (x1, pi1, x2, pi2)
    bool consistent = false;
    bool solvable = true;
};

// Stacks the IS curve, Phillips curve and policy branch for both states into one 4x4 system.
inline Candidate brute_force(Concept c, Regime r, const ModelParams& params, const MarkovShock& s) {
    const ModelParams m = discounts(c, params);
    const Eigen::Matrix2d K = chain(c, s);
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    Eigen::Vector4d b = Eigen::Vector4d::Zero();
    for (int j = 0; j < 2; ++j) {
        const int x = 2 * j, pi = 2 * j + 1;
        const bool bind = zlb::binds(r, j);
        const double eps = j == 0 ? s.eps1 : s.eps2;
        // x_j - M*sum_k K(j,k) x_k + sigma*i_j - sigma*N*sum_k K(j,k) pi_k = eps_j
        A(x, x) += 1.0;
        for (int k = 0; k < 2; ++k) {
            A(x, 2 * k) -= m.M * K(j, k);
            A(x, 2 * k + 1) -= m.sigma * m.N * K(j, k);
        }
        if (bind)
            b(x) = eps + m.sigma * m.mu;
        else {
            A(x, pi) += m.sigma * m.psi;
            b(x) = eps;
        }
        // pi_j - lambda*x_j - Mf*beta*sum_k K(j,k) pi_k = 0
        A(pi, pi) += 1.0;
        A(pi, x) -= m.lambda;
        for (int k = 0; k < 2; ++k) A(pi, 2 * k + 1) -= m.Mf * m.beta * K(j, k);
    }
    Candidate out;
    Eigen::FullPivLU<Eigen::Matrix4d> lu(A);
    if (!lu.isInvertible()) {
        out.solvable = false;
        return out;
    }
    out.Y = lu.solve(b);
    out.consistent = true;
    for (int j = 0; j < 2; ++j) {
        const bool slack = m.psi * out.Y(2 * j + 1) > -m.mu;
        if (slack == zlb::binds(r, j)) out.consistent = false;
    }
    return out;
}

inline bool any_consistent(Concept c, const ModelParams& params, const MarkovShock& s) {
    for (Regime r : zlb::kAllRegimes)
        if (brute_force(c, r, params, s).consistent) return true;
    return false;
}

// Boundary of {eps1 : an equilibrium exists} by bisection, given a bracket with
// exists(lo) false and exists(hi) true. NaN when the bracket is invalid.
inline double bisect_cutoff(Concept c, const ModelParams& params, MarkovShock s, double lo, double hi) {
    auto f = [&](double e) {
        s.eps1 = e;
        return any_consistent(c, params, s);
    };
    if (f(lo) || !f(hi)) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Existence boundary located without the closed forms: expand a bracket, then bisect.
// -inf when an equilibrium still exists at eps1 = -1e6.
inline double cutoff(Concept c, const ModelParams& params, MarkovShock s) {
    double hi = 0.0;
    s.eps1 = hi;
    while (!any_consistent(c, params, s) && hi < 10.0) s.eps1 = (hi += 0.1);
    double lo = -0.1;
    s.eps1 = lo;
    while (any_consistent(c, params, s) && lo > -1e6) s.eps1 = (lo *= 2.0);
    if (any_consistent(c, params, s)) return -std::numeric_limits<double>::infinity();
    return bisect_cutoff(c, params, s, lo, hi);
}

// Temporary equilibrium on a fixed branch, solved from the structural equations.
inline Eigen::Vector2d branch_outcome(bool bind, double xe, double pie, double eps, const ModelParams& m) {
    // x + sigma*psi*pi = M*xe + sigma*N*pie + eps (slack), pi - lambda*x = Mf*beta*pie
    Eigen::Matrix2d A;
    Eigen::Vector2d b;
    if (bind) {
        A << 1.0, 0.0, -m.lambda, 1.0;
        b << m.M * xe + m.sigma * m.N * pie + eps + m.sigma * m.mu, m.Mf * m.beta * pie;
    } else {
        A << 1.0, m.sigma * m.psi, -m.lambda, 1.0;
        b << m.M * xe + m.sigma * m.N * pie + eps, m.Mf * m.beta * pie;
    }
    return A.fullPivLu().solve(b);
}

// Central-difference Jacobian of T(a) - a for state-contingent (msv) beliefs.
inline Eigen::Matrix4d fd_jacobian_msv(Regime r, const ModelParams& m, double p, double q, double h = 1e-6) {
    Eigen::Matrix2d K;
    K << p, 1.0 - p, 1.0 - q, q;
    auto T = [&](const Eigen::Vector4d& a) {
        Eigen::Vector4d out;
        for (int j = 0; j < 2; ++j) {
            const Eigen::Vector2d f = K(j, 0) * a.head<2>() + K(j, 1) * a.tail<2>();
            out.segment<2>(2 * j) = branch_outcome(zlb::binds(r, j), f(0), f(1), 0.0, m);
        }
        return out;
    };
    Eigen::Matrix4d J;
    const Eigen::Vector4d a0 = Eigen::Vector4d::Zero();
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector4d e = Eigen::Vector4d::Zero();
        e(k) = h;
        J.col(k) = (T(a0 + e) - T(a0 - e)) / (2.0 * h);
    }
    return J - Eigen::Matrix4d::Identity();
}

inline Eigen::Matrix2d fd_jacobian_rpe(Regime r, const ModelParams& m, double qbar, double h = 1e-6) {
    auto T = [&](const Eigen::Vector2d& a) {
        return Eigen::Vector2d((1.0 - qbar) * branch_outcome(zlb::binds(r, 0), a(0), a(1), 0.0, m) +
                               qbar * branch_outcome(zlb::binds(r, 1), a(0), a(1), 0.0, m));
    };
    Eigen::Matrix2d J;
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d e = Eigen::Vector2d::Zero();
        e(k) = h;
        J.col(k) = (T(e) - T(-e)) / (2.0 * h);
    }
    return J - Eigen::Matrix2d::Identity();
}

// Characteristic polynomial by Faddeev-LeVerrier (monic, highest degree first),
// roots by Durand-Kerner.
inline std::vector<std::complex<double>> charpoly_roots(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    Eigen::MatrixXd Mk = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        Mk = A * Mk + c[k - 1] * I;
        c[k] = -(A * Mk).trace() / k;
    }
    std::vector<std::complex<double>> z(n);
    const std::complex<double> seed(0.4, 0.9);
    for (int k = 0; k < n; ++k) z[k] = std::pow(seed, k);
    auto poly = [&](std::complex<double> x) {
        std::complex<double> v = 0.0;
        for (double ck : c) v = v * x + ck;
        return v;
    };
    for (int it = 0; it < 2000; ++it) {
        double change = 0.0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> den = 1.0;
            for (int l = 0; l < n; ++l)
                if (l != k) den *= z[k] - z[l];
            const std::complex<double> step = poly(z[k]) / den;
            z[k] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15) break;
    }
    return z;
}

inline double max_real(const std::vector<std::complex<double>>& ev) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& e : ev) m = std::max(m, e.real());
    return m;
}

}  // namespace oracle
