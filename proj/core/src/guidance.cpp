#include "zlb/guidance.hpp"

#include "zlb/errors.hpp"

#include <cmath>
#include <complex>

namespace zlb {

namespace {

constexpr double kGuard = 1e150;

// Tracks v * exp(log_scale) without overflowing.
struct ScaledVec {
    Vec2 v;
    double log_scale = 0.0;

    void step(const Mat2& A) {
        v = A * v;
        const double n = v.cwiseAbs().maxCoeff();
        if (n > kGuard) {
            log_scale += std::log(n);
            v /= n;
        }
    }
    double value(int k) const { return v[k] * std::exp(log_scale); }
    double log_abs(int k) const { return std::log(std::abs(v[k])) + log_scale; }
};

}  // namespace

void FGConfig::validate() const {
    if (T < 0) throw InvalidParameter("forward guidance horizon T must be >= 0");
    if (!(i_bar < 0.0)) throw InvalidParameter("forward guidance i_bar must be negative");
}

std::string_view to_string(FGKind k) {
    switch (k) {
        case FGKind::euler_learning: return "euler-learning";
        case FGKind::ih_credible: return "ih-credible";
        case FGKind::ih_not_credible: return "ih-not-credible";
    }
    return "?";
}

std::optional<FGKind> parse_fg_kind(std::string_view s) {
    for (FGKind k : {FGKind::euler_learning, FGKind::ih_credible, FGKind::ih_not_credible})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

Mat2 a_brz(const ModelParams& m) {
    Mat2 A;
    A << m.M, m.sigma * m.N, m.M * m.lambda, m.Mf * m.beta + m.lambda * m.sigma * m.N;
    return A;
}

double spectral_radius(const Mat2& A) {
    const std::complex<double> tr = A.trace();
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * A.determinant());
    return std::max(std::abs(0.5 * (tr + disc)), std::abs(0.5 * (tr - disc)));
}

FGPath fg_path_bre(const ModelParams& params, const FGConfig& cfg) {
    params.validate();
    cfg.validate();
    const Mat2 A = a_brz(params);

    FGPath path;
    path.outcomes.resize(static_cast<std::size_t>(cfg.T) + 1);
    ScaledVec y{Vec2(-params.sigma * cfg.i_bar, -params.lambda * params.sigma * cfg.i_bar)};
    for (int j = 0; j <= cfg.T; ++j) {
        if (j > 0) y.step(A);
        path.outcomes[static_cast<std::size_t>(cfg.T - j)] = Vec2(y.value(0), y.value(1));
    }
    path.dx0_diT = y.value(0) / cfg.i_bar;
    path.dpi0_diT = y.value(1) / cfg.i_bar;
    path.log_abs_dpi0 = y.log_abs(1) - std::log(-cfg.i_bar);
    path.overflowed = !std::isfinite(path.dpi0_diT) || !std::isfinite(path.dx0_diT);
    return path;
}

FGImpactScan fg_impact_scan(const ModelParams& params, int T_max) {
    params.validate();
    if (T_max < 0) throw InvalidParameter("T_max must be >= 0");
    const Mat2 A = a_brz(params);
    FGImpactScan scan;
    ScaledVec d{Vec2(-params.sigma, -params.lambda * params.sigma)};
    for (int T = 0; T <= T_max; ++T) {
        if (T > 0) d.step(A);
        const double dx = d.value(0);
        const double dpi = d.value(1);
        if (scan.overflow_from < 0 && !(std::isfinite(dx) && std::isfinite(dpi))) scan.overflow_from = T;
        scan.dx0_diT.push_back(dx);
        scan.dpi0_diT.push_back(dpi);
        scan.log_abs_dpi0.push_back(d.log_abs(1));
    }
    return scan;
}

bool puzzle_predicate(const ModelParams& params) {
    params.validate();
    return delta(params) >= 0.0;
}

Vec2 fg_effect_learning(FGKind kind, const ModelParams& params, const FGConfig& cfg) {
    params.validate();
    cfg.validate();
    if (kind != FGKind::ih_credible) return Vec2::Zero();
    const double bT = std::pow(params.beta, cfg.T);
    return Vec2(-params.sigma * bT, -params.lambda * params.sigma * bT);
}

}  // namespace zlb
