#pragma once

#include "zlb/model_core.hpp"

#include <string_view>
#include <optional>
#include <vector>

namespace zlb {

// Rate pegged at zero until T, then set to i_bar < 0 for one period.
struct FGConfig {
    int T = 0;
    double i_bar = -0.01;

    void validate() const;
};

struct FGPath {
    // outcomes[t] = (x_t, pi_t) for t = 0..T. Entries past the overflow guard are +-inf.
    std::vector<Vec2> outcomes;
    double dx0_diT = 0.0;
    double dpi0_diT = 0.0;
    // log|dpi0/di_T|, finite even when the derivative itself overflows.
    double log_abs_dpi0 = 0.0;
    bool overflowed = false;
};

enum class FGKind { euler_learning, ih_credible, ih_not_credible };

std::string_view to_string(FGKind k);
std::optional<FGKind> parse_fg_kind(std::string_view s);

// (M, sigma*N; M*lambda, Mf*beta + lambda*sigma*N).
Mat2 a_brz(const ModelParams& params);

double spectral_radius(const Mat2& A);

FGPath fg_path_bre(const ModelParams& params, const FGConfig& cfg);

// Impact derivatives for every horizon 0..T_max in one pass.
struct FGImpactScan {
    std::vector<double> dx0_diT;
    std::vector<double> dpi0_diT;
    std::vector<double> log_abs_dpi0;
    int overflow_from = -1;  // first T whose derivative is not representable, -1 if none
};

FGImpactScan fg_impact_scan(const ModelParams& params, int T_max);

// True iff delta >= 0.
bool puzzle_predicate(const ModelParams& params);

// (dx0/di_T, dpi0/di_T).
Vec2 fg_effect_learning(FGKind kind, const ModelParams& params, const FGConfig& cfg);

}  // namespace zlb
