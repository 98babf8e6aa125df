#pragma once

#include "zlb/model_core.hpp"

#include <array>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace zlb {

// First letter: low state (eps1), second: high state (eps2). P = slack, Z = binding.
enum class Regime { PP, ZP, PZ, ZZ };
enum class Concept { REE, RPE, BRE, BRRPE, LEE };
enum class Degeneracy { none, continuum, nonexistent_singular };
enum class CutoffBranch { finite, minus_infinity_q1, minus_infinity_delta };

inline constexpr std::array<Regime, 4> kAllRegimes{Regime::PP, Regime::ZP, Regime::PZ, Regime::ZZ};

constexpr bool binds(Regime r, int state) {
    switch (r) {
        case Regime::PP: return false;
        case Regime::ZP: return state == 0;
        case Regime::PZ: return state == 1;
        case Regime::ZZ: return true;
    }
    return false;
}

std::string_view to_string(Regime r);
std::string_view to_string(Concept c);
std::string_view to_string(Degeneracy d);
std::string_view to_string(CutoffBranch b);
std::optional<Regime> parse_regime(std::string_view s);
std::optional<Concept> parse_concept(std::string_view s);

struct CandidateSolution {
    Regime regime = Regime::PP;
    Concept concept_type = Concept::REE;
    StateOutcome Y1;
    StateOutcome Y2;
    bool consistent = false;
    Degeneracy degenerate = Degeneracy::none;

    const StateOutcome& Y(int state) const { return state == 0 ? Y1 : Y2; }
};

struct CutoffReport {
    Concept concept_type = Concept::REE;
    double eps_bar = 0.0;
    double eps_PP = 0.0;
    double eps_ZP2 = 0.0;
    double delta = 0.0;
    CutoffBranch branch = CutoffBranch::finite;
};

struct EffectiveChain {
    double p;
    double q;
};

// REE/BRE/LEE keep (p, q); RPE/BRRPE use (1 - qbar, qbar).
EffectiveChain effective_transition(Concept c, const MarkovShock& shock);

// REE, RPE and LEE force M = Mf = N = 1.
ModelParams effective_params(Concept c, const ModelParams& params);

CandidateSolution solve_candidate(Concept c, Regime r, const ModelParams& params,
                                  const MarkovShock& shock);

// Consistent candidates only. Empty means no equilibrium.
std::vector<CandidateSolution> enumerate_equilibria(Concept c, const ModelParams& params,
                                                    const MarkovShock& shock);

bool exists(Concept c, const ModelParams& params, const MarkovShock& shock);

// eps1 of the shock is ignored. Not defined for LEE.
CutoffReport cutoff_components(Concept c, const ModelParams& params, const MarkovShock& shock);

// (eps_bar_REE >= eps_bar_RPE) <=> (p + q >= 1). Requires q < 1.
bool cutoff_ordering_check(const ModelParams& params, const MarkovShock& shock);

// Output in the binding low state when agents expect reversion to zero inflation
// in state 2: (sigma*mu + eps1) / (1 - pr*nu(pr)).
double binding_output(const ModelParams& params, double pr, double eps1);

// Lagged-information equilibrium for q = 1, eps2 = 0 (expectations weight p^2).
CandidateSolution lee_solution(const ModelParams& params, const MarkovShock& shock);

// Infinity norm of (I - (1+lambda*sigma)Kt) pi + lambda*sigma*i - lambda*eps for an RPE.
double ih_rpe_residual(const CandidateSolution& rpe, const ModelParams& params,
                       const MarkovShock& shock);

bool verify_ih_rpe_equivalence(const ModelParams& params, const MarkovShock& shock,
                               double tol = 1e-8);

inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPlusInf = std::numeric_limits<double>::infinity();

}  // namespace zlb
