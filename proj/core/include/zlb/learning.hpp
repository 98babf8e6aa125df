#pragma once

#include "zlb/equilibrium.hpp"
#include "zlb/errors.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace zlb {

enum class BeliefKind { rpe_mean, msv };

std::string_view to_string(BeliefKind k);
std::optional<BeliefKind> parse_belief_kind(std::string_view s);

class CounterZero : public Error {
public:
    using Error::Error;
};

struct GainSpec {
    enum class Kind { decreasing, constant };
    Kind kind = Kind::decreasing;
    double value = 0.0;  // constant gain; ignored for decreasing (1/t)

    static GainSpec decreasing() { return {Kind::decreasing, 0.0}; }
    static GainSpec constant(double g) { return {Kind::constant, g}; }
    double at(std::int64_t t) const;
};

struct BeliefState {
    BeliefKind kind = BeliefKind::rpe_mean;
    // rpe-mean: (x^e, pi^e, -, -); msv: (x^e_1, pi^e_1, x^e_2, pi^e_2).
    Vec4 Ye = Vec4::Zero();
    Vec2 nu = Vec2(0.5, 0.5);  // occupancy shares, msv only
    std::int64_t t = 0;        // number of updates performed
    GainSpec gain;
    int info_lag = 1;  // k in {0, 1}

    Vec2 mean() const { return Ye.head<2>(); }
    Vec2 state_belief(int j) const { return Ye.segment<2>(2 * j); }
    double max_abs_pi() const;
};

// Market-clearing outcome given predetermined expectations (x^e, pi^e).
// Slack branch first; the binding branch takes ties.
StateOutcome temp_equilibrium(const Vec2& Ye, double eps, const ModelParams& params);

// Forecast used in state `next_state` (0-based).
Vec2 forecast(const BeliefState& st, int next_state, const MarkovShock& shock);

// Lagged-information update with the observation from `observed_state`,
// then the forecast for `next_state`.
std::pair<BeliefState, Vec2> step_learning(const BeliefState& st, const StateOutcome& observed,
                                           int observed_state, int next_state,
                                           const MarkovShock& shock);

struct SimOptions {
    std::int64_t horizon = 200000;
    std::uint64_t seed = 0;
    int initial_state = -1;             // -1: draw from the stationary distribution
    double divergence_bound = 0.0;      // <= 0: default_divergence_bound
    bool record = true;                 // keep per-period outcomes and beliefs
};

struct SimPath {
    std::uint64_t seed = 0;
    std::int64_t horizon = 0;  // requested
    std::int64_t T_len = 0;    // realized (shorter when the run diverged)
    std::vector<std::uint8_t> shocks;
    std::vector<StateOutcome> outcomes;
    std::vector<Vec4> beliefs;  // snapshot used for each period's forecast
    std::optional<std::int64_t> diverged_at;
    double bound = 0.0;
    std::int64_t no_solution_events = 0;        // k = 0 only
    std::int64_t multiple_solution_events = 0;  // k = 0 only
    BeliefState final_state;
};

// 1e3 * max(1, |pi| of the ZP RPE), or 1e3 when no ZP RPE exists.
double default_divergence_bound(const ModelParams& params, const MarkovShock& shock);

// Beliefs at the E-stable RPE: state-contingent values for msv, their ergodic mean
// for rpe-mean. Throws NumericFailure when no E-stable RPE exists.
BeliefState rpe_initial_beliefs(BeliefKind kind, const ModelParams& params,
                                const MarkovShock& shock, GainSpec gain, int info_lag = 1);

SimPath simulate(const ModelParams& params, const MarkovShock& shock, const BeliefState& init,
                 const SimOptions& opt);

}  // namespace zlb
