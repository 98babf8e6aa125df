#include "zlb/learning.hpp"

#include "zlb/estability.hpp"
#include "zlb/rng.hpp"

#include <cmath>

namespace zlb {

std::string_view to_string(BeliefKind k) {
    return k == BeliefKind::rpe_mean ? "rpe-mean" : "msv";
}

std::optional<BeliefKind> parse_belief_kind(std::string_view s) {
    if (s == "rpe-mean") return BeliefKind::rpe_mean;
    if (s == "msv" || s == "msv-state-contingent") return BeliefKind::msv;
    return std::nullopt;
}

double GainSpec::at(std::int64_t t) const {
    if (kind == Kind::constant) {
        if (!(value > 0.0 && value <= 1.0)) throw InvalidParameter("constant gain must lie in (0,1]");
        return value;
    }
    if (t < 1) throw InvalidParameter("decreasing gain needs t >= 1");
    return 1.0 / static_cast<double>(t);
}

double BeliefState::max_abs_pi() const {
    if (kind == BeliefKind::rpe_mean) return std::abs(Ye(1));
    return std::max(std::abs(Ye(1)), std::abs(Ye(3)));
}

namespace {

StateOutcome temp_eq(const StructuralMatrices& sm, const ModelParams& prm, const Vec2& Ye, double eps) {
    const Vec2 ys = sm.A_P * Ye + sm.B_P(eps);
    if (slack_consistent(prm, ys(1))) return {ys(0), ys(1), prm.psi * ys(1)};
    const Vec2 yz = sm.A_Z * Ye + sm.B_Z(eps);
    return {yz(0), yz(1), -prm.mu};
}

Vec2 forecast_with(const BeliefState& st, int s, const Mat2& K) {
    if (st.kind == BeliefKind::rpe_mean) return st.mean();
    return K(s, 0) * st.state_belief(0) + K(s, 1) * st.state_belief(1);
}

void update_in_place(BeliefState& st, const StateOutcome& y, int obs) {
    st.t += 1;
    const double g = st.gain.at(st.t);
    const Vec2 Y(y.x, y.pi);
    if (st.kind == BeliefKind::rpe_mean) {
        st.Ye.head<2>() += g * (Y - st.mean());
        return;
    }
    if (!(st.nu(obs) > 0.0))
        throw CounterZero("msv update of a state with zero occupancy share");
    st.Ye.segment<2>(2 * obs) += (g / st.nu(obs)) * (Y - st.state_belief(obs));
    Vec2 ind = Vec2::Zero();
    ind(obs) = 1.0;
    st.nu += g * (ind - st.nu);
}

struct ContemporaneousResult {
    StateOutcome y;
    bool found = false;
    bool multiple = false;
};

// k = 0: the forecast is F0 + c*Y_t, so each branch is a linear system in Y_t.
ContemporaneousResult solve_contemporaneous(const BeliefState& st, int s, const StructuralMatrices& sm,
                                            const ModelParams& prm, double eps) {
    const double g = st.gain.at(st.t + 1);
    Vec2 F0;
    double c;
    if (st.kind == BeliefKind::rpe_mean) {
        F0 = (1.0 - g) * st.mean();
        c = g;
    } else {
        if (!(st.nu(s) > 0.0))
            throw CounterZero("msv update of a state with zero occupancy share");
        const double w = g / st.nu(s);
        const int o = 1 - s;
        F0 = sm.K(s, s) * (1.0 - w) * st.state_belief(s) + sm.K(s, o) * st.state_belief(o);
        c = sm.K(s, s) * w;
    }
    ContemporaneousResult res;
    const Mat2 I = Mat2::Identity();
    const Mat2 Ms = I - c * sm.A_P;
    if (!near_singular(Ms)) {
        const Vec2 y = Ms.partialPivLu().solve(sm.A_P * F0 + sm.B_P(eps));
        if (slack_consistent(prm, y(1))) {
            res.y = {y(0), y(1), prm.psi * y(1)};
            res.found = true;
        }
    }
    const Mat2 Mz = I - c * sm.A_Z;
    if (!near_singular(Mz)) {
        const Vec2 y = Mz.partialPivLu().solve(sm.A_Z * F0 + sm.B_Z(eps));
        if (!slack_consistent(prm, y(1))) {
            if (res.found)
                res.multiple = true;
            else
                res = {StateOutcome{y(0), y(1), -prm.mu}, true, false};
        }
    }
    return res;
}

}  // namespace

StateOutcome temp_equilibrium(const Vec2& Ye, double eps, const ModelParams& params) {
    return temp_eq(build_matrices(params, MarkovShock{}), params, Ye, eps);
}

Vec2 forecast(const BeliefState& st, int next_state, const MarkovShock& shock) {
    return forecast_with(st, next_state, transition_matrix(shock.p, shock.q));
}

std::pair<BeliefState, Vec2> step_learning(const BeliefState& st, const StateOutcome& observed,
                                           int observed_state, int next_state,
                                           const MarkovShock& shock) {
    BeliefState next = st;
    update_in_place(next, observed, observed_state);
    return {next, forecast(next, next_state, shock)};
}

double default_divergence_bound(const ModelParams& params, const MarkovShock& shock) {
    const Concept c = params.unit_discounts() ? Concept::RPE : Concept::BRRPE;
    for (const auto& s : enumerate_equilibria(c, params, shock))
        if (s.regime == Regime::ZP)
            return 1e3 * std::max({1.0, std::abs(s.Y1.pi), std::abs(s.Y2.pi)});
    return 1e3;
}

BeliefState rpe_initial_beliefs(BeliefKind kind, const ModelParams& params,
                                const MarkovShock& shock, GainSpec gain, int info_lag) {
    const Concept c = params.unit_discounts() ? Concept::RPE : Concept::BRRPE;
    const auto cl = classify(c, params, shock);
    if (!cl) throw NumericFailure("no E-stable RPE to initialize beliefs");
    const double qbar = ergodic_weight(shock);
    const Vec2 Y1(cl->solution.Y1.x, cl->solution.Y1.pi);
    const Vec2 Y2(cl->solution.Y2.x, cl->solution.Y2.pi);

    BeliefState st;
    st.kind = kind;
    st.gain = gain;
    st.info_lag = info_lag;
    st.nu = Vec2(1.0 - qbar, qbar);
    if (kind == BeliefKind::msv) {
        st.Ye << Y1, Y2;
    } else {
        st.Ye.setZero();
        st.Ye.head<2>() = (1.0 - qbar) * Y1 + qbar * Y2;
    }
    return st;
}

SimPath simulate(const ModelParams& params, const MarkovShock& shock, const BeliefState& init,
                 const SimOptions& opt) {
    params.validate();
    shock.validate();
    if (init.info_lag != 0 && init.info_lag != 1) throw InvalidParameter("info_lag must be 0 or 1");
    if (opt.horizon < 0) throw InvalidParameter("horizon must be non-negative");

    const StructuralMatrices sm = build_matrices(params, shock);
    const CounterRng rng(opt.seed);

    SimPath path;
    path.seed = opt.seed;
    path.horizon = opt.horizon;
    path.bound = opt.divergence_bound > 0.0 ? opt.divergence_bound
                                            : default_divergence_bound(params, shock);
    if (opt.record) {
        path.shocks.reserve(opt.horizon);
        path.outcomes.reserve(opt.horizon);
        path.beliefs.reserve(opt.horizon);
    }

    int s;
    if (opt.initial_state == 0 || opt.initial_state == 1) {
        s = opt.initial_state;
    } else {
        s = rng.uniform_at(0) < 1.0 - ergodic_weight(shock) ? 0 : 1;
    }

    BeliefState st = init;
    StateOutcome prev{};
    int prev_s = s;
    for (std::int64_t t = 0; t < opt.horizon; ++t) {
        if (t > 0) s = rng.uniform_at(static_cast<std::uint64_t>(t)) < sm.K(prev_s, 0) ? 0 : 1;
        const double eps = shock.eps(s);

        StateOutcome y;
        Vec4 snapshot;
        if (st.info_lag == 1) {
            if (t > 0) update_in_place(st, prev, prev_s);
            if (st.max_abs_pi() > path.bound) {
                path.diverged_at = t + 1;
                break;
            }
            snapshot = st.Ye;
            y = temp_eq(sm, params, forecast_with(st, s, sm.K), eps);
        } else {
            snapshot = st.Ye;
            const auto res = solve_contemporaneous(st, s, sm, params, eps);
            if (res.found) {
                y = res.y;
                if (res.multiple) ++path.multiple_solution_events;
            } else {
                ++path.no_solution_events;
                y = temp_eq(sm, params, forecast_with(st, s, sm.K), eps);
            }
            update_in_place(st, y, s);
            if (st.max_abs_pi() > path.bound) {
                path.diverged_at = t + 1;
                break;
            }
        }

        if (opt.record) {
            path.shocks.push_back(static_cast<std::uint8_t>(s));
            path.outcomes.push_back(y);
            path.beliefs.push_back(snapshot);
        }
        ++path.T_len;
        prev = y;
        prev_s = s;
    }
    path.final_state = st;
    return path;
}

}  // namespace zlb
