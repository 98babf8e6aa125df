#include "zlbcli/commands.hpp"

#include <zlb/attention.hpp>
#include <zlb/continuous.hpp>
#include <zlb/errors.hpp>
#include <zlb/estability.hpp>
#include <zlb/guidance.hpp>
#include <zlb/learning.hpp>
#include <zlb/normal.hpp>
#include <zlb/rng.hpp>

#include <spdlog/spdlog.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <cmath>
#include <limits>

#ifndef ZLB_VERSION
#define ZLB_VERSION "unknown"
#endif

namespace zlbcli {

using nlohmann::json;
using zlb::Concept;
using zlb::Regime;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
void for_cells(std::size_t n, int workers, F&& f) {
    tbb::task_arena arena(workers > 0 ? workers : tbb::task_arena::automatic);
    arena.execute([&] { tbb::parallel_for(std::size_t{0}, n, [&](std::size_t k) { f(k); }); });
}

// JSON has no infinities; mirror the CSV spelling.
json jnum(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "+inf" : "-inf";
}

Cell flag(bool b) { return std::int64_t{b ? 1 : 0}; }

std::string cname(Concept c) { return std::string(zlb::to_string(c)); }

const GridAxis& single_axis(const RunConfig& c, std::string_view variable) {
    if (c.grid.size() != 1 || c.grid[0].variable != variable)
        throw ConfigError(std::string(to_string(c.command)) + " needs exactly one grid axis over " +
                          std::string(variable));
    return c.grid[0];
}

struct Cartesian {
    std::vector<std::vector<double>> axes;
    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& a : axes) n *= a.size();
        return n;
    }
    // First axis varies slowest.
    std::vector<double> at(std::size_t k) const {
        std::vector<double> v(axes.size());
        for (std::size_t d = axes.size(); d-- > 0;) {
            v[d] = axes[d][k % axes[d].size()];
            k /= axes[d].size();
        }
        return v;
    }
};

}  // namespace

ScanResult solve(const RunConfig& c) {
    ScanResult out;
    out.header = {"concept", "regime", "consistent", "degenerate", "estable", "max_real_part",
                  "x1", "pi1", "i1", "x2", "pi2", "i2"};
    json report = json::object();
    for (Concept con : c.concepts) {
        json entry = {{"equilibria", json::array()}, {"estable", json::array()}};
        auto add = [&](const zlb::CandidateSolution& s, Cell estable, Cell mrp) {
            out.add_row({cname(con), std::string(zlb::to_string(s.regime)), flag(s.consistent),
                         std::string(zlb::to_string(s.degenerate)), estable, mrp, s.Y1.x, s.Y1.pi, s.Y1.i,
                         s.Y2.x, s.Y2.pi, s.Y2.i});
            if (s.consistent) entry["equilibria"].push_back(std::string(zlb::to_string(s.regime)));
        };
        if (con == Concept::LEE) {
            if (c.shock.q != 1.0 || c.shock.eps2 != 0.0) {
                entry["skipped"] = "LEE requires q = 1 and eps2 = 0";
            } else {
                add(zlb::lee_solution(c.params, c.shock), {}, {});
            }
            report[cname(con)] = entry;
            continue;
        }
        for (Regime r : zlb::kAllRegimes) {
            const auto s = zlb::solve_candidate(con, r, c.params, c.shock);
            if (s.consistent) {
                const auto v = zlb::assess(con, r, c.params, c.shock);
                add(s, flag(v.estable), v.max_real_part);
                if (v.estable) entry["estable"].push_back(std::string(zlb::to_string(r)));
            } else {
                add(s, {}, {});
            }
        }
        const auto cut = zlb::cutoff_components(con, c.params, c.shock);
        entry["cutoff"] = {{"eps_bar", jnum(cut.eps_bar)}, {"eps_PP", jnum(cut.eps_PP)},
                           {"eps_ZP2", jnum(cut.eps_ZP2)}, {"delta", jnum(cut.delta)},
                           {"branch", std::string(zlb::to_string(cut.branch))}};
        report[cname(con)] = entry;
    }
    out.meta["report"] = report;
    return out;
}

ScanResult region_scan(const RunConfig& c, int workers) {
    if (c.grid.empty() || c.grid.size() > 2) throw ConfigError("region-scan needs one or two grid axes");
    for (const auto& a : c.grid)
        if (a.variable == "a") throw ConfigError("region-scan: axis 'a' is not a model parameter");
    for (Concept con : c.concepts)
        if (con == Concept::LEE) throw ConfigError("region-scan: no cutoff formula for LEE");

    Cartesian grid;
    ScanResult out;
    for (const auto& a : c.grid) {
        grid.axes.push_back(a.values());
        out.header.push_back(a.variable);
    }
    for (Concept con : c.concepts) {
        out.header.push_back(cname(con) + "_eps_bar");
        out.header.push_back(cname(con) + "_analytic");
        out.header.push_back(cname(con) + "_oracle");
    }

    std::vector<std::vector<Cell>> rows(grid.size());
    for_cells(grid.size(), workers, [&](std::size_t k) {
        const auto v = grid.at(k);
        zlb::ModelParams prm = c.params;
        zlb::MarkovShock shock = c.shock;
        zlb::ContinuousShock cs = c.continuous;
        std::vector<Cell> row;
        for (std::size_t d = 0; d < v.size(); ++d) {
            apply_grid_value(c.grid[d].variable, v[d], prm, shock, cs);
            row.emplace_back(v[d]);
        }
        for (Concept con : c.concepts) {
            const auto cut = zlb::cutoff_components(con, prm, shock);
            row.emplace_back(cut.eps_bar);
            row.push_back(flag(shock.eps1 >= cut.eps_bar));
            row.push_back(flag(zlb::exists(con, prm, shock)));
        }
        rows[k] = std::move(row);
    });

    json agreement = json::object();
    const std::size_t base = c.grid.size();
    for (std::size_t ci = 0; ci < c.concepts.size(); ++ci) {
        std::size_t agree = 0;
        for (const auto& row : rows)
            if (std::get<std::int64_t>(row[base + 3 * ci + 1]) == std::get<std::int64_t>(row[base + 3 * ci + 2]))
                ++agree;
        agreement[cname(c.concepts[ci])] = {{"agree", agree}, {"cells", rows.size()}};
    }
    for (auto& row : rows) out.add_row(std::move(row));
    out.meta["agreement"] = agreement;
    return out;
}

double max_zp_persistence(Concept con, const zlb::ModelParams& params, zlb::MarkovShock shock, double tol) {
    auto solve_at = [&](double p) {
        shock.p = p;
        return zlb::solve_candidate(con, Regime::ZP, params, shock);
    };
    auto ok = [&](double p) { return solve_at(p).consistent; };
    // Smallest regime-consistency margin of the ZP candidate; >= 0 means (weakly) consistent.
    auto margin = [&](double p) {
        const auto c = solve_at(p);
        const double m = std::min(-(params.psi * c.Y1.pi + params.mu), params.psi * c.Y2.pi + params.mu);
        return std::isnan(m) ? -std::numeric_limits<double>::infinity() : m;
    };

    // The consistent window in p can be far narrower than any fixed grid near the point where
    // the two margins cross, so grid local maxima of the margin are refined by golden section.
    constexpr int n = 4000;
    constexpr double u_max = 9.0;
    std::vector<double> p(n + 1), f(n + 1);
    for (int k = 0; k <= n; ++k) {
        p[k] = k == 0 ? 1e-6 : 1.0 - std::pow(10.0, -u_max * k / n);
        f[k] = margin(p[k]);
    }
    // Returns a consistent point inside [a, b] near the maximum of the margin, or NaN.
    auto refine = [&](double a, double b) {
        constexpr double g = 0.6180339887498949;
        double c1 = b - g * (b - a), c2 = a + g * (b - a);
        double f1 = margin(c1), f2 = margin(c2);
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            if (ok(c2)) return c2;
            if (ok(c1)) return c1;
            if (f1 < f2) {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + g * (b - a);
                f2 = margin(c2);
            } else {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - g * (b - a);
                f1 = margin(c1);
            }
        }
        return kNaN;
    };

    double best = kNaN;
    int best_k = -1;
    for (int k = n; k >= 0; --k) {
        if (ok(p[k])) {
            best = p[k];
        } else {
            const bool local_max = (k == n || f[k] >= f[k + 1]) && (k == 0 || f[k] >= f[k - 1]);
            if (local_max) best = refine(p[std::max(k - 1, 0)], p[std::min(k + 1, n)]);
        }
        if (!std::isnan(best)) {
            best_k = k;
            break;
        }
    }
    if (best_k < 0) return kNaN;
    if (best_k == n) return best;
    double lo = best, hi = p[best_k + 1];
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

ScanResult duration_scan(const RunConfig& c, int workers) {
    const auto eps = single_axis(c, "eps1").values();
    for (Concept con : c.concepts)
        if (con == Concept::LEE) throw ConfigError("duration-scan: LEE is not supported");
    ScanResult out;
    out.header = {"eps1"};
    for (Concept con : c.concepts) {
        out.header.push_back(cname(con) + "_p_max");
        out.header.push_back(cname(con) + "_duration");
    }
    std::vector<std::vector<Cell>> rows(eps.size());
    for_cells(eps.size(), workers, [&](std::size_t k) {
        zlb::MarkovShock shock = c.shock;
        shock.eps1 = eps[k];
        std::vector<Cell> row{eps[k]};
        for (Concept con : c.concepts) {
            const double p = max_zp_persistence(con, c.params, shock);
            row.emplace_back(p);
            row.emplace_back(std::isnan(p) ? kNaN : 1.0 / (1.0 - p));
        }
        rows[k] = std::move(row);
    });
    for (auto& row : rows) out.add_row(std::move(row));
    return out;
}

ScanResult simulate(const RunConfig& c) {
    const auto& l = c.learning;
    const zlb::BeliefState init = zlb::rpe_initial_beliefs(l.kind, c.params, c.shock, l.gain, l.info_lag);
    zlb::SimOptions opt;
    opt.horizon = l.horizon;
    opt.seed = c.seed;
    opt.initial_state = l.initial_state;
    opt.divergence_bound = l.divergence_bound;
    const zlb::SimPath path = zlb::simulate(c.params, c.shock, init, opt);

    ScanResult out;
    out.header = {"t", "state", "x", "pi", "i"};
    const bool msv = l.kind == zlb::BeliefKind::msv;
    if (msv)
        out.header.insert(out.header.end(), {"xe1", "pie1", "xe2", "pie2"});
    else
        out.header.insert(out.header.end(), {"xe", "pie"});
    out.header.push_back("diverged");

    const auto n = static_cast<std::int64_t>(path.outcomes.size());
    for (std::int64_t t = 0; t < n; ++t) {
        const bool last = t == n - 1;
        if (t % l.stride != 0 && !last) continue;
        const auto& y = path.outcomes[static_cast<std::size_t>(t)];
        const auto& b = path.beliefs[static_cast<std::size_t>(t)];
        std::vector<Cell> row{t, std::int64_t{path.shocks[static_cast<std::size_t>(t)] + 1}, y.x, y.pi, y.i};
        row.emplace_back(b[0]);
        row.emplace_back(b[1]);
        if (msv) {
            row.emplace_back(b[2]);
            row.emplace_back(b[3]);
        }
        row.push_back(flag(last && path.diverged_at.has_value()));
        out.add_row(std::move(row));
    }
    out.meta["horizon"] = path.horizon;
    out.meta["T_len"] = path.T_len;
    out.meta["bound"] = path.bound;
    out.meta["diverged_at"] = path.diverged_at ? json(*path.diverged_at) : json(nullptr);
    out.meta["no_solution_events"] = path.no_solution_events;
    out.meta["multiple_solution_events"] = path.multiple_solution_events;
    spdlog::info("simulate: {} periods, diverged: {}", path.T_len, path.diverged_at.has_value());
    return out;
}

ScanResult continuous_rpe(const RunConfig& c) {
    const auto res = zlb::find_rpe_continuous(c.params, c.continuous);
    std::vector<double> grid;
    if (c.grid.empty()) {
        GridAxis a{"a", res.a_star - 0.02, res.a_star + 0.01, 301};
        grid = a.values();
    } else {
        grid = single_axis(c, "a").values();
    }
    ScanResult out;
    out.header = {"a", "h", "h_minus_a", "L", "binding_prob"};
    for (double a : grid) {
        const double h = zlb::h(a, c.params, c.continuous);
        const double L = zlb::L(a, c.params, c.continuous);
        out.add_row({a, h, h - a, L, zlb::normal_cdf(L)});
    }
    out.meta["a_star"] = res.a_star;
    out.meta["h_at_star_minus_star"] = res.h_at_star_minus_star;
    out.meta["fixed_points"] = res.fixed_points;
    out.meta["binding_probabilities"] = res.binding_probabilities;
    out.meta["sigma_eps"] = c.continuous.sigma_eps();
    return out;
}

ScanResult forward_guidance(const RunConfig& c) {
    const auto& g = c.guidance;
    ScanResult out;
    out.header = {"kind", "T", "dpi0_diT", "dx0_diT"};
    for (const auto& kind : g.kinds) {
        if (kind == "bre") {
            const auto scan = zlb::fg_impact_scan(c.params, g.T_max);
            for (int T = 0; T <= g.T_max; ++T)
                out.add_row({kind, std::int64_t{T}, scan.dpi0_diT[static_cast<std::size_t>(T)],
                             scan.dx0_diT[static_cast<std::size_t>(T)]});
            out.meta["overflow_from"] = scan.overflow_from;
            continue;
        }
        const auto k = *zlb::parse_fg_kind(kind);
        for (int T = 0; T <= g.T_max; ++T) {
            const zlb::Vec2 d = zlb::fg_effect_learning(k, c.params, zlb::FGConfig{T, g.i_bar});
            out.add_row({kind, std::int64_t{T}, d[1], d[0]});
        }
    }
    out.meta["delta"] = zlb::delta(c.params);
    out.meta["puzzle"] = zlb::puzzle_predicate(c.params);
    out.meta["spectral_radius"] = zlb::spectral_radius(zlb::a_brz(c.params));
    return out;
}

ScanResult attention_scan(const RunConfig& c, int workers) {
    const auto eps = single_axis(c, "eps1").values();
    const auto& regimes = c.attention.regimes;
    const std::size_t n = eps.size() * regimes.size();
    std::vector<zlb::AttentionSolution> sols(n);
    for_cells(n, workers, [&](std::size_t k) {
        zlb::MarkovShock shock = c.shock;
        shock.eps1 = eps[k / regimes.size()];
        sols[k] = zlb::solve_endogenous_bre(regimes[k % regimes.size()], c.params, shock, c.attention.attn);
    });

    ScanResult out;
    out.header = {"eps1", "regime", "exists", "m1", "m2", "mf1", "mf2", "M1", "M2", "Mf1", "Mf2", "x1", "pi1"};
    std::vector<bool> any(eps.size(), false);
    std::int64_t unconverged = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = sols[k];
        if (s.exists) any[k / regimes.size()] = true;
        if (!s.converged) ++unconverged;
        out.add_row({s.eps1, std::string(zlb::to_string(s.regime)), flag(s.exists), s.m1, s.m2, s.mf1, s.mf2, s.M1,
                     s.M2, s.Mf1, s.Mf2, s.outcomes.s1.x, s.outcomes.s1.pi});
    }
    const auto boundary = zlb::existence_boundary(eps, any);
    out.meta["boundary"] = boundary ? json(*boundary) : json(nullptr);
    out.meta["theta"] = c.attention.attn.theta;
    out.meta["unconverged"] = unconverged;
    return out;
}

ScanResult ih_check(const RunConfig& c, int workers) {
    const zlb::CounterRng rng(c.seed, 0x1b);
    const auto draws = static_cast<std::size_t>(c.draws);
    std::vector<std::vector<Cell>> rows(draws);
    std::vector<char> ok(draws, 0);
    for_cells(draws, workers, [&](std::size_t d) {
        auto u = [&](int k, double lo, double hi) { return lo + (hi - lo) * rng.uniform_at(8 * d + k); };
        zlb::ModelParams prm = c.params;
        prm.beta = u(0, 0.9, 0.999);
        prm.sigma = u(1, 0.5, 2.0);
        prm.lambda = u(2, 0.01, 0.1);
        prm.psi = u(3, 1.01, 3.0);
        zlb::MarkovShock s{u(4, -0.05, 0.0), u(5, 0.0, 0.02), u(6, 0.5, 0.99), u(7, 0.5, 0.99)};
        const auto rpe = zlb::enumerate_equilibria(Concept::RPE, prm, s);
        double worst = 0.0;
        for (const auto& e : rpe) worst = std::max(worst, zlb::ih_rpe_residual(e, prm, s));
        ok[d] = worst <= 1e-8;
        rows[d] = {std::int64_t(d), prm.beta, prm.sigma, prm.lambda, prm.psi, s.eps1, s.eps2, s.p, s.q,
                   std::int64_t(rpe.size()), worst, flag(ok[d])};
    });
    ScanResult out;
    out.header = {"draw", "beta", "sigma", "lambda", "psi", "eps1", "eps2", "p", "q", "n_rpe", "max_residual", "ok"};
    for (auto& row : rows) out.add_row(std::move(row));
    out.meta["all_ok"] = std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; });
    return out;
}

ScanResult run(const RunConfig& c, int workers) {
    ScanResult out;
    switch (c.command) {
        case Command::solve: out = solve(c); break;
        case Command::region_scan: out = region_scan(c, workers); break;
        case Command::duration_scan: out = duration_scan(c, workers); break;
        case Command::simulate: out = simulate(c); break;
        case Command::continuous_rpe: out = continuous_rpe(c); break;
        case Command::forward_guidance: out = forward_guidance(c); break;
        case Command::attention_scan: out = attention_scan(c, workers); break;
        case Command::ih_check: out = ih_check(c, workers); break;
    }
    out.meta["toolkit"] = "zlb";
    out.meta["version"] = ZLB_VERSION;
    out.meta["command"] = std::string(to_string(c.command));
    out.meta["config"] = to_json(c);
    return out;
}

}  // namespace zlbcli
