#include "zlbcli/config.hpp"

#include <zlb/errors.hpp>

#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace zlbcli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 8> kCommands{{
    {Command::solve, "solve"},
    {Command::region_scan, "region-scan"},
    {Command::duration_scan, "duration-scan"},
    {Command::simulate, "simulate"},
    {Command::continuous_rpe, "continuous-rpe"},
    {Command::forward_guidance, "forward-guidance"},
    {Command::attention_scan, "attention-scan"},
    {Command::ih_check, "ih-check"},
}};

constexpr std::array<std::string_view, 16> kGridVariables{
    "beta", "sigma", "lambda", "psi", "mu", "M", "Mf", "N", "M_Mf",
    "eps1", "eps2", "p", "q", "rho_c", "sigma_v", "a"};

// Strict object reader: every key must be consumed, otherwise finish() throws.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("", "expected an object");
    }

    bool has(const char* key) const { return j_.contains(key); }

    void number(const char* key, double& out) {
        if (const json* v = take(key)) {
            if (!v->is_number()) fail(key, "expected a number");
            out = v->get<double>();
        }
    }

    template <class Int>
    void integer(const char* key, Int& out) {
        if (const json* v = take(key)) {
            if (!v->is_number_integer()) fail(key, "expected an integer");
            out = v->get<Int>();
        }
    }

    void string(const char* key, std::string& out) {
        if (const json* v = take(key)) {
            if (!v->is_string()) fail(key, "expected a string");
            out = v->get<std::string>();
        }
    }

    std::vector<std::string> strings(const char* key) {
        std::vector<std::string> out;
        if (const json* v = take(key)) {
            if (!v->is_array()) fail(key, "expected an array of strings");
            for (const json& e : *v) {
                if (!e.is_string()) fail(key, "expected an array of strings");
                out.push_back(e.get<std::string>());
            }
        }
        return out;
    }

    const json* take(const char* key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string where(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    [[noreturn]] void fail(const char* key, const std::string& msg) const {
        throw ConfigError(std::string(*key ? where(key) : (path_.empty() ? "<root>" : path_)) + ": " + msg);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(where(it.key().c_str()) + ": unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_params(const json& j, zlb::ModelParams& m) {
    Reader r(j, "params");
    r.number("beta", m.beta);
    r.number("sigma", m.sigma);
    r.number("lambda", m.lambda);
    r.number("psi", m.psi);
    r.number("mu", m.mu);
    r.number("M", m.M);
    r.number("Mf", m.Mf);
    r.number("N", m.N);
    r.finish();
}

void read_shock(const json& j, zlb::MarkovShock& s) {
    Reader r(j, "shock");
    r.number("eps1", s.eps1);
    r.number("eps2", s.eps2);
    r.number("p", s.p);
    r.number("q", s.q);
    r.finish();
}

void read_continuous(const json& j, zlb::ContinuousShock& cs) {
    Reader r(j, "continuous");
    r.number("rho_c", cs.rho_c);
    r.number("sigma_v", cs.sigma_v);
    r.finish();
}

GridAxis read_axis(const json& j, const std::string& path) {
    Reader r(j, path);
    GridAxis a;
    r.string("variable", a.variable);
    r.number("min", a.min);
    r.number("max", a.max);
    r.integer("steps", a.steps);
    r.finish();
    if (!is_grid_variable(a.variable)) throw ConfigError(path + ".variable: unrecognized variable '" + a.variable + "'");
    if (a.steps < 1) throw ConfigError(path + ".steps: must be >= 1");
    if (a.steps == 1 && a.min != a.max) throw ConfigError(path + ": a single-step axis needs min == max");
    if (a.max < a.min) throw ConfigError(path + ": max < min");
    return a;
}

void read_learning(const json& j, LearningConfig& lc) {
    Reader r(j, "learning");
    std::string kind(zlb::to_string(lc.kind));
    r.string("kind", kind);
    const auto k = zlb::parse_belief_kind(kind);
    if (!k) r.fail("kind", "expected rpe-mean or msv");
    lc.kind = *k;
    if (const json* g = r.take("gain")) {
        if (g->is_string() && g->get<std::string>() == "decreasing")
            lc.gain = zlb::GainSpec::decreasing();
        else if (g->is_number() && g->get<double>() > 0.0 && g->get<double>() <= 1.0)
            lc.gain = zlb::GainSpec::constant(g->get<double>());
        else
            r.fail("gain", "expected \"decreasing\" or a number in (0,1]");
    }
    r.integer("horizon", lc.horizon);
    r.integer("info_lag", lc.info_lag);
    r.number("divergence_bound", lc.divergence_bound);
    r.integer("initial_state", lc.initial_state);
    r.integer("stride", lc.stride);
    r.finish();
    if (lc.horizon < 1) throw ConfigError("learning.horizon: must be >= 1");
    if (lc.info_lag != 0 && lc.info_lag != 1) throw ConfigError("learning.info_lag: must be 0 or 1");
    if (lc.initial_state < -1 || lc.initial_state > 1) throw ConfigError("learning.initial_state: must be -1, 0 or 1");
    if (lc.stride < 1) throw ConfigError("learning.stride: must be >= 1");
}

void read_guidance(const json& j, GuidanceConfig& g) {
    Reader r(j, "guidance");
    r.integer("T_max", g.T_max);
    r.number("i_bar", g.i_bar);
    if (r.has("kinds")) g.kinds = r.strings("kinds");
    r.finish();
    if (g.T_max < 0) throw ConfigError("guidance.T_max: must be >= 0");
    if (!(g.i_bar < 0.0)) throw ConfigError("guidance.i_bar: must be negative");
    for (const auto& k : g.kinds)
        if (k != "bre" && !zlb::parse_fg_kind(k)) throw ConfigError("guidance.kinds: unknown kind '" + k + "'");
}

void read_attention(const json& j, AttentionConfig& a) {
    Reader r(j, "attention");
    r.number("xi_c", a.attn.xi_c);
    r.number("xi_f", a.attn.xi_f);
    r.number("m_d1", a.attn.m_d1);
    r.number("m_d2", a.attn.m_d2);
    r.number("m_df1", a.attn.m_df1);
    r.number("m_df2", a.attn.m_df2);
    r.number("phi_labor", a.attn.phi_labor);
    if (r.has("theta")) {
        r.number("theta", a.attn.theta);
        a.theta_given = true;
    }
    if (r.has("regimes")) {
        a.regimes.clear();
        for (const auto& s : r.strings("regimes")) {
            const auto reg = zlb::parse_regime(s);
            if (!reg) throw ConfigError("attention.regimes: unknown regime '" + s + "'");
            a.regimes.push_back(*reg);
        }
    }
    r.finish();
}

}  // namespace

std::string_view to_string(Command c) {
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c) return name;
    return "?";
}

std::optional<Command> parse_command(std::string_view s) {
    for (const auto& [cmd, name] : kCommands)
        if (name == s) return cmd;
    return std::nullopt;
}

std::vector<double> GridAxis::values() const {
    if (steps == 1) return {min};
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) v[static_cast<std::size_t>(k)] = min + (max - min) * k / (steps - 1);
    v.back() = max;
    return v;
}

bool is_grid_variable(std::string_view name) {
    for (auto v : kGridVariables)
        if (v == name) return true;
    return false;
}

void apply_grid_value(std::string_view name, double v, zlb::ModelParams& m, zlb::MarkovShock& s,
                      zlb::ContinuousShock& cs) {
    if (name == "beta") m.beta = v;
    else if (name == "sigma") m.sigma = v;
    else if (name == "lambda") m.lambda = v;
    else if (name == "psi") m.psi = v;
    else if (name == "mu") m.mu = v;
    else if (name == "M") m.M = v;
    else if (name == "Mf") m.Mf = v;
    else if (name == "N") m.N = v;
    else if (name == "M_Mf") m.M = m.Mf = v;
    else if (name == "eps1") s.eps1 = v;
    else if (name == "eps2") s.eps2 = v;
    else if (name == "p") s.p = v;
    else if (name == "q") s.q = v;
    else if (name == "rho_c") cs.rho_c = v;
    else if (name == "sigma_v") cs.sigma_v = v;
    else if (name == "a") {
        // belief axis, handled by the caller
    } else throw ConfigError("unrecognized grid variable '" + std::string(name) + "'");
}

RunConfig parse_config(const json& j) {
    RunConfig c;
    Reader r(j, "");
    std::string cmd;
    r.string("command", cmd);
    if (cmd.empty()) throw ConfigError("command: missing");
    const auto parsed = parse_command(cmd);
    if (!parsed) throw ConfigError("command: unknown command '" + cmd + "'");
    c.command = *parsed;

    if (const json* v = r.take("params")) read_params(*v, c.params);
    if (const json* v = r.take("shock")) read_shock(*v, c.shock);
    if (const json* v = r.take("continuous")) read_continuous(*v, c.continuous);
    if (const json* v = r.take("grid")) {
        if (!v->is_array()) throw ConfigError("grid: expected an array of axes");
        for (std::size_t k = 0; k < v->size(); ++k)
            c.grid.push_back(read_axis((*v)[k], "grid[" + std::to_string(k) + "]"));
    }
    for (const auto& s : r.strings("concepts")) {
        const auto con = zlb::parse_concept(s);
        if (!con) throw ConfigError("concepts: unknown concept '" + s + "'");
        c.concepts.push_back(*con);
    }
    if (const json* v = r.take("learning")) read_learning(*v, c.learning);
    if (const json* v = r.take("guidance")) read_guidance(*v, c.guidance);
    if (const json* v = r.take("attention")) read_attention(*v, c.attention);
    r.integer("draws", c.draws);
    r.string("output_path", c.output_path);
    r.integer("seed", c.seed);
    r.finish();
    if (c.draws < 1) throw ConfigError("draws: must be >= 1");

    if (c.concepts.empty()) {
        using zlb::Concept;
        c.concepts = c.command == Command::duration_scan
                         ? std::vector<Concept>{Concept::REE, Concept::RPE}
                         : std::vector<Concept>{Concept::REE, Concept::RPE, Concept::BRE, Concept::BRRPE};
    }
    try {
        c.params.validate();
        c.shock.validate();
        c.continuous.validate();
        if (!c.attention.theta_given) c.attention.attn.theta = zlb::calvo_theta(
            c.params.lambda / (c.attention.attn.phi_labor + c.params.sigma), c.params.beta);
        c.attention.attn.validate();
    } catch (const zlb::InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    return c;
}

json read_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

RunConfig load_config(const std::string& path) { return parse_config(read_config_json(path)); }

json to_json(const RunConfig& c) {
    json j;
    j["command"] = std::string(to_string(c.command));
    const auto& m = c.params;
    j["params"] = {{"beta", m.beta}, {"sigma", m.sigma}, {"lambda", m.lambda}, {"psi", m.psi},
                   {"mu", m.mu}, {"M", m.M}, {"Mf", m.Mf}, {"N", m.N}};
    j["shock"] = {{"eps1", c.shock.eps1}, {"eps2", c.shock.eps2}, {"p", c.shock.p}, {"q", c.shock.q}};
    j["continuous"] = {{"rho_c", c.continuous.rho_c}, {"sigma_v", c.continuous.sigma_v}};
    j["grid"] = json::array();
    for (const auto& a : c.grid)
        j["grid"].push_back({{"variable", a.variable}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}});
    j["concepts"] = json::array();
    for (auto con : c.concepts) j["concepts"].push_back(std::string(zlb::to_string(con)));

    const auto& l = c.learning;
    j["learning"] = {{"kind", std::string(zlb::to_string(l.kind))},
                     {"horizon", l.horizon},
                     {"info_lag", l.info_lag},
                     {"divergence_bound", l.divergence_bound},
                     {"initial_state", l.initial_state},
                     {"stride", l.stride}};
    if (l.gain.kind == zlb::GainSpec::Kind::decreasing)
        j["learning"]["gain"] = "decreasing";
    else
        j["learning"]["gain"] = l.gain.value;

    j["guidance"] = {{"T_max", c.guidance.T_max}, {"i_bar", c.guidance.i_bar}, {"kinds", c.guidance.kinds}};

    const auto& a = c.attention.attn;
    j["attention"] = {{"xi_c", a.xi_c}, {"xi_f", a.xi_f}, {"m_d1", a.m_d1}, {"m_d2", a.m_d2},
                      {"m_df1", a.m_df1}, {"m_df2", a.m_df2}, {"phi_labor", a.phi_labor}, {"theta", a.theta}};
    j["attention"]["regimes"] = json::array();
    for (auto reg : c.attention.regimes) j["attention"]["regimes"].push_back(std::string(zlb::to_string(reg)));

    j["draws"] = c.draws;
    j["output_path"] = c.output_path;
    j["seed"] = c.seed;
    return j;
}

}  // namespace zlbcli
