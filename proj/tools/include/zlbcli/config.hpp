#pragma once

#include <zlb/attention.hpp>
#include <zlb/continuous.hpp>
#include <zlb/equilibrium.hpp>
#include <zlb/guidance.hpp>
#include <zlb/learning.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zlbcli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { solve, region_scan, duration_scan, simulate, continuous_rpe, forward_guidance, attention_scan, ih_check };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view s);

struct GridAxis {
    std::string variable;
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    std::vector<double> values() const;
};

struct LearningConfig {
    zlb::BeliefKind kind = zlb::BeliefKind::msv;
    zlb::GainSpec gain = zlb::GainSpec::constant(1e-5);
    std::int64_t horizon = 200000;
    int info_lag = 1;
    double divergence_bound = 0.0;
    int initial_state = -1;
    std::int64_t stride = 1;  // write every stride-th period
};

struct GuidanceConfig {
    int T_max = 200;
    double i_bar = -0.01;
    std::vector<std::string> kinds{"bre", "euler-learning", "ih-credible", "ih-not-credible"};
};

struct AttentionConfig {
    zlb::AttentionParams attn;
    bool theta_given = false;
    std::vector<zlb::Regime> regimes{zlb::Regime::ZP, zlb::Regime::PP};
};

struct RunConfig {
    Command command = Command::solve;
    zlb::ModelParams params;
    zlb::MarkovShock shock;
    zlb::ContinuousShock continuous;
    std::vector<GridAxis> grid;
    std::vector<zlb::Concept> concepts;
    LearningConfig learning;
    GuidanceConfig guidance;
    AttentionConfig attention;
    int draws = 50;
    std::string output_path;
    std::uint64_t seed = 0;
};

// Recognized grid variables. "M_Mf" moves M and Mf together.
bool is_grid_variable(std::string_view name);
void apply_grid_value(std::string_view name, double v, zlb::ModelParams& params, zlb::MarkovShock& shock,
                      zlb::ContinuousShock& cs);

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json read_config_json(const std::string& path);
RunConfig load_config(const std::string& path);

// Full echo of the effective configuration; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& c);

}  // namespace zlbcli
