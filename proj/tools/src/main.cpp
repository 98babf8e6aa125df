#include "zlbcli/commands.hpp"

#include <zlb/errors.hpp>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("zlb");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("ZLB_LOG")) {
        const std::string v(env);
        if (v == "error" || v == "warn" || v == "info" || v == "debug")
            spdlog::set_level(spdlog::level::from_str(v));
        else
            spdlog::warn("ignoring ZLB_LOG={} (expected error, warn, info or debug)", v);
    }
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Zero-lower-bound New Keynesian toolkit"};
    std::string command;
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int workers = 0;
    app.add_option("command", command, "solve, region-scan, duration-scan, simulate, continuous-rpe, "
                                       "forward-guidance, attention-scan or ih-check; defaults to the config's command");
    app.add_option("--config", config_path, "JSON run configuration")->required();
    auto* out_opt = app.add_option("--out", out_path, "CSV output path (meta goes to <path>.meta.json)");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
    app.add_option("--workers", workers, "worker threads, default all cores")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    zlbcli::RunConfig cfg;
    try {
        nlohmann::json j = zlbcli::read_config_json(config_path);
        if (!command.empty()) {
            if (!zlbcli::parse_command(command)) throw zlbcli::ConfigError("unknown command '" + command + "'");
            if (j.is_object()) j["command"] = command;
        }
        if (*seed_opt) j["seed"] = seed;
        if (*out_opt) j["output_path"] = out_path;
        cfg = zlbcli::parse_config(j);
    } catch (const zlbcli::ConfigError& e) {
        spdlog::error("config error: {}", e.what());
        return kExitConfig;
    } catch (const zlb::InvalidParameter& e) {
        spdlog::error("config error: {}", e.what());
        return kExitConfig;
    }

    zlbcli::ScanResult result;
    try {
        spdlog::info("running {} with {} worker(s)", zlbcli::to_string(cfg.command), workers > 0 ? std::to_string(workers) : "all");
        result = zlbcli::run(cfg, workers);
    } catch (const zlbcli::ConfigError& e) {
        spdlog::error("config error: {}", e.what());
        return kExitConfig;
    } catch (const zlb::InvalidParameter& e) {
        spdlog::error("invalid parameters: {}", e.what());
        return kExitConfig;
    } catch (const zlb::Error& e) {
        spdlog::error("numeric failure: {}", e.what());
        return kExitNumeric;
    }

    try {
        if (cfg.output_path.empty()) {
            zlbcli::write_csv(result, std::cout);
            spdlog::info("no output path; meta sidecar not written");
        } else {
            zlbcli::write_outputs(result, cfg.output_path);
            spdlog::info("wrote {} rows to {}", result.rows.size(), cfg.output_path);
        }
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitIo;
    }
    return kExitOk;
}
