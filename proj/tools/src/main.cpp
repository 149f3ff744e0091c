#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "json_config.hpp"
#include "ssepfree/errors.hpp"

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("ssepfree");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("SSEPFREE_LOG_LEVEL")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    using namespace ssepfree::cli;

    CLI::App app{"Partition lattices, cumulant expansions and SSEP large deviations"};
    app.name("ssepfree");
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals globals;
    app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("-o,--output", globals.output, "Output file (written atomically); stdout if omitted");
    app.add_option("--seed", globals.seed, "Seed for randomised work")->capture_default_str();

    Action action;
    register_commands(app, globals, action);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ConfigError& e) {
        std::string msg = e.what();
        const std::string extras = "INI was not able to parse ";
        if (msg.rfind(extras, 0) == 0) msg = "unknown field '" + msg.substr(extras.size()) + "'";
        spdlog::error("config error: {}", msg);
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        return action ? action() : kExitValidation;
    } catch (const ssepfree::ConvergenceError& e) {
        spdlog::error("{} (iterations {}, residual {:.3g})", e.what(), e.iterations(), e.residual());
        return kExitConvergence;
    } catch (const ssepfree::ParseError& e) {
        spdlog::error("{}", e.what());
        return kExitValidation;
    } catch (const ssepfree::Error& e) {
        spdlog::error("{}", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 1;
    }
}
