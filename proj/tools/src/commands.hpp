#ifndef SSEPFREE_TOOLS_COMMANDS_HPP
#define SSEPFREE_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <functional>
#include <string>

#include <CLI11.hpp>

namespace ssepfree::cli {

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;

struct Globals {
    std::string format;
    std::string output;
    std::uint64_t seed = 12345;
};

/// Work selected by the parsed subcommand; returns the exit status.
using Action = std::function<int()>;

void register_commands(CLI::App& app, Globals& globals, Action& action);

}  // namespace ssepfree::cli

#endif
