#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "common.hpp"

namespace cli {

struct Command {
    CLI::App* app = nullptr;
    std::function<int()> run;  // returns the exit code
};

std::vector<Command> register_commands(CLI::App& root);

}  // namespace cli
