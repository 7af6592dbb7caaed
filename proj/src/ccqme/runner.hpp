// runner.hpp: executes a validated configuration and writes its artifacts
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccqme/config.hpp"
#include "ccqme/dynamics.hpp"
#include "ccqme/system_model.hpp"

namespace ccqme {

struct RunOptions {
    std::optional<std::string> output_directory;  // overrides the config
    int threads = 1;
    bool seedless = false;  // omit the timestamp so every file is reproducible
};

struct RunOutcome {
    std::string output_directory;
    std::vector<std::string> files;     // written, relative to output_directory
    std::vector<std::string> failures;  // per-task errors; non-empty means failure
    std::vector<std::string> warnings;
};

RunOutcome run(const RunConfig& cfg, const RunOptions& options = {});

// System as used at one coupling, after the configured renormalization.
struct PreparedSystem {
    NLevelSystem system;
    std::optional<Grid1D> grid;
    std::optional<EigenSolution> solution;
};
PreparedSystem prepare_system(const RunConfig& cfg, double coupling);

struct BuiltinEntry {
    std::string kind;
    std::string name;
    std::string description;
};
std::vector<BuiltinEntry> list_builtins();

}  // namespace ccqme
