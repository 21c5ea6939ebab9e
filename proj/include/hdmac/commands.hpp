#pragma once

#include "hdmac/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdmac {

/// The scenario lacks a section the command needs, or the command is unknown.
class CommandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { Region, Frontier, Sweep, MUser, Dmc, Verify };

std::string command_name(Command c);
Command command_from_name(const std::string& name);

struct CommandOptions {
    std::filesystem::path out = ".";
    std::optional<std::uint64_t> seed;  // overrides search.seed
    std::optional<int> weights;         // overrides the scenario's weight count
};

struct CommandResult {
    int status = 0;  // 1 when a verify claim fails
    std::vector<std::filesystem::path> files;
    std::string report;  // what the CLI prints
};

/// Runs one command and writes its files under opts.out (created if missing).
CommandResult run_command(Command cmd, const Scenario& scenario, const CommandOptions& opts = {});

struct PlotSeries {
    std::string name;
    std::vector<Rate> points;
};

/// Gnuplot-style text: one block per series, blocks separated by two blank lines.
/// Throws std::invalid_argument on an empty list or an empty series.
std::string export_plot_data(std::span<const PlotSeries> series, std::uint64_t scenario_hash,
                             std::uint64_t seed);

/// Hash of the serialized scenario.
std::uint64_t scenario_hash(const Scenario& s);

}  // namespace hdmac
