// hdmac: rate regions of the half-duplex MAC with generalized feedback.
#include "hdmac/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv)
{
    CLI::App app{"Rate regions of the half-duplex MAC with generalized feedback"};
    std::string command;
    std::string scenario_path;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> weights;
    app.add_option("command", command, "region | frontier | sweep | muser | dmc | verify")
        ->required()
        ->check(CLI::IsMember({"region", "frontier", "sweep", "muser", "dmc", "verify"}));
    app.add_option("--scenario", scenario_path, "scenario file (YAML)")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", seed, "overrides search.seed");
    app.add_option("--weights", weights, "number of weight directions")->check(CLI::Range(3, 100000));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::ifstream in(scenario_path, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        const hdmac::Scenario scenario = hdmac::parse_scenario(text.str());
        hdmac::CommandOptions opts;
        opts.out = out;
        opts.seed = seed;
        opts.weights = weights;
        const hdmac::CommandResult result =
            hdmac::run_command(hdmac::command_from_name(command), scenario, opts);
        std::cout << result.report;
        return result.status;
    } catch (const hdmac::ScenarioError& e) {
        std::cerr << scenario_path << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "hdmac " << command << ": " << e.what() << '\n';
    }
    return 2;
}
