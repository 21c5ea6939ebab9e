#include "hdmac/commands.hpp"
#include "hdmac/gaussian_regions.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace hdmac;
namespace fs = std::filesystem;

namespace {

std::string read(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Scenario load(const std::string& name)
{
    return parse_scenario(read(fs::path(HDMAC_SOURCE_DIR) / "scenarios" / (name + ".yaml")));
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("hdmac_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::vector<std::string> data_rows(const std::string& text)
{
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        rows.push_back(line);
    }
    return rows;
}

}  // namespace

TEST_CASE("command names")
{
    for (const char* n : {"region", "frontier", "sweep", "muser", "dmc", "verify"})
        CHECK(command_name(command_from_name(n)) == n);
    CHECK_THROWS_AS(command_from_name("plot"), CommandError);
}

TEST_CASE("region writes the DF pentagon")
{
    CommandOptions opts;
    opts.out = scratch("region");
    const CommandResult r = run_command(Command::Region, load("df_region"), opts);
    CHECK(r.status == 0);
    const std::string csv = read(opts.out / "region_df.csv");
    CHECK(csv.rfind("# rates in bits", 0) == 0);
    const auto rows = data_rows(csv);
    REQUIRE(rows.size() == 5);
    CHECK(rows[1] == "1,0.708746284125,0");
    CHECK(rows[2] == "2,0.708746284125,0.584235034341");
    CHECK(fs::exists(opts.out / "region_bounds.csv"));
    CHECK(fs::exists(opts.out / "region.dat"));
}

TEST_CASE("missing sections are reported")
{
    Scenario s = load("df_region");
    s.budget.reset();
    CommandOptions opts;
    opts.out = scratch("missing");
    CHECK_THROWS_AS(run_command(Command::Frontier, s, opts), CommandError);
    CHECK_THROWS_AS(run_command(Command::Sweep, s, opts), CommandError);
    CHECK_THROWS_AS(run_command(Command::MUser, s, opts), CommandError);
    CHECK_THROWS_AS(run_command(Command::Dmc, s, opts), CommandError);
    s.slots.reset();
    CHECK_THROWS_AS(run_command(Command::Region, s, opts), CommandError);
}

TEST_CASE("frontier output is deterministic")
{
    Scenario s = load("symmetric");
    s.schemes = {Scheme::Df};
    CommandOptions opts;
    opts.weights = 5;
    opts.out = scratch("frontier_a");
    run_command(Command::Frontier, s, opts);
    const std::string first = read(opts.out / "frontier_df.csv");
    opts.out = scratch("frontier_b");
    run_command(Command::Frontier, s, opts);
    CHECK(read(opts.out / "frontier_df.csv") == first);

    const auto rows = data_rows(first);
    REQUIRE(rows.size() == 5);
    CHECK(first.find("theta_index,mu1,mu2,r1,r2,a1,a2,a3,p12,p21,p13,p23,ps1,ps2,objective,evaluations") !=
          std::string::npos);
    // Middle direction: the objective column carries at least 9 significant digits.
    std::istringstream row(rows[2]);
    std::string field, objective;
    for (int i = 0; i < 15 && std::getline(row, field, ','); ++i) objective = field;
    std::size_t digits = 0;
    for (char ch : objective) digits += std::isdigit(static_cast<unsigned char>(ch)) ? 1 : 0;
    CHECK(digits >= 10);
}

TEST_CASE("muser and dmc commands")
{
    CommandOptions opts;
    opts.out = scratch("muser");
    CommandResult r = run_command(Command::MUser, load("three_users"), opts);
    CHECK(r.report.find("achievable within outer: yes") != std::string::npos);
    CHECK(data_rows(read(opts.out / "muser_constraints.csv")).size() == 15);

    opts.out = scratch("dmc");
    r = run_command(Command::Dmc, load("binary_dmc"), opts);
    CHECK(r.status == 0);
    const std::string bounds = read(opts.out / "dmc_bounds.csv");
    CHECK(bounds.find("theorem1,r1,0,") != std::string::npos);
    CHECK(bounds.find("corollary2,sum,1,") != std::string::npos);
}

TEST_CASE("export_plot_data")
{
    const std::vector<PlotSeries> one{{"test", {Rate(0.5, 0.25), Rate(0.25, 0.5)}}};
    const std::string text = export_plot_data(one, 42, 7);
    CHECK(text.find("# series test") != std::string::npos);
    CHECK(text.find("# scenario_hash 42") != std::string::npos);
    CHECK(text.find("# seed 7") != std::string::npos);
    CHECK(text.find("bits") != std::string::npos);
    CHECK(data_rows("#\nheader\n" + text).size() == 2);
    CHECK(text.find("0.5 0.25\n0.25 0.5\n") != std::string::npos);

    const RatePolygon mac = baseline_region(Baseline::Mac, testing::symmetric(1), testing::kBudget);
    const std::vector<PlotSeries> pent{{"mac", mac.vertices}};
    const std::string m = export_plot_data(pent, 1, 1);
    CHECK(m.find("0 0\n0.792481250361 0\n0.792481250361 0.368482797083\n0.368482797083 0.792481250361\n0 "
                  "0.792481250361\n") != std::string::npos);

    CHECK_THROWS_AS(export_plot_data(std::vector<PlotSeries>{}, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(export_plot_data(std::vector<PlotSeries>{{"empty", {}}}, 1, 1), std::invalid_argument);
}

TEST_CASE("scenario hash follows the content")
{
    Scenario a = load("symmetric");
    Scenario b = a;
    CHECK(scenario_hash(a) == scenario_hash(b));
    b.gains->k12 = 2.5;
    CHECK(scenario_hash(a) != scenario_hash(b));
}
