#include "hdmac/scenario.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace hdmac;

namespace {

const char* kFull = R"(name: everything
gains: {k12: 2, k21: 1.5, k10: 1, k20: 0.8, noise: 1.25}
budget: {p1: 2, p2: 3}
slots: {a1: 0.2, a2: 0.3, a3: 0.5}
pdf_allocation: {p10: 1, p20: 0.5, pu: 2, pv: 1.5, p13: 0.1, p23: 0.2, c2: 0.3, c3: 0.4, d2: 0.5, d3: 0.6}
df_allocation: {p12: 4, p21: 4, p13: 1, p23: 1, ps1: 1, ps2: 1}
separate: {literal_p1: 2}
rho: {rho1: 0.5, rho2: -0.25}
schemes: [df, outer, degraded_outer]
search: {slot_grid: 5, power_grid: 4, refine_iters: 10, refine_shrink: 0.5, seed: 99}
weights: 9
sweep: [1.5, 2, 4]
dmc:
  slots: {a1: 0.3, a2: 0.3}
  channels:
    slot1: {vars: [x1, y1, y12], sizes: [2, 2, 2], given: 1, values: [0.76, 0.04, 0.19, 0.01, 0.01, 0.19, 0.04, 0.76]}
    slot2: {vars: [x2, y2, y21], sizes: [2, 2, 2], given: 1, values: [0.76, 0.04, 0.19, 0.01, 0.01, 0.19, 0.04, 0.76]}
    slot3: {vars: [x13, x23, y3], sizes: [2, 2, 2], given: 2, values: [0.9, 0.1, 0.5, 0.5, 0.5, 0.5, 0.1, 0.9]}
  df:
    x12: {vars: [x12], sizes: [2], values: [0.5, 0.5]}
    x21: {vars: [x21], sizes: [2], values: [0.3, 0.7]}
    s: {vars: [s], sizes: [2], values: [0.5, 0.5]}
    x13_given_s: {vars: [s, x13], sizes: [2, 2], given: 1, values: [0.8, 0.2, 0.2, 0.8]}
    x23_given_s: {vars: [s, x23], sizes: [2, 2], given: 1, values: [0.8, 0.2, 0.2, 0.8]}
m_user:
  m: 2
  k_user: [[0, 2], [1.5, 0]]
  k_dest: [1, 0.8]
  budgets: [2, 2]
  slots: [0.25, 0.25, 0.5]
  p_solo: [4, 4]
  p_priv: [1, 1]
  p_coop: [1, 1]
)";

int error_line(const std::string& text)
{
    try {
        parse_scenario(text);
    } catch (const ScenarioError& e) {
        return e.line();
    }
    return -1;
}

std::string error_text(const std::string& text)
{
    try {
        parse_scenario(text);
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return "";
}

std::string read(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("minimal scenario takes the defaults")
{
    const Scenario s = parse_scenario("gains: {k12: 2, k21: 2, k10: 1, k20: 1}\nbudget: {p1: 2, p2: 2}\n");
    REQUIRE(s.gains);
    CHECK(s.gains->noise == 1.0);
    CHECK(s.search == SearchConfig{});
    CHECK(s.weights == 17);
    CHECK(s.sweep.empty());
    CHECK_FALSE(s.slots);
    CHECK(s.name == "scenario");
}

TEST_CASE("symmetric sweep scenario")
{
    const Scenario s = parse_scenario(
        "gains: {k12: 2, k21: 2, k10: 1, k20: 1, noise: 1}\nbudget: {p1: 2, p2: 2}\nsweep: [1.5, 2, 4]\n");
    CHECK(s.sweep == std::vector<double>{1.5, 2, 4});
}

TEST_CASE("errors carry the line and the field")
{
    CHECK(error_line("gains: {k12: 2, k21: 2, k10: 1, k20: 1}\nslots: {a1: 0.7, a2: 0.5}\n") == 2);
    CHECK(error_text("slots: {a1: 0.7, a2: 0.5}\n").find("TimeSlots") != std::string::npos);

    CHECK(error_line("budget: {p1: 2, p2: 2}\nbogus: 1\n") == 2);
    CHECK(error_text("budget: {p1: 2, p2: 2}\nbogus: 1\n").find("bogus") != std::string::npos);
    CHECK(error_line("budget:\n  p1: 2\n  p2: 2\n  p3: 1\n") == 4);

    const std::string bad_number = error_text("gains: {k12: abc, k21: 2, k10: 1, k20: 1}\n");
    CHECK(bad_number.find("gains.k12") != std::string::npos);
    CHECK(error_text("gains: {k12: 2, k21: 2, k10: 1}\n").find("k20") != std::string::npos);
    CHECK(error_text("gains: {k12: -2, k21: 2, k10: 1, k20: 1}\n").find("ChannelGains") != std::string::npos);

    CHECK(error_line("name: x\ngains: {k12: 2, k21: [\n") > 0);
    CHECK(error_line("") == 0);
    CHECK(error_text("schemes: [df, tdma]\n").find("tdma") != std::string::npos);
    CHECK(error_text("weights: 2\n").find("weights") != std::string::npos);
    CHECK(error_text("search: {refine_shrink: 1.5}\n").find("SearchConfig") != std::string::npos);
    CHECK(error_text("rho: {rho1: 1.5, rho2: 0}\n").find("rho") != std::string::npos);
}

TEST_CASE("m_user section is checked against the power identity")
{
    std::string text = kFull;
    text.replace(text.find("p_coop: [1, 1]"), 14, "p_coop: [2, 1]");
    CHECK(error_text(text).find("m_user") != std::string::npos);
}

TEST_CASE("dmc tables are validated")
{
    std::string text = kFull;
    text.replace(text.find("[0.8, 0.2, 0.2, 0.8]"), 20, "[0.8, 0.3, 0.2, 0.8]");
    CHECK(error_text(text).find("dmc.df") != std::string::npos);
}

TEST_CASE("parse, serialize, parse round-trips")
{
    const Scenario s = parse_scenario(kFull);
    REQUIRE(s.dmc);
    REQUIRE(s.m_user);
    CHECK(s.separate.literal_p1 == 2.0);
    CHECK(s.schemes.size() == 3);
    const std::string text = serialize_scenario(s);
    const Scenario back = parse_scenario(text);
    CHECK(back == s);
    CHECK(serialize_scenario(back) == text);

    Scenario odd = s;
    odd.gains->k12 = 0.1 + 0.2;
    odd.budget->p1 = 1.0 / 3.0;
    odd.slots = TimeSlots::from_leading(0.1, 0.7);
    CHECK(parse_scenario(serialize_scenario(odd)) == odd);

    const Scenario empty;
    CHECK(parse_scenario(serialize_scenario(empty)) == empty);
}

TEST_CASE("shipped scenarios parse and round-trip")
{
    for (const char* name : {"df_region", "symmetric", "three_users", "binary_dmc"}) {
        INFO(name);
        const std::string path = std::string(HDMAC_SOURCE_DIR) + "/scenarios/" + name + ".yaml";
        const Scenario s = parse_scenario(read(path));
        CHECK(parse_scenario(serialize_scenario(s)) == s);
    }
}
