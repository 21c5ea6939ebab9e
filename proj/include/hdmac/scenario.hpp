#pragma once

#include "hdmac/dmc.hpp"
#include "hdmac/muser.hpp"
#include "hdmac/optimizer.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdmac {

/// Malformed or invalid scenario document. `line` is 1-based, 0 when unknown.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& message, int line);
    int line() const { return line_; }

private:
    int line_;
};

struct DmcSection {
    TimeSlots slots;
    dmc::SlotChannels channels;
    std::optional<dmc::PdfInputDistribution> pdf;
    std::optional<dmc::DfInputDistribution> df;
    std::optional<dmc::OuterInputDistribution> outer;  // defaults to pdf extended

    bool operator==(const DmcSection&) const = default;
};

struct MUserSection {
    MUserGains gains;
    Eigen::VectorXd budgets;
    MUserAllocation allocation;

    bool operator==(const MUserSection& o) const
    {
        return gains == o.gains && budgets.size() == o.budgets.size() && budgets == o.budgets &&
               allocation == o.allocation;
    }
};

struct Scenario {
    std::string name = "scenario";
    std::optional<ChannelGains> gains;
    std::optional<PowerBudget> budget;
    std::optional<TimeSlots> slots;
    std::optional<PdfAllocation> pdf_allocation;
    std::optional<DfAllocation> df_allocation;
    SeparateOptions separate;
    std::optional<NoiseCorrelation> rho;
    std::vector<Scheme> schemes;  // empty: the command's default list
    SearchConfig search;
    int weights = 17;
    std::vector<double> sweep;  // k12 = k21 values
    std::optional<DmcSection> dmc;
    std::optional<MUserSection> m_user;

    bool operator==(const Scenario&) const = default;
};

/// Parses the YAML scenario grammar described in docs/scenario.md. Unknown keys are
/// rejected; every section present is validated.
Scenario parse_scenario(const std::string& text);

/// Inverse of parse_scenario: every field is written, doubles with 17 digits.
std::string serialize_scenario(const Scenario& s);

}  // namespace hdmac
