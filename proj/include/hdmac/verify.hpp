#pragma once

#include "hdmac/optimizer.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace hdmac {

enum class CheckKind {
    SeparateInJoint,    // separate-decoding polygon inside the joint one
    PartialInFull,      // partial-user-decoding polygon inside the full one
    StrictGap,          // joint min sum bound exceeds the separate one by more than 1e-6
    PdfToDf,            // DF value at the image of a PDF point minus the PDF value
    DfToPdf,            // PDF value at the image of a DF point minus the DF value
    PowerIdentity,      // minus the energy difference between a point and its image
    FrontierAgreement,  // minus |value of scheme a - value of scheme b|
    FrontierDominance,  // value of scheme b minus value of scheme a
    DegradedBounds,     // minus the largest bound difference, degraded outer vs DF
};

std::string check_name(CheckKind kind);

/// Everything needed to recompute one slack. Point a is the source, point b the
/// compared or mapped point when the check has one.
struct Witness {
    CheckKind kind = CheckKind::SeparateInJoint;
    ChannelGains gains;
    PowerBudget budget;
    NoiseCorrelation rho;
    Eigen::Vector2d mu = Eigen::Vector2d::Ones();
    Scheme scheme_a = Scheme::PdfJoint;
    TimeSlots slots_a;
    Allocation alloc_a;
    Scheme scheme_b = Scheme::PdfJoint;
    TimeSlots slots_b;
    Allocation alloc_b;
};

/// Recomputes the slack a witness was recorded with.
double replay(const Witness& w);

struct Check {
    CheckKind kind = CheckKind::SeparateInJoint;
    double slack = 0.0;
    double tolerance = 0.0;
    long count = 0;  // points checked
    Witness witness;  // where the slack was worst

    bool pass() const { return slack >= -tolerance; }
};

/// Outcome of one claim. worst_slack, tolerance and witness come from the check
/// with the smallest margin slack + tolerance, so pass == worst_slack >= -tolerance.
struct Verdict {
    std::string tag;
    bool applicable = true;
    bool pass = true;
    double worst_slack = 0.0;
    double tolerance = 0.0;
    Witness witness;
    std::vector<Check> checks;
    std::map<std::string, double> metrics;
    std::string note;
};

/// DF image of a PDF point: P12 = P10 + PU, P21 = P20 + PV,
/// PS1 = c2 PU + c3 PV, PS2 = d3 PU + d2 PV.
DfAllocation pdf_to_df(const PdfAllocation& a);

/// A PDF point whose region matches the DF one as closely as the weights allow.
/// The slot-1/2 messages become cooperative (PU = P12, PV = P21) and the slot-3
/// coherent powers are split between U and V in a common ratio theta. At theta = 1
/// V is empty and P21 moves to P20; at theta = 0 U is empty and P12 moves to P10.
/// theta maximizes the weighted value.
PdfAllocation df_to_pdf(const ChannelGains& g, const TimeSlots& slots, const DfAllocation& a,
                        const Eigen::Vector2d& mu);

/// Feasible allocation with each budget met with equality, drawn uniformly over
/// the slot simplex and the share simplices.
struct RandomPoint {
    TimeSlots slots;
    Allocation allocation;
};
RandomPoint random_point(Scheme scheme, const PowerBudget& budget, std::mt19937_64& rng);

Verdict verify_pdf_df_equivalence(const ChannelGains& g, const PowerBudget& budget, const SearchConfig& cfg,
                                  int weight_count);

Verdict verify_joint_dominates_separate(const ChannelGains& g, const PowerBudget& budget, int samples,
                                        std::uint64_t seed);

/// DF hull inside the outer hull, compared direction by direction. The metric
/// sum_rate_gap is the outer minus DF optimum at mu = (1, 1).
Verdict verify_achievable_in_outer(const ChannelGains& g, const PowerBudget& budget, const SearchConfig& cfg,
                                   int weight_count);

/// Not applicable unless k12 > k10 and k21 > k20.
Verdict verify_degraded_capacity(const ChannelGains& g, const PowerBudget& budget, const SearchConfig& cfg,
                                 int weight_count, int samples = 100);

/// Fixed-allocation containment (only when k12 > k10 and k21 > k20) and frontier
/// agreement of the two PDF user-decoding variants.
Verdict verify_full_vs_partial_user_decoding(const ChannelGains& g, const PowerBudget& budget,
                                             const SearchConfig& cfg, int weight_count = 17,
                                             int samples = 200);

}  // namespace hdmac
