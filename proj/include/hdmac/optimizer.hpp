#pragma once

#include "hdmac/gaussian_regions.hpp"
#include "hdmac/polygon.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hdmac {

/// Grid resolution and local-refinement settings of the weighted sum-rate search.
struct SearchConfig {
    int slot_grid = 11;      // lattice points per slot axis
    int power_grid = 9;      // lattice points per power axis
    int refine_iters = 60;   // step-shrink rounds of the local search
    double refine_shrink = 0.7;
    std::uint64_t seed = 1;  // sampling in verify_*; the search itself is deterministic

    void validate() const;
    bool operator==(const SearchConfig&) const = default;
};

enum class Scheme { PdfJoint, PdfSeparate, PdfPartial, Df, Outer, DegradedOuter };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
bool is_pdf(Scheme s);

/// Extra inputs some schemes need. `rho` is read by DegradedOuter only,
/// `separate` by PdfSeparate only.
struct SchemeOptions {
    SeparateOptions separate;
    NoiseCorrelation rho;
};

using Allocation = std::variant<PdfAllocation, DfAllocation>;

struct OptResult {
    Scheme scheme = Scheme::Df;
    Eigen::Vector2d mu = Eigen::Vector2d::Ones();
    TimeSlots slots;
    Allocation allocation;
    Rate vertex = Rate::Zero();
    double objective = 0.0;
    long evaluations = 0;
};

/// Allocation from the fractions of P1 and P2 given to each energy atom.
/// DF atoms:  user 1 {P12, P13, PS1}, user 2 {P21, P23, PS2}.
/// PDF atoms: user 1 {P10, PU, P13, c2*PU, c3*PV}, user 2 {P20, PV, P23, d2*PV, d3*PU}.
/// A power is share * budget / slot (0 in an empty slot). When the shares sum to 1
/// the budget is met with equality, except for energy put in an empty slot or
/// behind a zero cooperative power, which is dropped.
Allocation allocation_from_shares(Scheme scheme, const PowerBudget& budget, const TimeSlots& slots,
                                  std::span<const double> user1, std::span<const double> user2);

/// The scheme's region at a fixed operating point.
LinearRegion scheme_region(Scheme scheme, const ChannelGains& g, const TimeSlots& slots,
                           const Allocation& a, const SchemeOptions& opts = {});

/// Maximizes mu1*R1 + mu2*R2 over slots and power split.
///
/// Every searched point spends each user's budget exactly: the variables are the
/// slot fractions and the shares of P1, P2 given to each power atom, so the grid
/// and the refinement never leave the feasible set. Phase 1 scans a simplex
/// lattice; phase 2 moves mass between pairs of coordinates (and slot time together
/// with the energy sent in it), shrinking the step after a sweep without progress;
/// a final active-set step settles points where several bounds tie.
/// The search is deterministic; cfg.seed does not affect it.
OptResult optimize_scheme(const ChannelGains& g, const PowerBudget& budget, Scheme scheme,
                          const Eigen::Vector2d& mu, const SearchConfig& cfg,
                          const SchemeOptions& opts = {});

struct Frontier {
    std::vector<OptResult> points;  // ordered by angle, mu = (cos t, sin t)
    RatePolygon hull;
};

/// Optimized boundary for weight_count directions evenly spaced in angle over
/// [0, pi/2]. Point k equals optimize_scheme at the k-th direction.
Frontier frontier(const ChannelGains& g, const PowerBudget& budget, Scheme scheme, int weight_count,
                  const SearchConfig& cfg, const SchemeOptions& opts = {});

/// Direction k of weight_count evenly spaced angles.
Eigen::Vector2d frontier_direction(int k, int weight_count);

}  // namespace hdmac
