#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace hdmac {

/// A rate pair (R1, R2) in bits per channel use.
using Rate = Eigen::Vector2d;

/// Raised when a value violates the invariant of its domain type.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kPowerTolerance = 1e-9;
inline constexpr double kSlotTolerance = 1e-12;

/// Link amplitudes of the two-user Gaussian channel and the common noise power.
struct ChannelGains {
    double k12 = 0.0;  // user 1 -> user 2
    double k21 = 0.0;  // user 2 -> user 1
    double k10 = 0.0;  // user 1 -> destination
    double k20 = 0.0;  // user 2 -> destination
    double noise = 1.0;

    void validate() const;
    bool operator==(const ChannelGains&) const = default;
};

/// Fractions of one block spent in the three slots: user 1 alone, user 2 alone,
/// both users together.
struct TimeSlots {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 1.0;

    /// Builds the slots from the first two fractions; a3 = 1 - a1 - a2.
    static TimeSlots from_leading(double a1, double a2);

    void validate() const;
    bool operator==(const TimeSlots&) const = default;
};

struct PowerBudget {
    double p1 = 1.0;
    double p2 = 1.0;

    void validate() const;
    bool operator==(const PowerBudget&) const = default;
};

/// Power split of the partial decode-forward scheme. The c and d weights scale
/// the cooperative powers PU, PV re-sent in the third slot.
struct PdfAllocation {
    double p10 = 0.0, p20 = 0.0;
    double pu = 0.0, pv = 0.0;
    double p13 = 0.0, p23 = 0.0;
    double c2 = 0.0, c3 = 0.0, d2 = 0.0, d3 = 0.0;

    void validate() const;
    bool operator==(const PdfAllocation&) const = default;
};

/// Power split of the decode-forward scheme with independent slot-3 codewords.
struct DfAllocation {
    double p12 = 0.0, p21 = 0.0;
    double p13 = 0.0, p23 = 0.0;
    double ps1 = 0.0, ps2 = 0.0;

    void validate() const;
    bool operator==(const DfAllocation&) const = default;
};

struct PowerUsage {
    double used1 = 0.0;
    double used2 = 0.0;
    bool feasible = true;
};

/// Upper bounds of the forms R1 <= a, R2 <= b, R1 + R2 <= s.
///
/// Every bound of a region formula is kept (not only the minimum) so callers can
/// see which constraint is active. Order inside each list follows the formula
/// that produced it.
struct LinearRegion {
    std::vector<double> r1_bounds;
    std::vector<double> r2_bounds;
    std::vector<double> sum_bounds;

    double min_r1() const;
    double min_r2() const;
    double min_sum() const;

    /// All bounds concatenated: r1 bounds, r2 bounds, sum bounds.
    std::vector<double> flat() const;

    void validate() const;
    bool operator==(const LinearRegion&) const = default;
};

/// Boundary of a convex, downward-closed rate region.
///
/// Vertices run counter-clockwise from the origin: (0,0), (max r1, 0), the
/// Pareto face, then (0, max r2). Degenerate regions keep only the surviving
/// segment or the single origin point.
struct RatePolygon {
    std::vector<Rate> vertices;

    bool empty() const { return vertices.empty(); }
    std::size_t size() const { return vertices.size(); }
};

/// 0.5 * log2(1 + x). Throws std::domain_error for negative x.
double c_gauss(double x);

PowerUsage power_feasible(const TimeSlots& slots, const PdfAllocation& alloc,
                          const PowerBudget& budget);
PowerUsage power_feasible(const TimeSlots& slots, const DfAllocation& alloc,
                          const PowerBudget& budget);

RatePolygon polygon_from_constraints(const LinearRegion& region);

}  // namespace hdmac
