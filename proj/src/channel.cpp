#include "hdmac/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hdmac {

namespace {

void require_nonneg(double v, const char* type, const char* field)
{
    if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << type << "." << field << " must be finite and >= 0 (got " << v << ")";
        throw ValidationError(msg.str());
    }
}

void require_positive(double v, const char* type, const char* field)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << type << "." << field << " must be finite and > 0 (got " << v << ")";
        throw ValidationError(msg.str());
    }
}

double min_of(const std::vector<double>& v)
{
    return *std::min_element(v.begin(), v.end());
}

}  // namespace

void ChannelGains::validate() const
{
    require_nonneg(k12, "ChannelGains", "k12");
    require_nonneg(k21, "ChannelGains", "k21");
    require_nonneg(k10, "ChannelGains", "k10");
    require_nonneg(k20, "ChannelGains", "k20");
    require_positive(noise, "ChannelGains", "noise");
}

TimeSlots TimeSlots::from_leading(double a1, double a2)
{
    double a3 = 1.0 - a1 - a2;
    // round-off from the subtraction
    if (a3 < 0.0 && a3 > -kSlotTolerance) a3 = 0.0;
    return TimeSlots{a1, a2, a3};
}

void TimeSlots::validate() const
{
    require_nonneg(a1, "TimeSlots", "a1");
    require_nonneg(a2, "TimeSlots", "a2");
    require_nonneg(a3, "TimeSlots", "a3");
    if (std::abs(a1 + a2 + a3 - 1.0) > kSlotTolerance) {
        std::ostringstream msg;
        msg << "TimeSlots: a1 + a2 + a3 must equal 1 (got " << a1 + a2 + a3 << ")";
        throw ValidationError(msg.str());
    }
}

void PowerBudget::validate() const
{
    require_positive(p1, "PowerBudget", "p1");
    require_positive(p2, "PowerBudget", "p2");
}

void PdfAllocation::validate() const
{
    require_nonneg(p10, "PdfAllocation", "p10");
    require_nonneg(p20, "PdfAllocation", "p20");
    require_nonneg(pu, "PdfAllocation", "pu");
    require_nonneg(pv, "PdfAllocation", "pv");
    require_nonneg(p13, "PdfAllocation", "p13");
    require_nonneg(p23, "PdfAllocation", "p23");
    require_nonneg(c2, "PdfAllocation", "c2");
    require_nonneg(c3, "PdfAllocation", "c3");
    require_nonneg(d2, "PdfAllocation", "d2");
    require_nonneg(d3, "PdfAllocation", "d3");
}

void DfAllocation::validate() const
{
    require_nonneg(p12, "DfAllocation", "p12");
    require_nonneg(p21, "DfAllocation", "p21");
    require_nonneg(p13, "DfAllocation", "p13");
    require_nonneg(p23, "DfAllocation", "p23");
    require_nonneg(ps1, "DfAllocation", "ps1");
    require_nonneg(ps2, "DfAllocation", "ps2");
}

double LinearRegion::min_r1() const { return min_of(r1_bounds); }
double LinearRegion::min_r2() const { return min_of(r2_bounds); }
double LinearRegion::min_sum() const { return min_of(sum_bounds); }

std::vector<double> LinearRegion::flat() const
{
    std::vector<double> out;
    out.reserve(r1_bounds.size() + r2_bounds.size() + sum_bounds.size());
    out.insert(out.end(), r1_bounds.begin(), r1_bounds.end());
    out.insert(out.end(), r2_bounds.begin(), r2_bounds.end());
    out.insert(out.end(), sum_bounds.begin(), sum_bounds.end());
    return out;
}

void LinearRegion::validate() const
{
    if (r1_bounds.empty() || r2_bounds.empty() || sum_bounds.empty())
        throw ValidationError("LinearRegion: every bound list must be non-empty");
    for (double b : flat()) {
        if (!std::isfinite(b) || b < 0.0)
            throw ValidationError("LinearRegion: bounds must be finite and >= 0");
    }
}

double c_gauss(double x)
{
    if (!(x >= 0.0)) throw std::domain_error("c_gauss: argument must be >= 0");
    return 0.5 * std::log2(1.0 + x);
}

PowerUsage power_feasible(const TimeSlots& slots, const PdfAllocation& a,
                          const PowerBudget& budget)
{
    PowerUsage u;
    u.used1 = slots.a1 * (a.p10 + a.pu) + slots.a3 * (a.p13 + a.c2 * a.pu + a.c3 * a.pv);
    u.used2 = slots.a2 * (a.p20 + a.pv) + slots.a3 * (a.p23 + a.d3 * a.pu + a.d2 * a.pv);
    u.feasible = u.used1 <= budget.p1 + kPowerTolerance && u.used2 <= budget.p2 + kPowerTolerance;
    return u;
}

PowerUsage power_feasible(const TimeSlots& slots, const DfAllocation& a,
                          const PowerBudget& budget)
{
    PowerUsage u;
    u.used1 = slots.a1 * a.p12 + slots.a3 * (a.p13 + a.ps1);
    u.used2 = slots.a2 * a.p21 + slots.a3 * (a.p23 + a.ps2);
    u.feasible = u.used1 <= budget.p1 + kPowerTolerance && u.used2 <= budget.p2 + kPowerTolerance;
    return u;
}

RatePolygon polygon_from_constraints(const LinearRegion& region)
{
    region.validate();
    const double a = region.min_r1();
    const double b = region.min_r2();
    const double s = region.min_sum();

    std::vector<Rate> pts;
    pts.emplace_back(0.0, 0.0);
    pts.emplace_back(std::min(a, s), 0.0);
    if (s >= a + b) {
        pts.emplace_back(a, b);
    } else {
        if (s > a) pts.emplace_back(a, s - a);
        if (s > b) pts.emplace_back(s - b, b);
    }
    pts.emplace_back(0.0, std::min(b, s));

    RatePolygon poly;
    for (const Rate& p : pts) {
        if (poly.vertices.empty() || (p - poly.vertices.back()).cwiseAbs().maxCoeff() > 0.0)
            poly.vertices.push_back(p);
    }
    // closing vertex coincides with the origin when b or s is zero
    while (poly.vertices.size() > 1 && poly.vertices.back().isZero(0.0))
        poly.vertices.pop_back();
    return poly;
}

}  // namespace hdmac
