#include "hdmac/gaussian_regions.hpp"

#include "hdmac/polygon.hpp"

#include <cmath>
#include <sstream>

namespace hdmac {

namespace {

// Clamps round-off negatives from the optimizer before taking a root.
double safe_sqrt(double x)
{
    if (x < 0.0 && x >= -1e-12) return 0.0;
    return std::sqrt(x);
}

// Contribution of one slot; a zero-length slot contributes exactly nothing.
double in_slot(double fraction, double snr)
{
    return fraction == 0.0 ? 0.0 : fraction * c_gauss(snr);
}

void check_inputs(const ChannelGains& g, const TimeSlots& s)
{
    g.validate();
    s.validate();
}

// Per-slot mutual-information terms shared by the PDF regions.
struct PdfTerms {
    double user1 = 0, dest1 = 0;  // slot 1 at user 2 / destination
    double user2 = 0, dest2 = 0;  // slot 2 at user 1 / destination
    double private1 = 0, private2 = 0;
    double given_uv = 0;  // slot 3 with both cooperative parts known
    double given_v = 0;   // U part still coherent
    double given_u = 0;   // V part still coherent
    double coherent = 0;  // nothing known
};

PdfTerms pdf_terms(const ChannelGains& g, const TimeSlots& s, const PdfAllocation& a)
{
    const double n = g.noise;
    const double k10 = g.k10, k20 = g.k20;
    const double q12 = g.k12 * g.k12, q21 = g.k21 * g.k21;
    const double q10 = k10 * k10, q20 = k20 * k20;

    PdfTerms t;
    t.user1 = in_slot(s.a1, q12 * (a.pu + a.p10) / n);
    t.dest1 = in_slot(s.a1, q10 * (a.pu + a.p10) / n);
    t.user2 = in_slot(s.a2, q21 * (a.pv + a.p20) / n);
    t.dest2 = in_slot(s.a2, q20 * (a.pv + a.p20) / n);

    t.private1 = in_slot(s.a3, q10 * a.p13 / n);
    t.private2 = in_slot(s.a3, q20 * a.p23 / n);
    const double base = q10 * a.p13 + q20 * a.p23;
    t.given_uv = in_slot(s.a3, base / n);
    t.given_v = in_slot(s.a3, (q10 * (a.p13 + a.c2 * a.pu) + q20 * (a.p23 + a.d3 * a.pu) +
                               2.0 * k10 * k20 * safe_sqrt(a.c2 * a.d3) * a.pu) / n);
    t.given_u = in_slot(s.a3, (q10 * (a.p13 + a.c3 * a.pv) + q20 * (a.p23 + a.d2 * a.pv) +
                               2.0 * k10 * k20 * safe_sqrt(a.d2 * a.c3) * a.pv) / n);
    const double gu = k10 * safe_sqrt(a.c2) + k20 * safe_sqrt(a.d3);
    const double gv = k10 * safe_sqrt(a.c3) + k20 * safe_sqrt(a.d2);
    t.coherent = in_slot(s.a3, (base + a.pu * gu * gu + a.pv * gv * gv) / n);
    return t;
}

LinearRegion assemble_pdf(const PdfTerms& t)
{
    LinearRegion r;
    r.r1_bounds = {t.user1 + t.private1};
    r.r2_bounds = {t.user2 + t.private2};
    r.sum_bounds = {
        t.user1 + t.user2 + t.given_uv,
        t.dest1 + t.user2 + t.given_v,
        t.user1 + t.dest2 + t.given_u,
        t.dest1 + t.dest2 + t.coherent,
    };
    return r;
}

// Decode-forward terms with the slot-1/2 inter-user SNR gains passed in, so the
// outer bounds reuse the same assembly.
LinearRegion df_with_gains(const ChannelGains& g, const TimeSlots& s, const DfAllocation& a,
                           double snr_gain12, double snr_gain21)
{
    const double n = g.noise;
    const double q10 = g.k10 * g.k10, q20 = g.k20 * g.k20;

    const double user1 = in_slot(s.a1, snr_gain12 * a.p12 / n);
    const double dest1 = in_slot(s.a1, q10 * a.p12 / n);
    const double user2 = in_slot(s.a2, snr_gain21 * a.p21 / n);
    const double dest2 = in_slot(s.a2, q20 * a.p21 / n);

    const double private1 = in_slot(s.a3, q10 * a.p13 / n);
    const double private2 = in_slot(s.a3, q20 * a.p23 / n);
    const double given_s = in_slot(s.a3, (q10 * a.p13 + q20 * a.p23) / n);
    const double coherent =
        in_slot(s.a3, (q10 * (a.p13 + a.ps1) + q20 * (a.p23 + a.ps2) +
                       2.0 * g.k10 * g.k20 * safe_sqrt(a.ps1 * a.ps2)) / n);

    LinearRegion r;
    r.r1_bounds = {user1 + private1};
    r.r2_bounds = {user2 + private2};
    r.sum_bounds = {
        user1 + user2 + given_s,
        dest1 + user2 + coherent,
        user1 + dest2 + coherent,
        dest1 + dest2 + coherent,
    };
    return r;
}

LinearRegion drop_middle_sums(LinearRegion r)
{
    r.sum_bounds = {r.sum_bounds.front(), r.sum_bounds.back()};
    return r;
}

}  // namespace

void NoiseCorrelation::validate() const
{
    if (!(std::abs(rho1) <= 1.0) || !(std::abs(rho2) <= 1.0)) {
        std::ostringstream msg;
        msg << "NoiseCorrelation: |rho| must be <= 1 (got " << rho1 << ", " << rho2 << ")";
        throw ValidationError(msg.str());
    }
}

LinearRegion pdf_joint_region(const ChannelGains& g, const TimeSlots& slots, const PdfAllocation& a)
{
    check_inputs(g, slots);
    a.validate();
    return assemble_pdf(pdf_terms(g, slots, a));
}

LinearRegion pdf_separate_region(const ChannelGains& g, const TimeSlots& slots,
                                 const PdfAllocation& a, const SeparateOptions& opts)
{
    check_inputs(g, slots);
    a.validate();
    const PdfTerms t = pdf_terms(g, slots, a);
    const double n = g.noise;
    const double q12 = g.k12 * g.k12, q21 = g.k21 * g.k21;
    const double q10 = g.k10 * g.k10, q20 = g.k20 * g.k20;

    // private slot-1/2 messages decoded on their own after slot 3
    const double direct1 = in_slot(slots.a1, q10 * a.p10 / n);
    const double direct2 = in_slot(slots.a2, q20 * a.p20 / n);
    const double private1 = std::min(in_slot(slots.a1, q12 * a.p10 / n), direct1);
    const double private2 = std::min(in_slot(slots.a2, q21 * a.p20 / n), direct2);
    const double last1 =
        opts.literal_p1 ? std::min(in_slot(slots.a1, q12 * *opts.literal_p1 / n), direct1) : private1;

    LinearRegion r = assemble_pdf(t);
    r.sum_bounds[1] = private1 + t.user2 + t.given_v;
    r.sum_bounds[2] = t.user1 + private2 + t.given_u;
    r.sum_bounds[3] = last1 + private2 + t.coherent;
    return r;
}

LinearRegion pdf_partial_user_region(const ChannelGains& g, const TimeSlots& slots,
                                     const PdfAllocation& a)
{
    check_inputs(g, slots);
    a.validate();
    PdfTerms t = pdf_terms(g, slots, a);
    const double n = g.noise;
    const double q12 = g.k12 * g.k12, q21 = g.k21 * g.k21;
    const double q10 = g.k10 * g.k10, q20 = g.k20 * g.k20;

    // the partner decodes only U (resp. V), treating the private layer as noise
    t.user1 = in_slot(slots.a1, q12 * a.pu / (q12 * a.p10 + n)) + in_slot(slots.a1, q10 * a.p10 / n);
    t.user2 = in_slot(slots.a2, q21 * a.pv / (q21 * a.p20 + n)) + in_slot(slots.a2, q20 * a.p20 / n);
    return assemble_pdf(t);
}

LinearRegion df_region(const ChannelGains& g, const TimeSlots& slots, const DfAllocation& a)
{
    check_inputs(g, slots);
    a.validate();
    return df_with_gains(g, slots, a, g.k12 * g.k12, g.k21 * g.k21);
}

LinearRegion gaussian_outer_region(const ChannelGains& g, const TimeSlots& slots,
                                   const DfAllocation& a)
{
    check_inputs(g, slots);
    a.validate();
    return drop_middle_sums(df_with_gains(g, slots, a, g.k12 * g.k12 + g.k10 * g.k10,
                                          g.k21 * g.k21 + g.k20 * g.k20));
}

LinearRegion degraded_outer_region(const ChannelGains& g, const TimeSlots& slots,
                                   const DfAllocation& a, const NoiseCorrelation& rho)
{
    check_inputs(g, slots);
    a.validate();
    rho.validate();
    if (std::abs(rho.rho1) >= 1.0 || std::abs(rho.rho2) >= 1.0)
        throw std::domain_error("degraded_outer_region: |rho| = 1 makes the joint observation singular");

    const double gain12 = (g.k12 * g.k12 + g.k10 * g.k10 - 2.0 * g.k10 * g.k12 * rho.rho1) /
                          (1.0 - rho.rho1 * rho.rho1);
    const double gain21 = (g.k21 * g.k21 + g.k20 * g.k20 - 2.0 * g.k20 * g.k21 * rho.rho2) /
                          (1.0 - rho.rho2 * rho.rho2);
    return drop_middle_sums(df_with_gains(g, slots, a, gain12, gain21));
}

NoiseCorrelation degraded_correlation(const ChannelGains& g)
{
    if (!(g.k12 > g.k10) || !(g.k21 > g.k20))
        throw std::domain_error("degraded_correlation: requires k12 > k10 and k21 > k20");
    return NoiseCorrelation{g.k10 / g.k12, g.k20 / g.k21};
}

RatePolygon baseline_region(Baseline kind, const ChannelGains& g, const PowerBudget& budget)
{
    g.validate();
    // a zero budget is allowed here: it collapses the baseline onto one axis
    if (!(budget.p1 >= 0.0) || !(budget.p2 >= 0.0))
        throw ValidationError("baseline_region: budgets must be >= 0");
    const double snr1 = g.k10 * g.k10 * budget.p1 / g.noise;
    const double snr2 = g.k20 * g.k20 * budget.p2 / g.noise;

    if (kind == Baseline::Mac) {
        LinearRegion r{{c_gauss(snr1)}, {c_gauss(snr2)}, {c_gauss(snr1 + snr2)}};
        return polygon_from_constraints(r);
    }
    // Each user alone in half the block at twice the power; time sharing with the
    // full-block single-user points closes the region.
    const Rate points[] = {
        {c_gauss(snr1), 0.0},
        {0.5 * c_gauss(2.0 * snr1), 0.5 * c_gauss(2.0 * snr2)},
        {0.0, c_gauss(snr2)},
    };
    return upper_hull(points);
}

}  // namespace hdmac
