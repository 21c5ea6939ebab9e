#pragma once

#include "hdmac/channel.hpp"

#include <optional>

namespace hdmac {

/// Correlation between the inter-user noise and the destination noise of the
/// same slot (slot 1: rho1, slot 2: rho2).
struct NoiseCorrelation {
    double rho1 = 0.0;
    double rho2 = 0.0;

    void validate() const;
    bool operator==(const NoiseCorrelation&) const = default;
};

/// Options for the separate-decoding region.
struct SeparateOptions {
    /// When set, the last sum bound compares C(K12^2 * P1 / N) with the direct
    /// term using this total power P1 instead of P10.
    std::optional<double> literal_p1;

    bool operator==(const SeparateOptions&) const = default;
};

// Each PDF region returns r1 = {1 bound}, r2 = {1 bound} and four sum bounds in the
// order: no cooperative term, U cooperative, V cooperative, full coherent.

/// Partial decode-forward, full decoding at the users, joint decoding at the destination.
LinearRegion pdf_joint_region(const ChannelGains& g, const TimeSlots& slots, const PdfAllocation& a);

/// Partial decode-forward with slot-by-slot (separate) decoding at the destination.
LinearRegion pdf_separate_region(const ChannelGains& g, const TimeSlots& slots,
                                 const PdfAllocation& a, const SeparateOptions& opts = {});

/// Joint decoding at the destination, but each user decodes only the partner's
/// public message.
LinearRegion pdf_partial_user_region(const ChannelGains& g, const TimeSlots& slots,
                                     const PdfAllocation& a);

/// Decode-forward region; four sum bounds ordered as in pdf_joint_region.
LinearRegion df_region(const ChannelGains& g, const TimeSlots& slots, const DfAllocation& a);

/// Outer bound: the DF region with K12^2 -> K12^2 + K10^2 and K21^2 -> K21^2 + K20^2.
/// The two middle sum bounds are redundant and dropped, so sum_bounds has two
/// entries (no cooperative term, full coherent).
LinearRegion gaussian_outer_region(const ChannelGains& g, const TimeSlots& slots,
                                   const DfAllocation& a);

/// Outer bound when the destination noise of slots 1 and 2 is correlated with the
/// inter-user noise. Throws std::domain_error when |rho| >= 1.
LinearRegion degraded_outer_region(const ChannelGains& g, const TimeSlots& slots,
                                   const DfAllocation& a, const NoiseCorrelation& rho);

/// Correlations that make the outer slot-1/2 terms collapse onto the DF ones.
NoiseCorrelation degraded_correlation(const ChannelGains& g);

enum class Baseline { Mac, Tdma };

/// Classical MAC pentagon or fixed half-slot TDMA with doubled per-slot power.
RatePolygon baseline_region(Baseline kind, const ChannelGains& g, const PowerBudget& budget);

}  // namespace hdmac
