#pragma once

#include "hdmac/channel.hpp"

#include <span>
#include <string>
#include <vector>

namespace hdmac::dmc {

inline constexpr int kMaxAlphabet = 4;
inline constexpr double kNormTolerance = 1e-12;

using VarList = std::vector<std::string>;

/// Dense table over named finite variables, row-major with the last variable
/// fastest. The first `given` variables are conditioning variables: for every
/// assignment of them the remaining block is a distribution. given == 0 makes
/// the table a joint pmf.
struct Table {
    VarList vars;
    std::vector<int> sizes;
    std::vector<double> values;
    std::size_t given = 0;

    std::size_t index_of(const std::string& var) const;
    bool has(const std::string& var) const;
    std::size_t cells() const;

    /// Throws ValidationError if an entry is negative or a distribution does not
    /// sum to 1 within kNormTolerance.
    void validate(const std::string& what = "table") const;

    bool operator==(const Table&) const = default;
};

/// Joint pmf as a product of factors over the union of their variables. Shared
/// variables must agree in alphabet size.
Table product(std::span<const Table> factors);

/// Sums out every variable not in `keep`; result variables follow `keep`'s order.
Table marginal(const Table& joint, const VarList& keep);

Table rename(Table t, const std::string& from, const std::string& to);

/// I(A;B|C) in bits, summing p log2(p(a,b|c) / (p(a|c) p(b|c))) with 0 log 0 = 0.
double mutual_information(const Table& joint, const VarList& a, const VarList& b,
                          const VarList& given = {});

/// Per-slot transition tables. Variable names are fixed:
///   slot1: p(y1, y12 | x1), slot2: p(y2, y21 | x2), slot3: p(y3 | x13, x23).
/// x1 / x2 stand for the user's slot-1 / slot-2 input (x10 or x12, x20 or x21).
struct SlotChannels {
    Table slot1;
    Table slot2;
    Table slot3;

    void validate() const;
    bool operator==(const SlotChannels&) const = default;
};

/// p(x10,u) p(x20,v) p(x13|u,v) p(x23|u,v)
struct PdfInputDistribution {
    Table x10_u;         // vars {x10, u}
    Table x20_v;         // vars {x20, v}
    Table x13_given_uv;  // vars {u, v | x13}
    Table x23_given_uv;  // vars {u, v | x23}

    void validate() const;
    bool operator==(const PdfInputDistribution&) const = default;
};

/// p(x12) p(x21) p(s) p(x13|s) p(x23|s)
struct DfInputDistribution {
    Table x12;
    Table x21;
    Table s;
    Table x13_given_s;  // vars {s | x13}
    Table x23_given_s;  // vars {s | x23}

    void validate() const;
    bool operator==(const DfInputDistribution&) const = default;
};

/// p(x10,u) p(x20,v) p(x13|u,v,x10) p(x23|u,v,x20)
struct OuterInputDistribution {
    Table x10_u;
    Table x20_v;
    Table x13_given_uvx10;  // vars {u, v, x10 | x13}
    Table x23_given_uvx20;  // vars {u, v, x20 | x23}

    void validate() const;
    bool operator==(const OuterInputDistribution&) const = default;
};

/// Outer-bound distribution whose slot-3 inputs ignore the slot-1/2 inputs.
OuterInputDistribution extend_to_outer(const PdfInputDistribution& dist);

/// Six bounds: r1, r2, then four sum bounds ordered as in the Gaussian PDF region.
LinearRegion theorem1_region(const SlotChannels& ch, const PdfInputDistribution& dist,
                             const TimeSlots& slots);

/// Separate decoding at the destination; same layout as theorem1_region.
LinearRegion corollary1_region(const SlotChannels& ch, const PdfInputDistribution& dist,
                               const TimeSlots& slots);

LinearRegion theorem2_region(const SlotChannels& ch, const DfInputDistribution& dist,
                             const TimeSlots& slots);

enum class OuterVariant { Theorem3, Corollary2 };

/// Theorem3: six bounds laid out like theorem1_region. Corollary2: r1, r2 and two
/// sum bounds, with the cooperative variable S taken as the pair (U, V).
LinearRegion dmc_outer_region(OuterVariant variant, const SlotChannels& ch,
                              const OuterInputDistribution& dist, const TimeSlots& slots);

}  // namespace hdmac::dmc
