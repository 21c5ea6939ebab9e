#include "hdmac/dmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hdmac::dmc {

namespace {

std::vector<std::size_t> strides_of(const std::vector<int>& sizes)
{
    std::vector<std::size_t> s(sizes.size(), 1);
    for (std::size_t i = sizes.size(); i-- > 1;) s[i - 1] = s[i] * static_cast<std::size_t>(sizes[i]);
    return s;
}

// Advances a row-major multi-index; returns false after the last cell.
bool next_index(std::vector<int>& idx, const std::vector<int>& sizes)
{
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < sizes[i]) return true;
        idx[i] = 0;
    }
    return false;
}

VarList concat(std::initializer_list<const VarList*> lists)
{
    VarList out;
    for (const VarList* l : lists) out.insert(out.end(), l->begin(), l->end());
    return out;
}

double weighted(double fraction, double info) { return fraction == 0.0 ? 0.0 : fraction * info; }

void expect_vars(const Table& t, const VarList& vars, std::size_t given, const std::string& what)
{
    if (t.vars != vars || t.given != given) {
        std::ostringstream msg;
        msg << what << ": expected variables {";
        for (std::size_t i = 0; i < vars.size(); ++i) msg << (i ? "," : "") << (i == given && given ? "| " : "") << vars[i];
        msg << "}";
        throw ValidationError(msg.str());
    }
    t.validate(what);
}

}  // namespace

std::size_t Table::index_of(const std::string& var) const
{
    const auto it = std::find(vars.begin(), vars.end(), var);
    if (it == vars.end()) throw ValidationError("table has no variable '" + var + "'");
    return static_cast<std::size_t>(it - vars.begin());
}

bool Table::has(const std::string& var) const
{
    return std::find(vars.begin(), vars.end(), var) != vars.end();
}

std::size_t Table::cells() const
{
    return std::accumulate(sizes.begin(), sizes.end(), std::size_t{1},
                           [](std::size_t acc, int s) { return acc * static_cast<std::size_t>(s); });
}

void Table::validate(const std::string& what) const
{
    if (vars.size() != sizes.size() || given > vars.size())
        throw ValidationError(what + ": malformed table header");
    for (int s : sizes) {
        if (s < 1) throw ValidationError(what + ": alphabet sizes must be >= 1");
    }
    if (values.size() != cells()) throw ValidationError(what + ": value count does not match dimensions");
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(what + ": entries must be finite and >= 0");
    }
    std::size_t blocks = 1;
    for (std::size_t i = 0; i < given; ++i) blocks *= static_cast<std::size_t>(sizes[i]);
    const std::size_t block = values.size() / blocks;
    for (std::size_t b = 0; b < blocks; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < block; ++i) sum += values[b * block + i];
        if (std::abs(sum - 1.0) > kNormTolerance) {
            std::ostringstream msg;
            msg << what << ": distribution " << b << " sums to " << sum << ", not 1";
            throw ValidationError(msg.str());
        }
    }
}

Table product(std::span<const Table> factors)
{
    Table out;
    for (const Table& f : factors) {
        for (std::size_t i = 0; i < f.vars.size(); ++i) {
            const auto it = std::find(out.vars.begin(), out.vars.end(), f.vars[i]);
            if (it == out.vars.end()) {
                out.vars.push_back(f.vars[i]);
                out.sizes.push_back(f.sizes[i]);
            } else if (out.sizes[static_cast<std::size_t>(it - out.vars.begin())] != f.sizes[i]) {
                throw ValidationError("inconsistent alphabet size for variable '" + f.vars[i] + "'");
            }
        }
    }

    // position of each factor variable inside the union, with the factor's stride
    struct Map {
        std::vector<std::size_t> pos;
        std::vector<std::size_t> stride;
    };
    std::vector<Map> maps;
    for (const Table& f : factors) {
        Map m;
        m.stride = strides_of(f.sizes);
        for (const auto& v : f.vars) m.pos.push_back(out.index_of(v));
        maps.push_back(std::move(m));
    }

    out.values.assign(out.cells(), 0.0);
    std::vector<int> idx(out.vars.size(), 0);
    std::size_t cell = 0;
    do {
        double p = 1.0;
        for (std::size_t k = 0; k < factors.size() && p != 0.0; ++k) {
            std::size_t fi = 0;
            for (std::size_t j = 0; j < maps[k].pos.size(); ++j)
                fi += static_cast<std::size_t>(idx[maps[k].pos[j]]) * maps[k].stride[j];
            p *= factors[k].values[fi];
        }
        out.values[cell++] = p;
    } while (next_index(idx, out.sizes));
    return out;
}

Table marginal(const Table& joint, const VarList& keep)
{
    Table out;
    out.vars = keep;
    std::vector<std::size_t> pos;
    for (const auto& v : keep) {
        pos.push_back(joint.index_of(v));
        out.sizes.push_back(joint.sizes[pos.back()]);
    }
    const auto stride = strides_of(out.sizes);
    out.values.assign(out.cells(), 0.0);

    std::vector<int> idx(joint.vars.size(), 0);
    std::size_t cell = 0;
    do {
        std::size_t oi = 0;
        for (std::size_t j = 0; j < pos.size(); ++j) oi += static_cast<std::size_t>(idx[pos[j]]) * stride[j];
        out.values[oi] += joint.values[cell++];
    } while (next_index(idx, joint.sizes));
    return out;
}

Table rename(Table t, const std::string& from, const std::string& to)
{
    t.vars[t.index_of(from)] = to;
    return t;
}

double mutual_information(const Table& joint, const VarList& a, const VarList& b, const VarList& given)
{
    if (joint.given != 0) throw ValidationError("mutual_information: expects a joint pmf");
    joint.validate("mutual_information input");
    if (a.empty() || b.empty()) throw ValidationError("mutual_information: empty variable set");

    const VarList abc = concat({&a, &b, &given});
    const VarList ac = concat({&a, &given});
    const VarList bc = concat({&b, &given});
    const Table p_abc = marginal(joint, abc);
    const Table p_ac = marginal(joint, ac);
    const Table p_bc = marginal(joint, bc);
    const Table p_c = given.empty() ? Table{{}, {}, {1.0}, 0} : marginal(joint, given);

    const auto s_ac = strides_of(p_ac.sizes);
    const auto s_bc = strides_of(p_bc.sizes);
    const auto s_c = strides_of(p_c.sizes);
    const std::size_t na = a.size(), nb = b.size(), nc = given.size();

    double info = 0.0;
    std::vector<int> idx(abc.size(), 0);
    std::size_t cell = 0;
    do {
        const double p = p_abc.values[cell++];
        if (p == 0.0) continue;
        std::size_t iac = 0, ibc = 0, ic = 0;
        for (std::size_t j = 0; j < na; ++j) iac += static_cast<std::size_t>(idx[j]) * s_ac[j];
        for (std::size_t j = 0; j < nb; ++j) ibc += static_cast<std::size_t>(idx[na + j]) * s_bc[j];
        for (std::size_t j = 0; j < nc; ++j) {
            const auto v = static_cast<std::size_t>(idx[na + nb + j]);
            iac += v * s_ac[na + j];
            ibc += v * s_bc[nb + j];
            ic += v * s_c[j];
        }
        const double pac = p_ac.values[iac], pbc = p_bc.values[ibc], pc = p_c.values[ic];
        if (pac == 0.0 || pbc == 0.0)
            throw ValidationError("mutual_information: support mismatch (p > 0 over a zero marginal)");
        info += p * std::log2(p * pc / (pac * pbc));
    } while (next_index(idx, p_abc.sizes));
    return std::max(info, 0.0);
}

void SlotChannels::validate() const
{
    expect_vars(slot1, {"x1", "y1", "y12"}, 1, "SlotChannels.slot1");
    expect_vars(slot2, {"x2", "y2", "y21"}, 1, "SlotChannels.slot2");
    expect_vars(slot3, {"x13", "x23", "y3"}, 2, "SlotChannels.slot3");
    for (const Table* t : {&slot1, &slot2, &slot3}) {
        for (int s : t->sizes) {
            if (s > kMaxAlphabet) throw ValidationError("SlotChannels: alphabet size exceeds the cap of 4");
        }
    }
}

void PdfInputDistribution::validate() const
{
    expect_vars(x10_u, {"x10", "u"}, 0, "PdfInputDistribution.x10_u");
    expect_vars(x20_v, {"x20", "v"}, 0, "PdfInputDistribution.x20_v");
    expect_vars(x13_given_uv, {"u", "v", "x13"}, 2, "PdfInputDistribution.x13_given_uv");
    expect_vars(x23_given_uv, {"u", "v", "x23"}, 2, "PdfInputDistribution.x23_given_uv");
}

void DfInputDistribution::validate() const
{
    expect_vars(x12, {"x12"}, 0, "DfInputDistribution.x12");
    expect_vars(x21, {"x21"}, 0, "DfInputDistribution.x21");
    expect_vars(s, {"s"}, 0, "DfInputDistribution.s");
    expect_vars(x13_given_s, {"s", "x13"}, 1, "DfInputDistribution.x13_given_s");
    expect_vars(x23_given_s, {"s", "x23"}, 1, "DfInputDistribution.x23_given_s");
}

void OuterInputDistribution::validate() const
{
    expect_vars(x10_u, {"x10", "u"}, 0, "OuterInputDistribution.x10_u");
    expect_vars(x20_v, {"x20", "v"}, 0, "OuterInputDistribution.x20_v");
    expect_vars(x13_given_uvx10, {"u", "v", "x10", "x13"}, 3, "OuterInputDistribution.x13_given_uvx10");
    expect_vars(x23_given_uvx20, {"u", "v", "x20", "x23"}, 3, "OuterInputDistribution.x23_given_uvx20");
}

OuterInputDistribution extend_to_outer(const PdfInputDistribution& dist)
{
    dist.validate();
    const int n10 = dist.x10_u.sizes[0];
    const int n20 = dist.x20_v.sizes[0];

    // repeat each p(x13|u,v) row for every x10 value
    auto widen = [](const Table& t, const std::string& var, int size) {
        Table out;
        out.vars = {t.vars[0], t.vars[1], var, t.vars[2]};
        out.sizes = {t.sizes[0], t.sizes[1], size, t.sizes[2]};
        out.given = 3;
        const std::size_t row = static_cast<std::size_t>(t.sizes[2]);
        for (std::size_t uv = 0; uv < t.values.size() / row; ++uv) {
            for (int x = 0; x < size; ++x)
                out.values.insert(out.values.end(), t.values.begin() + static_cast<long>(uv * row),
                                  t.values.begin() + static_cast<long>((uv + 1) * row));
        }
        return out;
    };

    OuterInputDistribution out;
    out.x10_u = dist.x10_u;
    out.x20_v = dist.x20_v;
    out.x13_given_uvx10 = widen(dist.x13_given_uv, "x10", n10);
    out.x23_given_uvx20 = widen(dist.x23_given_uv, "x20", n20);
    return out;
}

LinearRegion theorem1_region(const SlotChannels& ch, const PdfInputDistribution& dist, const TimeSlots& slots)
{
    ch.validate();
    dist.validate();
    slots.validate();

    const Table f1[] = {dist.x10_u, rename(ch.slot1, "x1", "x10")};
    const Table f2[] = {dist.x20_v, rename(ch.slot2, "x2", "x20")};
    const Table f3[] = {marginal(dist.x10_u, {"u"}), marginal(dist.x20_v, {"v"}), dist.x13_given_uv,
                        dist.x23_given_uv, ch.slot3};
    const Table j1 = product(f1), j2 = product(f2), j3 = product(f3);

    const double user1 = weighted(slots.a1, mutual_information(j1, {"x10"}, {"y12"}));
    const double dest1 = weighted(slots.a1, mutual_information(j1, {"x10"}, {"y1"}));
    const double user2 = weighted(slots.a2, mutual_information(j2, {"x20"}, {"y21"}));
    const double dest2 = weighted(slots.a2, mutual_information(j2, {"x20"}, {"y2"}));
    auto slot3 = [&](const VarList& a, const VarList& given) {
        return weighted(slots.a3, mutual_information(j3, a, {"y3"}, given));
    };

    LinearRegion r;
    r.r1_bounds = {user1 + slot3({"x13"}, {"x23", "u", "v"})};
    r.r2_bounds = {user2 + slot3({"x23"}, {"x13", "u", "v"})};
    r.sum_bounds = {
        user1 + user2 + slot3({"x13", "x23"}, {"u", "v"}),
        dest1 + user2 + slot3({"x13", "x23"}, {"v"}),
        user1 + dest2 + slot3({"x13", "x23"}, {"u"}),
        dest1 + dest2 + slot3({"x13", "x23"}, {}),
    };
    return r;
}

LinearRegion corollary1_region(const SlotChannels& ch, const PdfInputDistribution& dist,
                               const TimeSlots& slots)
{
    LinearRegion r = theorem1_region(ch, dist, slots);

    const Table f1[] = {dist.x10_u, rename(ch.slot1, "x1", "x10")};
    const Table f2[] = {dist.x20_v, rename(ch.slot2, "x2", "x20")};
    const Table f3[] = {marginal(dist.x10_u, {"u"}), marginal(dist.x20_v, {"v"}), dist.x13_given_uv,
                        dist.x23_given_uv, ch.slot3};
    const Table j1 = product(f1), j2 = product(f2), j3 = product(f3);

    const double user1 = weighted(slots.a1, mutual_information(j1, {"x10"}, {"y12"}));
    const double user2 = weighted(slots.a2, mutual_information(j2, {"x20"}, {"y21"}));
    const double private1 = weighted(slots.a1, std::min(mutual_information(j1, {"x10"}, {"y12"}, {"u"}),
                                                        mutual_information(j1, {"x10"}, {"y1"}, {"u"})));
    const double private2 = weighted(slots.a2, std::min(mutual_information(j2, {"x20"}, {"y21"}, {"v"}),
                                                        mutual_information(j2, {"x20"}, {"y2"}, {"v"})));
    auto slot3 = [&](const VarList& given) {
        return weighted(slots.a3, mutual_information(j3, {"x13", "x23"}, {"y3"}, given));
    };

    r.sum_bounds[1] = private1 + user2 + slot3({"v"});
    r.sum_bounds[2] = user1 + private2 + slot3({"u"});
    r.sum_bounds[3] = private1 + private2 + slot3({});
    return r;
}

LinearRegion theorem2_region(const SlotChannels& ch, const DfInputDistribution& dist, const TimeSlots& slots)
{
    ch.validate();
    dist.validate();
    slots.validate();

    const Table f1[] = {dist.x12, rename(ch.slot1, "x1", "x12")};
    const Table f2[] = {dist.x21, rename(ch.slot2, "x2", "x21")};
    const Table f3[] = {dist.s, dist.x13_given_s, dist.x23_given_s, ch.slot3};
    const Table j1 = product(f1), j2 = product(f2), j3 = product(f3);

    const double user1 = weighted(slots.a1, mutual_information(j1, {"x12"}, {"y12"}));
    const double dest1 = weighted(slots.a1, mutual_information(j1, {"x12"}, {"y1"}));
    const double user2 = weighted(slots.a2, mutual_information(j2, {"x21"}, {"y21"}));
    const double dest2 = weighted(slots.a2, mutual_information(j2, {"x21"}, {"y2"}));
    auto slot3 = [&](const VarList& a, const VarList& given) {
        return weighted(slots.a3, mutual_information(j3, a, {"y3"}, given));
    };
    const double coherent = slot3({"x13", "x23"}, {});

    LinearRegion r;
    r.r1_bounds = {user1 + slot3({"x13"}, {"x23", "s"})};
    r.r2_bounds = {user2 + slot3({"x23"}, {"x13", "s"})};
    r.sum_bounds = {
        user1 + user2 + slot3({"x13", "x23"}, {"s"}),
        dest1 + user2 + coherent,
        user1 + dest2 + coherent,
        dest1 + dest2 + coherent,
    };
    return r;
}

LinearRegion dmc_outer_region(OuterVariant variant, const SlotChannels& ch, const OuterInputDistribution& dist,
                              const TimeSlots& slots)
{
    ch.validate();
    dist.validate();
    slots.validate();

    const Table f1[] = {dist.x10_u, rename(ch.slot1, "x1", "x10")};
    const Table f2[] = {dist.x20_v, rename(ch.slot2, "x2", "x20")};
    const Table f3[] = {dist.x10_u, dist.x20_v, dist.x13_given_uvx10, dist.x23_given_uvx20, ch.slot3};
    const Table j1 = product(f1), j2 = product(f2), j3 = product(f3);

    const double cut1 = weighted(slots.a1, mutual_information(j1, {"x10"}, {"y1", "y12"}));
    const double dest1 = weighted(slots.a1, mutual_information(j1, {"x10"}, {"y1"}));
    const double cut2 = weighted(slots.a2, mutual_information(j2, {"x20"}, {"y2", "y21"}));
    const double dest2 = weighted(slots.a2, mutual_information(j2, {"x20"}, {"y2"}));
    auto slot3 = [&](const VarList& a, const VarList& given) {
        return weighted(slots.a3, mutual_information(j3, a, {"y3"}, given));
    };

    LinearRegion r;
    r.r1_bounds = {cut1 + slot3({"x13"}, {"x23", "u", "v"})};
    r.r2_bounds = {cut2 + slot3({"x23"}, {"x13", "u", "v"})};
    const double all_known = cut1 + cut2 + slot3({"x13", "x23"}, {"u", "v"});
    const double none_known = dest1 + dest2 + slot3({"x13", "x23"}, {});
    if (variant == OuterVariant::Corollary2) {
        r.sum_bounds = {all_known, none_known};
    } else {
        r.sum_bounds = {
            all_known,
            dest1 + cut2 + slot3({"x13", "x23"}, {"v"}),
            cut1 + dest2 + slot3({"x13", "x23"}, {"u"}),
            none_known,
        };
    }
    return r;
}

}  // namespace hdmac::dmc
