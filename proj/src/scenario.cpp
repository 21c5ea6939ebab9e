#include "hdmac/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <set>
#include <sstream>

namespace hdmac {

namespace {

int line_of(const YAML::Node& n)
{
    return n.Mark().is_null() ? 0 : n.Mark().line + 1;
}

[[noreturn]] void fail(const YAML::Node& n, const std::string& message)
{
    throw ScenarioError(message, line_of(n));
}

template <class T>
T scalar(const YAML::Node& n, const std::string& what)
{
    if (!n.IsScalar()) fail(n, what + ": expected a scalar");
    try {
        return n.as<T>();
    } catch (const YAML::BadConversion&) {
        fail(n, what + ": cannot read '" + n.Scalar() + "'");
    }
}

// Map section that rejects keys nobody asked for.
class Section {
public:
    Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.IsMap()) fail(node_, path_ + ": expected a mapping");
    }

    YAML::Node get(const std::string& key)
    {
        known_.insert(key);
        return node_[key];
    }

    bool has(const std::string& key)
    {
        known_.insert(key);
        return static_cast<bool>(node_[key]);
    }

    YAML::Node need(const std::string& key)
    {
        YAML::Node n = get(key);
        if (!n) fail(node_, path_ + ": missing key '" + key + "'");
        return n;
    }

    double num(const std::string& key) { return scalar<double>(need(key), at(key)); }
    double num(const std::string& key, double fallback)
    {
        const YAML::Node n = get(key);
        return n ? scalar<double>(n, at(key)) : fallback;
    }

    std::string at(const std::string& key) const { return path_ + "." + key; }
    const YAML::Node& node() const { return node_; }

    void finish() const
    {
        for (const auto& kv : node_) {
            const std::string key = kv.first.as<std::string>();
            if (!known_.count(key)) fail(kv.first, path_ + ": unknown key '" + key + "'");
        }
    }

private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> known_;
};

// Runs a validate() call and reports its message against the section's line.
template <class F>
void checked(const YAML::Node& n, const std::string& path, F&& f)
{
    try {
        f();
    } catch (const ValidationError& e) {
        fail(n, path + ": " + e.what());
    } catch (const std::domain_error& e) {
        fail(n, path + ": " + e.what());
    }
}

std::vector<double> numbers(const YAML::Node& n, const std::string& path)
{
    if (!n.IsSequence()) fail(n, path + ": expected a list");
    std::vector<double> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(scalar<double>(n[i], path));
    return out;
}

Eigen::VectorXd vector_of(const YAML::Node& n, const std::string& path)
{
    const std::vector<double> v = numbers(n, path);
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

TimeSlots read_slots(const YAML::Node& n, const std::string& path)
{
    Section s(n, path);
    const double a1 = s.num("a1"), a2 = s.num("a2");
    const TimeSlots t = s.has("a3") ? TimeSlots{a1, a2, s.num("a3")} : TimeSlots::from_leading(a1, a2);
    s.finish();
    checked(n, path, [&] { t.validate(); });
    return t;
}

dmc::Table read_table(const YAML::Node& n, const std::string& path)
{
    Section s(n, path);
    dmc::Table t;
    const YAML::Node vars = s.need("vars");
    if (!vars.IsSequence()) fail(vars, s.at("vars") + ": expected a list");
    for (std::size_t i = 0; i < vars.size(); ++i) t.vars.push_back(scalar<std::string>(vars[i], s.at("vars")));
    const YAML::Node sizes = s.need("sizes");
    if (!sizes.IsSequence()) fail(sizes, s.at("sizes") + ": expected a list");
    for (std::size_t i = 0; i < sizes.size(); ++i) t.sizes.push_back(scalar<int>(sizes[i], s.at("sizes")));
    t.given = s.has("given") ? scalar<std::size_t>(s.get("given"), s.at("given")) : 0;
    t.values = numbers(s.need("values"), s.at("values"));
    s.finish();
    checked(n, path, [&] { t.validate(path); });
    return t;
}

DmcSection read_dmc(const YAML::Node& n)
{
    Section s(n, "dmc");
    DmcSection d;
    d.slots = read_slots(s.need("slots"), "dmc.slots");
    {
        Section c(s.need("channels"), "dmc.channels");
        d.channels.slot1 = read_table(c.need("slot1"), "dmc.channels.slot1");
        d.channels.slot2 = read_table(c.need("slot2"), "dmc.channels.slot2");
        d.channels.slot3 = read_table(c.need("slot3"), "dmc.channels.slot3");
        c.finish();
        checked(c.node(), "dmc.channels", [&] { d.channels.validate(); });
    }
    if (s.has("pdf")) {
        Section p(s.get("pdf"), "dmc.pdf");
        dmc::PdfInputDistribution dist;
        dist.x10_u = read_table(p.need("x10_u"), "dmc.pdf.x10_u");
        dist.x20_v = read_table(p.need("x20_v"), "dmc.pdf.x20_v");
        dist.x13_given_uv = read_table(p.need("x13_given_uv"), "dmc.pdf.x13_given_uv");
        dist.x23_given_uv = read_table(p.need("x23_given_uv"), "dmc.pdf.x23_given_uv");
        p.finish();
        checked(p.node(), "dmc.pdf", [&] { dist.validate(); });
        d.pdf = dist;
    }
    if (s.has("df")) {
        Section p(s.get("df"), "dmc.df");
        dmc::DfInputDistribution dist;
        dist.x12 = read_table(p.need("x12"), "dmc.df.x12");
        dist.x21 = read_table(p.need("x21"), "dmc.df.x21");
        dist.s = read_table(p.need("s"), "dmc.df.s");
        dist.x13_given_s = read_table(p.need("x13_given_s"), "dmc.df.x13_given_s");
        dist.x23_given_s = read_table(p.need("x23_given_s"), "dmc.df.x23_given_s");
        p.finish();
        checked(p.node(), "dmc.df", [&] { dist.validate(); });
        d.df = dist;
    }
    if (s.has("outer")) {
        Section p(s.get("outer"), "dmc.outer");
        dmc::OuterInputDistribution dist;
        dist.x10_u = read_table(p.need("x10_u"), "dmc.outer.x10_u");
        dist.x20_v = read_table(p.need("x20_v"), "dmc.outer.x20_v");
        dist.x13_given_uvx10 = read_table(p.need("x13_given_uvx10"), "dmc.outer.x13_given_uvx10");
        dist.x23_given_uvx20 = read_table(p.need("x23_given_uvx20"), "dmc.outer.x23_given_uvx20");
        p.finish();
        checked(p.node(), "dmc.outer", [&] { dist.validate(); });
        d.outer = dist;
    }
    s.finish();
    return d;
}

MUserSection read_muser(const YAML::Node& n)
{
    Section s(n, "m_user");
    MUserSection m;
    m.gains.m = scalar<int>(s.need("m"), s.at("m"));
    const YAML::Node rows = s.need("k_user");
    if (!rows.IsSequence()) fail(rows, s.at("k_user") + ": expected a list of rows");
    m.gains.k_user.resize(static_cast<long>(rows.size()), static_cast<long>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::vector<double> row = numbers(rows[i], s.at("k_user"));
        if (row.size() != rows.size()) fail(rows[i], s.at("k_user") + ": matrix must be square");
        for (std::size_t j = 0; j < row.size(); ++j)
            m.gains.k_user(static_cast<long>(i), static_cast<long>(j)) = row[j];
    }
    m.gains.k_dest = vector_of(s.need("k_dest"), s.at("k_dest"));
    m.gains.noise = s.num("noise", 1.0);
    m.budgets = vector_of(s.need("budgets"), s.at("budgets"));
    m.allocation.slots = vector_of(s.need("slots"), s.at("slots"));
    m.allocation.p_solo = vector_of(s.need("p_solo"), s.at("p_solo"));
    m.allocation.p_priv = vector_of(s.need("p_priv"), s.at("p_priv"));
    m.allocation.p_coop = vector_of(s.need("p_coop"), s.at("p_coop"));
    s.finish();
    checked(n, "m_user", [&] {
        m.gains.validate();
        if ((m.budgets.array() < 0.0).any()) throw ValidationError("budgets must be >= 0");
        m.allocation.validate(m.gains.m, m.budgets);
    });
    return m;
}

void emit_table(YAML::Emitter& out, const std::string& key, const dmc::Table& t)
{
    out << YAML::Key << key << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "vars" << YAML::Value << YAML::Flow << t.vars;
    out << YAML::Key << "sizes" << YAML::Value << YAML::Flow << t.sizes;
    out << YAML::Key << "given" << YAML::Value << t.given;
    out << YAML::Key << "values" << YAML::Value << YAML::Flow << t.values;
    out << YAML::EndMap;
}

std::vector<double> as_list(const Eigen::VectorXd& v)
{
    return {v.data(), v.data() + v.size()};
}

void emit_slots(YAML::Emitter& out, const TimeSlots& t)
{
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "a1" << YAML::Value << t.a1;
    out << YAML::Key << "a2" << YAML::Value << t.a2;
    out << YAML::Key << "a3" << YAML::Value << t.a3;
    out << YAML::EndMap;
}

}  // namespace

ScenarioError::ScenarioError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

Scenario parse_scenario(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ScenarioError("syntax error: " + e.msg, e.mark.is_null() ? 0 : e.mark.line + 1);
    }
    if (!root || root.IsNull()) throw ScenarioError("empty scenario document", 0);
    Section top(root, "scenario");
    Scenario sc;

    if (top.has("name")) sc.name = scalar<std::string>(top.get("name"), "name");
    if (top.has("gains")) {
        Section s(top.get("gains"), "gains");
        ChannelGains g{s.num("k12"), s.num("k21"), s.num("k10"), s.num("k20"), s.num("noise", 1.0)};
        s.finish();
        checked(s.node(), "gains", [&] { g.validate(); });
        sc.gains = g;
    }
    if (top.has("budget")) {
        Section s(top.get("budget"), "budget");
        PowerBudget b{s.num("p1"), s.num("p2")};
        s.finish();
        checked(s.node(), "budget", [&] { b.validate(); });
        sc.budget = b;
    }
    if (top.has("slots")) sc.slots = read_slots(top.get("slots"), "slots");
    if (top.has("pdf_allocation")) {
        Section s(top.get("pdf_allocation"), "pdf_allocation");
        PdfAllocation a;
        a.p10 = s.num("p10");
        a.p20 = s.num("p20");
        a.pu = s.num("pu");
        a.pv = s.num("pv");
        a.p13 = s.num("p13");
        a.p23 = s.num("p23");
        a.c2 = s.num("c2");
        a.c3 = s.num("c3");
        a.d2 = s.num("d2");
        a.d3 = s.num("d3");
        s.finish();
        checked(s.node(), "pdf_allocation", [&] { a.validate(); });
        sc.pdf_allocation = a;
    }
    if (top.has("df_allocation")) {
        Section s(top.get("df_allocation"), "df_allocation");
        DfAllocation a{s.num("p12"), s.num("p21"), s.num("p13"), s.num("p23"), s.num("ps1"), s.num("ps2")};
        s.finish();
        checked(s.node(), "df_allocation", [&] { a.validate(); });
        sc.df_allocation = a;
    }
    if (top.has("separate")) {
        Section s(top.get("separate"), "separate");
        if (s.has("literal_p1")) {
            const double p1 = s.num("literal_p1");
            if (!(p1 >= 0.0)) fail(s.get("literal_p1"), "separate.literal_p1 must be >= 0");
            sc.separate.literal_p1 = p1;
        }
        s.finish();
    }
    if (top.has("rho")) {
        Section s(top.get("rho"), "rho");
        NoiseCorrelation r{s.num("rho1"), s.num("rho2")};
        s.finish();
        checked(s.node(), "rho", [&] { r.validate(); });
        sc.rho = r;
    }
    if (top.has("schemes")) {
        const YAML::Node n = top.get("schemes");
        if (!n.IsSequence()) fail(n, "schemes: expected a list");
        for (std::size_t i = 0; i < n.size(); ++i) {
            const std::string name = scalar<std::string>(n[i], "schemes");
            checked(n[i], "schemes", [&] { sc.schemes.push_back(scheme_from_name(name)); });
        }
    }
    if (top.has("search")) {
        Section s(top.get("search"), "search");
        SearchConfig c;
        if (s.has("slot_grid")) c.slot_grid = scalar<int>(s.get("slot_grid"), s.at("slot_grid"));
        if (s.has("power_grid")) c.power_grid = scalar<int>(s.get("power_grid"), s.at("power_grid"));
        if (s.has("refine_iters")) c.refine_iters = scalar<int>(s.get("refine_iters"), s.at("refine_iters"));
        c.refine_shrink = s.num("refine_shrink", c.refine_shrink);
        if (s.has("seed")) c.seed = scalar<std::uint64_t>(s.get("seed"), s.at("seed"));
        s.finish();
        checked(s.node(), "search", [&] { c.validate(); });
        sc.search = c;
    }
    if (top.has("weights")) {
        sc.weights = scalar<int>(top.get("weights"), "weights");
        if (sc.weights < 3) fail(top.get("weights"), "weights must be >= 3");
    }
    if (top.has("sweep")) {
        const YAML::Node n = top.get("sweep");
        sc.sweep = numbers(n, "sweep");
        for (double v : sc.sweep) {
            if (!(v >= 0.0) || !std::isfinite(v)) fail(n, "sweep: gains must be finite and >= 0");
        }
    }
    if (top.has("dmc")) sc.dmc = read_dmc(top.get("dmc"));
    if (top.has("m_user")) sc.m_user = read_muser(top.get("m_user"));
    top.finish();
    return sc;
}

std::string serialize_scenario(const Scenario& sc)
{
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << sc.name;
    if (sc.gains) {
        const ChannelGains& g = *sc.gains;
        out << YAML::Key << "gains" << YAML::Value << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "k12" << YAML::Value << g.k12 << YAML::Key << "k21" << YAML::Value << g.k21;
        out << YAML::Key << "k10" << YAML::Value << g.k10 << YAML::Key << "k20" << YAML::Value << g.k20;
        out << YAML::Key << "noise" << YAML::Value << g.noise << YAML::EndMap;
    }
    if (sc.budget) {
        out << YAML::Key << "budget" << YAML::Value << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "p1" << YAML::Value << sc.budget->p1;
        out << YAML::Key << "p2" << YAML::Value << sc.budget->p2 << YAML::EndMap;
    }
    if (sc.slots) {
        out << YAML::Key << "slots" << YAML::Value;
        emit_slots(out, *sc.slots);
    }
    if (sc.pdf_allocation) {
        const PdfAllocation& a = *sc.pdf_allocation;
        out << YAML::Key << "pdf_allocation" << YAML::Value << YAML::Flow << YAML::BeginMap;
        const std::pair<const char*, double> fields[] = {{"p10", a.p10}, {"p20", a.p20}, {"pu", a.pu},
                                                         {"pv", a.pv},   {"p13", a.p13}, {"p23", a.p23},
                                                         {"c2", a.c2},   {"c3", a.c3},   {"d2", a.d2},
                                                         {"d3", a.d3}};
        for (const auto& [k, v] : fields) out << YAML::Key << k << YAML::Value << v;
        out << YAML::EndMap;
    }
    if (sc.df_allocation) {
        const DfAllocation& a = *sc.df_allocation;
        out << YAML::Key << "df_allocation" << YAML::Value << YAML::Flow << YAML::BeginMap;
        const std::pair<const char*, double> fields[] = {{"p12", a.p12}, {"p21", a.p21}, {"p13", a.p13},
                                                         {"p23", a.p23}, {"ps1", a.ps1}, {"ps2", a.ps2}};
        for (const auto& [k, v] : fields) out << YAML::Key << k << YAML::Value << v;
        out << YAML::EndMap;
    }
    if (sc.separate.literal_p1) {
        out << YAML::Key << "separate" << YAML::Value << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "literal_p1" << YAML::Value << *sc.separate.literal_p1 << YAML::EndMap;
    }
    if (sc.rho) {
        out << YAML::Key << "rho" << YAML::Value << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "rho1" << YAML::Value << sc.rho->rho1;
        out << YAML::Key << "rho2" << YAML::Value << sc.rho->rho2 << YAML::EndMap;
    }
    if (!sc.schemes.empty()) {
        std::vector<std::string> names;
        for (Scheme s : sc.schemes) names.push_back(scheme_name(s));
        out << YAML::Key << "schemes" << YAML::Value << YAML::Flow << names;
    }
    out << YAML::Key << "search" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "slot_grid" << YAML::Value << sc.search.slot_grid;
    out << YAML::Key << "power_grid" << YAML::Value << sc.search.power_grid;
    out << YAML::Key << "refine_iters" << YAML::Value << sc.search.refine_iters;
    out << YAML::Key << "refine_shrink" << YAML::Value << sc.search.refine_shrink;
    out << YAML::Key << "seed" << YAML::Value << sc.search.seed << YAML::EndMap;
    out << YAML::Key << "weights" << YAML::Value << sc.weights;
    if (!sc.sweep.empty()) out << YAML::Key << "sweep" << YAML::Value << YAML::Flow << sc.sweep;

    if (sc.dmc) {
        const DmcSection& d = *sc.dmc;
        out << YAML::Key << "dmc" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "slots" << YAML::Value;
        emit_slots(out, d.slots);
        out << YAML::Key << "channels" << YAML::Value << YAML::BeginMap;
        emit_table(out, "slot1", d.channels.slot1);
        emit_table(out, "slot2", d.channels.slot2);
        emit_table(out, "slot3", d.channels.slot3);
        out << YAML::EndMap;
        if (d.pdf) {
            out << YAML::Key << "pdf" << YAML::Value << YAML::BeginMap;
            emit_table(out, "x10_u", d.pdf->x10_u);
            emit_table(out, "x20_v", d.pdf->x20_v);
            emit_table(out, "x13_given_uv", d.pdf->x13_given_uv);
            emit_table(out, "x23_given_uv", d.pdf->x23_given_uv);
            out << YAML::EndMap;
        }
        if (d.df) {
            out << YAML::Key << "df" << YAML::Value << YAML::BeginMap;
            emit_table(out, "x12", d.df->x12);
            emit_table(out, "x21", d.df->x21);
            emit_table(out, "s", d.df->s);
            emit_table(out, "x13_given_s", d.df->x13_given_s);
            emit_table(out, "x23_given_s", d.df->x23_given_s);
            out << YAML::EndMap;
        }
        if (d.outer) {
            out << YAML::Key << "outer" << YAML::Value << YAML::BeginMap;
            emit_table(out, "x10_u", d.outer->x10_u);
            emit_table(out, "x20_v", d.outer->x20_v);
            emit_table(out, "x13_given_uvx10", d.outer->x13_given_uvx10);
            emit_table(out, "x23_given_uvx20", d.outer->x23_given_uvx20);
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    if (sc.m_user) {
        const MUserSection& m = *sc.m_user;
        out << YAML::Key << "m_user" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "m" << YAML::Value << m.gains.m;
        out << YAML::Key << "k_user" << YAML::Value << YAML::BeginSeq;
        for (long i = 0; i < m.gains.k_user.rows(); ++i) {
            const Eigen::VectorXd row = m.gains.k_user.row(i).transpose();
            out << YAML::Flow << as_list(row);
        }
        out << YAML::EndSeq;
        out << YAML::Key << "k_dest" << YAML::Value << YAML::Flow << as_list(m.gains.k_dest);
        out << YAML::Key << "noise" << YAML::Value << m.gains.noise;
        out << YAML::Key << "budgets" << YAML::Value << YAML::Flow << as_list(m.budgets);
        out << YAML::Key << "slots" << YAML::Value << YAML::Flow << as_list(m.allocation.slots);
        out << YAML::Key << "p_solo" << YAML::Value << YAML::Flow << as_list(m.allocation.p_solo);
        out << YAML::Key << "p_priv" << YAML::Value << YAML::Flow << as_list(m.allocation.p_priv);
        out << YAML::Key << "p_coop" << YAML::Value << YAML::Flow << as_list(m.allocation.p_coop);
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace hdmac
