#include "hdmac/commands.hpp"

#include "hdmac/gaussian_regions.hpp"
#include "hdmac/polygon.hpp"
#include "hdmac/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace hdmac {

namespace {

namespace fs = std::filesystem;

constexpr int kDigits = 12;
constexpr double kNestTolerance = 1e-6;
constexpr int kVerifySamples = 200;

std::string num(double v)
{
    if (v == 0.0) v = 0.0;  // no "-0" in output
    std::ostringstream os;
    os << std::setprecision(kDigits) << v;
    return os.str();
}

std::string file_tag(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

using Fields = std::vector<std::pair<std::string, double>>;

Fields allocation_fields(const Allocation& a)
{
    if (const auto* p = std::get_if<PdfAllocation>(&a)) {
        return {{"p10", p->p10}, {"p20", p->p20}, {"pu", p->pu}, {"pv", p->pv}, {"p13", p->p13},
                {"p23", p->p23}, {"c2", p->c2},   {"c3", p->c3}, {"d2", p->d2}, {"d3", p->d3}};
    }
    const auto& d = std::get<DfAllocation>(a);
    return {{"p12", d.p12}, {"p21", d.p21}, {"p13", d.p13}, {"p23", d.p23}, {"ps1", d.ps1}, {"ps2", d.ps2}};
}

std::vector<std::string> allocation_columns(Scheme s)
{
    const Allocation a = is_pdf(s) ? Allocation{PdfAllocation{}} : Allocation{DfAllocation{}};
    std::vector<std::string> out;
    for (const auto& f : allocation_fields(a)) out.push_back(f.first);
    return out;
}

class Writer {
public:
    Writer(fs::path dir, CommandResult& result) : dir_(std::move(dir)), result_(result)
    {
        fs::create_directories(dir_);
    }

    fs::path write(const std::string& name, const std::string& content)
    {
        const fs::path path = dir_ / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw CommandError("cannot write " + path.string());
        f << content;
        if (!f) throw CommandError("write failed for " + path.string());
        result_.files.push_back(path);
        return path;
    }

private:
    fs::path dir_;
    CommandResult& result_;
};

const ChannelGains& need_gains(const Scenario& s, Command c)
{
    if (!s.gains) throw CommandError(command_name(c) + ": scenario has no 'gains' section");
    return *s.gains;
}

const PowerBudget& need_budget(const Scenario& s, Command c)
{
    if (!s.budget) throw CommandError(command_name(c) + ": scenario has no 'budget' section");
    return *s.budget;
}

SearchConfig search_of(const Scenario& s, const CommandOptions& opts)
{
    SearchConfig cfg = s.search;
    if (opts.seed) cfg.seed = *opts.seed;
    return cfg;
}

int weights_of(const Scenario& s, const CommandOptions& opts)
{
    const int w = opts.weights.value_or(s.weights);
    if (w < 3) throw CommandError("weights must be >= 3");
    return w;
}

SchemeOptions scheme_options(const Scenario& s, const ChannelGains& g)
{
    SchemeOptions o;
    o.separate = s.separate;
    o.rho = s.rho.value_or(degraded_correlation(g));
    return o;
}

std::string header(const Scenario& s, std::uint64_t seed)
{
    std::ostringstream os;
    os << "# rates in bits (base-2 logarithms)\n";
    os << "# scenario " << s.name << " hash " << scenario_hash(s) << " seed " << seed << "\n";
    return os.str();
}

std::string frontier_csv(const Frontier& f, const std::string& head)
{
    std::ostringstream os;
    os << head << "theta_index,mu1,mu2,r1,r2,a1,a2,a3";
    const Scheme scheme = f.points.empty() ? Scheme::Df : f.points.front().scheme;
    for (const auto& c : allocation_columns(scheme)) os << ',' << c;
    os << ",objective,evaluations\n";
    for (std::size_t k = 0; k < f.points.size(); ++k) {
        const OptResult& r = f.points[k];
        os << k << ',' << num(r.mu.x()) << ',' << num(r.mu.y()) << ',' << num(r.vertex.x()) << ','
           << num(r.vertex.y()) << ',' << num(r.slots.a1) << ',' << num(r.slots.a2) << ','
           << num(r.slots.a3);
        for (const auto& fld : allocation_fields(r.allocation)) os << ',' << num(fld.second);
        os << ',' << num(r.objective) << ',' << r.evaluations << '\n';
    }
    return os.str();
}

std::string polygon_csv(const RatePolygon& poly, const std::string& head)
{
    std::ostringstream os;
    os << head << "vertex_index,r1,r2\n";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i)
        os << i << ',' << num(poly.vertices[i].x()) << ',' << num(poly.vertices[i].y()) << '\n';
    return os.str();
}

void bounds_rows(std::ostringstream& os, const std::string& name, const LinearRegion& r)
{
    const std::pair<const char*, const std::vector<double>*> groups[] = {
        {"r1", &r.r1_bounds}, {"r2", &r.r2_bounds}, {"sum", &r.sum_bounds}};
    for (const auto& [kind, values] : groups) {
        for (std::size_t i = 0; i < values->size(); ++i)
            os << name << ',' << kind << ',' << i << ',' << num((*values)[i]) << '\n';
    }
}

std::vector<Scheme> schemes_or(const Scenario& s, std::vector<Scheme> fallback)
{
    return s.schemes.empty() ? fallback : s.schemes;
}

CommandResult run_region(const Scenario& s, const CommandOptions& opts)
{
    const ChannelGains& g = need_gains(s, Command::Region);
    if (!s.slots) throw CommandError("region: scenario has no 'slots' section");
    if (!s.pdf_allocation && !s.df_allocation)
        throw CommandError("region: scenario needs 'pdf_allocation' or 'df_allocation'");
    std::vector<Scheme> fallback;
    if (s.pdf_allocation) fallback.insert(fallback.end(), {Scheme::PdfJoint, Scheme::PdfSeparate, Scheme::PdfPartial});
    if (s.df_allocation) fallback.insert(fallback.end(), {Scheme::Df, Scheme::Outer});

    CommandResult result;
    Writer w(opts.out, result);
    const std::string head = header(s, search_of(s, opts).seed);
    const SchemeOptions so = scheme_options(s, g);
    std::ostringstream bounds, report;
    bounds << head << "region,kind,index,bound\n";
    std::vector<PlotSeries> series;
    for (Scheme scheme : schemes_or(s, fallback)) {
        const std::string name = scheme_name(scheme);
        if (is_pdf(scheme) && !s.pdf_allocation)
            throw CommandError("region: scheme " + name + " needs 'pdf_allocation'");
        if (!is_pdf(scheme) && !s.df_allocation)
            throw CommandError("region: scheme " + name + " needs 'df_allocation'");
        const Allocation a = is_pdf(scheme) ? Allocation{*s.pdf_allocation} : Allocation{*s.df_allocation};
        const LinearRegion region = scheme_region(scheme, g, *s.slots, a, so);
        const RatePolygon poly = polygon_from_constraints(region);
        bounds_rows(bounds, name, region);
        const fs::path p = w.write("region_" + name + ".csv", polygon_csv(poly, head));
        series.push_back({name, poly.vertices});
        report << name << ": " << poly.vertices.size() << " vertices, min r1 " << num(region.min_r1())
               << ", min r2 " << num(region.min_r2()) << ", min sum " << num(region.min_sum()) << " -> "
               << p.string() << '\n';
    }
    if (s.budget) {
        if (s.pdf_allocation) {
            const PowerUsage u = power_feasible(*s.slots, *s.pdf_allocation, *s.budget);
            report << "pdf_allocation energy " << num(u.used1) << ", " << num(u.used2)
                   << (u.feasible ? " (within budget)\n" : " (exceeds budget)\n");
        }
        if (s.df_allocation) {
            const PowerUsage u = power_feasible(*s.slots, *s.df_allocation, *s.budget);
            report << "df_allocation energy " << num(u.used1) << ", " << num(u.used2)
                   << (u.feasible ? " (within budget)\n" : " (exceeds budget)\n");
        }
    }
    w.write("region_bounds.csv", bounds.str());
    w.write("region.dat", export_plot_data(series, scenario_hash(s), search_of(s, opts).seed));
    result.report = report.str();
    return result;
}

CommandResult run_frontier(const Scenario& s, const CommandOptions& opts)
{
    const ChannelGains& g = need_gains(s, Command::Frontier);
    const PowerBudget& b = need_budget(s, Command::Frontier);
    const SearchConfig cfg = search_of(s, opts);
    const int weights = weights_of(s, opts);
    const std::string head = header(s, cfg.seed);
    const SchemeOptions so = scheme_options(s, g);

    CommandResult result;
    Writer w(opts.out, result);
    std::ostringstream report;
    std::vector<PlotSeries> series;
    for (Scheme scheme : schemes_or(s, {Scheme::PdfJoint, Scheme::Df, Scheme::Outer})) {
        const std::string name = scheme_name(scheme);
        const Frontier f = frontier(g, b, scheme, weights, cfg, so);
        const fs::path p = w.write("frontier_" + name + ".csv", frontier_csv(f, head));
        std::vector<Rate> pts;
        for (const auto& r : f.points) pts.push_back(r.vertex);
        series.push_back({name, pts});
        const OptResult& mid = f.points[f.points.size() / 2];
        report << name << ": " << f.points.size() << " directions, middle direction value "
               << num(mid.objective) << " -> " << p.string() << '\n';
    }
    w.write("frontier.dat", export_plot_data(series, scenario_hash(s), cfg.seed));
    result.report = report.str();
    return result;
}

CommandResult run_sweep(const Scenario& s, const CommandOptions& opts)
{
    const ChannelGains& base = need_gains(s, Command::Sweep);
    const PowerBudget& b = need_budget(s, Command::Sweep);
    if (s.sweep.empty()) throw CommandError("sweep: scenario has no 'sweep' values");
    const SearchConfig cfg = search_of(s, opts);
    const int weights = weights_of(s, opts);
    const std::string head = header(s, cfg.seed);

    std::vector<double> values = s.sweep;
    std::sort(values.begin(), values.end());

    CommandResult result;
    Writer w(opts.out, result);
    std::ostringstream report;
    std::vector<PlotSeries> series;
    const RatePolygon mac = baseline_region(Baseline::Mac, base, b);
    series.push_back({"mac", mac.vertices});
    bool nested = true;
    for (Scheme scheme : schemes_or(s, {Scheme::Df})) {
        const std::string name = scheme_name(scheme);
        std::vector<RatePolygon> hulls;
        for (double v : values) {
            ChannelGains g = base;
            g.k12 = g.k21 = v;
            const Frontier f = frontier(g, b, scheme, weights, cfg, scheme_options(s, g));
            const fs::path p = w.write("sweep_" + name + "_k" + file_tag(v) + ".csv", frontier_csv(f, head));
            report << name << " k12=k21=" << num(v) << " -> " << p.string() << '\n';
            series.push_back({name + " k=" + file_tag(v), f.hull.vertices});
            hulls.push_back(f.hull);
        }
        for (std::size_t i = 0; i < hulls.size(); ++i) {
            const RatePolygon& inner = i == 0 ? mac : hulls[i - 1];
            const std::string inner_name = i == 0 ? std::string("mac") : "k=" + file_tag(values[i - 1]);
            const Containment c = region_contains(hulls[i], inner, kNestTolerance);
            const Eigen::Vector2d ones = Eigen::Vector2d::Ones();
            const double gain =
                weighted_best_vertex(hulls[i], ones).value - weighted_best_vertex(inner, ones).value;
            const bool strict = c.contained && gain > kNestTolerance;
            nested = nested && strict;
            report << name << ' ' << inner_name << " inside k=" << file_tag(values[i]) << ": "
                   << (strict ? "yes" : "no") << " (worst slack " << num(c.worst_slack) << ", sum-rate gain "
                   << num(gain) << ")\n";
        }
    }
    report << "nested: " << (nested ? "yes" : "no") << '\n';
    w.write("sweep_report.txt", header(s, cfg.seed) + report.str());
    w.write("sweep.dat", export_plot_data(series, scenario_hash(s), cfg.seed));
    result.report = report.str();
    return result;
}

CommandResult run_muser(const Scenario& s, const CommandOptions& opts)
{
    if (!s.m_user) throw CommandError("muser: scenario has no 'm_user' section");
    const MUserSection& m = *s.m_user;
    const auto ach = muser_achievable_constraints(m.gains, m.allocation, m.budgets);
    const auto out = muser_outer_constraints(m.gains, m.allocation, m.budgets);

    CommandResult result;
    Writer w(opts.out, result);
    std::ostringstream csv, report;
    csv << header(s, search_of(s, opts).seed) << "constraint,achievable,outer,slack\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < ach.size(); ++i) {
        const double slack = out[i].bound - ach[i].bound;
        worst = std::min(worst, slack);
        csv << ach[i].descriptor() << ',' << num(ach[i].bound) << ',' << num(out[i].bound) << ','
            << num(slack) << '\n';
    }
    const fs::path p = w.write("muser_constraints.csv", csv.str());
    report << ach.size() << " constraints for m=" << m.gains.m << " -> " << p.string() << '\n';
    report << "achievable within outer: " << (worst >= -1e-12 ? "yes" : "no") << " (worst slack " << num(worst)
           << ")\n";
    const ConditionReport cond = muser_condition_check(m.gains);
    report << "cooperation condition: " << (cond.holds ? "holds" : "fails");
    for (const auto& [k, j] : cond.failing) report << " (" << k + 1 << ',' << j + 1 << ')';
    report << '\n';
    if (m.gains.m == 3) {
        static const char* names[] = {"R1", "R2", "R3", "R1+R2", "R1+R3", "R2+R3", "R1+R2+R3", "total"};
        const std::vector<double> r = three_user_region(m.gains, m.allocation, m.budgets);
        for (std::size_t i = 0; i < r.size(); ++i) report << names[i] << " <= " << num(r[i]) << '\n';
    }
    result.report = report.str();
    return result;
}

CommandResult run_dmc(const Scenario& s, const CommandOptions& opts)
{
    if (!s.dmc) throw CommandError("dmc: scenario has no 'dmc' section");
    const DmcSection& d = *s.dmc;
    if (!d.pdf && !d.df && !d.outer) throw CommandError("dmc: section needs 'pdf', 'df' or 'outer'");

    std::vector<std::pair<std::string, LinearRegion>> regions;
    if (d.pdf) {
        regions.emplace_back("theorem1", dmc::theorem1_region(d.channels, *d.pdf, d.slots));
        regions.emplace_back("corollary1", dmc::corollary1_region(d.channels, *d.pdf, d.slots));
    }
    if (d.df) regions.emplace_back("theorem2", dmc::theorem2_region(d.channels, *d.df, d.slots));
    if (d.outer || d.pdf) {
        const dmc::OuterInputDistribution outer = d.outer ? *d.outer : dmc::extend_to_outer(*d.pdf);
        regions.emplace_back("theorem3",
                             dmc::dmc_outer_region(dmc::OuterVariant::Theorem3, d.channels, outer, d.slots));
        regions.emplace_back("corollary2",
                             dmc::dmc_outer_region(dmc::OuterVariant::Corollary2, d.channels, outer, d.slots));
    }

    CommandResult result;
    Writer w(opts.out, result);
    const std::uint64_t seed = search_of(s, opts).seed;
    std::ostringstream csv, report;
    csv << header(s, seed) << "region,kind,index,bound\n";
    std::vector<PlotSeries> series;
    for (const auto& [name, region] : regions) {
        bounds_rows(csv, name, region);
        const RatePolygon poly = polygon_from_constraints(region);
        series.push_back({name, poly.vertices});
        report << name << ": min r1 " << num(region.min_r1()) << ", min r2 " << num(region.min_r2())
               << ", min sum " << num(region.min_sum()) << '\n';
    }
    w.write("dmc_bounds.csv", csv.str());
    w.write("dmc.dat", export_plot_data(series, scenario_hash(s), seed));
    result.report = report.str();
    return result;
}

nlohmann::json to_json(const Witness& wt)
{
    auto alloc = [](const Allocation& a) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, v] : allocation_fields(a)) j[k] = v;
        return j;
    };
    auto slots = [](const TimeSlots& t) { return nlohmann::json{{"a1", t.a1}, {"a2", t.a2}, {"a3", t.a3}}; };
    return {{"check", check_name(wt.kind)},
            {"gains", {{"k12", wt.gains.k12}, {"k21", wt.gains.k21}, {"k10", wt.gains.k10},
                       {"k20", wt.gains.k20}, {"noise", wt.gains.noise}}},
            {"budget", {{"p1", wt.budget.p1}, {"p2", wt.budget.p2}}},
            {"rho", {{"rho1", wt.rho.rho1}, {"rho2", wt.rho.rho2}}},
            {"mu", {wt.mu.x(), wt.mu.y()}},
            {"a", {{"scheme", scheme_name(wt.scheme_a)}, {"slots", slots(wt.slots_a)}, {"allocation", alloc(wt.alloc_a)}}},
            {"b", {{"scheme", scheme_name(wt.scheme_b)}, {"slots", slots(wt.slots_b)}, {"allocation", alloc(wt.alloc_b)}}},
            {"replayed_slack", replay(wt)}};
}

CommandResult run_verify(const Scenario& s, const CommandOptions& opts)
{
    const ChannelGains& g = need_gains(s, Command::Verify);
    const PowerBudget& b = need_budget(s, Command::Verify);
    const SearchConfig cfg = search_of(s, opts);
    const int weights = weights_of(s, opts);

    const std::vector<std::function<Verdict()>> claims = {
        [&] { return verify_joint_dominates_separate(g, b, kVerifySamples, cfg.seed); },
        [&] { return verify_achievable_in_outer(g, b, cfg, weights); },
        [&] { return verify_degraded_capacity(g, b, cfg, weights); },
        [&] { return verify_pdf_df_equivalence(g, b, cfg, weights); },
        [&] { return verify_full_vs_partial_user_decoding(g, b, cfg, weights, kVerifySamples); },
    };

    CommandResult result;
    Writer w(opts.out, result);
    std::ostringstream report;
    for (const auto& run : claims) {
        const Verdict v = run();
        std::string status = v.applicable ? (v.pass ? "pass" : "fail") : "n/a";
        if (v.applicable && !v.pass) result.status = 1;
        std::string witness = "-";
        if (v.applicable) {
            nlohmann::json j = {{"tag", v.tag},
                                {"pass", v.pass},
                                {"worst_slack", v.worst_slack},
                                {"tolerance", v.tolerance},
                                {"witness", to_json(v.witness)},
                                {"metrics", v.metrics},
                                {"checks", nlohmann::json::array()}};
            for (const Check& c : v.checks) {
                j["checks"].push_back({{"kind", check_name(c.kind)},
                                       {"pass", c.pass()},
                                       {"slack", c.slack},
                                       {"tolerance", c.tolerance},
                                       {"count", c.count},
                                       {"witness", to_json(c.witness)}});
            }
            if (!v.note.empty()) j["note"] = v.note;
            witness = w.write("witness_" + v.tag + ".json", j.dump(2) + "\n").string();
        }
        report << v.tag << ' ' << status << " worst_slack=" << num(v.worst_slack) << " witness=" << witness;
        if (!v.note.empty()) report << " note=\"" << v.note << '"';
        report << '\n';
    }
    w.write("verify_report.txt", report.str());
    result.report = report.str();
    return result;
}

}  // namespace

std::string command_name(Command c)
{
    switch (c) {
    case Command::Region: return "region";
    case Command::Frontier: return "frontier";
    case Command::Sweep: return "sweep";
    case Command::MUser: return "muser";
    case Command::Dmc: return "dmc";
    case Command::Verify: return "verify";
    }
    return "unknown";
}

Command command_from_name(const std::string& name)
{
    for (Command c : {Command::Region, Command::Frontier, Command::Sweep, Command::MUser, Command::Dmc,
                      Command::Verify}) {
        if (command_name(c) == name) return c;
    }
    throw CommandError("unknown command '" + name + "'");
}

CommandResult run_command(Command cmd, const Scenario& scenario, const CommandOptions& opts)
{
    switch (cmd) {
    case Command::Region: return run_region(scenario, opts);
    case Command::Frontier: return run_frontier(scenario, opts);
    case Command::Sweep: return run_sweep(scenario, opts);
    case Command::MUser: return run_muser(scenario, opts);
    case Command::Dmc: return run_dmc(scenario, opts);
    case Command::Verify: return run_verify(scenario, opts);
    }
    throw CommandError("unknown command");
}

std::string export_plot_data(std::span<const PlotSeries> series, std::uint64_t hash, std::uint64_t seed)
{
    if (series.empty()) throw std::invalid_argument("export_plot_data: no series");
    std::ostringstream os;
    os << "# rates in bits (base-2 logarithms)\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const PlotSeries& s = series[i];
        if (s.points.empty()) throw std::invalid_argument("export_plot_data: series '" + s.name + "' is empty");
        if (i > 0) os << "\n\n";
        os << "# series " << s.name << "\n# scenario_hash " << hash << "\n# seed " << seed << "\n# r1 r2\n";
        for (const Rate& p : s.points) os << num(p.x()) << ' ' << num(p.y()) << '\n';
    }
    return os.str();
}

std::uint64_t scenario_hash(const Scenario& s)
{
    return std::hash<std::string>{}(serialize_scenario(s));
}

}  // namespace hdmac
