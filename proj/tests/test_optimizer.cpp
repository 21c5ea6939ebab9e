#include "hdmac/gaussian_regions.hpp"
#include "hdmac/optimizer.hpp"
#include "hdmac/polygon.hpp"
#include "support.hpp"

using namespace hdmac;
using testing::symmetric;

namespace {

RatePolygon square(double s)
{
    return RatePolygon{{Rate(0, 0), Rate(s, 0), Rate(s, s), Rate(0, s)}};
}

PowerUsage usage(const OptResult& r, const PowerBudget& b)
{
    return std::visit([&](const auto& a) { return power_feasible(r.slots, a, b); }, r.allocation);
}

const Eigen::Vector2d kOnes = Eigen::Vector2d::Ones();

}  // namespace

TEST_CASE("weighted_best_vertex")
{
    WeightedVertex w = weighted_best_vertex(square(1), Eigen::Vector2d(1, 0));
    CHECK(w.vertex == Rate(1, 1));
    CHECK(w.value == 1.0);
    w = weighted_best_vertex(square(1), kOnes);
    CHECK(w.vertex == Rate(1, 1));
    CHECK(w.value == 2.0);

    const RatePolygon pent =
        polygon_from_constraints(df_region(symmetric(2), TimeSlots{0.2, 0.2, 0.6}, DfAllocation{4, 4, 1, 1, 1, 1}));
    CHECK(weighted_best_vertex(pent, kOnes).value == doctest::Approx(1.2929813184664147).epsilon(1e-14));
    CHECK_THROWS(weighted_best_vertex(RatePolygon{}, kOnes));
}

TEST_CASE("upper_hull")
{
    std::vector<Rate> pts{Rate(1, 0), Rate(0, 1)};
    RatePolygon h = upper_hull(pts);
    REQUIRE(h.size() == 3);
    CHECK(h.vertices[0] == Rate(0, 0));
    CHECK(h.vertices[1] == Rate(1, 0));
    CHECK(h.vertices[2] == Rate(0, 1));

    pts.emplace_back(0.4, 0.4);
    CHECK(upper_hull(pts).size() == 3);

    pts.back() = Rate(0.8, 0.8);
    h = upper_hull(pts);
    REQUIRE(h.size() == 4);
    CHECK(h.vertices[2] == Rate(0.8, 0.8));
    CHECK_THROWS(upper_hull(std::vector<Rate>{}));
}

TEST_CASE("region_contains")
{
    const RatePolygon s = square(1);
    Containment c = region_contains(s, s, 0.0);
    CHECK(c.contained);
    c = region_contains(s, square(1.01), 1e-9);
    CHECK_FALSE(c.contained);
    CHECK(c.worst_slack == doctest::Approx(-0.01).epsilon(1e-9));
}

TEST_CASE("scheme names round-trip")
{
    for (Scheme s : {Scheme::PdfJoint, Scheme::PdfSeparate, Scheme::PdfPartial, Scheme::Df, Scheme::Outer,
                     Scheme::DegradedOuter})
        CHECK(scheme_from_name(scheme_name(s)) == s);
    CHECK_THROWS(scheme_from_name("tdma"));
}

TEST_CASE("SearchConfig validation")
{
    SearchConfig c;
    CHECK_NOTHROW(c.validate());
    c.slot_grid = 1;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.refine_shrink = 1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.refine_iters = -1;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("allocation_from_shares spends the budget")
{
    const PowerBudget b{2, 3};
    const TimeSlots t{0.2, 0.3, 0.5};
    const std::vector<double> df1{0.2, 0.3, 0.5}, df2{0.6, 0.1, 0.3};
    const Allocation a = allocation_from_shares(Scheme::Df, b, t, df1, df2);
    const PowerUsage u = power_feasible(t, std::get<DfAllocation>(a), b);
    CHECK(u.used1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(u.used2 == doctest::Approx(3.0).epsilon(1e-14));

    const std::vector<double> p1{0.1, 0.2, 0.3, 0.25, 0.15}, p2{0.3, 0.1, 0.2, 0.2, 0.2};
    const Allocation p = allocation_from_shares(Scheme::PdfJoint, b, t, p1, p2);
    const PowerUsage pu = power_feasible(t, std::get<PdfAllocation>(p), b);
    CHECK(pu.used1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(pu.used2 == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("optimize_scheme basic contracts")
{
    const SearchConfig cfg;
    const ChannelGains g = symmetric(2);
    for (Scheme s : {Scheme::Df, Scheme::Outer}) {
        const OptResult r = optimize_scheme(g, testing::kBudget, s, kOnes, cfg);
        CHECK(usage(r, testing::kBudget).feasible);
        CHECK(r.objective == doctest::Approx(r.vertex.sum()).epsilon(1e-9));
        CHECK(r.evaluations > 0);
        CHECK_NOTHROW(r.slots.validate());
    }
    const ChannelGains dead = symmetric(0);
    for (Scheme s : {Scheme::Df, Scheme::PdfJoint}) {
        const OptResult r = optimize_scheme(dead, testing::kBudget, s, kOnes, cfg);
        CHECK(std::abs(r.objective - c_gauss(4)) < 1e-3);
    }
    const OptResult strong = optimize_scheme(symmetric(10), testing::kBudget, Scheme::Df, Eigen::Vector2d(1, 0), cfg);
    CHECK(strong.objective >= c_gauss(2));

    CHECK_THROWS_AS(optimize_scheme(g, PowerBudget{0, 2}, Scheme::Df, kOnes, cfg), ValidationError);
}

TEST_CASE("optimize_scheme symmetry and determinism")
{
    const SearchConfig cfg;
    const ChannelGains g = symmetric(2);
    const OptResult a = optimize_scheme(g, testing::kBudget, Scheme::Df, Eigen::Vector2d(1, 0), cfg);
    const OptResult b = optimize_scheme(g, testing::kBudget, Scheme::Df, Eigen::Vector2d(0, 1), cfg);
    CHECK(std::abs(a.objective - b.objective) < 1e-6);
    CHECK(std::abs(a.vertex.x() - b.vertex.y()) < 1e-6);

    const OptResult again = optimize_scheme(g, testing::kBudget, Scheme::Df, Eigen::Vector2d(1, 0), cfg);
    CHECK(again.objective == a.objective);
    CHECK(again.vertex == a.vertex);
    CHECK(again.evaluations == a.evaluations);
    CHECK(again.slots == a.slots);
    CHECK(again.allocation == a.allocation);
}

TEST_CASE("optimize_scheme is monotone in the budget")
{
    const SearchConfig cfg;
    const ChannelGains g = symmetric(1.5);
    const double base = optimize_scheme(g, testing::kBudget, Scheme::Df, kOnes, cfg).objective;
    const double doubled = optimize_scheme(g, PowerBudget{4, 4}, Scheme::Df, kOnes, cfg).objective;
    CHECK(doubled >= base);
}

TEST_CASE("outer minus DF sum rate matches convex reference values")
{
    // Reference optima from an independent convex solver at mu = (1, 1).
    const std::pair<double, double> refs[] = {{1.5, 0.030991}, {2.0, 0.014320}, {4.0, 0.002285}};
    const SearchConfig cfg;
    for (const auto& [k, gap] : refs) {
        const ChannelGains g = symmetric(k);
        const double outer = optimize_scheme(g, testing::kBudget, Scheme::Outer, kOnes, cfg).objective;
        const double df = optimize_scheme(g, testing::kBudget, Scheme::Df, kOnes, cfg).objective;
        CHECK(outer - df == doctest::Approx(gap).epsilon(1e-6 / gap));
    }
}

TEST_CASE("frontier")
{
    const SearchConfig cfg;
    const Frontier mac = frontier(symmetric(0), testing::kBudget, Scheme::Df, 3, cfg);
    REQUIRE(mac.points.size() == 3);
    const RatePolygon base = baseline_region(Baseline::Mac, symmetric(0), testing::kBudget);
    CHECK(region_contains(base, mac.hull, 1e-9).contained);
    for (const Rate& v : base.vertices) CHECK(point_slack(mac.hull, v) >= -1e-3);

    const Frontier zero = frontier(ChannelGains{0, 0, 0, 0, 1}, testing::kBudget, Scheme::Df, 3, cfg);
    REQUIRE(zero.hull.size() == 1);
    CHECK(zero.hull.vertices[0] == Rate(0, 0));

    const ChannelGains g = symmetric(2);
    const Frontier df = frontier(g, testing::kBudget, Scheme::Df, 9, cfg);
    const Frontier outer = frontier(g, testing::kBudget, Scheme::Outer, 9, cfg);
    CHECK(region_contains(outer.hull, df.hull, 1e-6).contained);
    for (int k = 0; k < 9; ++k) {
        const OptResult single = optimize_scheme(g, testing::kBudget, Scheme::Df, frontier_direction(k, 9), cfg);
        CHECK(single.objective == df.points[static_cast<std::size_t>(k)].objective);
        CHECK(df.points[static_cast<std::size_t>(k)].objective >=
              outer.points[static_cast<std::size_t>(k)].objective * 0.0);
        CHECK(outer.points[static_cast<std::size_t>(k)].objective >=
              df.points[static_cast<std::size_t>(k)].objective - 1e-9);
    }
    CHECK_THROWS(frontier(g, testing::kBudget, Scheme::Df, 2, cfg));
}
