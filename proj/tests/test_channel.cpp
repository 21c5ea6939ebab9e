#include "hdmac/channel.hpp"
#include "support.hpp"

using namespace hdmac;

TEST_CASE("c_gauss values")
{
    CHECK(c_gauss(0.0) == 0.0);
    CHECK(c_gauss(4.0) == doctest::Approx(1.160964047443681).epsilon(1e-15));
    CHECK(c_gauss(2.0) == doctest::Approx(0.792481250360578).epsilon(1e-15));
    CHECK_THROWS_AS(c_gauss(-1e-3), std::domain_error);
}

TEST_CASE("c_gauss is increasing and midpoint concave")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        double x = u(rng), y = u(rng);
        if (x == y) continue;
        if (x > y) std::swap(x, y);
        CHECK(c_gauss(x) < c_gauss(y));
        CHECK(c_gauss(0.5 * (x + y)) >= 0.5 * (c_gauss(x) + c_gauss(y)) - 1e-15);
    }
}

TEST_CASE("domain types reject bad values")
{
    CHECK_THROWS_AS((ChannelGains{-1, 1, 1, 1, 1}.validate()), ValidationError);
    CHECK_THROWS_AS((ChannelGains{1, 1, 1, 1, 0}.validate()), ValidationError);
    CHECK_THROWS_AS(TimeSlots::from_leading(0.7, 0.5).validate(), ValidationError);
    CHECK_THROWS_AS((TimeSlots{0.2, 0.2, 0.5}.validate()), ValidationError);
    CHECK_THROWS_AS((PowerBudget{0, 1}.validate()), ValidationError);
    CHECK_NOTHROW(TimeSlots::from_leading(0.2, 0.3).validate());
}

TEST_CASE("power_feasible examples")
{
    const PowerBudget b{2, 2};
    const PowerUsage zero = power_feasible(TimeSlots{}, PdfAllocation{}, b);
    CHECK(zero.used1 == 0.0);
    CHECK(zero.used2 == 0.0);
    CHECK(zero.feasible);

    const TimeSlots t{0.2, 0.2, 0.6};
    DfAllocation a{4, 4, 1, 1, 1, 1};
    PowerUsage u = power_feasible(t, a, b);
    CHECK(u.used1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(u.used2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(u.feasible);

    a.p12 = 5;
    u = power_feasible(t, a, b);
    CHECK(u.used1 == doctest::Approx(2.2).epsilon(1e-14));
    CHECK_FALSE(u.feasible);
}

TEST_CASE("power_feasible counts every PDF atom")
{
    const TimeSlots t{0.2, 0.3, 0.5};
    const PdfAllocation a{1, 2, 0.5, 0.25, 0.7, 0.9, 0.3, 0.4, 0.6, 0.8};
    const PowerUsage u = power_feasible(t, a, PowerBudget{10, 10});
    CHECK(u.used1 == doctest::Approx(0.2 * 1.5 + 0.5 * (0.7 + 0.3 * 0.5 + 0.4 * 0.25)).epsilon(1e-14));
    CHECK(u.used2 == doctest::Approx(0.3 * 2.25 + 0.5 * (0.9 + 0.8 * 0.5 + 0.6 * 0.25)).epsilon(1e-14));
}

TEST_CASE("power_feasible is monotone in every field")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const PowerBudget b{2, 2};
    for (int i = 0; i < 500; ++i) {
        const TimeSlots t = TimeSlots::from_leading(u(rng) / 6, u(rng) / 6);
        DfAllocation a{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        if (power_feasible(t, a, b).feasible) continue;
        for (double DfAllocation::*f : {&DfAllocation::p12, &DfAllocation::p21, &DfAllocation::p13,
                                        &DfAllocation::p23, &DfAllocation::ps1, &DfAllocation::ps2}) {
            DfAllocation more = a;
            more.*f += 0.5;
            CHECK_FALSE(power_feasible(t, more, b).feasible);
        }
    }
}

TEST_CASE("polygon_from_constraints examples")
{
    auto poly = polygon_from_constraints(LinearRegion{{1}, {1}, {2}});
    REQUIRE(poly.size() == 4);
    CHECK(poly.vertices[0] == Rate(0, 0));
    CHECK(poly.vertices[1] == Rate(1, 0));
    CHECK(poly.vertices[2] == Rate(1, 1));
    CHECK(poly.vertices[3] == Rate(0, 1));

    poly = polygon_from_constraints(LinearRegion{{0.709}, {0.709}, {1.293}});
    REQUIRE(poly.size() == 5);
    CHECK(poly.vertices[2].x() == doctest::Approx(0.709));
    CHECK(poly.vertices[2].y() == doctest::Approx(0.584).epsilon(1e-12));
    CHECK(poly.vertices[3].x() == doctest::Approx(0.584).epsilon(1e-12));
    CHECK(poly.vertices[4] == Rate(0, 0.709));

    poly = polygon_from_constraints(LinearRegion{{0}, {1}, {1}});
    REQUIRE(poly.size() == 2);
    CHECK(poly.vertices[0] == Rate(0, 0));
    CHECK(poly.vertices[1] == Rate(0, 1));

    poly = polygon_from_constraints(LinearRegion{{0}, {0}, {0}});
    REQUIRE(poly.size() == 1);
    CHECK(poly.vertices[0] == Rate(0, 0));
}

TEST_CASE("polygon_from_constraints matches a brute-force grid hull")
{
    // Bounds are multiples of the grid step so every true vertex lies on the grid.
    constexpr int n = 400;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, 2 * (n - 1));
    for (int trial = 0; trial < 8; ++trial) {
        const double h = 0.0025;
        const int i1 = n - 1;
        const int i2 = std::uniform_int_distribution<int>(1, n - 1)(rng);
        const int is = pick(rng);
        const LinearRegion region{{i1 * h, 5.0}, {i2 * h}, {is * h, 9.0}};
        std::vector<Rate> feasible;
        for (int a = 0; a <= i1; ++a) {
            for (int b = 0; b <= i2; ++b) {
                if (a + b <= is) feasible.emplace_back(a * h, b * h);
            }
        }
        const auto hull = testing::convex_hull(feasible);
        const auto poly = polygon_from_constraints(region);
        CHECK(testing::hausdorff(hull, poly.vertices) < 1e-9);
        for (const Rate& v : poly.vertices) {
            CHECK(v.x() <= region.min_r1() + 1e-9);
            CHECK(v.y() <= region.min_r2() + 1e-9);
            CHECK(v.x() + v.y() <= region.min_sum() + 1e-9);
            CHECK(v.minCoeff() >= 0.0);
        }
    }
}

TEST_CASE("LinearRegion validation")
{
    CHECK_THROWS_AS((LinearRegion{{}, {1}, {1}}.validate()), ValidationError);
    CHECK_THROWS_AS((LinearRegion{{-1}, {1}, {1}}.validate()), ValidationError);
    CHECK_NOTHROW((LinearRegion{{0}, {0}, {0}}.validate()));
}
