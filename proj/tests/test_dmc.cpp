#include "hdmac/dmc.hpp"
#include "hdmac/polygon.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hdmac;
using namespace hdmac::dmc;
using namespace oracles;

TEST_CASE("mutual_information examples")
{
    const Table indep{{"a", "b"}, {2, 2}, {0.25, 0.25, 0.25, 0.25}, 0};
    CHECK(mutual_information(indep, {"a"}, {"b"}) == doctest::Approx(0.0));
    const Table same{{"a", "b"}, {2, 2}, {0.5, 0, 0, 0.5}, 0};
    CHECK(mutual_information(same, {"a"}, {"b"}) == doctest::Approx(1.0).epsilon(1e-15));
    const double e = 0.11;
    const Table bsc{{"a", "b"}, {2, 2}, {0.5 * (1 - e), 0.5 * e, 0.5 * e, 0.5 * (1 - e)}, 0};
    CHECK(mutual_information(bsc, {"a"}, {"b"}) == doctest::Approx(0.500084041835472).epsilon(1e-14));
    const Table bad{{"a", "b"}, {2, 2}, {0.5, 0.5, 0.5, 0.5}, 0};
    CHECK_THROWS_AS(mutual_information(bad, {"a"}, {"b"}), ValidationError);
}

TEST_CASE("property: mutual_information against the entropy oracle")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const Table t = random_table({"a", "b", "c"}, {2, 3, 4}, 0, rng);
        const double ab = mutual_information(t, {"a"}, {"b"});
        CHECK(ab == doctest::Approx(mi_oracle(t, {"a"}, {"b"})).epsilon(1e-12));
        CHECK(mutual_information(t, {"a"}, {"b"}, {"c"}) ==
              doctest::Approx(mi_oracle(t, {"a"}, {"b"}, {"c"})).epsilon(1e-12));
        CHECK(ab >= -1e-15);
        CHECK(ab <= 1.0 + 1e-12);
        CHECK(ab == doctest::Approx(mutual_information(t, {"b"}, {"a"})).epsilon(1e-13));
        // Chain rule: I(A;B,C) = I(A;C) + I(A;B|C).
        const double lhs = mutual_information(t, {"a"}, {"b", "c"});
        const double rhs = mutual_information(t, {"a"}, {"c"}) + mutual_information(t, {"a"}, {"b"}, {"c"});
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("table validation")
{
    std::mt19937_64 rng(2);
    Table t = random_table({"x", "y"}, {2, 2}, 1, rng);
    CHECK_NOTHROW(t.validate());
    t.values[0] += 1e-9;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t.values[0] = -0.1;
    CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("theorem1 on noiseless binary slots")
{
    SlotChannels ch;
    ch.slot1 = {{"x1", "y1", "y12"}, {2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 1}, 1};
    ch.slot2 = {{"x2", "y2", "y21"}, {2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 1}, 1};
    ch.slot3 = {{"x13", "x23", "y3"}, {2, 2, 3}, {1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1}, 2};
    PdfInputDistribution d;
    d.x10_u = {{"x10", "u"}, {2, 2}, {0.25, 0.25, 0.25, 0.25}, 0};
    d.x20_v = d.x10_u;
    d.x20_v.vars = {"x20", "v"};
    d.x13_given_uv = {{"u", "v", "x13"}, {2, 2, 2}, std::vector<double>(8, 0.5), 2};
    d.x23_given_uv = {{"u", "v", "x23"}, {2, 2, 2}, std::vector<double>(8, 0.5), 2};
    const double third = 1.0 / 3.0;
    const TimeSlots slots{third, third, third};
    const LinearRegion r = theorem1_region(ch, d, slots);
    // I(X10;Y12|U) = 1 and I(X13;Y3|X23,U,V) = 1 for the adder.
    CHECK(r.r1_bounds[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(r.r2_bounds[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

    const LinearRegion c = corollary1_region(ch, d, slots);
    CHECK(c.r1_bounds == r.r1_bounds);
    CHECK(c.r2_bounds == r.r2_bounds);
    CHECK(c.sum_bounds[0] == doctest::Approx(r.sum_bounds[0]).epsilon(1e-12));
}

TEST_CASE("useless third slot")
{
    std::mt19937_64 rng(41);
    Instance in = random_instance(rng);
    in.ch.slot3 = {{"x13", "x23", "y3"}, {2, 2, 2}, std::vector<double>(8, 0.5), 2};
    const TimeSlots slots{0.3, 0.3, 0.4};
    const LinearRegion r = theorem1_region(in.ch, in.pdf, slots);

    const Table x10 = marginal(in.pdf.x10_u, {"x10"});
    const Table s1 = rename(in.ch.slot1, "x1", "x10");
    const Table j1 = product(std::vector<Table>{x10, s1});
    const Table x20 = marginal(in.pdf.x20_v, {"x20"});
    const Table j2 = product(std::vector<Table>{x20, rename(in.ch.slot2, "x2", "x20")});
    const double expected = 0.3 * mi_oracle(j1, {"x10"}, {"y1"}) + 0.3 * mi_oracle(j2, {"x20"}, {"y2"});
    CHECK(r.sum_bounds[3] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("point-mass inputs give zero bounds")
{
    std::mt19937_64 rng(43);
    Instance in = random_instance(rng);
    in.pdf.x10_u = point_mass({"x10", "u"}, {2, 2}, 0);
    in.pdf.x20_v = point_mass({"x20", "v"}, {2, 2}, 0);
    in.pdf.x13_given_uv = point_mass({"u", "v", "x13"}, {2, 2, 2}, 2);
    in.pdf.x23_given_uv = point_mass({"u", "v", "x23"}, {2, 2, 2}, 2);
    const TimeSlots slots{0.3, 0.3, 0.4};
    for (double v : theorem1_region(in.ch, in.pdf, slots).flat()) CHECK(v == doctest::Approx(0.0));
    for (double v : corollary1_region(in.ch, in.pdf, slots).flat()) CHECK(v == doctest::Approx(0.0));
    const OuterInputDistribution o = extend_to_outer(in.pdf);
    for (double v : dmc_outer_region(OuterVariant::Theorem3, in.ch, o, slots).flat())
        CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("theorem2 with a dead inter-user link")
{
    std::mt19937_64 rng(47);
    Instance in = random_instance(rng);
    // Y12 independent of X1.
    in.ch.slot1 = {{"x1", "y1", "y12"}, {2, 2, 2}, {0.1, 0.2, 0.3, 0.4, 0.1, 0.2, 0.3, 0.4}, 1};
    const TimeSlots slots{0.25, 0.25, 0.5};
    const LinearRegion r = theorem2_region(in.ch, in.df, slots);
    const Table joint = product(std::vector<Table>{in.df.s, in.df.x13_given_s, in.df.x23_given_s, in.ch.slot3});
    CHECK(r.r1_bounds[0] == doctest::Approx(0.5 * mi_oracle(joint, {"x13"}, {"y3"}, {"x23", "s"})).epsilon(1e-12));
}

TEST_CASE("theorem3 with a constant destination output in slot 1")
{
    std::mt19937_64 rng(53);
    Instance in = random_instance(rng);
    // Y1 is always 0; Y12 a noisy copy of X1.
    in.ch.slot1 = {{"x1", "y1", "y12"}, {2, 2, 2}, {0.9, 0.1, 0, 0, 0.2, 0.8, 0, 0}, 1};
    const TimeSlots slots{0.3, 0.3, 0.4};
    const LinearRegion t1 = theorem1_region(in.ch, in.pdf, slots);
    const LinearRegion t3 = dmc_outer_region(OuterVariant::Theorem3, in.ch, extend_to_outer(in.pdf), slots);
    CHECK(t3.r1_bounds[0] == doctest::Approx(t1.r1_bounds[0]).epsilon(1e-12));
}

TEST_CASE("property: random binary instances")
{
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Instance in = random_instance(rng);
        const TimeSlots slots = TimeSlots::from_leading(u(rng) * 0.5, u(rng) * 0.5);
        const LinearRegion t1 = theorem1_region(in.ch, in.pdf, slots);
        const LinearRegion c1 = corollary1_region(in.ch, in.pdf, slots);
        CHECK(std::abs(c1.r1_bounds[0] - t1.r1_bounds[0]) < 1e-12);
        CHECK(std::abs(c1.r2_bounds[0] - t1.r2_bounds[0]) < 1e-12);
        CHECK(std::abs(c1.sum_bounds[0] - t1.sum_bounds[0]) < 1e-12);
        for (std::size_t j = 1; j < 4; ++j) CHECK(c1.sum_bounds[j] <= t1.sum_bounds[j] + 1e-12);

        const LinearRegion t3 = dmc_outer_region(OuterVariant::Theorem3, in.ch, extend_to_outer(in.pdf), slots);
        const RatePolygon outer = polygon_from_constraints(t3);
        for (const Rate& v : polygon_from_constraints(t1).vertices) CHECK(point_slack(outer, v) >= -1e-12);

        const LinearRegion c2 = dmc_outer_region(OuterVariant::Corollary2, in.ch, extend_to_outer(in.pdf), slots);
        CHECK(c2.sum_bounds.size() == 2);
        for (double v : theorem2_region(in.ch, in.df, slots).flat()) CHECK(v >= -1e-15);
    }
}
