#include <gtest/gtest.h>

#include <random>

#include "segcover/io.hpp"
#include "segcover/makespan.hpp"
#include "segcover/minsum.hpp"

using namespace segcover;

TEST(TourLength, FigureExampleTours)
{
    BasePoint b{0, -50};
    EXPECT_NEAR(tour_length(b, 31, 60), 165.93276108, 1e-6);
    EXPECT_NEAR(tour_length(b, -20, 10), 134.84184321, 1e-6);
}

TEST(TourLength, DegenerateTourIsTwiceHeight)
{
    EXPECT_DOUBLE_EQ(tour_length({0, -7.5}, 0, 0), 15.0);
}

TEST(TourLength, RejectsBadInput)
{
    EXPECT_THROW(tour_length({0, -1}, std::nan(""), 1), Error);
    EXPECT_THROW(tour_length({0, -1}, 0, INFINITY), Error);
    EXPECT_THROW(tour_length({0, -1}, 2, 1), Error);
}

TEST(TourLength, GeometricProperties)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int i = 0; i < 2000; ++i) {
        BasePoint b{u(rng), u(rng)};
        if (b.y == 0)
            continue;
        double p = u(rng), q = u(rng);
        if (p > q)
            std::swap(p, q);
        double len = tour_length(b, p, q);

        // Mirror image across x = c.
        double c = u(rng);
        EXPECT_NEAR(len, tour_length({2 * c - b.x, b.y}, 2 * c - q, 2 * c - p), 1e-9 * std::max(1.0, len));

        // At least twice the distance to the nearest covered point.
        double nearest = std::clamp(b.x, p, q);
        EXPECT_GE(len + 1e-9, 2 * base_distance(b, nearest));

        // Shrinking never lengthens.
        double p2 = p + (q - p) * 0.3, q2 = q - (q - p) * 0.2;
        EXPECT_LE(tour_length(b, p2, q2), len + 1e-9);
    }
}

TEST(Reach, ForwardAndBackwardHitBudget)
{
    BasePoint b{3, -4};
    for (double p : {-10.0, 0.0, 3.0, 8.0}) {
        auto q = reach_forward(b, 40, p);
        ASSERT_TRUE(q);
        EXPECT_NEAR(tour_length(b, p, *q), 40, 1e-9);
        auto p2 = reach_backward(b, 40, *q);
        ASSERT_TRUE(p2);
        EXPECT_NEAR(*p2, p, 1e-7);
    }
    EXPECT_FALSE(reach_forward(b, 5, 100));
}

TEST(Instance, SortsAndValidates)
{
    auto inst = make_instance({0, -1}, 10, {{5, 6}, {0, 1}});
    ASSERT_EQ(inst.segments.size(), 2u);
    EXPECT_EQ(inst.segments[0].left, 0);
    EXPECT_THROW(make_instance({0, -1}, 10, {{0, 2}, {1, 3}}), Error);
    EXPECT_THROW(make_instance({0, -1}, 10, {{0, 1}, {1, 3}}), Error);
    EXPECT_THROW(make_instance({0, 0}, 10, {{0, 1}}), Error);
    EXPECT_THROW(make_instance({0, -1}, 0, {{0, 1}}), Error);
    EXPECT_THROW(make_instance({0, -1}, 10, {{2, 1}}), Error);
}

TEST(Instance, CanonicalizeMovesBaseToOrigin)
{
    auto inst = make_instance({5, -2}, 30, {{6, 9}});
    auto c = canonicalize(inst);
    EXPECT_EQ(c.base.x, 0);
    EXPECT_EQ(c.segments[0].left, 1);
    EXPECT_DOUBLE_EQ(tour_length(inst.base, 6, 9), tour_length(c.base, 1, 4));
}

TEST(CoverageGaps, Examples)
{
    auto one = make_instance({0, -1}, 100, {{0, 10}});
    EXPECT_TRUE(coverage_gaps(one, make_plan({{make_tour(one.base, 0, 10)}})).empty());

    auto gaps = coverage_gaps(one, make_plan({{make_tour(one.base, 0, 4), make_tour(one.base, 6, 10)}}));
    ASSERT_EQ(gaps.size(), 1u);
    EXPECT_DOUBLE_EQ(gaps[0].left, 4);
    EXPECT_DOUBLE_EQ(gaps[0].right, 6);

    auto fig1 = make_instance({0, -50}, 170, {{-20, -13}, {-4, 10}, {31, 60}});
    auto plan = make_plan({{make_tour(fig1.base, -20, 10)}, {make_tour(fig1.base, 31, 60)}});
    EXPECT_TRUE(coverage_gaps(fig1, plan).empty());
    EXPECT_TRUE(is_valid_plan(fig1, plan));
}

TEST(Feasibility, Examples)
{
    EXPECT_TRUE(is_feasible(make_instance({0, -50}, 200, {{-20, -13}, {-4, 10}, {31, 60}})));
    EXPECT_FALSE(is_feasible(make_instance({0, -1}, 2, {{0, 0.0001}})));
    EXPECT_TRUE(is_feasible(make_instance({0, -1}, 2, {})));
}

TEST(Plan, Aggregates)
{
    BasePoint b{0, -1};
    auto p = make_plan({{make_tour(b, 0, 1), make_tour(b, 2, 3)}, {make_tour(b, 5, 6)}});
    EXPECT_DOUBLE_EQ(p.total_length, drone_load(p.drones[0]) + drone_load(p.drones[1]));
    EXPECT_DOUBLE_EQ(p.makespan, std::max(drone_load(p.drones[0]), drone_load(p.drones[1])));
}

TEST(EmptyInstance, SolversReturnEmptyPlans)
{
    auto inst = make_instance({0, -1}, 5, {});
    auto ts = solve_minsum(inst);
    EXPECT_TRUE(ts.tours.empty());
    auto plan = g2d(ts);
    EXPECT_EQ(plan.makespan, 0);
    EXPECT_TRUE(coverage_gaps(inst, plan).empty());
}

TEST(Serialization, RoundTrip)
{
    auto inst = make_instance({0.1, -50.25}, 170.125, {{31, 60}, {-20, -13.5}, {-4, 10}});
    auto text = io::render_instance(inst);
    auto back = io::parse_instance(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(io::render_instance(back), text);
}

TEST(Serialization, UnsortedOnDiskAndErrors)
{
    auto inst = io::parse_instance(R"({"base":[0,-1],"L":9,"segments":[[4,5],[0,1]]})");
    EXPECT_EQ(inst.segments[0].left, 0);
    EXPECT_THROW(io::parse_instance(R"({"base":[0,-1],"L":9,"segments":[[0,2],[1,5]]})"), Error);
    EXPECT_THROW(io::parse_instance(R"({"base":[0],"L":9,"segments":[]})"), Error);
    EXPECT_THROW(io::parse_instance("not json"), Error);
}

TEST(Serialization, PlanJson)
{
    auto inst = make_instance({0, -50}, 170, {{-20, -13}, {-4, 10}, {31, 60}});
    auto plan = g2d(solve_minsum(inst));
    auto j = io::plan_to_json(inst, plan);
    EXPECT_TRUE(j["covered"].get<bool>());
    EXPECT_NEAR(j["makespan"].get<double>(), 165.93276108, 1e-8);
    auto back = io::plan_from_json(j);
    EXPECT_NEAR(back.makespan, plan.makespan, 1e-8);
}
