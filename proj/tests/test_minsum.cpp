#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "segcover/exact.hpp"
#include "segcover/hardness.hpp"
#include "segcover/minsum.hpp"

using namespace segcover;

TEST(Mintour, SingleSegmentOneTour)
{
    auto inst = make_instance({0, -3}, 40, {{-2, 5}});
    auto ts = solve_mintour(inst);
    ASSERT_EQ(ts.tours.size(), 1u);
    EXPECT_EQ(ts.tours[0].p, -2);
    EXPECT_EQ(ts.tours[0].q, 5);
}

TEST(Mintour, TwoSegmentsOneTour)
{
    auto inst = make_instance({0, -1}, 20, {{0, 3}, {5, 8}});
    auto ts = solve_mintour(inst);
    ASSERT_EQ(ts.tours.size(), 1u);
    EXPECT_NEAR(ts.tours[0].length, 1 + 8 + std::sqrt(65.0), 1e-12);
}

TEST(Mintour, ChainsMaximalTours)
{
    auto inst = make_instance({0, -1}, 8.3, {{-4, 4}});
    auto ts = solve_mintour(inst);
    ASSERT_GT(ts.tours.size(), 2u);
    for (std::size_t i = 0; i + 1 < ts.tours.size(); ++i) {
        EXPECT_NEAR(ts.tours[i].length, 8.3, 1e-9);
        EXPECT_DOUBLE_EQ(ts.tours[i].q, ts.tours[i + 1].p);
    }
    EXPECT_DOUBLE_EQ(ts.tours.back().q, 4);
}

TEST(Mintour, Infeasible)
{
    EXPECT_THROW(solve_mintour(make_instance({0, -10}, 19, {{0, 1}})), Error);
    EXPECT_THROW(solve_minsum(make_instance({0, -10}, 19, {{0, 1}})), Error);
}

TEST(Minsum, FigureExampleTwo)
{
    for (double L : {210.0, 220.0}) {
        auto inst = make_instance({0, -50}, L, {{-4, 8}, {30, 38}, {63, 79}});
        auto ts = solve_minsum(inst);
        ASSERT_EQ(ts.tours.size(), 2u);
        EXPECT_DOUBLE_EQ(ts.tours[0].p, -4);
        EXPECT_DOUBLE_EQ(ts.tours[0].q, 8);
        EXPECT_DOUBLE_EQ(ts.tours[1].p, 30);
        EXPECT_DOUBLE_EQ(ts.tours[1].q, 79);
        EXPECT_NEAR(ts.total_length, 313.59853464, 1e-5);
    }
}

TEST(Minsum, SingleCoverableSegmentIsOneTour)
{
    auto inst = make_instance({2, -3}, 100, {{0, 10}});
    auto ts = solve_minsum(inst);
    ASSERT_EQ(ts.tours.size(), 1u);
    EXPECT_NEAR(ts.total_length, tour_length(inst.base, 0, 10), 1e-12);
}

TEST(Minsum, GridVersionMatchesEnumeration)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        auto inst = oracle::random_grid_instance(rng, 1, 3, 4, 4);
        auto disc = discretize(inst, 1.0);
        if (disc.size() > 12)
            continue;
        double expected = oracle::discrete_minsum(inst, 1.0);
        auto ts = solve_minsum_on_grid(inst, disc.points);
        ASSERT_NEAR(ts.total_length, expected, 1e-6) << "case " << i;
    }
}

TEST(Minsum, ContinuousMatchesAnalyticOracle)
{
    std::mt19937_64 rng(12);
    int compared = 0;
    for (int i = 0; i < 200; ++i) {
        auto inst = oracle::random_instance(rng, 1, 4);
        auto ts = solve_minsum(inst);
        double ref = oracle::continuous_minsum_upto3(inst);
        EXPECT_LE(ts.total_length, ref + 1e-6) << "case " << i;
        if (ts.tours.size() <= 3) {
            EXPECT_NEAR(ts.total_length, ref, 1e-6) << "case " << i;
            ++compared;
        }
    }
    EXPECT_GT(compared, 100);
}

TEST(Minsum, NeverAboveGridOptimum)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        auto inst = oracle::random_grid_instance(rng, 1, 4, 6, 5);
        auto disc = discretize(inst, 1.0);
        EXPECT_LE(solve_minsum(inst).total_length, solve_minsum_on_grid(inst, disc.points).total_length + 1e-9);
    }
}

TEST(Minsum, RelationToMintour)
{
    std::mt19937_64 rng(14);
    for (int i = 0; i < 300; ++i) {
        auto inst = oracle::random_instance(rng, 1, 6);
        auto mt = solve_mintour(inst);
        auto ms = solve_minsum(inst);
        EXPECT_LE(mt.tours.size(), ms.tours.size());
        EXPECT_LE(ms.total_length, mt.total_length + 1e-9);
        for (const auto& ts : {mt, ms}) {
            auto plan = single_drone_plan(ts);
            EXPECT_TRUE(is_valid_plan(inst, plan));
            for (const auto& t : ts.tours) {
                // Shrink-canonical: both ends lie on segments.
                EXPECT_TRUE(segment_at(inst, t.p));
                EXPECT_TRUE(segment_at(inst, t.q));
            }
        }
    }
}

TEST(Minsum, ConstructionInstancesOneTourPerSegment)
{
    for (const char* values : {"1,1", "1,2,3,4", "3,1,1,1"}) {
        auto S = parse_partition(values);
        auto c = build_construction(S, 1000, 0.3);
        auto mt = solve_mintour(c.instance);
        EXPECT_EQ(mt.tours.size(), S.values.size());
        auto ms = solve_minsum(c.instance);
        EXPECT_EQ(ms.tours.size(), S.values.size());
        for (const auto& t : ms.tours)
            EXPECT_GE(t.length, std::sqrt(5.0) * 1000 / 3 - 1e-9);
    }
}

TEST(Minsum, RoundRobin)
{
    TourSet ts = make_tour_set({make_tour({0, -1}, 0, 1), make_tour({0, -1}, 2, 3), make_tour({0, -1}, 4, 5)});
    auto plan = distribute_round_robin(ts, 2);
    EXPECT_EQ(plan.drones[0].size(), 2u);
    EXPECT_EQ(plan.drones[1].size(), 1u);
    EXPECT_THROW(distribute_round_robin(ts, 0), Error);
}
