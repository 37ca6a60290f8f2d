// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xcov/errors.hpp"
#include "v2xcov/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace v2xcov;

namespace {

struct Moments
{
    double n = 0, sum = 0, sum2 = 0;
    void add(double v)
    {
        n += 1;
        sum += v;
        sum2 += v * v;
    }
    double mean() const { return sum / n; }
    double var() const { return (sum2 - sum * sum / n) / (n - 1); }
    double stderr_mean() const { return std::sqrt(var() / n); }
};

ScenarioConfig no_nlos()
{
    ScenarioConfig c;
    c.nlos_road_mode = NlosRoadMode::Fixed;
    c.nlos_road_count = 0;
    return c;
}

} // namespace

TEST_CASE("ppp sampler")
{
    Rng rng(42);
    CHECK(sample_ppp_1d(0.0, 3.0, rng).empty());
    CHECK_THROWS_AS(sample_ppp_1d(-0.1, 3.0, rng), ParameterError);
    CHECK_THROWS_AS(sample_ppp_1d(0.5, 0.0, rng), ParameterError);

    Moments count, pos;
    for (int i = 0; i < 100000; ++i)
    {
        const auto pts = sample_ppp_1d(0.5, 5.0, rng);
        count.add(static_cast<double>(pts.size()));
        for (double x : pts)
        {
            REQUIRE(std::abs(x) <= 5.0);
            pos.add(x);
        }
    }
    // Poisson(2 R lambda) = Poisson(5): mean and variance both 5.
    CHECK(std::abs(count.mean() - 5.0) <= 0.05);
    CHECK(std::abs(count.var() - 5.0) <= 0.2);
    CHECK(std::abs(pos.mean()) < 3 * pos.stderr_mean());
}

TEST_CASE("truncated normal stays in its window with the truncated variance")
{
    Rng rng(7);
    Moments m;
    for (int i = 0; i < 100000; ++i)
    {
        const double y = sample_truncated_normal(0.5, 1.0, rng);
        REQUIRE(std::abs(y) <= 1.0);
        m.add(y);
    }
    // Var of N(0, s^2) on [-2s, 2s]: s^2 (1 - 2 b phi(b) / (2 Phi(b) - 1)), b = 2.
    const double b = 2.0;
    const double phi = std::exp(-0.5 * b * b) / std::sqrt(2 * std::numbers::pi);
    const double mass = std::erf(b / std::sqrt(2.0));
    CHECK(m.var() == doctest::Approx(0.25 * (1 - 2 * b * phi / mass)).epsilon(0.02));

    // Narrow window goes through the uniform-proposal branch.
    for (int i = 0; i < 1000; ++i)
        REQUIRE(std::abs(sample_truncated_normal(1.0, 0.1, rng)) <= 0.1);
}

TEST_CASE("thomas sampler")
{
    Rng rng(3);
    ThomasParams p{0.5, 5.0, 0.5, 5.0, 1.0};

    SUBCASE("zero parent density is empty")
    {
        ThomasParams q = p;
        q.parent_density = 0;
        CHECK(sample_thomas_1d(q, rng).empty());
    }
    SUBCASE("nonpositive spread is rejected")
    {
        ThomasParams q = p;
        q.cluster_stddev = 0;
        CHECK_THROWS_AS(sample_thomas_1d(q, rng), ParameterError);
    }
    SUBCASE("mean daughter count is 2 R lambda_p c_bar")
    {
        Moments total;
        for (int i = 0; i < 100000; ++i)
        {
            double n = 0;
            for (const auto& c : sample_thomas_1d(p, rng))
            {
                REQUIRE(std::abs(c.parent) <= 5.0);
                for (double d : c.daughters)
                {
                    REQUIRE(std::abs(d) <= 5.0);
                    REQUIRE(std::abs(d - c.parent) <= 1.0);
                }
                n += static_cast<double>(c.daughters.size());
            }
            total.add(n);
        }
        CHECK(std::abs(total.mean() - 25.0) <= 0.5);
    }
    SUBCASE("vanishing spread collapses daughters onto the parent")
    {
        ThomasParams q = p;
        q.cluster_stddev = 1e-9;
        for (int i = 0; i < 200; ++i)
            for (const auto& c : sample_thomas_1d(q, rng))
                for (double d : c.daughters)
                    REQUIRE(std::abs(d - c.parent) <= 1e-6);
    }
}

TEST_CASE("scene layout")
{
    Rng rng(11);
    SUBCASE("fixed zero NLoS roads leaves the two typical roads")
    {
        const Scene s = build_scene(no_nlos(), VehicleModel::PCP, rng);
        REQUIRE(s.roads.los_roads.size() == 2);
        CHECK(s.roads.nlos_roads.empty());
        CHECK(s.roads.los_roads[0].offset == 0.0);
        CHECK(s.roads.los_roads[1].offset == 0.0);
        CHECK(s.roads.los_roads[0].axis != s.roads.los_roads[1].axis);
    }
    SUBCASE("fixed NLoS road count")
    {
        ScenarioConfig c;
        c.nlos_road_mode = NlosRoadMode::Fixed;
        c.nlos_road_count = 6;
        const Scene s = build_scene(c, VehicleModel::PPP, rng);
        CHECK(s.roads.nlos_roads.size() == 6);
        for (const Road& r : s.roads.nlos_roads)
            CHECK(std::abs(r.offset) <= c.grid_half_range);
    }
    SUBCASE("poisson NLoS road count has mean Lambda")
    {
        ScenarioConfig c;
        c.nlos_road_count = 8;
        c.parent_density = 0; // no vehicles needed
        Moments m;
        for (int i = 0; i < 20000; ++i)
            m.add(static_cast<double>(build_scene(c, VehicleModel::PCP, rng).roads.nlos_roads.size()));
        CHECK(std::abs(m.mean() - 8.0) < 4 * m.stderr_mean());
        CHECK(std::abs(m.var() - 8.0) < 0.4);
    }
    SUBCASE("P_I = 1 flags everyone")
    {
        ScenarioConfig c;
        c.interference_prob = 1.0;
        for (auto model : {VehicleModel::PPP, VehicleModel::PCP})
        {
            const Scene s = build_scene(c, model, rng);
            for (const Vehicle& v : s.vehicles.vehicles)
                CHECK(v.interferer);
        }
    }
    SUBCASE("cluster provenance")
    {
        ScenarioConfig c;
        const Scene pcp = build_scene(c, VehicleModel::PCP, rng);
        for (const Vehicle& v : pcp.vehicles.vehicles)
        {
            REQUIRE(v.cluster_parent.has_value());
            CHECK(std::abs(v.position - *v.cluster_parent) <= c.cluster_half_range);
            CHECK(std::abs(v.position) <= c.grid_half_range);
            CHECK(v.road_index < pcp.roads.size());
        }
        for (const Vehicle& v : build_scene(c, VehicleModel::PPP, rng).vehicles.vehicles)
            CHECK_FALSE(v.cluster_parent.has_value());
    }
    SUBCASE("per-cluster thinning marks whole clusters")
    {
        ScenarioConfig c = no_nlos();
        c.thinning = Thinning::PerCluster;
        for (int i = 0; i < 50; ++i)
        {
            const Scene s = build_scene(c, VehicleModel::PCP, rng);
            for (const Vehicle& a : s.vehicles.vehicles)
                for (const Vehicle& b : s.vehicles.vehicles)
                    if (a.road_index == b.road_index && a.cluster_parent == b.cluster_parent)
                        REQUIRE(a.interferer == b.interferer);
        }
    }
}

TEST_CASE("thinned interferers per LoS road")
{
    Rng rng(2024);
    SUBCASE("PCP at reference parameters: 2 R lambda_p c_bar P_I = 7.5")
    {
        ScenarioConfig c;
        Moments m;
        for (int i = 0; i < 100000; ++i)
        {
            const Scene s = build_scene(c, VehicleModel::PCP, rng);
            double n = 0;
            for (const Vehicle& v : s.vehicles.vehicles)
                if (v.road_index == 0 && v.interferer)
                    n += 1;
            m.add(n);
        }
        CHECK(std::abs(m.mean() - 7.5) <= 0.2);
    }
    SUBCASE("PPP thinning is again Poisson: mean == variance == P_I lambda 2R")
    {
        ScenarioConfig c = no_nlos();
        Moments m;
        for (int i = 0; i < 20000; ++i)
        {
            const Scene s = build_scene(c, VehicleModel::PPP, rng);
            double n = 0;
            for (const Vehicle& v : s.vehicles.vehicles)
                if (v.road_index == 1 && v.interferer)
                    n += 1;
            m.add(n);
        }
        CHECK(std::abs(m.mean() - 7.5) < 4 * m.stderr_mean());
        CHECK(std::abs(m.var() - 7.5) < 0.4);
    }
    SUBCASE("matched density: PCP and PPP carry the same mean vehicle count")
    {
        ScenarioConfig c = no_nlos();
        Moments ppp, pcp;
        for (int i = 0; i < 20000; ++i)
        {
            ppp.add(static_cast<double>(build_scene(c, VehicleModel::PPP, rng).vehicles.vehicles.size()));
            pcp.add(static_cast<double>(build_scene(c, VehicleModel::PCP, rng).vehicles.vehicles.size()));
        }
        const double se = std::sqrt(ppp.var() / ppp.n + pcp.var() / pcp.n);
        CHECK(std::abs(ppp.mean() - pcp.mean()) < 4 * se);
        CHECK(std::abs(ppp.mean() - 50.0) < 4 * ppp.stderr_mean());
    }
}

TEST_CASE("seeded scenes are bit-identical")
{
    ScenarioConfig c;
    Rng a(99), b(99);
    const Scene s1 = build_scene(c, VehicleModel::PCP, a);
    const Scene s2 = build_scene(c, VehicleModel::PCP, b);
    REQUIRE(s1.vehicles.vehicles.size() == s2.vehicles.vehicles.size());
    REQUIRE(s1.roads.nlos_roads.size() == s2.roads.nlos_roads.size());
    for (std::size_t i = 0; i < s1.vehicles.vehicles.size(); ++i)
    {
        CHECK(s1.vehicles.vehicles[i].position == s2.vehicles.vehicles[i].position);
        CHECK(s1.vehicles.vehicles[i].interferer == s2.vehicles.vehicles[i].interferer);
    }
}

TEST_CASE("stream seeds differ across indices and masters")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t m = 0; m < 4; ++m)
        for (std::uint64_t i = 0; i < 1000; ++i)
            seen.insert(stream_seed(m, i));
    CHECK(seen.size() == 4000);
    CHECK(stream_seed(5, 3) == stream_seed(5, 3));
}

TEST_CASE("config invariants")
{
    ScenarioConfig c;
    CHECK_NOTHROW(c.validate());
    c.cluster_half_range = 6;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("cluster_half_range <= grid_half_range"),
                         ParameterError);
    c = {};
    c.interference_prob = 1.5;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    c.parent_density = -1;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    c.n_los = 3;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    CHECK(c.effective_vehicle_density() == doctest::Approx(2.5));
    c.vehicle_density = 1.0;
    CHECK(c.effective_vehicle_density() == 1.0);
}
