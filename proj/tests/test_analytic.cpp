// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "v2xcov/analytic.hpp"
#include "v2xcov/channel.hpp"
#include "v2xcov/units.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace v2xcov;

namespace {

// Spot configurations with unit transmit power so that s is the only scale.
ScenarioConfig spot(char which)
{
    ScenarioConfig c;
    c.tx_power = 1.0;
    switch (which)
    {
    case 'A':
        c.carrier = Carrier::Sub6;
        break;
    case 'B':
        c.carrier = Carrier::MmWave;
        break;
    case 'C':
        c.carrier = Carrier::MmWave;
        c.cluster_stddev = 0.8;
        c.mean_cluster_size = 10;
        c.thinning = Thinning::PerCluster;
        break;
    case 'D':
        c.carrier = Carrier::Sub6;
        c.penetration_loss_sub6 = 0.3;
        break;
    }
    return c;
}

// Brute-force E_K[a L^K / (1 + a L^K)] summed far into the tail.
double brute_nlos_hit(double a, double L, double mean)
{
    double sum = 0;
    double logp = -mean; // log P(K - 1 = 0)
    const int terms = static_cast<int>(mean + 40 * std::sqrt(mean + 1) + 200);
    for (int j = 0; j < terms; ++j)
    {
        if (j > 0)
            logp += std::log(mean) - std::log(static_cast<double>(j));
        const double al = a * std::pow(L, j + 1);
        sum += std::exp(logp) * al / (1 + al);
    }
    return sum;
}

} // namespace

TEST_CASE("laplace argument")
{
    CHECK(laplace_s(1, 1, 1, 1, 2) == 1.0);
    CHECK(laplace_s(0, 1, 1, 1, 2) == 0.0);
    CHECK(laplace_s(0.1, 1, 1, 2, 2) == doctest::Approx(0.4));
    ScenarioConfig c;
    c.carrier = Carrier::Sub6;
    CHECK(laplace_s(c) == doctest::Approx(0.1 * 0.25 / c.tx_power));
    c.carrier = Carrier::MmWave;
    CHECK(laplace_s(c) == doctest::Approx(0.1 * 0.25 / (c.tx_power * 2.873298751917)));
}

TEST_CASE("transforms at s = 0 are exactly one")
{
    for (char w : {'A', 'B', 'C'})
    {
        const ScenarioConfig c = spot(w);
        CHECK(laplace_los_ppp(0, c).value == 1.0);
        CHECK(laplace_los_pcp(0, c).value == 1.0);
        CHECK(laplace_nlos(0, c, VehicleModel::PPP).value == 1.0);
        CHECK(laplace_nlos(0, c, VehicleModel::PCP).value == 1.0);
    }
}

TEST_CASE("transforms without interferers are one")
{
    ScenarioConfig c = spot('B');
    c.vehicle_density = 0.0;
    CHECK(laplace_los_ppp(0.4, c).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(laplace_nlos(0.4, c, VehicleModel::PPP).value == doctest::Approx(1.0).epsilon(1e-12));
    c = spot('B');
    c.interference_prob = 0;
    CHECK(laplace_los_ppp(0.4, c).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(laplace_los_pcp(0.4, c).value == doctest::Approx(1.0).epsilon(1e-12));
    c = spot('B');
    c.mean_cluster_size = 1e-9;
    CHECK(laplace_los_pcp(0.4, c).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("LoS transforms match Riemann-sum oracles")
{
    // Frozen from tests/oracles.hpp (10000 x 1000 cells for PPP, 2000 x 400 x 256 for PCP).
    struct Case
    {
        char config;
        double s, ppp, pcp;
    };
    const Case cases[] = {
        {'A', 0.4, 0.2538981274, 0.3634729430},
        {'B', 0.4, 0.3291074035, 0.4160461319},
        {'C', 2.0, 0.0127811879, 0.2867860460},
    };
    for (const Case& k : cases)
    {
        CAPTURE(k.config);
        const ScenarioConfig c = spot(k.config);
        const LaplaceFactor ppp = laplace_los_ppp(k.s, c);
        const LaplaceFactor pcp = laplace_los_pcp(k.s, c);
        CHECK(std::abs(ppp.value - k.ppp) < 1e-3);
        CHECK(std::abs(pcp.value - k.pcp) < 1e-3);
        // The PPP oracle grid is fine enough for a much tighter check.
        CHECK(std::abs(ppp.value - k.ppp) < 1e-6);
        CHECK(ppp.error < 1e-4);
        CHECK(pcp.error < 1e-4);
    }
}

TEST_CASE("NLoS transform matches a sampled oracle")
{
    // Frozen from oracle::nlos_ppp_mc with 1e6 draws, seed 5.
    CHECK(std::abs(laplace_nlos(0.4, spot('B'), VehicleModel::PPP).value - 0.9999962605) < 1e-3);
    CHECK(std::abs(laplace_nlos(5.0, spot('D'), VehicleModel::PPP).value - 0.9019077483) < 1e-3);
}

TEST_CASE("NLoS transform vanishes with full penetration loss")
{
    ScenarioConfig c = spot('D');
    c.penetration_loss_sub6 = 1e-12;
    CHECK(laplace_nlos(5.0, c, VehicleModel::PPP).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(laplace_nlos(5.0, c, VehicleModel::PCP).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("NLoS hit series")
{
    for (double mean : {0.0, 0.3, 4.0, 12.5, 80.0, 2500.0})
        for (double a : {0.1, 30.0, 1e6})
            for (double L : {1e-4, 0.3, 0.9})
            {
                CAPTURE(mean);
                CAPTURE(a);
                CAPTURE(L);
                const double got = nlos_expected_hit(a, L, mean, 1e-12);
                CHECK(std::abs(got - brute_nlos_hit(a, L, mean)) < 1e-10);
            }
    CHECK(nlos_expected_hit(0, 0.3, 4.0, 1e-9) == 0.0);
}

TEST_CASE("coverage composition")
{
    ScenarioConfig c;
    SUBCASE("zero threshold is full coverage")
    {
        c.threshold = 0;
        for (auto m : {VehicleModel::PPP, VehicleModel::PCP})
            CHECK(coverage(c, m, RoadCase::Both).p_cov == 1.0);
    }
    SUBCASE("no interferers leaves the noise term")
    {
        c.interference_prob = 0;
        c.noise_power = 1e3;
        for (auto m : {VehicleModel::PPP, VehicleModel::PCP})
        {
            const CoverageResult r = coverage(c, m, RoadCase::Both);
            CHECK(std::abs(r.p_cov - std::exp(-r.s * c.noise_power)) < 1e-12);
        }
    }
    SUBCASE("product of factors")
    {
        c.noise_power = 1e2;
        for (auto m : {VehicleModel::PPP, VehicleModel::PCP})
        {
            const CoverageResult r = coverage(c, m, RoadCase::Both);
            const double los = laplace_los(r.s, c, m).value;
            const double nlos = laplace_nlos(r.s, c, m).value;
            CHECK(std::abs(r.noise_factor - std::exp(-r.s * c.noise_power)) < 1e-12);
            CHECK(std::abs(r.los_factor - los * los) < 1e-12);
            CHECK(std::abs(r.nlos_factor - std::exp(-c.nlos_road_count * (1 - nlos))) < 1e-12);
            CHECK(std::abs(r.p_cov - r.noise_factor * r.los_factor * r.nlos_factor) < 1e-12);
            CHECK(r.p_out == doctest::Approx(1 - r.p_cov));

            const CoverageResult only_los = coverage(c, m, RoadCase::OnlyLoS);
            CHECK(only_los.nlos_factor == 1.0);
            CHECK(std::abs(only_los.p_cov - r.noise_factor * r.los_factor) < 1e-12);
            const CoverageResult only_nlos = coverage(c, m, RoadCase::OnlyNLoS);
            CHECK(only_nlos.los_factor == 1.0);
            CHECK(std::abs(only_nlos.p_cov - r.noise_factor * r.nlos_factor) < 1e-12);
        }
    }
    SUBCASE("fixed NLoS road count")
    {
        c.nlos_road_mode = NlosRoadMode::Fixed;
        c.nlos_road_count = 3;
        const CoverageResult r = coverage(c, VehicleModel::PPP, RoadCase::OnlyNLoS);
        const double f = laplace_nlos(r.s, c, VehicleModel::PPP).value;
        CHECK(std::abs(r.nlos_factor - f * f * f) < 1e-12);
    }
}

TEST_CASE("clustering and thinning orderings")
{
    ScenarioConfig c;
    for (auto carrier : {Carrier::MmWave, Carrier::Sub6})
        for (double t_db : {-10.0, 0.0, 10.0})
        {
            c.carrier = carrier;
            c.threshold = db_to_linear(t_db);
            const double ppp = coverage(c, VehicleModel::PPP, RoadCase::Both).p_out;
            const double pcp = coverage(c, VehicleModel::PCP, RoadCase::Both).p_out;
            CHECK(pcp <= ppp);
            ScenarioConfig k = c;
            k.thinning = Thinning::PerCluster;
            CHECK(coverage(k, VehicleModel::PCP, RoadCase::Both).p_cov >=
                  coverage(c, VehicleModel::PCP, RoadCase::Both).p_cov);
        }
}

TEST_CASE("randomized monotonicity")
{
    std::mt19937_64 rng(20261017);
    std::uniform_real_distribution<double> u01(0, 1);
    for (int trial = 0; trial < 12; ++trial)
    {
        ScenarioConfig c;
        c.carrier = u01(rng) < 0.5 ? Carrier::MmWave : Carrier::Sub6;
        c.interference_prob = 0.05 + 0.9 * u01(rng);
        c.mean_cluster_size = 1 + 9 * u01(rng);
        c.cluster_stddev = 0.2 + 0.8 * u01(rng);
        c.serving_distance = 0.1 + 1.9 * u01(rng);
        c.threshold = db_to_linear(-20 + 30 * u01(rng));
        const auto model = u01(rng) < 0.5 ? VehicleModel::PPP : VehicleModel::PCP;
        CAPTURE(trial);

        const CoverageResult base = coverage(c, model, RoadCase::Both);
        auto check_lower = [&](ScenarioConfig next)
        {
            const CoverageResult r = coverage(next, model, RoadCase::Both);
            CHECK(r.p_cov <= base.p_cov + base.error + r.error);
        };
        ScenarioConfig t = c;
        t.threshold *= 1.5;
        check_lower(t);
        ScenarioConfig r0 = c;
        r0.serving_distance *= 1.2;
        check_lower(r0);
        ScenarioConfig pi = c;
        pi.interference_prob = std::min(1.0, pi.interference_prob + 0.05);
        check_lower(pi);
        ScenarioConfig cb = c;
        cb.mean_cluster_size *= 1.3;
        check_lower(cb);
    }
}

TEST_CASE("error estimates are honest under refinement")
{
    ScenarioConfig c;
    for (auto model : {VehicleModel::PPP, VehicleModel::PCP})
    {
        QuadratureSpec coarse;
        QuadratureSpec fine;
        fine.rel_tol = coarse.rel_tol / 2;
        fine.abs_tol = coarse.abs_tol / 2;
        const CoverageResult a = coverage(c, model, RoadCase::Both, coarse);
        const CoverageResult b = coverage(c, model, RoadCase::Both, fine);
        CHECK(std::abs(a.p_cov - b.p_cov) <= a.error + 1e-12);
        CHECK(a.error < 1e-4);
    }
}

TEST_CASE("invalid inputs are rejected")
{
    ScenarioConfig c;
    c.cluster_half_range = 6;
    CHECK_THROWS_AS(coverage(c, VehicleModel::PCP, RoadCase::Both), ParameterError);
    c = {};
    QuadratureSpec q;
    q.rel_tol = -1;
    CHECK_THROWS_AS(coverage(c, VehicleModel::PPP, RoadCase::Both, q), ParameterError);
    CHECK_THROWS_AS(laplace_los_ppp(-1, c), ParameterError);
}
