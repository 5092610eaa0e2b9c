#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hqs/constants.hpp"
#include "hqs/errors.hpp"
#include "hqs/stats.hpp"

using namespace hqs;
namespace cs = hqs::constants;

namespace {

std::vector<ThermometryPoint> synthetic_thermometry(double offset, double freq, double noise,
                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<ThermometryPoint> points;
    for (const double t : {0.030, 0.050, 0.080, 0.120, 0.180, 0.250}) {
        ThermometryPoint p;
        p.temperature = t;
        const double clean = bose_population(t, freq, offset);
        p.sigma = noise > 0.0 ? noise * clean : 1e-6;
        p.population = clean + (noise > 0.0 ? p.sigma * gauss(rng) : 0.0);
        points.push_back(p);
    }
    return points;
}

// least-squares slope of log(sem) vs log(k)
double loglog_slope(const std::vector<double>& sem) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(sem.size());
    for (std::size_t i = 0; i < sem.size(); ++i) {
        const double x = std::log(static_cast<double>(i + 2));  // k = 2..n
        const double y = std::log(sem[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("Bose-Einstein population curve") {
    CHECK(bose_population(0.0, 5.0486e9, 3e-5) == doctest::Approx(3e-5));

    // x = 1/2 sits at the top of the (1-x) x arc
    const double t_half = cs::planck_h * 5.0486e9 / (cs::k_boltzmann * std::log(2.0));
    CHECK(bose_population(t_half, 5.0486e9, 0.0) == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(bose_population(0.100, 5.0486e9, 3e-5) == doctest::Approx(0.0808 + 3e-5).epsilon(1e-3));

    // strictly increasing in T up to the arc maximum
    double prev = 0.0;
    for (double t = 0.005; t <= t_half; t += 0.005) {
        const double p = bose_population(t, 5.0486e9, 0.0);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("effective temperature inversion") {
    CHECK(effective_temperature(6.7e-5, 5.0486e9) == doctest::Approx(25.2e-3).epsilon(0.01));
    CHECK(effective_temperature(1.5e-3, 5.06881e9) == doctest::Approx(37e-3).epsilon(0.02));

    // round trip over the 5-200 mK range
    for (double t = 0.005; t <= 0.200; t += 0.005) {
        const double p = bose_population(t, 5.0486e9, 0.0);
        CHECK(effective_temperature(p, 5.0486e9) == doctest::Approx(t).epsilon(1e-9));
    }

    // monotone decrease toward zero
    CHECK(effective_temperature(1e-8, 5.0486e9) < effective_temperature(1e-6, 5.0486e9));

    CHECK_THROWS_AS(effective_temperature(0.25, 5.0486e9), InvalidParameterError);
    CHECK_THROWS_AS(effective_temperature(0.0, 5.0486e9), InvalidParameterError);
}

TEST_CASE("offset fit recovers a noiseless synthetic offset") {
    const auto points = synthetic_thermometry(3e-5, 5.0486e9, 0.0, 0);
    const BoseFit fit = fit_bose(points, 5.0486e9);
    CHECK(fit.offset == doctest::Approx(3e-5).epsilon(1e-9));

    CHECK_THROWS_AS(fit_bose({points.begin(), points.begin() + 3}, 5.0486e9),
                    InvalidParameterError);
    // narrow temperature span rejected
    std::vector<ThermometryPoint> narrow = {{0.040, 1e-3, 1e-5},
                                            {0.045, 1.2e-3, 1e-5},
                                            {0.050, 1.4e-3, 1e-5},
                                            {0.055, 1.6e-3, 1e-5}};
    CHECK_THROWS_AS(fit_bose(narrow, 5.0486e9), InvalidParameterError);
}

TEST_CASE("offset fit under 5% noise stays within 3 sigma, 100 seeds") {
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto points = synthetic_thermometry(3e-5, 5.0486e9, 0.05, seed);
        const BoseFit fit = fit_bose(points, 5.0486e9);
        if (std::abs(fit.offset - 3e-5) > 3.0 * fit.offset_sigma) ++failures;
    }
    // 3-sigma coverage: a couple of outliers in 100 draws are expected
    CHECK(failures <= 3);
}

TEST_CASE("inverse-variance weighted mean") {
    std::vector<PopulationRecord> records(2);
    records[0].mean = 1e-4;
    records[0].variance = 1e-8;
    records[1].mean = 3e-4;
    records[1].variance = 4e-8;
    const PopulationRecord merged = weighted_mean(records);
    CHECK(merged.mean == doctest::Approx(1.4e-4).epsilon(1e-12));
    CHECK(merged.variance == doctest::Approx(8e-9).epsilon(1e-12));

    // equal variances: arithmetic mean
    records[1].variance = 1e-8;
    CHECK(weighted_mean(records).mean == doctest::Approx(2e-4).epsilon(1e-12));

    // huge-variance record is effectively ignored
    records[1].variance = 1e6;
    CHECK(weighted_mean(records).mean == doctest::Approx(1e-4).epsilon(1e-9));

    // merged variance never exceeds the best input
    records[1].variance = 4e-8;
    CHECK(weighted_mean(records).variance <= 1e-8);

    records[1].variance = 0.0;
    CHECK_THROWS_AS(weighted_mean(records), InvalidParameterError);

    const std::vector<PopulationRecord> single(1, [] {
        PopulationRecord r;
        r.mean = 5e-5;
        r.variance = 1e-9;
        return r;
    }());
    CHECK(weighted_mean(single).mean == doctest::Approx(5e-5));
    CHECK(weighted_mean(single).variance == doctest::Approx(1e-9));
}

TEST_CASE("block statistics") {
    SUBCASE("constant series") {
        const BlockStatistics s = block_statistics({2e-5, 2e-5, 2e-5, 2e-5});
        CHECK(s.sigma_total == doctest::Approx(0.0));
        for (const double v : s.sem) CHECK(v == doctest::Approx(0.0));
    }

    SUBCASE("two blocks, closed form") {
        const double a = 1e-4, b = 3e-4;
        const BlockStatistics s = block_statistics({a, b});
        CHECK(s.sigma_total == doctest::Approx(std::abs(a - b) / std::sqrt(2.0)).epsilon(1e-12));
        REQUIRE(s.sem.size() == 1);
        CHECK(s.sem[0] == doctest::Approx(std::abs(a - b) / 2.0).epsilon(1e-12));
    }

    SUBCASE("gaussian series SEM slope is -1/2") {
        const auto blocks = synthetic_blocks(6.7e-5, 1e-5, 10000, 42);
        const BlockStatistics s = block_statistics(blocks);
        CHECK(loglog_slope(s.sem) == doctest::Approx(-0.5).epsilon(0.04));
        // the reference curve is exactly sigma_total / sqrt(k)
        REQUIRE(s.reference.size() == s.sem.size());
        CHECK(s.reference.front() ==
              doctest::Approx(s.sigma_total / std::sqrt(2.0)).epsilon(1e-12));
        for (std::size_t i = 0; i + 1 < s.reference.size(); ++i)
            CHECK(s.reference[i + 1] < s.reference[i]);
    }

    CHECK_THROWS_AS(block_statistics({1e-4}), InvalidParameterError);
}

TEST_CASE("synthetic block generator is seed-deterministic") {
    const auto a = synthetic_blocks(1e-4, 1e-5, 100, 7);
    const auto b = synthetic_blocks(1e-4, 1e-5, 100, 7);
    const auto c = synthetic_blocks(1e-4, 1e-5, 100, 8);
    CHECK(a == b);
    CHECK(a != c);
    CHECK_THROWS_AS(synthetic_blocks(1e-4, 1e-5, 0, 7), InvalidParameterError);
}
