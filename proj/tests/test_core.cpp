#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qkd/core.hpp"

using namespace qkd;

TEST_CASE("binary entropy anchor values") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    // direct evaluation, frozen: H(0.04487) = 0.2641917745
    CHECK(binary_entropy(0.04487) == doctest::Approx(0.2641917745).epsilon(1e-8));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("binary entropy symmetry and shape") {
    for (int i = 0; i <= 1000; ++i) {
        const double e = i / 1000.0;
        CHECK(std::abs(binary_entropy(e) - binary_entropy(1.0 - e)) < 1e-12);
        CHECK(binary_entropy(e) <= 1.0 + 1e-12);
    }
    // monotone increasing on [0, 0.5]
    double prev = -1.0;
    for (int i = 0; i <= 500; ++i) {
        const double h = binary_entropy(i / 1000.0);
        CHECK(h >= prev);
        prev = h;
    }
    // concavity on an interior grid: midpoint above chord
    for (int i = 1; i < 499; ++i) {
        const double a = i / 1000.0;
        const double b = a + 0.002;
        const double mid = binary_entropy(0.5 * (a + b));
        CHECK(mid >= 0.5 * (binary_entropy(a) + binary_entropy(b)) - 1e-12);
    }
}

TEST_CASE("tau anchor values and branch") {
    CHECK(tau(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tau(0.5) == 1.0);
    CHECK(tau(0.75) == 1.0);
    // direct evaluation, frozen: tau(0.05546) = 0.2744546085
    CHECK(tau(0.05546) == doctest::Approx(0.2744546085).epsilon(1e-8));
    CHECK_THROWS_AS(tau(-0.01), std::domain_error);
    CHECK_THROWS_AS(tau(1.01), std::domain_error);
}

TEST_CASE("tau continuity at 1/2 and monotonicity") {
    CHECK(std::abs(tau(0.5 - 1e-12) - 1.0) < 1e-10);
    double prev = -1.0;
    for (int i = 0; i <= 500; ++i) {
        const double t = tau(i / 1000.0);
        CHECK(t >= prev - 1e-15);
        prev = t;
    }
}

TEST_CASE("dB to transmittance") {
    CHECK(db_to_transmittance(0.0) == 1.0);
    CHECK(db_to_transmittance(10.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(db_to_transmittance(3.26) == doctest::Approx(0.47206304).epsilon(1e-7));
    CHECK_THROWS_AS(db_to_transmittance(-1.0), std::domain_error);
}

TEST_CASE("losses compose in dB") {
    for (double a : {0.0, 0.7, 1.24, 3.26, 9.46}) {
        for (double b : {0.0, 0.5, 5.23, 11.01}) {
            CHECK(std::abs(db_to_transmittance(a + b)
                           - db_to_transmittance(a) * db_to_transmittance(b))
                  < 1e-12);
        }
    }
}

TEST_CASE("type invariants are enforced at construction") {
    CHECK_THROWS_AS(DeviceParams(0.0, 0.045, 3.52e-6), std::invalid_argument);
    CHECK_THROWS_AS(DeviceParams(0.072, 0.5, 3.52e-6), std::invalid_argument);
    CHECK_THROWS_AS(DeviceParams(0.072, 0.045, 3.52e-6, 0.5, 0.9),
                    std::invalid_argument);
    CHECK_THROWS_AS(IntensitySet(0.13, 0.31), std::invalid_argument);
    CHECK_THROWS_AS(IntensitySet(0.31, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelPoint(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(MeasuredStats(1.5, 0.0, 0.0, 0.0, 0.0), std::invalid_argument);
    // gain below background
    CHECK_THROWS_AS(MeasuredStats(1e-7, 0.0, 1e-2, 0.0, 1e-6), std::invalid_argument);
    CHECK_NOTHROW(DeviceParams(0.072, 0.045, 3.52e-6));
    CHECK_NOTHROW(MeasuredStats(1.182e-2, 4.487e-2, 5.245e-3, 4.448e-2, 4.383e-6));
}
