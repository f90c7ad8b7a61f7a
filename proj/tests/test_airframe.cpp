#include "doctest.h"

#include "birds/airframe.hpp"
#include "birds/rng.hpp"
#include "oracles.hpp"

using namespace birds;

namespace {

UavSpec spec_with_capacity(double k) {
    UavSpec s;
    s.node_id = 1;
    s.empty_weight_kg = 2;
    s.payload_capacity_kg = k;
    s.battery_capacity_j = 100000;
    s.rated_flight_duration_s = 3600;
    s.rated_travel_distance_m = 1000;
    return s;
}

KinematicState moving(double tau, Vec3 v) {
    KinematicState k;
    k.velocity = v;
    k.flight_elapsed_s = tau;
    return k;
}

}  // namespace

TEST_CASE("flying distance") {
    CHECK(flying_distance(moving(10, {3, 4, 0})) == doctest::Approx(50));
    CHECK(flying_distance(moving(10, {0, 0, 0})) == 0);
    CHECK(flying_distance(moving(2, {1, 2, 2})) == doctest::Approx(6));
}

TEST_CASE("flying distance scales with velocity") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const Vec3 v{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-5, 5)};
        const double tau = rng.uniform(0, 600);
        const double c = rng.uniform(0, 10);
        CHECK(flying_distance(moving(tau, v * c)) == doctest::Approx(c * flying_distance(moving(tau, v))));
    }
}

TEST_CASE("sortie energy") {
    CHECK(sortie_energy(100, 2, 30) == 160);
    CHECK(sortie_energy(0, 2, 0) == 0);
    CHECK(sortie_energy(50, 0, 12) == 50);
    CHECK_THROWS_AS(sortie_energy(-1, 0, 0), Error);
}

TEST_CASE("energy debits are conserved") {
    Rng rng(11);
    EnergyState e(1.0e6, 1.0e5, 2.0, 50, 50);
    double sum = 0;
    for (int i = 0; i < 200; ++i) {
        const double j = sortie_energy(rng.uniform(0, 2000), 50, rng.uniform(0, 20));
        e.debit(j);
        sum += j;
        CHECK(e.capacity() - e.remaining() == doctest::Approx(e.total_consumed()).epsilon(1e-9));
    }
    CHECK(e.total_consumed() == doctest::Approx(sum).epsilon(1e-9));
}

TEST_CASE("overdraw is rejected without side effects") {
    EnergyState e(100, 10, 1, 0, 1);
    e.debit(60);
    CHECK_THROWS_WITH_AS(e.debit(41), doctest::Contains("exceeds"), Error);
    CHECK(e.remaining() == 40);
    CHECK(e.debit_saturating(70) == 40);
    CHECK(e.remaining() == 0);
    CHECK(e.total_consumed() == 100);
}

TEST_CASE("return threshold is strict") {
    auto at = [](double remaining) {
        EnergyState e(100, 5, 1, 0, 1);
        e.debit(100 - remaining);
        return can_return(e);
    };
    CHECK(at(10));
    CHECK_FALSE(at(5));
    CHECK_FALSE(at(4));
    for (double r = 0; r < 100; r += 0.5) {
        if (at(r)) CHECK(at(r + 0.25));
    }
}

TEST_CASE("payload speed endpoints and interpolation") {
    const UavSpec s = spec_with_capacity(15);
    CHECK(payload_speed(s, 1) == doctest::Approx(178.8));
    CHECK(payload_speed(s, 15) == doctest::Approx(44.7));
    CHECK(payload_speed(s, 8) == doctest::Approx(111.75));
    CHECK(payload_speed(s, 0.2) == doctest::Approx(178.8));
    // 400 mph and 100 mph
    CHECK(400 * speed::kMetersPerSecondPerMph == doctest::Approx(178.8).epsilon(1e-3));
    CHECK(100 * speed::kMetersPerSecondPerMph == doctest::Approx(44.7).epsilon(1e-3));
    CHECK_THROWS_AS(payload_speed(spec_with_capacity(5), 6), Error);
}

TEST_CASE("payload speed is nonincreasing") {
    const UavSpec s = spec_with_capacity(20);
    double prev = payload_speed(s, 0);
    for (double p = 0.1; p <= 20; p += 0.1) {
        const double v = payload_speed(s, p);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("default flight cost drains the battery in one hour at full load") {
    const UavSpec s = spec_with_capacity(12);
    const double v = payload_speed(s, 12);
    CHECK(default_per_meter_cost(s) * v * 3600 == doctest::Approx(s.battery_capacity_j));
}

TEST_CASE("registration attributes are required") {
    UavSpec s = spec_with_capacity(5);
    CHECK_NOTHROW(validate(s));
    s.battery_capacity_j = 0;
    CHECK_THROWS_AS(validate(s), Error);
    s = spec_with_capacity(5);
    s.node_id = 0;
    CHECK_THROWS_AS(validate(s), Error);
}
