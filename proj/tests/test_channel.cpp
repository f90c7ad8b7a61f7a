#include "doctest.h"

#include <vector>

#include "birds/channel.hpp"
#include "birds/rng.hpp"

using namespace birds;

namespace {

Link link(UserId user, double p, double h, int q = 0) {
    Link l;
    l.user_id = user;
    l.uav_id = 1;
    l.channel_id = q;
    l.tx_power_w = p;
    l.gain = h;
    return l;
}

}  // namespace

TEST_CASE("snr") {
    CHECK(snr(link(1, 1, 1), {}, 1) == 1.0);
    const std::vector<Link> others{link(2, 1, 0.5)};
    CHECK(snr(link(1, 2, 0.5), others, 0.5) == doctest::Approx(1.0));
    CHECK(snr(link(1, 0, 0.5), others, 0.5) == 0.0);
    const std::vector<Link> self{link(1, 1, 1)};
    CHECK_THROWS_AS(snr(link(1, 1, 1), self, 1), Error);
    CHECK_THROWS_AS(snr(link(1, 1, 1), {}, 0), Error);
}

TEST_CASE("snr monotonicity") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        const double p = rng.uniform(0, 2), h = rng.uniform(0, 1), noise = rng.uniform(1e-3, 1);
        std::vector<Link> others;
        for (int k = 0; k < 3; ++k) others.push_back(link(10 + k, rng.uniform(0, 2), rng.uniform(0, 1)));
        const double base = snr(link(1, p, h), others, noise);
        CHECK(snr(link(1, p * 1.5 + 0.01, h), others, noise) > base);
        CHECK(snr(link(1, p, h * 1.5 + 0.01), others, noise) >= base);
        CHECK(snr(link(1, p, h), others, noise * 2) <= base);
        auto louder = others;
        louder[0].tx_power_w += 0.5;
        CHECK(snr(link(1, p, h), louder, noise) <= base);
    }
}

TEST_CASE("achievable rate") {
    CHECK(achievable_rate(1e6, 0) == 0);
    CHECK(achievable_rate(1e6, 1) == doctest::Approx(1e6));
    CHECK(achievable_rate(1e6, 3) == doctest::Approx(2e6));
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const double b = rng.uniform(1e3, 1e7), z = rng.uniform(0, 100);
        CHECK(achievable_rate(b, z + 0.1) > achievable_rate(b, z));
        CHECK(achievable_rate(2 * b, z) == doctest::Approx(2 * achievable_rate(b, z)));
    }
}

TEST_CASE("transmission delay") {
    DataPacket pkt;
    pkt.size_bits = 1e6;
    CHECK(transmission_delay(pkt, 1e6) == 1.0);
    CHECK_THROWS_AS(transmission_delay(pkt, 0), Error);
    pkt.size_bits = 0;
    CHECK(transmission_delay(pkt, 1e6) == 0.0);
    CHECK(transmission_delay(pkt, 0) == 0.0);

    pkt.size_bits = 4e6;
    const double z = 7;
    CHECK(transmission_delay(pkt, achievable_rate(2e6, z)) ==
          doctest::Approx(transmission_delay(pkt, achievable_rate(1e6, z)) / 2));
}

TEST_CASE("deadline feasibility") {
    CHECK(delivery_feasible(1, 2));
    CHECK_FALSE(delivery_feasible(3, 2));
    CHECK(delivery_feasible(2, 2));
}

TEST_CASE("coverage load") {
    auto pkts = [](std::vector<double> sizes) {
        std::vector<DataPacket> out;
        for (double s : sizes) {
            DataPacket p;
            p.size_bits = s;
            out.push_back(p);
        }
        return out;
    };
    CHECK(coverage_load(pkts({1, 2, 3})) == 6);
    CHECK(coverage_load(pkts({})) == 0);
    CHECK(coverage_load(pkts({7})) == 7);
    const auto a = pkts({4, 5}), b = pkts({9});
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(coverage_load(ab) == coverage_load(a) + coverage_load(b));
}

TEST_CASE("gain and channel allocation") {
    CHECK(distance_gain(1, 1) == 1);
    CHECK(distance_gain(10, 1) == doctest::Approx(0.01));
    CHECK(distance_gain(0.5, 1) == 1);
    CHECK(assign_channel(0, 4) == 0);
    CHECK(assign_channel(5, 4) == 1);
}
