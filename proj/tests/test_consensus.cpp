#include "doctest.h"

#include <map>

#include "birds/consensus.hpp"
#include "birds/rng.hpp"
#include "oracles.hpp"

using namespace birds;

namespace {

CompetenceInputs cand(UavId id, double ts, double por, double edt, bool poi = true) {
    CompetenceInputs c;
    c.uav_id = id;
    c.timestamp_freshness = ts;
    c.poi_valid = poi;
    c.resource_score = por;
    c.delivery_score = edt;
    return c;
}

ConsensusEngine engine(ConsensusKind kind) {
    EngineParams p;
    p.kind = kind;
    return ConsensusEngine(p);
}

}  // namespace

TEST_CASE("competence score") {
    const CompetenceWeights w;
    CHECK(*competence_score(cand(1, 1, 1, 1), w) == doctest::Approx(1.0));
    CHECK(*competence_score(cand(1, 0, 0, 0), w) == doctest::Approx(0.25));
    CHECK_FALSE(competence_score(cand(1, 1, 1, 1, false), w));
    CompetenceWeights bad;
    bad.delivery = 0.5;
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("competence inputs") {
    CHECK(timestamp_freshness(10, 10.0, 30) == 1.0);
    CHECK(timestamp_freshness(25, 10.0, 30) == doctest::Approx(0.5));
    CHECK(timestamp_freshness(100, 10.0, 30) == 0.0);
    CHECK(timestamp_freshness(10, std::nullopt, 30) == 0.0);
    CHECK(resource_score(50, 100, 1) == doctest::Approx(0.75));
    const std::vector<std::optional<double>> edts{10.0, 20.0, std::nullopt, 15.0};
    const auto s = delivery_scores(edts);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 0.0);
    CHECK(s[2] == 0.0);
    CHECK(s[3] == doctest::Approx(0.5));
    const std::vector<std::optional<double>> same{4.0, 4.0};
    CHECK(delivery_scores(same)[0] == 0.5);
}

TEST_CASE("poc picks the best score, lowest id on ties") {
    const auto poc = engine(ConsensusKind::PoC);
    // totals 0.8 and 0.6
    const std::vector<CompetenceInputs> a{cand(1, 1, 0.95, 0.25), cand(2, 0.6, 0.5, 0.3)};
    CHECK(poc.select_proposer(a, 0, 1).proposer == 1);
    const std::vector<CompetenceInputs> tie{cand(5, 0.5, 0.5, 0.5), cand(3, 0.5, 0.5, 0.5)};
    CHECK(poc.select_proposer(tie, 0, 1).proposer == 3);
    const std::vector<CompetenceInputs> none{cand(1, 1, 1, 1, false)};
    CHECK_THROWS_AS(poc.select_proposer(none, 0, 1), Error);
    CHECK(poc.select_proposer(a, 0, 1).consensus_energy_j == 1.0);
}

TEST_CASE("poc argmax is invariant under affine rescaling") {
    Rng rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        std::vector<double> scores, scaled;
        std::vector<UavId> ids;
        for (std::size_t i = 0; i < n; ++i) {
            scores.push_back(static_cast<double>(rng.below(5)) / 4.0);
            ids.push_back(static_cast<UavId>(1 + i * 3));
        }
        const double a = rng.uniform(0.1, 10), b = rng.uniform(-5, 5);
        for (double s : scores) scaled.push_back(a * s + b);
        CHECK(ids[select_by_score(scores, ids)] == ids[select_by_score(scaled, ids)]);
    }
}

TEST_CASE("selection is deterministic") {
    Rng rng(1);
    std::vector<CompetenceInputs> c;
    for (UavId i = 1; i <= 6; ++i) c.push_back(cand(i, rng.uniform(), rng.uniform(), rng.uniform()));
    for (ConsensusKind k : kAllConsensusKinds) {
        const auto e = engine(k);
        for (std::uint64_t r = 0; r < 20; ++r) CHECK(e.select_proposer(c, r, 42) == e.select_proposer(c, r, 42));
    }
}

TEST_CASE("round-robin baselines are fair") {
    std::vector<CompetenceInputs> c;
    for (UavId i : {4u, 9u, 2u, 7u, 5u}) c.push_back(cand(i, 0, 0, 0));
    c.push_back(cand(11, 0, 0, 0, false));
    for (ConsensusKind k : {ConsensusKind::PoID, ConsensusKind::PoA}) {
        const auto e = engine(k);
        std::map<UavId, int> visits;
        const int rounds = 301;
        for (int r = 0; r < rounds; ++r) ++visits[e.select_proposer(c, r, 0).proposer];
        CHECK_FALSE(visits.contains(11));
        const std::size_t n = k == ConsensusKind::PoID ? 5 : 3;
        CHECK(visits.size() == n);
        for (auto [id, v] : visits) {
            CHECK(v >= rounds / static_cast<int>(n));
            CHECK(v <= rounds / static_cast<int>(n) + 1);
        }
    }
    auto poa = engine(ConsensusKind::PoA);
    CHECK(poa.select_proposer(c, 0, 0).proposer == 2);
    poa.set_authorities({9, 7});
    CHECK(poa.select_proposer(c, 0, 0).proposer == 7);
    CHECK(poa.select_proposer(c, 1, 0).proposer == 9);
}

TEST_CASE("pow expected attempts and energy") {
    EngineParams p;
    p.kind = ConsensusKind::PoW;
    p.difficulty_bits = 8;
    const ConsensusEngine e(p);
    std::vector<CompetenceInputs> c;
    for (UavId i = 1; i <= 4; ++i) c.push_back(cand(i, 0, 0, 0));
    double total = 0;
    const int rounds = 4000;
    for (int r = 0; r < rounds; ++r) {
        const RoundOutcome o = e.select_proposer(c, r, 7);
        CHECK(o.consensus_energy_j == doctest::Approx(static_cast<double>(o.hash_attempts) * p.hash_energy_j));
        CHECK(o.proposer == c[(o.hash_attempts - 1) % 4].uav_id);
        total += static_cast<double>(o.hash_attempts);
    }
    CHECK(total / rounds == doctest::Approx(256).epsilon(0.1));
    const double poc = engine(ConsensusKind::PoC).select_proposer(c, 0, 0).consensus_energy_j;
    CHECK(total * p.hash_energy_j > poc * rounds);
}

TEST_CASE("miner energy metrics") {
    CHECK(miner_efficiency(50, 2) == 25);
    CHECK(normalized_miner_energy(100, 200, 50) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(normalized_miner_energy(100, 50, 50), Error);
    CHECK_THROWS_AS(miner_efficiency(5, 0), Error);
    CHECK(miner_power_energy(10, 100, 0.1) == doctest::Approx(10 / 99.9));
    CHECK_THROWS_AS(miner_power_energy(10, 1, 1), Error);
}

TEST_CASE("penalty") {
    CHECK(penalty(2, 100, 80, 4) == 10);
    CHECK(penalty(1, 100, 100, 4) == 0);
    CHECK(penalty(1, 100, 120, 4) == -5);
    CHECK_THROWS_AS(penalty(1, 1, 1, 0), Error);
}

TEST_CASE("instant reward") {
    RewardParams p;
    p.success_reward = 10;
    p.cost_weight = 1;
    p.system_cost = 2;
    p.users_served = 4;
    // penalty of exactly 1
    p.penalty_index = 1;
    p.fleet_avg_energy_j = 5;
    p.remaining_energy_j = 4;
    p.hover_unit_energy = 1;
    p.time_limit_s = 5;
    p.round_duration_s = 5;
    CHECK(instant_reward(p) == doctest::Approx(8.5));
    p.round_duration_s = 5.01;
    CHECK(instant_reward(p) == doctest::Approx(-1.5));
    p.users_served = 0;
    CHECK_THROWS_AS(instant_reward(p), Error);
}

TEST_CASE("reward matches the reference on random inputs") {
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        RewardParams p;
        p.success_reward = rng.uniform(0, 20);
        p.cost_weight = rng.uniform(0, 3);
        p.system_cost = rng.uniform(0, 1000);
        p.users_served = static_cast<double>(1 + rng.below(10));
        p.penalty_index = rng.uniform(0, 3);
        p.time_limit_s = rng.uniform(0.1, 10);
        p.round_duration_s = rng.uniform(0, 20);
        p.fleet_avg_energy_j = rng.uniform(0, 1e5);
        p.remaining_energy_j = rng.uniform(0, 1e5);
        p.hover_unit_energy = rng.uniform(1, 100);
        const double r = oracle::rho(p.penalty_index, p.fleet_avg_energy_j, p.remaining_energy_j, p.hover_unit_energy);
        const double expect = p.round_duration_s <= p.time_limit_s
                                  ? oracle::reward_within(p.success_reward, p.cost_weight, p.system_cost, p.users_served, r)
                                  : oracle::reward_late(p.cost_weight, p.system_cost, p.users_served, r);
        CHECK(instant_reward(p) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("consensus kind names") {
    CHECK(parse_consensus_kind("pow") == ConsensusKind::PoW);
    CHECK_FALSE(parse_consensus_kind("pos"));
    for (ConsensusKind k : kAllConsensusKinds) CHECK(parse_consensus_kind(to_string(k)) == k);
}
