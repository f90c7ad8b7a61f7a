#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "birds/rng.hpp"
#include "birds/sweeps.hpp"

using namespace birds;

namespace {

Scenario small(ConsensusKind k = ConsensusKind::PoC) {
    Scenario s;
    s.uav_count = 8;
    s.job_count = 12;
    s.user_count = 12;
    s.duration_s = 900;
    s.engine.kind = k;
    s.engine.difficulty_bits = 10;
    s.seal_difficulty = 4;
    return s;
}

std::size_t count_tx(const Chain& chain, TxKind kind) {
    std::size_t n = 0;
    for (const Block& b : chain.blocks())
        for (const Transaction& t : b.transactions) n += t.kind() == kind;
    return n;
}

}  // namespace

TEST_CASE("parse defaults") {
    const Scenario s = parse_scenario("");
    CHECK(s.uav_count == 20);
    CHECK(s.waypoint_count == 80);
    CHECK(s.region_side_m == 10000);
    CHECK(s.engine.kind == ConsensusKind::PoC);
    CHECK(parse_scenario("# only a comment\n\n").job_count == s.job_count);
}

TEST_CASE("parse values and sections") {
    const Scenario s = parse_scenario("uav_count = 12\n[consensus]\nconsensus = pow\ndifficulty = 12\n"
                                      "[channel]\nbandwidth = 2e6 # wider\n");
    CHECK(s.uav_count == 12);
    CHECK(s.engine.kind == ConsensusKind::PoW);
    CHECK(s.engine.difficulty_bits == 12);
    CHECK(s.channel.bandwidth_hz == 2e6);
    CHECK(parse_scenario("difficulty = 9").engine.difficulty_bits == 9);
    CHECK(parse_scenario("region_area_km2 = 100").region_side_m == doctest::Approx(10000));
}

TEST_CASE("parse errors name the line") {
    CHECK_THROWS_WITH_AS(parse_scenario("uav_count = -1"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_WITH_AS(parse_scenario("\n\nwarp_drive = 3"), doctest::Contains("line 3"), Error);
    CHECK_THROWS_WITH_AS(parse_scenario("uav_count 3"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_WITH_AS(parse_scenario("[reward]\nuav_count = 3"), doctest::Contains("line 2"), Error);
    CHECK_THROWS_WITH_AS(parse_scenario("[bogus]"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_AS(parse_scenario("consensus = pos"), Error);
    CHECK_THROWS_AS(parse_scenario("service_level = 1.5"), Error);
    CHECK_THROWS_AS(parse_scenario("payload_min = 9\npayload_max = 2"), Error);
    CHECK_THROWS_AS(load_scenario("/nonexistent/birds.conf"), Error);
}

TEST_CASE("bundled scenarios parse") {
    for (const char* f : {"default.conf", "users.conf"}) {
        CHECK_NOTHROW(load_scenario(std::string(BIRDS_SCENARIO_DIR) + "/" + f));
    }
}

TEST_CASE("csv") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(123456789.0) == "1.23457e+08");
    CHECK(format_double(-0.0) == "0");
    CsvTable t;
    t.columns = {"a", "b", "c"};
    CHECK(t.render() == "a,b,c\n");
    for (int i = 0; i < 3; ++i) t.rows.push_back({std::int64_t{i}, 1.0 / 3.0, std::string("x")});
    const std::string text = t.render();
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.find("0,0.333333,x\n") != std::string::npos);

    const auto path = (std::filesystem::temp_directory_path() / "birds_csv_test.csv").string();
    emit_csv(t, path);
    std::ifstream f(path, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == text);
    emit_csv(t, path);
    std::ifstream g(path, std::ios::binary);
    std::stringstream again;
    again << g.rdbuf();
    CHECK(again.str() == text);
    std::remove(path.c_str());
    CHECK_THROWS_AS(emit_csv(t, "/nonexistent/dir/x.csv"), Error);
    t.rows.push_back({std::int64_t{1}});
    CHECK_THROWS_AS(t.render(), Error);
}

TEST_CASE("rng streams") {
    CHECK(derive_seed(42, Stream::Jobs, 0) != derive_seed(42, Stream::Jobs, 1));
    CHECK(derive_seed(42, Stream::Jobs, 0) != derive_seed(42, Stream::Fleet, 0));
    Rng a(1, Stream::Fleet, 3), b(1, Stream::Fleet, 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng r(9);
    double sum = 0;
    for (int i = 0; i < 20000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0);
        CHECK(u < 1);
        CHECK(r.below(7) < 7);
        sum += static_cast<double>(r.geometric(0.25));
    }
    CHECK(sum / 20000 == doctest::Approx(4).epsilon(0.05));
}

TEST_CASE("uav mode graph") {
    using M = UavMode;
    CHECK(legal_transition(M::Registering, M::Ready));
    CHECK(legal_transition(M::Ready, M::Transmitting));
    CHECK(legal_transition(M::Ready, M::Queued));
    CHECK(legal_transition(M::Transmitting, M::Ready));
    CHECK(legal_transition(M::Queued, M::Ready));
    CHECK_FALSE(legal_transition(M::Registering, M::Transmitting));
    CHECK_FALSE(legal_transition(M::Transmitting, M::Queued));
    CHECK_FALSE(legal_transition(M::Queued, M::Transmitting));
    CHECK_FALSE(legal_transition(M::Ready, M::Registering));
}

TEST_CASE("run invariants hold for every engine") {
    for (ConsensusKind k : kAllConsensusKinds) {
        CAPTURE(to_string(k));
        const RunResult r = run_scenario(small(k));
        REQUIRE_FALSE(r.rows.empty());
        CHECK(r.rows.size() == 91);
        CHECK(validate_chain(r.chain));

        // chain / metrics consistency
        CHECK(r.rows.back().delivered == count_tx(r.chain, TxKind::DeliveryRecord));
        CHECK(r.delivered == r.rows.back().delivered);

        // energy closure
        double rows = 0, uav = 0;
        for (const MetricsRow& m : r.rows) rows += m.round_energy_j;
        for (const UavSummary& u : r.uavs) uav += u.spec.battery_capacity_j - u.remaining_energy_j;
        CHECK(rows == doctest::Approx(uav + r.total_consensus_energy_j).epsilon(1e-6));

        double prev = 0;
        for (const MetricsRow& m : r.rows) {
            CHECK(m.cumulative_energy_j >= prev);
            prev = m.cumulative_energy_j;
            CHECK(m.success_rate >= 0);
            CHECK(m.success_rate <= 1);
        }
        for (const JobOutcome& j : r.jobs) {
            if (j.status == JobStatus::Delivered) {
                REQUIRE(j.realized_s());
                CHECK(*j.realized_s() <= j.deadline_s);
                CHECK(*j.realized_s() >= *j.transmission_delay_s);
            }
        }
    }
}

TEST_CASE("all UAVs are registered in the first round") {
    Scenario s;
    const RunResult r = run_scenario(s);
    const Block& reg = r.chain.blocks()[1];
    CHECK(reg.header.proposer == 0);
    CHECK(reg.transactions.size() == 20);
    for (UavId id = 1; id <= 20; ++id) CHECK(r.chain.lookup_identity(id));
    CHECK(r.rows[0].active_uavs == 20);
}

TEST_CASE("empty workload") {
    Scenario s = small();
    s.job_count = 0;
    const RunResult r = run_scenario(s);
    CHECK(r.delivered == 0);
    CHECK(count_tx(r.chain, TxKind::DeliveryRecord) == 0);
    for (const Block& b : r.chain.blocks())
        for (const Transaction& t : b.transactions)
            CHECK((t.kind() == TxKind::Heartbeat || t.kind() == TxKind::Registration || t.kind() == TxKind::Genesis));
}

TEST_CASE("runs are reproducible") {
    const RunResult a = run_scenario(small(ConsensusKind::PoW));
    const RunResult b = run_scenario(small(ConsensusKind::PoW));
    CHECK(metrics_table(a.rows).render() == metrics_table(b.rows).render());
    CHECK(jobs_table(a.jobs).render() == jobs_table(b.jobs).render());
    CHECK(a.chain.head_hash() == b.chain.head_hash());
    CHECK(run_summary_json(a) == run_summary_json(b));
    Scenario other = small(ConsensusKind::PoW);
    other.seed = 43;
    CHECK(run_scenario(other).chain.head_hash() != a.chain.head_hash());
}

TEST_CASE("flight workload is shared across engines") {
    Scenario s = small();
    const RunResult poc = run_scenario(s);
    CHECK(poc.total_consensus_energy_j == doctest::Approx(91.0));
    s.engine.kind = ConsensusKind::PoW;
    s.engine.difficulty_bits = 8;
    CHECK(run_scenario(s).total_consensus_energy_j > poc.total_consensus_energy_j);
}

TEST_CASE("sweep schemas") {
    Scenario s = small();
    const std::vector<std::size_t> counts{2, 4, 6};
    const auto u = to_table(sweep_uav_count(s, counts, 2));
    CHECK(u.rows.size() == 3);
    CHECK(u.columns[0] == "uav_count");
    const auto j = to_table(sweep_jobs(s, counts, 2));
    CHECK(j.rows.size() == 3);
    CHECK(j.columns == std::vector<std::string>{"job_count", "mean_edt", "mean_adt", "success_rate"});

    const std::vector<std::size_t> users{0, 10};
    Scenario f = s;
    f.deadline_s = 300;
    f.uav_cap = 6;
    const auto pts = sweep_users_consensus(f, users, kAllConsensusKinds, 1);
    CHECK(pts.size() == 8);
    for (const auto& p : pts) {
        if (p.user_count == 0) {
            CHECK(p.uavs_required == 0);
            CHECK_FALSE(p.saturated);
        } else {
            CHECK(p.uavs_required >= 1);
            CHECK(p.uavs_required <= 6);
        }
    }

    const auto e = energy_timeline(s, kAllConsensusKinds);
    CHECK(e.size() == 4 * 91);
    CHECK(to_table(e).columns.size() == 6);
}
