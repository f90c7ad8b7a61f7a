#include "birds/sweeps.hpp"

namespace birds {

namespace {

Scenario with_seed(Scenario s, std::size_t i) {
    s.seed += i;
    return s;
}

}  // namespace

std::vector<UavCountPoint> sweep_uav_count(const Scenario& base, std::span<const std::size_t> counts,
                                           std::size_t seeds) {
    std::vector<UavCountPoint> out;
    for (std::size_t n : counts) {
        UavCountPoint p;
        p.uav_count = n;
        for (std::size_t i = 0; i < seeds; ++i) {
            Scenario s = with_seed(base, i);
            s.uav_count = n;
            const RunResult r = run_scenario(s);
            p.success_rate += r.success_rate;
            p.mean_delay_s += r.mean_adt_s;
            p.delivered += static_cast<double>(r.delivered);
            p.failed += static_cast<double>(r.failed);
            p.missed += static_cast<double>(r.missed);
        }
        const double k = seeds ? static_cast<double>(seeds) : 1.0;
        p.success_rate /= k;
        p.mean_delay_s /= k;
        p.delivered /= k;
        p.failed /= k;
        p.missed /= k;
        out.push_back(p);
    }
    return out;
}

std::vector<JobCountPoint> sweep_jobs(const Scenario& base, std::span<const std::size_t> job_counts,
                                      std::size_t seeds) {
    std::vector<JobCountPoint> out;
    for (std::size_t j : job_counts) {
        JobCountPoint p;
        p.job_count = j;
        for (std::size_t i = 0; i < seeds; ++i) {
            Scenario s = with_seed(base, i);
            s.job_count = j;
            const RunResult r = run_scenario(s);
            p.mean_edt_s += r.mean_edt_s;
            p.mean_adt_s += r.mean_adt_s;
            p.success_rate += r.success_rate;
        }
        const double k = seeds ? static_cast<double>(seeds) : 1.0;
        p.mean_edt_s /= k;
        p.mean_adt_s /= k;
        p.success_rate /= k;
        out.push_back(p);
    }
    return out;
}

std::vector<UsersRequiredPoint> sweep_users_consensus(const Scenario& base, std::span<const std::size_t> user_counts,
                                                      std::span<const ConsensusKind> engines, std::size_t seeds) {
    std::vector<UsersRequiredPoint> out;
    for (std::size_t users : user_counts) {
        for (ConsensusKind kind : engines) {
            UsersRequiredPoint p;
            p.user_count = users;
            p.engine = kind;
            if (users == 0) {
                p.success_rate = 1.0;
                out.push_back(p);
                continue;
            }
            p.saturated = true;
            p.uavs_required = base.uav_cap;
            for (std::size_t n = 1; n <= base.uav_cap; ++n) {
                std::size_t delivered = 0, denom = 0;
                for (std::size_t i = 0; i < seeds; ++i) {
                    Scenario s = with_seed(base, i);
                    s.user_count = users;
                    s.job_count = users;
                    s.arrival_window_s = base.request_window_s;
                    s.uav_count = n;
                    s.engine.kind = kind;
                    const RunResult r = run_scenario(s);
                    delivered += r.delivered;
                    denom += r.delivered + r.failed + r.missed;
                }
                const double rate = denom ? static_cast<double>(delivered) / static_cast<double>(denom) : 0.0;
                p.success_rate = rate;
                if (rate >= base.service_level) {
                    p.uavs_required = n;
                    p.saturated = false;
                    break;
                }
            }
            out.push_back(p);
        }
    }
    return out;
}

std::vector<EnergySample> energy_timeline(const Scenario& base, std::span<const ConsensusKind> engines) {
    std::vector<EnergySample> out;
    for (ConsensusKind kind : engines) {
        Scenario s = base;
        s.engine.kind = kind;
        const RunResult r = run_scenario(s);
        for (const MetricsRow& row : r.rows) {
            out.push_back({kind, row.round, row.sim_time_s, row.cumulative_consensus_energy_j,
                           row.cumulative_flight_energy_j, row.cumulative_energy_j});
        }
    }
    return out;
}

CsvTable to_table(const std::vector<UavCountPoint>& points) {
    CsvTable t;
    t.columns = {"uav_count", "success_rate", "mean_delay", "delivered", "failed", "missed"};
    for (const auto& p : points) {
        t.rows.push_back({static_cast<std::int64_t>(p.uav_count), p.success_rate, p.mean_delay_s, p.delivered,
                          p.failed, p.missed});
    }
    return t;
}

CsvTable to_table(const std::vector<JobCountPoint>& points) {
    CsvTable t;
    t.columns = {"job_count", "mean_edt", "mean_adt", "success_rate"};
    for (const auto& p : points) {
        t.rows.push_back({static_cast<std::int64_t>(p.job_count), p.mean_edt_s, p.mean_adt_s, p.success_rate});
    }
    return t;
}

CsvTable to_table(const std::vector<UsersRequiredPoint>& points) {
    CsvTable t;
    t.columns = {"user_count", "consensus", "uavs_required", "saturated", "success_rate"};
    for (const auto& p : points) {
        t.rows.push_back({static_cast<std::int64_t>(p.user_count), std::string(to_string(p.engine)),
                          static_cast<std::int64_t>(p.uavs_required), static_cast<std::int64_t>(p.saturated),
                          p.success_rate});
    }
    return t;
}

CsvTable to_table(const std::vector<EnergySample>& samples) {
    CsvTable t;
    t.columns = {"consensus", "round", "sim_time", "cumulative_consensus_energy", "cumulative_flight_energy",
                 "cumulative_energy"};
    for (const auto& e : samples) {
        t.rows.push_back({std::string(to_string(e.engine)), static_cast<std::int64_t>(e.round), e.sim_time_s,
                          e.cumulative_consensus_j, e.cumulative_flight_j, e.cumulative_total_j});
    }
    return t;
}

}  // namespace birds
