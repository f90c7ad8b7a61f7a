#pragma once

// Experiment sweeps over the simulator. Each cell runs seeds base.seed,
// base.seed + 1, ... and averages; cells are independent.

#include <span>
#include <vector>

#include "birds/csv.hpp"
#include "birds/simulation.hpp"

namespace birds {

struct UavCountPoint {
    std::size_t uav_count = 0;
    double success_rate = 0.0;  // mean over seeds
    double mean_delay_s = 0.0;  // mean realized end-to-end delay
    double delivered = 0.0;
    double failed = 0.0;
    double missed = 0.0;
};

std::vector<UavCountPoint> sweep_uav_count(const Scenario& base, std::span<const std::size_t> counts,
                                           std::size_t seeds);

struct JobCountPoint {
    std::size_t job_count = 0;
    double mean_edt_s = 0.0;
    double mean_adt_s = 0.0;
    double success_rate = 0.0;
};

std::vector<JobCountPoint> sweep_jobs(const Scenario& base, std::span<const std::size_t> job_counts,
                                      std::size_t seeds);

struct UsersRequiredPoint {
    std::size_t user_count = 0;
    ConsensusKind engine = ConsensusKind::PoC;
    std::size_t uavs_required = 0;  // uav_cap when saturated
    bool saturated = false;
    double success_rate = 0.0;  // pooled, at uavs_required
};

/// Each user issues one request spread over request_window_s. For every
/// (user count, engine) the smallest fleet meeting service_level is found
/// by ascending search up to uav_cap.
std::vector<UsersRequiredPoint> sweep_users_consensus(const Scenario& base, std::span<const std::size_t> user_counts,
                                                      std::span<const ConsensusKind> engines, std::size_t seeds);

struct EnergySample {
    ConsensusKind engine = ConsensusKind::PoC;
    std::uint64_t round = 0;
    double sim_time_s = 0.0;
    double cumulative_consensus_j = 0.0;
    double cumulative_flight_j = 0.0;
    double cumulative_total_j = 0.0;
};

std::vector<EnergySample> energy_timeline(const Scenario& base, std::span<const ConsensusKind> engines);

CsvTable to_table(const std::vector<UavCountPoint>& points);
CsvTable to_table(const std::vector<JobCountPoint>& points);
CsvTable to_table(const std::vector<UsersRequiredPoint>& points);
CsvTable to_table(const std::vector<EnergySample>& samples);

}  // namespace birds
