#pragma once

// Deterministic round-based discrete-event simulation of the delivery
// network: registration, heartbeats, proposer selection, block production,
// job assignment, flight and data transfer, energy, rewards and reputation.

#include <optional>
#include <string>
#include <vector>

#include "birds/csv.hpp"
#include "birds/delivery.hpp"
#include "birds/ledger.hpp"
#include "birds/scenario.hpp"

namespace birds {

/// Registering -> Ready -> {Transmitting, Queued} -> Ready. Transmitting
/// covers a whole delivery sortie (flight plus air-to-ground transfer);
/// Queued means grounded in the recharge queue.
enum class UavMode : std::uint8_t { Registering, Ready, Transmitting, Queued };

const char* to_string(UavMode mode);
bool legal_transition(UavMode from, UavMode to);

struct MetricsRow {
    std::uint64_t round = 0;
    double sim_time_s = 0.0;
    ConsensusKind consensus = ConsensusKind::PoC;
    UavId proposer = 0;  // 0 when the round produced no block
    bool block_appended = false;
    std::uint64_t chain_height = 0;  // tip block id; reputation snapshot reference
    double consensus_energy_j = 0.0;
    double flight_energy_j = 0.0;  // flight + hover debits this round
    double round_energy_j = 0.0;
    double cumulative_energy_j = 0.0;
    double cumulative_consensus_energy_j = 0.0;
    double cumulative_flight_energy_j = 0.0;
    std::size_t delivered = 0;
    std::size_t failed = 0;
    std::size_t queued = 0;
    std::size_t missed = 0;
    double mean_edt_s = 0.0;
    double mean_adt_s = 0.0;
    double success_rate = 0.0;
    std::size_t active_uavs = 0;
    double reward = 0.0;
    bool reward_computed = false;
    double miner_efficiency = 0.0;
};

struct JobOutcome {
    JobId job_id = 0;
    double arrival_s = 0.0;
    double deadline_s = 0.0;
    UavId uav_id = 0;
    JobStatus status = JobStatus::Queued;
    std::optional<double> edt_s;
    std::optional<double> completion_s;
    std::optional<double> transmission_delay_s;
    std::optional<double> estimated_transmission_delay_s;

    /// Realized end-to-end time (completion - arrival), late or not.
    std::optional<double> realized_s() const;
};

struct UavSummary {
    UavSpec spec;
    UavMode mode = UavMode::Registering;
    double remaining_energy_j = 0.0;
    double consumed_energy_j = 0.0;
    double reputation = 0.0;
    double certificate_value = 0.0;
    std::size_t deliveries = 0;
    double reward_total = 0.0;
    std::size_t blocks_proposed = 0;
};

struct RunResult {
    Scenario scenario;
    std::vector<MetricsRow> rows;
    Chain chain;
    std::vector<JobOutcome> jobs;
    std::vector<UavSummary> uavs;
    std::vector<Certificate> certificates;

    std::size_t delivered = 0;
    std::size_t failed = 0;
    std::size_t missed = 0;
    double success_rate = 0.0;
    double mean_edt_s = 0.0;
    double mean_adt_s = 0.0;  // realized time over completed jobs
    double total_consensus_energy_j = 0.0;
    double total_flight_energy_j = 0.0;
};

RunResult run_scenario(const Scenario& scenario);

CsvTable metrics_table(const std::vector<MetricsRow>& rows);
CsvTable jobs_table(const std::vector<JobOutcome>& jobs);

/// Totals, energy, chain head and final reputations as a JSON document.
std::string run_summary_json(const RunResult& result);

}  // namespace birds
