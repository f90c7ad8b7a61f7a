#pragma once

// Delivery workflow: jobs, delivery-time estimates, competence-ranked job
// assignment, reputation scoring and certificates.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "birds/airframe.hpp"
#include "birds/channel.hpp"
#include "birds/consensus.hpp"
#include "birds/ledger.hpp"

namespace birds {

struct Job {
    JobId job_id = 0;
    Vec3 origin;
    Vec3 destination;
    double payload_kg = 0.0;
    DataPacket packet;
    double deadline_s = 0.0;
    double cost = 0.0;
    double arrival_s = 0.0;
    std::string category = "delivery";  // mission tag, not scored
};

void validate(const Job& job);

enum class JobStatus : std::uint8_t { Queued, Enroute, Transmitting, Delivered, Failed };

const char* to_string(JobStatus status);

struct Assignment {
    JobId job_id = 0;
    UavId uav_id = 0;
    double edt_s = 0.0;
    double start_time_s = 0.0;
    std::optional<double> adt_s;  // set only once delivered
    JobStatus status = JobStatus::Queued;
};

/// Flight over UAV -> origin -> destination at the loaded speed, plus the
/// UAV's queue wait and the packet's transmission delay. Throws Overload
/// when the payload exceeds the airframe's capacity.
double estimate_delivery_time(const Job& job, const UavSpec& spec, const KinematicState& kinematics,
                              double transmission_delay_s, double queue_wait_s = 0.0);

struct FleetEntry {
    CompetenceInputs competence;  // delivery_score is filled per job
    double reputation = 0.0;
};

/// EDT of `job` on `uav`, or nullopt when the UAV cannot take it.
using EdtEstimator = std::function<std::optional<double>(const Job&, UavId)>;

struct AssignmentPlan {
    std::vector<Assignment> assigned;
    std::vector<JobId> queued;  // FIFO order preserved
};

/// Greedy, in arrival order. Under PoC each job goes to the unused eligible
/// UAV with the best (competence, reputation); the baselines carry no
/// competence signal and rank by (reputation, id rotation from the round's
/// proposer). Each fleet entry takes at most one job per call.
AssignmentPlan assign_jobs(std::span<const Job> pending, std::span<const FleetEntry> fleet,
                           const ConsensusEngine& engine, const EdtEstimator& edt,
                           UavId rotation_start = 0);

struct DeliveryEntry {
    JobId job_id = 0;
    double adt_s = 0.0;
    double cost = 0.0;
};

struct ReputationRecord {
    UavId uav_id = 0;
    double capacity_kg = 0.0;
    double score = 0.0;
    double certificate_value = 0.0;
    std::vector<DeliveryEntry> history;

    double mean_adt() const;
    double mean_cost() const;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;

    /// Min-max normalization; a degenerate range maps everything to 0.5.
    double normalize(double x) const;
};

struct FleetBounds {
    Range adt;
    Range cost;
    Range capacity;
};

/// ADT and cost bounds over UAVs with history; capacity over the whole fleet.
FleetBounds fleet_bounds(std::span<const ReputationRecord> records);

/// (1 - n(mean ADT)) + Cv + (1 - n(mean cost)) + n(K); 0 without history.
double reputation_score(const ReputationRecord& record, const FleetBounds& bounds);

struct DeliveryOutcome {
    Assignment assignment;
    std::optional<Transaction> record;  // present only when delivered
};

/// ADT = now - start. Within the deadline the job is delivered and a
/// DeliveryRecord is emitted; past it the job fails without credit.
DeliveryOutcome complete_delivery(const Assignment& assignment, double now_s, double deadline_s,
                                  double cost, std::uint64_t tx_id);

struct Certificate {
    UavId uav_id = 0;
    double score = 0.0;
    double issued_at_s = 0.0;
};

/// Issues once, when the score reaches the threshold; sets Cv to 1.
std::optional<Certificate> issue_certificate(ReputationRecord& record, double threshold, double now_s = 0.0);

}  // namespace birds
