#include "birds/delivery.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace birds {

void validate(const Job& job) {
    if (!(job.payload_kg > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "job payload must be positive");
    }
    if (job.origin == job.destination) {
        throw Error(ErrorKind::InvalidParameter, "job origin equals destination");
    }
    if (!(job.deadline_s > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "job deadline must be positive");
    }
}

const char* to_string(JobStatus status) {
    switch (status) {
    case JobStatus::Queued: return "queued";
    case JobStatus::Enroute: return "enroute";
    case JobStatus::Transmitting: return "transmitting";
    case JobStatus::Delivered: return "delivered";
    case JobStatus::Failed: return "failed";
    }
    return "unknown";
}

double estimate_delivery_time(const Job& job, const UavSpec& spec, const KinematicState& kinematics,
                              double transmission_delay_s, double queue_wait_s) {
    const double v = payload_speed(spec, job.payload_kg);
    if (!(v > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "nonpositive flight speed");
    }
    const double path = distance(kinematics.position, job.origin) + distance(job.origin, job.destination);
    return path / v + queue_wait_s + transmission_delay_s;
}

namespace {

std::uint64_t rotation_distance(UavId id, UavId start) {
    return id >= start ? static_cast<std::uint64_t>(id - start)
                       : static_cast<std::uint64_t>(id) + (std::uint64_t{1} << 32) - start;
}

}  // namespace

AssignmentPlan assign_jobs(std::span<const Job> pending, std::span<const FleetEntry> fleet,
                           const ConsensusEngine& engine, const EdtEstimator& edt,
                           UavId rotation_start) {
    AssignmentPlan plan;
    std::vector<bool> used(fleet.size(), false);
    const bool competence = engine.kind() == ConsensusKind::PoC;

    for (const Job& job : pending) {
        std::vector<std::size_t> idx;
        std::vector<std::optional<double>> edts;
        for (std::size_t i = 0; i < fleet.size(); ++i) {
            if (used[i] || !fleet[i].competence.poi_valid) continue;
            auto e = edt(job, fleet[i].competence.uav_id);
            if (!e) continue;
            idx.push_back(i);
            edts.push_back(e);
        }
        if (idx.empty()) {
            plan.queued.push_back(job.job_id);
            continue;
        }

        std::size_t best = 0;
        if (competence) {
            const std::vector<double> dscore = delivery_scores(edts);
            std::vector<double> score(idx.size());
            for (std::size_t k = 0; k < idx.size(); ++k) {
                CompetenceInputs in = fleet[idx[k]].competence;
                in.delivery_score = dscore[k];
                score[k] = *competence_score(in, engine.params().weights);
            }
            auto key = [&](std::size_t k) {
                return std::make_tuple(score[k], fleet[idx[k]].reputation);
            };
            for (std::size_t k = 1; k < idx.size(); ++k) {
                if (key(k) > key(best) ||
                    (key(k) == key(best) &&
                     fleet[idx[k]].competence.uav_id < fleet[idx[best]].competence.uav_id)) {
                    best = k;
                }
            }
        } else {
            for (std::size_t k = 1; k < idx.size(); ++k) {
                const FleetEntry& a = fleet[idx[k]];
                const FleetEntry& b = fleet[idx[best]];
                if (a.reputation > b.reputation ||
                    (a.reputation == b.reputation &&
                     rotation_distance(a.competence.uav_id, rotation_start) <
                         rotation_distance(b.competence.uav_id, rotation_start))) {
                    best = k;
                }
            }
        }

        used[idx[best]] = true;
        Assignment a;
        a.job_id = job.job_id;
        a.uav_id = fleet[idx[best]].competence.uav_id;
        a.edt_s = *edts[best];
        a.start_time_s = job.arrival_s;
        a.status = JobStatus::Enroute;
        plan.assigned.push_back(a);
    }
    return plan;
}

double ReputationRecord::mean_adt() const {
    if (history.empty()) return 0.0;
    double s = 0.0;
    for (const auto& h : history) s += h.adt_s;
    return s / static_cast<double>(history.size());
}

double ReputationRecord::mean_cost() const {
    if (history.empty()) return 0.0;
    double s = 0.0;
    for (const auto& h : history) s += h.cost;
    return s / static_cast<double>(history.size());
}

double Range::normalize(double x) const {
    if (!(hi > lo)) return 0.5;
    return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

FleetBounds fleet_bounds(std::span<const ReputationRecord> records) {
    FleetBounds b;
    bool any_history = false;
    bool any = false;
    for (const auto& r : records) {
        b.capacity.lo = any ? std::min(b.capacity.lo, r.capacity_kg) : r.capacity_kg;
        b.capacity.hi = any ? std::max(b.capacity.hi, r.capacity_kg) : r.capacity_kg;
        any = true;
        if (r.history.empty()) continue;
        const double adt = r.mean_adt();
        const double cost = r.mean_cost();
        b.adt.lo = any_history ? std::min(b.adt.lo, adt) : adt;
        b.adt.hi = any_history ? std::max(b.adt.hi, adt) : adt;
        b.cost.lo = any_history ? std::min(b.cost.lo, cost) : cost;
        b.cost.hi = any_history ? std::max(b.cost.hi, cost) : cost;
        any_history = true;
    }
    return b;
}

double reputation_score(const ReputationRecord& record, const FleetBounds& bounds) {
    if (record.history.empty()) {
        return 0.0;
    }
    return (1.0 - bounds.adt.normalize(record.mean_adt())) + record.certificate_value +
           (1.0 - bounds.cost.normalize(record.mean_cost())) + bounds.capacity.normalize(record.capacity_kg);
}

DeliveryOutcome complete_delivery(const Assignment& assignment, double now_s, double deadline_s,
                                  double cost, std::uint64_t tx_id) {
    if (assignment.status != JobStatus::Transmitting) {
        throw Error(ErrorKind::InvalidParameter, "only a transmitting assignment can complete");
    }
    DeliveryOutcome out{assignment, std::nullopt};
    const double adt = now_s - assignment.start_time_s;
    if (adt > deadline_s) {
        out.assignment.status = JobStatus::Failed;
        return out;
    }
    out.assignment.status = JobStatus::Delivered;
    out.assignment.adt_s = adt;
    out.record = Transaction{tx_id, DeliveryRecord{assignment.job_id, assignment.uav_id, assignment.edt_s, adt, cost}};
    return out;
}

std::optional<Certificate> issue_certificate(ReputationRecord& record, double threshold, double now_s) {
    if (record.certificate_value != 0.0 || record.score < threshold) {
        return std::nullopt;
    }
    record.certificate_value = 1.0;
    return Certificate{record.uav_id, record.score, now_s};
}

}  // namespace birds
