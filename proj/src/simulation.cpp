#include "birds/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "birds/rng.hpp"
#include "json.hpp"

namespace birds {

const char* to_string(UavMode mode) {
    switch (mode) {
    case UavMode::Registering: return "registering";
    case UavMode::Ready: return "ready";
    case UavMode::Transmitting: return "transmitting";
    case UavMode::Queued: return "queued";
    }
    return "unknown";
}

bool legal_transition(UavMode from, UavMode to) {
    switch (from) {
    case UavMode::Registering: return to == UavMode::Ready;
    case UavMode::Ready: return to == UavMode::Transmitting || to == UavMode::Queued;
    case UavMode::Transmitting:
    case UavMode::Queued: return to == UavMode::Ready;
    }
    return false;
}

std::optional<double> JobOutcome::realized_s() const {
    if (!completion_s) return std::nullopt;
    return *completion_s - arrival_s;
}

namespace {

struct Sortie {
    std::size_t job = 0;
    double dispatch_s = 0.0;
    double speed_mps = 0.0;
    double flight_time_s = 0.0;
    double per_meter_cost = 0.0;
    double hover_power_w = 0.0;
    std::optional<double> tx_start_s;
    double tx_delay_s = 0.0;
    double accounted_j = 0.0;
    Link link;

    bool transmitting() const { return tx_start_s.has_value(); }

    double energy_until(double t) const {
        KinematicState leg;
        leg.velocity = {speed_mps, 0.0, 0.0};
        leg.flight_elapsed_s = std::clamp(t - dispatch_s, 0.0, flight_time_s);
        const double hover = tx_start_s ? std::clamp(t - *tx_start_s, 0.0, tx_delay_s) : 0.0;
        return sortie_energy(per_meter_cost * flying_distance(leg), hover_power_w, hover);
    }
};

struct UavRuntime {
    UavSpec spec;
    UavMode mode = UavMode::Registering;
    KinematicState kinematics;
    EnergyState energy;
    ReputationRecord reputation;
    std::optional<double> last_heartbeat_s;
    std::optional<Sortie> sortie;
    std::size_t deliveries = 0;
    double reward_total = 0.0;
    std::size_t blocks_proposed = 0;
};

enum class EventType : std::uint8_t { JobArrival, ArriveDestination, TransmissionDone };

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;
    EventType type = EventType::JobArrival;
    std::size_t index = 0;
};

struct Later {
    bool operator()(const Event& a, const Event& b) const {
        return a.time > b.time || (a.time == b.time && a.seq > b.seq);
    }
};

struct ActiveLink {
    Link link;
    Vec3 uav_position;
};

class Simulator {
public:
    explicit Simulator(const Scenario& s) : s_(s), engine_(s.engine) {
        validate(s_);
        build_world();
    }

    RunResult run();

private:
    void build_world();
    void schedule(double t, EventType type, std::size_t index) { events_.push({t, seq_++, type, index}); }
    void set_mode(UavRuntime& u, UavMode to);

    void process_events_until(double t);
    void on_arrival_at_destination(std::size_t uav, double t);
    void on_transmission_done(std::size_t uav, double t);
    void settle_energy(UavRuntime& u, double t);

    void register_fleet(double t);
    void refresh_reputation(double t);
    std::optional<double> estimate(const Job& job, const UavRuntime& u) const;
    std::optional<RoundOutcome> run_consensus(std::uint64_t round, double t);
    bool append_block(const RoundOutcome& outcome, double t);
    void assign(double dispatch_t, UavId rotation_start);
    void settle_reward(RoundOutcome& outcome, MetricsRow& row);
    MetricsRow snapshot(std::uint64_t round, double t);

    std::uint64_t next_tx_id() { return next_tx_id_++; }

    Scenario s_;
    ConsensusEngine engine_;
    Chain chain_;
    std::vector<Vec3> waypoints_;
    std::vector<Vec3> users_;
    std::vector<Job> jobs_;
    std::vector<Assignment> assignments_;
    std::vector<JobOutcome> outcomes_;
    std::vector<UavRuntime> fleet_;
    std::deque<std::size_t> pending_;
    std::vector<ActiveLink> active_links_;
    std::vector<Transaction> pending_txs_;
    std::vector<Certificate> certificates_;
    std::priority_queue<Event, std::vector<Event>, Later> events_;
    std::uint64_t seq_ = 0;
    std::uint64_t next_tx_id_ = 1;

    bool reputation_dirty_ = false;
    std::size_t served_this_round_ = 0;
    double round_flight_energy_ = 0.0;
    double cumulative_consensus_ = 0.0;
    double cumulative_flight_ = 0.0;
    std::size_t delivered_ = 0;
    std::size_t failed_ = 0;
};

void Simulator::build_world() {
    const double side = s_.region_side_m;

    Rng wp(s_.seed, Stream::Waypoints);
    for (std::size_t i = 0; i < s_.waypoint_count; ++i) {
        const double x = wp.uniform(0.0, side);
        const double y = wp.uniform(0.0, side);
        waypoints_.push_back({x, y, 0.0});
    }

    Rng us(s_.seed, Stream::Users);
    for (std::size_t i = 0; i < s_.user_count; ++i) {
        const double x = us.uniform(0.0, side);
        const double y = us.uniform(0.0, side);
        users_.push_back({x, y, 0.0});
    }

    for (std::size_t i = 0; i < s_.uav_count; ++i) {
        const UavId id = static_cast<UavId>(i + 1);
        Rng r(s_.seed, Stream::Fleet, id);
        UavRuntime u;
        u.spec.node_id = id;
        u.spec.payload_capacity_kg = r.uniform(s_.capacity_min_kg, s_.capacity_max_kg);
        const double k = u.spec.payload_capacity_kg;
        u.spec.size_class = k < 5.0 ? SizeClass::Small : (k < 10.0 ? SizeClass::Medium : SizeClass::Large);
        u.spec.empty_weight_kg = 1.5 + 0.4 * k;
        u.spec.battery_capacity_j = s_.battery_base_j + s_.battery_per_kg_j * k;
        u.spec.rated_flight_duration_s = 3600.0;
        u.spec.rated_travel_distance_m = payload_speed(u.spec, k) * 3600.0;
        u.energy = EnergyState(u.spec.battery_capacity_j, s_.energy_threshold_fraction * u.spec.battery_capacity_j,
                               default_per_meter_cost(u.spec), s_.hover_power_w, s_.hover_unit_energy);
        if (!waypoints_.empty()) {
            u.kinematics.position = waypoints_[r.below(waypoints_.size())];
        } else {
            const double x = r.uniform(0.0, side);
            const double y = r.uniform(0.0, side);
            u.kinematics.position = {x, y, 0.0};
        }
        u.reputation.uav_id = id;
        u.reputation.capacity_kg = k;
        fleet_.push_back(std::move(u));
    }

    std::vector<Job> drawn;
    for (std::size_t j = 0; j < s_.job_count; ++j) {
        Rng r(s_.seed, Stream::Jobs, j);
        Job job;
        job.arrival_s = s_.arrival_window_s > 0.0 ? r.uniform(0.0, s_.arrival_window_s) : 0.0;
        const std::size_t o = r.below(waypoints_.size());
        job.origin = waypoints_[o];
        if (!users_.empty()) {
            job.packet.owner = static_cast<UserId>(j % users_.size());
            job.destination = users_[job.packet.owner];
        } else {
            std::size_t d = r.below(waypoints_.size() - 1);
            if (d >= o) ++d;
            job.destination = waypoints_[d];
        }
        job.payload_kg = r.uniform(s_.payload_min_kg, s_.payload_max_kg);
        job.packet.size_bits = users_.empty() ? 0.0 : r.uniform(s_.channel.packet_bits_min, s_.channel.packet_bits_max);
        job.cost = r.uniform(s_.cost_min, s_.cost_max);
        job.deadline_s = s_.deadline_s;
        job.packet.deadline_s = s_.deadline_s;
        drawn.push_back(job);
    }
    std::stable_sort(drawn.begin(), drawn.end(),
                     [](const Job& a, const Job& b) { return a.arrival_s < b.arrival_s; });
    for (std::size_t j = 0; j < drawn.size(); ++j) {
        drawn[j].job_id = j + 1;
        drawn[j].packet.packet_id = j + 1;
        if (drawn[j].origin == drawn[j].destination) {
            drawn[j].destination.x += 1.0;  // co-located user; keep origin != destination
        }
        validate(drawn[j]);
        JobOutcome o;
        o.job_id = drawn[j].job_id;
        o.arrival_s = drawn[j].arrival_s;
        o.deadline_s = drawn[j].deadline_s;
        outcomes_.push_back(o);
        Assignment a;
        a.job_id = drawn[j].job_id;
        a.start_time_s = drawn[j].arrival_s;
        assignments_.push_back(a);
        schedule(drawn[j].arrival_s, EventType::JobArrival, j);
    }
    jobs_ = std::move(drawn);
}

void Simulator::set_mode(UavRuntime& u, UavMode to) {
    if (!legal_transition(u.mode, to)) {
        throw Error(ErrorKind::IllegalTransition, std::string("uav ") + std::to_string(u.spec.node_id) + ": " +
                                                      to_string(u.mode) + " -> " + to_string(to));
    }
    u.mode = to;
}

void Simulator::settle_energy(UavRuntime& u, double t) {
    if (!u.sortie) return;
    const double target = u.sortie->energy_until(t);
    const double delta = target - u.sortie->accounted_j;
    if (delta > 0.0) {
        const double taken = u.energy.debit_saturating(delta);
        round_flight_energy_ += taken;
        cumulative_flight_ += taken;
    }
    u.sortie->accounted_j = target;
}

void Simulator::process_events_until(double t) {
    while (!events_.empty() && events_.top().time <= t) {
        const Event e = events_.top();
        events_.pop();
        switch (e.type) {
        case EventType::JobArrival: pending_.push_back(e.index); break;
        case EventType::ArriveDestination: on_arrival_at_destination(e.index, e.time); break;
        case EventType::TransmissionDone: on_transmission_done(e.index, e.time); break;
        }
    }
}

void Simulator::on_arrival_at_destination(std::size_t idx, double t) {
    UavRuntime& u = fleet_[idx];
    Sortie& so = *u.sortie;
    const Job& job = jobs_[so.job];
    settle_energy(u, t);
    u.kinematics.position = job.destination;
    u.kinematics.velocity = {};

    std::vector<Link> interferers;
    for (const ActiveLink& a : active_links_) {
        if (a.link.channel_id == so.link.channel_id &&
            distance(a.uav_position, u.kinematics.position) <= s_.channel.coverage_radius_m) {
            interferers.push_back(a.link);
        }
    }
    const double ratio = snr(so.link, interferers, s_.channel.noise_w);
    const double rate = achievable_rate(s_.channel.bandwidth_hz, ratio);
    std::optional<double> delay;
    try {
        delay = transmission_delay(job.packet, rate);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InfeasibleLink) throw;
    }
    JobOutcome& out = outcomes_[so.job];
    if (!delay || !delivery_feasible(*delay, job.packet.deadline_s)) {
        // Undeliverable data: the sortie ends here without a transfer.
        assignments_[so.job].status = JobStatus::Failed;
        out.status = JobStatus::Failed;
        ++failed_;
        u.sortie.reset();
        set_mode(u, UavMode::Ready);
        return;
    }
    so.tx_start_s = t;
    so.tx_delay_s = *delay;
    out.transmission_delay_s = *delay;
    out.status = JobStatus::Transmitting;
    assignments_[so.job].status = JobStatus::Transmitting;
    active_links_.push_back({so.link, u.kinematics.position});
    schedule(t + *delay, EventType::TransmissionDone, idx);
}

void Simulator::on_transmission_done(std::size_t idx, double t) {
    UavRuntime& u = fleet_[idx];
    settle_energy(u, t);
    const Sortie so = *u.sortie;
    const Job& job = jobs_[so.job];
    std::erase_if(active_links_, [&](const ActiveLink& a) {
        return a.link.uav_id == so.link.uav_id && a.link.user_id == so.link.user_id;
    });

    DeliveryOutcome done = complete_delivery(assignments_[so.job], t, job.deadline_s, job.cost, next_tx_id_);
    assignments_[so.job] = done.assignment;
    JobOutcome& out = outcomes_[so.job];
    out.status = done.assignment.status;
    out.completion_s = t;
    if (done.record) {
        ++next_tx_id_;
        pending_txs_.push_back(*done.record);
        u.reputation.history.push_back({job.job_id, *done.assignment.adt_s, job.cost});
        ++u.deliveries;
        ++delivered_;
        reputation_dirty_ = true;
    } else {
        ++failed_;
    }
    ++served_this_round_;
    u.sortie.reset();
    set_mode(u, UavMode::Ready);
}

void Simulator::register_fleet(double t) {
    if (fleet_.empty()) return;
    std::vector<Transaction> regs;
    for (const UavRuntime& u : fleet_) {
        regs.push_back(register_uav(chain_, u.spec, next_tx_id()));
    }
    // The registration block is issued by the trusted authority (id 0).
    chain_.append(std::move(regs), 0, static_cast<std::int64_t>(std::floor(t)), 0, 0);
    for (UavRuntime& u : fleet_) {
        set_mode(u, UavMode::Ready);
    }
}

void Simulator::refresh_reputation(double t) {
    if (!reputation_dirty_) return;
    reputation_dirty_ = false;
    std::vector<ReputationRecord> records;
    records.reserve(fleet_.size());
    for (const UavRuntime& u : fleet_) records.push_back(u.reputation);
    const FleetBounds bounds = fleet_bounds(records);
    for (UavRuntime& u : fleet_) {
        const double before = u.reputation.score;
        u.reputation.score = reputation_score(u.reputation, bounds);
        if (auto cert = issue_certificate(u.reputation, s_.certificate_threshold, t)) {
            certificates_.push_back(*cert);
            u.reputation.score = reputation_score(u.reputation, bounds);
        }
        if (u.reputation.score != before) {
            pending_txs_.push_back(Transaction{next_tx_id(), ReputationUpdate{u.spec.node_id, u.reputation.score}});
        }
    }
}

std::optional<double> Simulator::estimate(const Job& job, const UavRuntime& u) const {
    if (job.payload_kg > u.spec.payload_capacity_kg) return std::nullopt;
    const Link link{job.packet.owner, u.spec.node_id, assign_channel(job.packet.owner, s_.channel.channel_count),
                    s_.channel.user_tx_power_w,
                    distance_gain(s_.channel.hover_altitude_m, s_.channel.reference_distance_m)};
    double tx = 0.0;
    try {
        const double rate = achievable_rate(s_.channel.bandwidth_hz, snr(link, {}, s_.channel.noise_w));
        tx = transmission_delay(job.packet, rate);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InfeasibleLink) return std::nullopt;
        throw;
    }
    const double edt = estimate_delivery_time(job, u.spec, u.kinematics, tx);
    const double path = distance(u.kinematics.position, job.origin) + distance(job.origin, job.destination);
    const double need = sortie_energy(u.energy.per_meter_cost() * path, u.energy.hover_power(), tx);
    if (!(u.energy.remaining() - need > u.energy.threshold())) return std::nullopt;
    return edt;
}

std::optional<RoundOutcome> Simulator::run_consensus(std::uint64_t round, double t) {
    std::vector<CompetenceInputs> candidates;
    std::vector<std::optional<double>> edts;
    const Job* reference = pending_.empty() ? nullptr : &jobs_[pending_.front()];
    for (const UavRuntime& u : fleet_) {
        if (u.mode == UavMode::Registering || u.mode == UavMode::Queued) continue;
        CompetenceInputs in;
        in.uav_id = u.spec.node_id;
        in.poi_valid = chain_.is_registered(u.spec.node_id);
        in.timestamp_freshness = timestamp_freshness(t, u.last_heartbeat_s, s_.staleness_window_s);
        const double share = (u.sortie && u.sortie->transmitting()) ? 1.0 - 1.0 / s_.channel.channel_count : 1.0;
        in.resource_score = resource_score(u.energy.remaining(), u.energy.capacity(), share);
        candidates.push_back(in);
        edts.push_back(reference && u.mode == UavMode::Ready ? estimate(*reference, u) : std::nullopt);
    }
    const std::vector<double> scores = delivery_scores(edts);
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i].delivery_score = scores[i];
    try {
        return engine_.select_proposer(candidates, round, s_.seed);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoEligibleCandidate) throw;
        return std::nullopt;
    }
}

bool Simulator::append_block(const RoundOutcome& outcome, double t) {
    if (pending_txs_.empty()) return false;
    const std::uint32_t difficulty = engine_.kind() == ConsensusKind::PoW ? s_.seal_difficulty : 0;
    const auto ts = static_cast<std::int64_t>(std::floor(t));
    std::uint64_t nonce = 0;
    if (difficulty > 0) {
        nonce = find_nonce(chain_.next_header(pending_txs_, outcome.proposer, ts, difficulty));
    }
    chain_.append(std::move(pending_txs_), outcome.proposer, ts, difficulty, nonce);
    pending_txs_.clear();
    ++fleet_[outcome.proposer - 1].blocks_proposed;
    return true;
}

void Simulator::assign(double dispatch_t, UavId rotation_start) {
    if (pending_.empty()) return;
    std::vector<Job> pending;
    for (std::size_t j : pending_) pending.push_back(jobs_[j]);

    std::vector<FleetEntry> entries;
    for (const UavRuntime& u : fleet_) {
        if (u.mode != UavMode::Ready) continue;
        FleetEntry e;
        e.competence.uav_id = u.spec.node_id;
        e.competence.poi_valid = chain_.is_registered(u.spec.node_id);
        e.competence.timestamp_freshness =
            timestamp_freshness(dispatch_t, u.last_heartbeat_s, s_.staleness_window_s);
        e.competence.resource_score = resource_score(u.energy.remaining(), u.energy.capacity(), 1.0);
        e.reputation = u.reputation.score;
        entries.push_back(e);
    }
    if (entries.empty()) return;

    auto edt = [this](const Job& job, UavId id) { return estimate(job, fleet_[id - 1]); };
    const AssignmentPlan plan = assign_jobs(pending, entries, engine_, edt, rotation_start);

    std::deque<std::size_t> still_pending;
    for (std::size_t j : pending_) {
        const JobId id = jobs_[j].job_id;
        auto it = std::find_if(plan.assigned.begin(), plan.assigned.end(),
                               [id](const Assignment& a) { return a.job_id == id; });
        if (it == plan.assigned.end()) {
            still_pending.push_back(j);
            continue;
        }
        UavRuntime& u = fleet_[it->uav_id - 1];
        const Job& job = jobs_[j];
        assignments_[j] = *it;
        outcomes_[j].uav_id = it->uav_id;
        outcomes_[j].edt_s = it->edt_s;
        outcomes_[j].status = JobStatus::Enroute;

        Sortie so;
        so.job = j;
        so.dispatch_s = dispatch_t;
        so.speed_mps = payload_speed(u.spec, job.payload_kg);
        const double path = distance(u.kinematics.position, job.origin) + distance(job.origin, job.destination);
        so.flight_time_s = path / so.speed_mps;
        so.per_meter_cost = u.energy.per_meter_cost();
        so.hover_power_w = u.energy.hover_power();
        so.link = Link{job.packet.owner, u.spec.node_id,
                       assign_channel(job.packet.owner, s_.channel.channel_count), s_.channel.user_tx_power_w,
                       distance_gain(s_.channel.hover_altitude_m, s_.channel.reference_distance_m)};
        const Vec3 heading = job.origin - u.kinematics.position;
        const double len = norm(heading);
        u.kinematics.velocity = len > 0.0 ? heading * (so.speed_mps / len) : Vec3{so.speed_mps, 0.0, 0.0};
        u.kinematics.flight_elapsed_s += so.flight_time_s;
        outcomes_[j].estimated_transmission_delay_s =
            it->edt_s - path / so.speed_mps;
        u.sortie = so;
        set_mode(u, UavMode::Transmitting);
        schedule(dispatch_t + so.flight_time_s, EventType::ArriveDestination, it->uav_id - 1);
    }
    pending_ = std::move(still_pending);
}

void Simulator::settle_reward(RoundOutcome& outcome, MetricsRow& row) {
    UavRuntime& proposer = fleet_[outcome.proposer - 1];
    outcome.within_limit = outcome.duration_s <= s_.reward.time_limit_s;
    if (served_this_round_ > 0) {
        double avg = 0.0;
        std::size_t n = 0;
        for (const UavRuntime& u : fleet_) {
            if (u.mode == UavMode::Registering) continue;
            avg += u.energy.remaining();
            ++n;
        }
        RewardParams p;
        p.success_reward = s_.reward.success_reward;
        p.cost_weight = s_.reward.cost_weight;
        p.system_cost = row.round_energy_j;
        p.users_served = static_cast<double>(served_this_round_);
        p.penalty_index = s_.reward.penalty_index;
        p.time_limit_s = s_.reward.time_limit_s;
        p.round_duration_s = outcome.duration_s;
        p.fleet_avg_energy_j = n ? avg / static_cast<double>(n) : 0.0;
        p.remaining_energy_j = proposer.energy.remaining();
        p.hover_unit_energy = s_.hover_unit_energy;
        outcome.reward = instant_reward(p);
        outcome.reward_computed = true;
        proposer.reward_total += outcome.reward;
    }
    try {
        const double power = outcome.duration_s > 0.0 ? outcome.consensus_energy_j / outcome.duration_s
                                                      : outcome.consensus_energy_j;
        const double e_t = miner_power_energy(power, s_.reward.max_potential_w, s_.channel.user_tx_power_w);
        const double used = proposer.energy.total_consumed();
        const double norm_e = normalized_miner_energy(e_t, proposer.energy.capacity(), used);
        row.miner_efficiency = miner_efficiency(used, norm_e);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateEnergyState) throw;
        row.miner_efficiency = 0.0;
    }
    row.reward = outcome.reward;
    row.reward_computed = outcome.reward_computed;
}

MetricsRow Simulator::snapshot(std::uint64_t round, double t) {
    MetricsRow row;
    row.round = round;
    row.sim_time_s = t;
    row.consensus = engine_.kind();
    row.chain_height = chain_.tip().header.block_id;
    row.delivered = delivered_;
    row.failed = failed_;
    row.queued = pending_.size();
    double edt_sum = 0.0, adt_sum = 0.0;
    std::size_t edt_n = 0, adt_n = 0;
    for (const JobOutcome& o : outcomes_) {
        if (o.edt_s) {
            edt_sum += *o.edt_s;
            ++edt_n;
        }
        if (auto r = o.realized_s()) {
            adt_sum += *r;
            ++adt_n;
        }
        const bool open = o.status == JobStatus::Queued || o.status == JobStatus::Enroute ||
                          o.status == JobStatus::Transmitting;
        if (open && o.arrival_s <= t && o.arrival_s + o.deadline_s < t) ++row.missed;
    }
    row.mean_edt_s = edt_n ? edt_sum / static_cast<double>(edt_n) : 0.0;
    row.mean_adt_s = adt_n ? adt_sum / static_cast<double>(adt_n) : 0.0;
    const std::size_t denom = row.delivered + row.failed + row.missed;
    row.success_rate = denom ? static_cast<double>(row.delivered) / static_cast<double>(denom) : 0.0;
    for (const UavRuntime& u : fleet_) {
        if (u.mode == UavMode::Ready || u.mode == UavMode::Transmitting) ++row.active_uavs;
    }
    return row;
}

RunResult Simulator::run() {
    RunResult result;
    result.scenario = s_;
    const auto rounds = static_cast<std::uint64_t>(std::floor(s_.duration_s / s_.round_duration_s + 1e-9));
    double cumulative = 0.0;

    for (std::uint64_t r = 0; r <= rounds; ++r) {
        const double t = static_cast<double>(r) * s_.round_duration_s;
        round_flight_energy_ = 0.0;
        served_this_round_ = 0;

        process_events_until(t);
        for (UavRuntime& u : fleet_) settle_energy(u, t);
        if (r == 0) register_fleet(t);
        refresh_reputation(t);

        for (UavRuntime& u : fleet_) {
            if (u.mode == UavMode::Ready && !can_return(u.energy)) set_mode(u, UavMode::Queued);
        }
        for (UavRuntime& u : fleet_) {
            if (u.mode != UavMode::Ready && u.mode != UavMode::Transmitting) continue;
            u.last_heartbeat_s = t;
            pending_txs_.push_back(
                Transaction{next_tx_id(), Heartbeat{u.spec.node_id, static_cast<std::int64_t>(std::floor(t))}});
        }

        std::optional<RoundOutcome> outcome = run_consensus(r, t);
        bool appended = false;
        if (outcome) {
            appended = append_block(*outcome, t);
            cumulative_consensus_ += outcome->consensus_energy_j;
        }
        assign(t + (outcome ? outcome->duration_s : 0.0), outcome ? outcome->proposer : 0);

        MetricsRow row = snapshot(r, t);
        row.flight_energy_j = round_flight_energy_;
        row.consensus_energy_j = outcome ? outcome->consensus_energy_j : 0.0;
        row.round_energy_j = row.flight_energy_j + row.consensus_energy_j;
        cumulative += row.round_energy_j;
        row.cumulative_energy_j = cumulative;
        row.cumulative_consensus_energy_j = cumulative_consensus_;
        row.cumulative_flight_energy_j = cumulative_flight_;
        if (outcome) {
            row.proposer = outcome->proposer;
            row.block_appended = appended;
            settle_reward(*outcome, row);
        }
        row.chain_height = chain_.tip().header.block_id;
        result.rows.push_back(row);
    }

    const double end = static_cast<double>(rounds) * s_.round_duration_s;
    std::size_t missed = 0;
    double edt_sum = 0.0, adt_sum = 0.0;
    std::size_t edt_n = 0, adt_n = 0;
    for (const JobOutcome& o : outcomes_) {
        const bool open = o.status == JobStatus::Queued || o.status == JobStatus::Enroute ||
                          o.status == JobStatus::Transmitting;
        if (open && o.arrival_s + o.deadline_s < end) ++missed;
        if (o.edt_s) {
            edt_sum += *o.edt_s;
            ++edt_n;
        }
        if (auto rr = o.realized_s()) {
            adt_sum += *rr;
            ++adt_n;
        }
    }
    result.delivered = delivered_;
    result.failed = failed_;
    result.missed = missed;
    const std::size_t denom = delivered_ + failed_ + missed;
    result.success_rate = denom ? static_cast<double>(delivered_) / static_cast<double>(denom) : 0.0;
    result.mean_edt_s = edt_n ? edt_sum / static_cast<double>(edt_n) : 0.0;
    result.mean_adt_s = adt_n ? adt_sum / static_cast<double>(adt_n) : 0.0;
    result.total_consensus_energy_j = cumulative_consensus_;
    result.total_flight_energy_j = cumulative_flight_;
    result.jobs = outcomes_;
    result.certificates = certificates_;
    for (const UavRuntime& u : fleet_) {
        UavSummary sum;
        sum.spec = u.spec;
        sum.mode = u.mode;
        sum.remaining_energy_j = u.energy.remaining();
        sum.consumed_energy_j = u.energy.total_consumed();
        sum.reputation = u.reputation.score;
        sum.certificate_value = u.reputation.certificate_value;
        sum.deliveries = u.deliveries;
        sum.reward_total = u.reward_total;
        sum.blocks_proposed = u.blocks_proposed;
        result.uavs.push_back(sum);
    }
    result.chain = std::move(chain_);
    return result;
}

}  // namespace

RunResult run_scenario(const Scenario& scenario) { return Simulator(scenario).run(); }

CsvTable metrics_table(const std::vector<MetricsRow>& rows) {
    CsvTable t;
    t.columns = {"round", "sim_time", "consensus", "proposer", "block_appended", "chain_height",
                 "consensus_energy", "flight_energy", "round_energy", "cumulative_energy",
                 "cumulative_consensus_energy", "cumulative_flight_energy", "delivered", "failed",
                 "queued", "missed", "mean_edt", "mean_adt", "success_rate", "active_uavs",
                 "reward", "reward_computed", "miner_efficiency"};
    for (const MetricsRow& r : rows) {
        auto i = [](auto v) { return CsvValue{static_cast<std::int64_t>(v)}; };
        t.rows.push_back({i(r.round), r.sim_time_s, std::string(to_string(r.consensus)), i(r.proposer),
                          i(r.block_appended), i(r.chain_height), r.consensus_energy_j, r.flight_energy_j,
                          r.round_energy_j, r.cumulative_energy_j, r.cumulative_consensus_energy_j,
                          r.cumulative_flight_energy_j, i(r.delivered), i(r.failed), i(r.queued), i(r.missed),
                          r.mean_edt_s, r.mean_adt_s, r.success_rate, i(r.active_uavs), r.reward,
                          i(r.reward_computed), r.miner_efficiency});
    }
    return t;
}

CsvTable jobs_table(const std::vector<JobOutcome>& jobs) {
    CsvTable t;
    t.columns = {"job_id", "arrival", "deadline", "uav_id", "status", "edt", "completion", "realized",
                 "transmission_delay"};
    auto opt = [](const std::optional<double>& v) { return v ? CsvValue{*v} : CsvValue{std::string{}}; };
    for (const JobOutcome& o : jobs) {
        t.rows.push_back({static_cast<std::int64_t>(o.job_id), o.arrival_s, o.deadline_s,
                          static_cast<std::int64_t>(o.uav_id), std::string(to_string(o.status)), opt(o.edt_s),
                          opt(o.completion_s), opt(o.realized_s()), opt(o.transmission_delay_s)});
    }
    return t;
}

std::string run_summary_json(const RunResult& r) {
    nlohmann::ordered_json j;
    j["consensus"] = to_string(r.scenario.engine.kind);
    j["seed"] = r.scenario.seed;
    j["uav_count"] = r.scenario.uav_count;
    j["job_count"] = r.scenario.job_count;
    j["user_count"] = r.scenario.user_count;
    j["jobs"] = {{"delivered", r.delivered},
                 {"failed", r.failed},
                 {"missed", r.missed},
                 {"success_rate", r.success_rate},
                 {"mean_edt", r.mean_edt_s},
                 {"mean_adt", r.mean_adt_s}};
    j["energy"] = {{"engine", to_string(r.scenario.engine.kind)},
                   {"consensus", r.total_consensus_energy_j},
                   {"flight", r.total_flight_energy_j},
                   {"total", r.total_consensus_energy_j + r.total_flight_energy_j}};
    j["chain"] = {{"blocks", r.chain.size()}, {"head_hash", to_hex(r.chain.head_hash())}};
    auto reps = nlohmann::ordered_json::array();
    for (const UavSummary& u : r.uavs) {
        reps.push_back({{"uav_id", u.spec.node_id},
                        {"payload_capacity", u.spec.payload_capacity_kg},
                        {"reputation", u.reputation},
                        {"certificate", u.certificate_value},
                        {"deliveries", u.deliveries},
                        {"reward", u.reward_total},
                        {"blocks_proposed", u.blocks_proposed},
                        {"remaining_energy", u.remaining_energy_j},
                        {"state", to_string(u.mode)}});
    }
    j["reputations"] = std::move(reps);
    return j.dump(2) + "\n";
}

}  // namespace birds
