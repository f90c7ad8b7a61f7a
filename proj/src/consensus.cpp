#include "birds/consensus.hpp"

#include <algorithm>
#include <cmath>

#include "birds/rng.hpp"

namespace birds {

const char* to_string(ConsensusKind kind) {
    switch (kind) {
    case ConsensusKind::PoC: return "poc";
    case ConsensusKind::PoW: return "pow";
    case ConsensusKind::PoID: return "poid";
    case ConsensusKind::PoA: return "poa";
    }
    return "unknown";
}

std::optional<ConsensusKind> parse_consensus_kind(const std::string& text) {
    for (ConsensusKind k : kAllConsensusKinds) {
        if (text == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

void validate(const CompetenceWeights& w) {
    const double sum = w.timestamp + w.identity + w.resources + w.delivery;
    if (w.timestamp < 0.0 || w.identity < 0.0 || w.resources < 0.0 || w.delivery < 0.0 ||
        std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidParameter, "competence weights must be nonnegative and sum to 1");
    }
}

std::optional<double> competence_score(const CompetenceInputs& in, const CompetenceWeights& w) {
    if (!in.poi_valid) {
        return std::nullopt;
    }
    return w.timestamp * in.timestamp_freshness + w.identity * 1.0 + w.resources * in.resource_score +
           w.delivery * in.delivery_score;
}

double timestamp_freshness(double now_s, std::optional<double> last_heartbeat_s, double window_s) {
    if (!last_heartbeat_s) {
        return 0.0;
    }
    const double age = std::max(0.0, now_s - *last_heartbeat_s);
    if (!(window_s > 0.0)) {
        return age == 0.0 ? 1.0 : 0.0;
    }
    return std::clamp(1.0 - age / window_s, 0.0, 1.0);
}

double resource_score(double remaining_j, double capacity_j, double bandwidth_share) {
    if (!(capacity_j > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "capacity must be positive");
    }
    const double energy = std::clamp(remaining_j / capacity_j, 0.0, 1.0);
    return 0.5 * (energy + std::clamp(bandwidth_share, 0.0, 1.0));
}

std::vector<double> delivery_scores(std::span<const std::optional<double>> edts) {
    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (const auto& e : edts) {
        if (!e) continue;
        lo = any ? std::min(lo, *e) : *e;
        hi = any ? std::max(hi, *e) : *e;
        any = true;
    }
    std::vector<double> out(edts.size(), 0.0);
    for (std::size_t i = 0; i < edts.size(); ++i) {
        if (!edts[i]) continue;
        out[i] = hi > lo ? 1.0 - (*edts[i] - lo) / (hi - lo) : 0.5;
    }
    return out;
}

std::size_t select_by_score(std::span<const double> scores, std::span<const UavId> ids) {
    if (scores.empty() || scores.size() != ids.size()) {
        throw Error(ErrorKind::InvalidParameter, "scores and ids must be nonempty and aligned");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best] || (scores[i] == scores[best] && ids[i] < ids[best])) {
            best = i;
        }
    }
    return best;
}

void validate(const EngineParams& p) {
    validate(p.weights);
    if (p.difficulty_bits > 63) {
        throw Error(ErrorKind::InvalidParameter, "difficulty must be below 64 bits");
    }
    if (p.authority_count < 1) {
        throw Error(ErrorKind::InvalidParameter, "authority set size must be at least 1");
    }
    if (p.validation_energy_j < 0.0 || p.hash_energy_j < 0.0 || p.verify_energy_j < 0.0 ||
        !(p.hash_rate_hz > 0.0) || p.message_latency_s < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "consensus energy and timing parameters out of range");
    }
}

ConsensusEngine::ConsensusEngine(EngineParams params) : params_(params) { validate(params_); }

void ConsensusEngine::set_authorities(std::vector<UavId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    authorities_ = std::move(ids);
}

RoundOutcome ConsensusEngine::select_proposer(std::span<const CompetenceInputs> candidates,
                                              std::uint64_t round, std::uint64_t seed) const {
    std::vector<const CompetenceInputs*> eligible;
    for (const auto& c : candidates) {
        if (c.poi_valid) eligible.push_back(&c);
    }
    if (eligible.empty()) {
        throw Error(ErrorKind::NoEligibleCandidate, "no eligible proposer this round");
    }
    std::sort(eligible.begin(), eligible.end(),
              [](const auto* a, const auto* b) { return a->uav_id < b->uav_id; });
    const std::size_t n = eligible.size();

    RoundOutcome out;
    out.round = round;
    out.duration_s = params_.message_latency_s;

    switch (params_.kind) {
    case ConsensusKind::PoC: {
        std::vector<double> scores;
        std::vector<UavId> ids;
        for (const auto* c : eligible) {
            scores.push_back(*competence_score(*c, params_.weights));
            ids.push_back(c->uav_id);
        }
        out.proposer = ids[select_by_score(scores, ids)];
        out.consensus_energy_j = params_.validation_energy_j;
        break;
    }
    case ConsensusKind::PoW: {
        // Candidates hash in lockstep in id order; each attempt succeeds with
        // probability 2^-d, so the index of the first success over the
        // interleaved attempt sequence is geometric.
        Rng rng(seed, Stream::Consensus, round);
        const double p = std::ldexp(1.0, -static_cast<int>(params_.difficulty_bits));
        const std::uint64_t attempts = rng.geometric(p);
        out.hash_attempts = attempts;
        out.proposer = eligible[(attempts - 1) % n]->uav_id;
        out.consensus_energy_j = static_cast<double>(attempts) * params_.hash_energy_j;
        const std::uint64_t sweeps = (attempts + n - 1) / n;
        out.duration_s = static_cast<double>(sweeps) / params_.hash_rate_hz;
        break;
    }
    case ConsensusKind::PoID: {
        out.proposer = eligible[round % n]->uav_id;
        out.consensus_energy_j = static_cast<double>(n) * params_.verify_energy_j;
        break;
    }
    case ConsensusKind::PoA: {
        std::vector<UavId> active;
        if (authorities_.empty()) {
            for (std::size_t i = 0; i < n && i < params_.authority_count; ++i) {
                active.push_back(eligible[i]->uav_id);
            }
        } else {
            for (const auto* c : eligible) {
                if (std::binary_search(authorities_.begin(), authorities_.end(), c->uav_id)) {
                    active.push_back(c->uav_id);
                }
            }
        }
        if (active.empty()) {
            throw Error(ErrorKind::NoEligibleCandidate, "no authority is eligible this round");
        }
        out.proposer = active[round % active.size()];
        out.consensus_energy_j = static_cast<double>(n) * params_.verify_energy_j;
        break;
    }
    }
    return out;
}

double miner_efficiency(double miner_energy, double normalized_energy) {
    if (normalized_energy == 0.0) {
        throw Error(ErrorKind::DegenerateEnergyState, "zero normalized miner energy");
    }
    return miner_energy / normalized_energy;
}

double normalized_miner_energy(double total_consumption, double max_energy, double miner_energy) {
    if (!(max_energy - miner_energy > 0.0)) {
        throw Error(ErrorKind::DegenerateEnergyState, "maximum energy must exceed miner energy");
    }
    return total_consumption / (max_energy - miner_energy);
}

double miner_power_energy(double total_power_w, double max_potential_w, double tx_power_w) {
    if (!(max_potential_w - tx_power_w > 0.0)) {
        throw Error(ErrorKind::DegenerateEnergyState, "maximum potential must exceed transmit power");
    }
    return total_power_w / (max_potential_w - tx_power_w);
}

double penalty(double penalty_index, double fleet_avg_energy_j, double remaining_energy_j,
               double hover_unit_energy) {
    if (!(hover_unit_energy > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "hover unit energy must be positive");
    }
    return penalty_index * (fleet_avg_energy_j - remaining_energy_j) / hover_unit_energy;
}

double instant_reward(const RewardParams& p) {
    if (p.users_served == 0.0) {
        throw Error(ErrorKind::DivisionDegenerate, "no users served this round");
    }
    const double rho = penalty(p.penalty_index, p.fleet_avg_energy_j, p.remaining_energy_j, p.hover_unit_energy);
    const double cost = p.cost_weight * p.system_cost / p.users_served;
    if (p.round_duration_s <= p.time_limit_s) {
        return p.success_reward - cost - rho;
    }
    return -cost - rho;
}

}  // namespace birds
