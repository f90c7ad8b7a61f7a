#pragma once

// Per-round block-proposer selection (Proof-of-Competence and the PoW,
// PoID and PoA baselines), miner energy metrics and the instant reward.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "birds/common.hpp"

namespace birds {

enum class ConsensusKind : std::uint8_t { PoC = 0, PoW = 1, PoID = 2, PoA = 3 };

inline constexpr ConsensusKind kAllConsensusKinds[] = {ConsensusKind::PoC, ConsensusKind::PoW,
                                                       ConsensusKind::PoID, ConsensusKind::PoA};

const char* to_string(ConsensusKind kind);
std::optional<ConsensusKind> parse_consensus_kind(const std::string& text);

struct CompetenceWeights {
    double timestamp = 0.25;
    double identity = 0.25;
    double resources = 0.25;
    double delivery = 0.25;
};

void validate(const CompetenceWeights& weights);

struct CompetenceInputs {
    UavId uav_id = 0;
    double timestamp_freshness = 0.0;  // [0,1]
    bool poi_valid = false;
    double resource_score = 0.0;  // [0,1]
    double delivery_score = 0.0;  // [0,1]
};

/// Weighted sum of the four competence factors. Identities that do not
/// resolve on-chain are ineligible and get no score.
std::optional<double> competence_score(const CompetenceInputs& inputs, const CompetenceWeights& weights);

/// 1 for a heartbeat at `now`, decaying linearly to 0 over the window.
double timestamp_freshness(double now_s, std::optional<double> last_heartbeat_s, double staleness_window_s);

/// Mean of the remaining-energy fraction and the free-bandwidth share.
double resource_score(double remaining_j, double capacity_j, double bandwidth_share);

/// 1 - min-max normalized EDT over the entries that have one; entries
/// without an estimate score 0. A degenerate range scores 0.5.
std::vector<double> delivery_scores(std::span<const std::optional<double>> edts);

/// Index of the highest score; ties go to the lowest id.
std::size_t select_by_score(std::span<const double> scores, std::span<const UavId> ids);

struct EngineParams {
    ConsensusKind kind = ConsensusKind::PoC;
    CompetenceWeights weights;
    double validation_energy_j = 1.0;  // PoC, per round
    std::uint32_t difficulty_bits = 16;
    double hash_energy_j = 8.0e-3;
    double hash_rate_hz = 5000.0;  // per UAV
    std::size_t authority_count = 3;
    double verify_energy_j = 0.5;  // PoID/PoA, per validating node
    double message_latency_s = 0.2;
};

void validate(const EngineParams& params);

struct RoundOutcome {
    std::uint64_t round = 0;
    UavId proposer = 0;
    double consensus_energy_j = 0.0;
    double duration_s = 0.0;
    std::uint64_t hash_attempts = 0;
    double reward = 0.0;
    bool reward_computed = false;
    bool within_limit = true;

    friend bool operator==(const RoundOutcome&, const RoundOutcome&) = default;
};

class ConsensusEngine {
public:
    explicit ConsensusEngine(EngineParams params = {});

    ConsensusKind kind() const { return params_.kind; }
    const EngineParams& params() const { return params_; }

    /// PoA authority set. When empty, the lowest `authority_count` eligible
    /// ids of each round act as authorities.
    void set_authorities(std::vector<UavId> ids);
    const std::vector<UavId>& authorities() const { return authorities_; }

    /// Deterministic in (candidates, round, seed). Throws NoEligibleCandidate
    /// when no candidate has a valid identity.
    RoundOutcome select_proposer(std::span<const CompetenceInputs> candidates, std::uint64_t round,
                                 std::uint64_t seed) const;

private:
    EngineParams params_;
    std::vector<UavId> authorities_;
};

// Miner energy metrics, evaluated literally.
double miner_efficiency(double miner_energy, double normalized_energy);
double normalized_miner_energy(double total_consumption, double max_energy, double miner_energy);
double miner_power_energy(double total_power_w, double max_potential_w, double tx_power_w);

struct RewardParams {
    double success_reward = 10.0;
    double cost_weight = 1.0;
    double system_cost = 0.0;     // fleet energy spent this round, J
    double users_served = 0.0;    // must be > 0
    double penalty_index = 1.0;
    double time_limit_s = 5.0;
    double round_duration_s = 0.0;  // consensus duration of this round
    double fleet_avg_energy_j = 0.0;
    double remaining_energy_j = 0.0;  // proposer's
    double hover_unit_energy = 1.0;   // per-second hover energy, > 0
};

double penalty(double penalty_index, double fleet_avg_energy_j, double remaining_energy_j,
               double hover_unit_energy);

double instant_reward(const RewardParams& params);

}  // namespace birds
