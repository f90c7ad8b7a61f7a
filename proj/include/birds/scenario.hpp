#pragma once

// Scenario configuration and its `key = value` text format.
//
//   # comment
//   uav_count = 20
//   [consensus]
//   consensus = pow
//   difficulty = 12
//
// Every key belongs to one section (top level, [consensus], [reward] or
// [channel]). A key may be written at top level or under its own section;
// anywhere else it is rejected as unknown.

#include <string>

#include "birds/consensus.hpp"

namespace birds {

struct ChannelConfig {
    int channel_count = 4;
    double bandwidth_hz = 1.0e6;
    double noise_w = 1.0e-9;
    double user_tx_power_w = 0.1;
    double hover_altitude_m = 100.0;
    double reference_distance_m = 1.0;
    double coverage_radius_m = 2000.0;
    double packet_bits_min = 2.0e6;
    double packet_bits_max = 2.0e7;
};

struct RewardConfig {
    double success_reward = 10.0;
    double cost_weight = 1.0;
    double penalty_index = 1.0;
    double time_limit_s = 5.0;
    double max_potential_w = 100.0;
};

struct Scenario {
    std::size_t uav_count = 20;
    std::size_t user_count = 20;
    std::size_t job_count = 20;
    std::size_t waypoint_count = 80;
    double region_side_m = 10000.0;

    double duration_s = 3600.0;
    double round_duration_s = 10.0;

    double deadline_s = 60.0;
    double arrival_window_s = 100.0;
    double request_window_s = 3000.0;
    double payload_min_kg = 0.5;
    double payload_max_kg = 8.0;
    double cost_min = 5.0;
    double cost_max = 15.0;

    double capacity_min_kg = 1.0;
    double capacity_max_kg = 15.0;
    double battery_base_j = 40000.0;
    double battery_per_kg_j = 20000.0;
    double energy_threshold_fraction = 0.1;
    double hover_power_w = 50.0;
    double hover_unit_energy = 50.0;

    double certificate_threshold = 2.0;
    double staleness_window_s = 30.0;
    double service_level = 0.95;
    std::size_t uav_cap = 64;
    std::uint32_t seal_difficulty = 8;

    std::uint64_t seed = 42;

    EngineParams engine;
    ChannelConfig channel;
    RewardConfig reward;
};

void validate(const Scenario& scenario);

/// Parses the key-value format over the defaults. Throws Error(Parse) with
/// the offending line number.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::string& path);

}  // namespace birds
