#pragma once

// Air-to-ground link model: co-channel SNR, Shannon rate, transmission
// delay and deadline feasibility.

#include <span>

#include "birds/common.hpp"

namespace birds {

struct Channel {
    int channel_id = 0;
    double bandwidth_hz = 1.0e6;
    double noise_w = 1.0e-9;
};

struct Link {
    UserId user_id = 0;
    UavId uav_id = 0;
    int channel_id = 0;
    double tx_power_w = 0.0;
    double gain = 0.0;
};

struct DataPacket {
    std::uint64_t packet_id = 0;
    UserId owner = 0;
    double size_bits = 0.0;
    double deadline_s = 1.0;
};

/// p*h / (sum of interferer p'*h' + noise). The link itself must not be
/// among the interferers.
double snr(const Link& link, std::span<const Link> interferers, double noise_w);

/// B * log2(1 + snr), bits per second.
double achievable_rate(double bandwidth_hz, double snr_ratio);

/// Throws InfeasibleLink when the rate is zero and the packet is not empty.
double transmission_delay(const DataPacket& packet, double rate_bps);

/// Inclusive at the boundary: only a delay strictly above the deadline fails.
bool delivery_feasible(double delay_s, double deadline_s);

double coverage_load(std::span<const DataPacket> packets);

/// Inverse-square gain normalized to 1 at the reference distance.
double distance_gain(double distance_m, double reference_m = 1.0);

/// Round-robin channel for the k-th user in a coverage area.
int assign_channel(std::size_t user_index, int channel_count);

}  // namespace birds
