#include "birds/channel.hpp"

#include <algorithm>

namespace birds {

double snr(const Link& link, std::span<const Link> interferers, double noise_w) {
    if (!(noise_w > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "noise power must be positive");
    }
    if (link.tx_power_w < 0.0 || link.gain < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "negative power or gain");
    }
    double interference = 0.0;
    for (const Link& other : interferers) {
        if (other.user_id == link.user_id && other.uav_id == link.uav_id) {
            throw Error(ErrorKind::InvalidParameter, "link listed among its own interferers");
        }
        interference += other.tx_power_w * other.gain;
    }
    return link.tx_power_w * link.gain / (interference + noise_w);
}

double achievable_rate(double bandwidth_hz, double snr_ratio) {
    if (!(bandwidth_hz > 0.0) || snr_ratio < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "bandwidth must be positive and snr nonnegative");
    }
    return bandwidth_hz * std::log2(1.0 + snr_ratio);
}

double transmission_delay(const DataPacket& packet, double rate_bps) {
    if (rate_bps < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "negative rate");
    }
    if (packet.size_bits == 0.0) {
        return 0.0;
    }
    if (rate_bps == 0.0) {
        throw Error(ErrorKind::InfeasibleLink, "zero-rate link cannot carry the packet");
    }
    return packet.size_bits / rate_bps;
}

bool delivery_feasible(double delay_s, double deadline_s) { return delay_s <= deadline_s; }

double coverage_load(std::span<const DataPacket> packets) {
    double total = 0.0;
    for (const DataPacket& p : packets) {
        total += p.size_bits;
    }
    return total;
}

double distance_gain(double distance_m, double reference_m) {
    const double d = std::max(distance_m, reference_m);
    return (reference_m * reference_m) / (d * d);
}

int assign_channel(std::size_t user_index, int channel_count) {
    if (channel_count <= 0) {
        throw Error(ErrorKind::InvalidParameter, "channel set is empty");
    }
    return static_cast<int>(user_index % static_cast<std::size_t>(channel_count));
}

}  // namespace birds
