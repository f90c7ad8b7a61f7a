#include "birds/airframe.hpp"

#include <algorithm>
#include <cmath>

namespace birds {

const char* to_string(SizeClass size) {
    switch (size) {
    case SizeClass::Small: return "small";
    case SizeClass::Medium: return "medium";
    case SizeClass::Large: return "large";
    }
    return "unknown";
}

EnergyState::EnergyState(double capacity_j, double threshold_j, double per_meter_cost_j,
                         double hover_power_w, double hover_unit_energy_j)
    : capacity_(capacity_j),
      remaining_(capacity_j),
      threshold_(threshold_j),
      per_meter_cost_(per_meter_cost_j),
      hover_power_(hover_power_w),
      hover_unit_energy_(hover_unit_energy_j) {
    if (!(capacity_j > 0.0) || threshold_j < 0.0 || threshold_j > capacity_j ||
        per_meter_cost_j < 0.0 || hover_power_w < 0.0 || hover_unit_energy_j < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "invalid energy state parameters");
    }
}

void EnergyState::debit(double joules) {
    if (joules < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "negative energy debit");
    }
    if (joules > remaining_) {
        throw Error(ErrorKind::EnergyExhausted, "debit exceeds remaining energy");
    }
    remaining_ -= joules;
    consumed_ += joules;
}

double EnergyState::debit_saturating(double joules) {
    const double taken = std::clamp(joules, 0.0, remaining_);
    remaining_ -= taken;
    consumed_ += taken;
    return taken;
}

double flying_distance(const KinematicState& state) {
    return state.flight_elapsed_s * norm(state.velocity);
}

double sortie_energy(double flight_energy_j, double hover_power_w, double hover_time_s) {
    if (flight_energy_j < 0.0 || hover_power_w < 0.0 || hover_time_s < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "sortie inputs must be nonnegative");
    }
    return flight_energy_j + hover_power_w * hover_time_s;
}

bool can_return(const EnergyState& energy) { return energy.remaining() > energy.threshold(); }

double payload_speed(const UavSpec& spec, double payload_kg) {
    using namespace speed;
    if (payload_kg < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "negative payload");
    }
    if (payload_kg > spec.payload_capacity_kg) {
        throw Error(ErrorKind::Overload, "payload exceeds carrying capacity");
    }
    const double p = std::clamp(payload_kg, kLightPayloadKg, kHeavyPayloadKg);
    const double t = (p - kLightPayloadKg) / (kHeavyPayloadKg - kLightPayloadKg);
    return kLightPayloadMps + t * (kHeavyPayloadMps - kLightPayloadMps);
}

double default_per_meter_cost(const UavSpec& spec) {
    const double v = payload_speed(spec, spec.payload_capacity_kg);
    return spec.battery_capacity_j / (v * 3600.0);
}

void validate(const UavSpec& spec) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (spec.node_id == 0) {
        throw Error(ErrorKind::MalformedRegistration, "node_id 0 is reserved");
    }
    if (!positive(spec.empty_weight_kg)) {
        throw Error(ErrorKind::MalformedRegistration, "missing empty_weight");
    }
    if (!positive(spec.payload_capacity_kg)) {
        throw Error(ErrorKind::MalformedRegistration, "missing payload_capacity");
    }
    if (!positive(spec.battery_capacity_j)) {
        throw Error(ErrorKind::MalformedRegistration, "missing battery_capacity");
    }
    if (!positive(spec.rated_flight_duration_s)) {
        throw Error(ErrorKind::MalformedRegistration, "missing rated_flight_duration");
    }
    if (!positive(spec.rated_travel_distance_m)) {
        throw Error(ErrorKind::MalformedRegistration, "missing rated_travel_distance");
    }
}

}  // namespace birds
