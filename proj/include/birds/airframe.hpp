#pragma once

// UAV physical model: registration attributes, payload-dependent speed,
// 3-D mobility and battery bookkeeping. All quantities are SI.

#include "birds/common.hpp"

namespace birds {

enum class SizeClass : std::uint8_t { Small = 0, Medium = 1, Large = 2 };

const char* to_string(SizeClass size);

struct UavSpec {
    UavId node_id = 0;
    SizeClass size_class = SizeClass::Small;
    double empty_weight_kg = 0.0;
    double payload_capacity_kg = 0.0;
    double battery_capacity_j = 0.0;
    double rated_flight_duration_s = 0.0;
    double rated_travel_distance_m = 0.0;

    friend bool operator==(const UavSpec&, const UavSpec&) = default;
};

struct KinematicState {
    Vec3 position;
    Vec3 velocity;
    double flight_elapsed_s = 0.0;
};

namespace speed {
inline constexpr double kLightPayloadKg = 1.0;
inline constexpr double kHeavyPayloadKg = 15.0;
inline constexpr double kLightPayloadMps = 178.8;  // 400 mph
inline constexpr double kHeavyPayloadMps = 44.7;   // 100 mph
inline constexpr double kMetersPerSecondPerMph = 0.44704;
}  // namespace speed

/// Battery bookkeeping for one airframe. Every debit is mirrored into
/// total_consumed so that capacity - remaining == total_consumed holds
/// up to rounding.
class EnergyState {
public:
    EnergyState() = default;
    EnergyState(double capacity_j, double threshold_j, double per_meter_cost_j,
                double hover_power_w, double hover_unit_energy_j);

    double capacity() const { return capacity_; }
    double remaining() const { return remaining_; }
    double threshold() const { return threshold_; }
    double total_consumed() const { return consumed_; }
    double per_meter_cost() const { return per_meter_cost_; }
    double hover_power() const { return hover_power_; }
    double hover_unit_energy() const { return hover_unit_energy_; }

    /// Throws EnergyExhausted and leaves the state untouched when the
    /// debit exceeds the remaining charge.
    void debit(double joules);

    /// Debits min(joules, remaining); returns the amount actually taken.
    double debit_saturating(double joules);

private:
    double capacity_ = 0.0;
    double remaining_ = 0.0;
    double threshold_ = 0.0;
    double consumed_ = 0.0;
    double per_meter_cost_ = 0.0;
    double hover_power_ = 0.0;
    double hover_unit_energy_ = 0.0;
};

double flying_distance(const KinematicState& state);

double sortie_energy(double flight_energy_j, double hover_power_w, double hover_time_s);

bool can_return(const EnergyState& energy);

/// Linear in payload between the 1 kg and 15 kg endpoints, clamped outside.
/// Throws Overload when payload exceeds the airframe's capacity.
double payload_speed(const UavSpec& spec, double payload_kg);

/// Per-meter flight cost such that flying at the max-payload speed drains
/// the full battery in exactly one hour.
double default_per_meter_cost(const UavSpec& spec);

void validate(const UavSpec& spec);

}  // namespace birds
