#include "birds/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

namespace birds {

namespace {

struct ParseContext {
    std::size_t line = 0;
    std::string key;

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + key + ": " + why);
    }
};

double as_double(const std::string& v, const ParseContext& ctx) {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        ctx.fail("expected a number, got '" + v + "'");
    }
    return out;
}

double positive(const std::string& v, const ParseContext& ctx) {
    const double d = as_double(v, ctx);
    if (!(d > 0.0)) ctx.fail("must be positive");
    return d;
}

double nonnegative(const std::string& v, const ParseContext& ctx) {
    const double d = as_double(v, ctx);
    if (d < 0.0) ctx.fail("must be nonnegative");
    return d;
}

double fraction(const std::string& v, const ParseContext& ctx) {
    const double d = as_double(v, ctx);
    if (d < 0.0 || d > 1.0) ctx.fail("must lie in [0, 1]");
    return d;
}

std::uint64_t count(const std::string& v, const ParseContext& ctx) {
    if (!v.empty() && v[0] == '-') ctx.fail("must be a nonnegative integer");
    std::uint64_t out = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        ctx.fail("expected a nonnegative integer, got '" + v + "'");
    }
    return out;
}

using Setter = std::function<void(Scenario&, const std::string&, const ParseContext&)>;

struct KeySpec {
    const char* section;
    const char* key;
    Setter set;
};

template <typename T, typename Conv>
Setter field(T Scenario::*member, Conv conv) {
    return [member, conv](Scenario& s, const std::string& v, const ParseContext& c) {
        s.*member = static_cast<T>(conv(v, c));
    };
}

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        {"", "uav_count", field(&Scenario::uav_count, count)},
        {"", "user_count", field(&Scenario::user_count, count)},
        {"", "job_count", field(&Scenario::job_count, count)},
        {"", "waypoint_count", field(&Scenario::waypoint_count, count)},
        {"", "region_side", field(&Scenario::region_side_m, positive)},
        {"", "region_area_km2",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             s.region_side_m = std::sqrt(positive(v, c)) * 1000.0;
         }},
        {"", "duration", field(&Scenario::duration_s, positive)},
        {"", "round_duration", field(&Scenario::round_duration_s, positive)},
        {"", "deadline", field(&Scenario::deadline_s, positive)},
        {"", "arrival_window", field(&Scenario::arrival_window_s, nonnegative)},
        {"", "request_window", field(&Scenario::request_window_s, nonnegative)},
        {"", "payload_min", field(&Scenario::payload_min_kg, positive)},
        {"", "payload_max", field(&Scenario::payload_max_kg, positive)},
        {"", "cost_min", field(&Scenario::cost_min, nonnegative)},
        {"", "cost_max", field(&Scenario::cost_max, nonnegative)},
        {"", "capacity_min", field(&Scenario::capacity_min_kg, positive)},
        {"", "capacity_max", field(&Scenario::capacity_max_kg, positive)},
        {"", "battery_base", field(&Scenario::battery_base_j, nonnegative)},
        {"", "battery_per_kg", field(&Scenario::battery_per_kg_j, nonnegative)},
        {"", "energy_threshold_fraction", field(&Scenario::energy_threshold_fraction, fraction)},
        {"", "hover_power", field(&Scenario::hover_power_w, nonnegative)},
        {"", "hover_unit_energy", field(&Scenario::hover_unit_energy, positive)},
        {"", "certificate_threshold", field(&Scenario::certificate_threshold, nonnegative)},
        {"", "staleness_window", field(&Scenario::staleness_window_s, positive)},
        {"", "service_level", field(&Scenario::service_level, fraction)},
        {"", "uav_cap", field(&Scenario::uav_cap, count)},
        {"", "seal_difficulty",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             const auto d = count(v, c);
             if (d > 32) c.fail("must be at most 32");
             s.seal_difficulty = static_cast<std::uint32_t>(d);
         }},
        {"", "seed", field(&Scenario::seed, count)},

        {"consensus", "consensus",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             auto k = parse_consensus_kind(v);
             if (!k) c.fail("unknown consensus '" + v + "' (poc|pow|poid|poa)");
             s.engine.kind = *k;
         }},
        {"consensus", "difficulty",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             const auto d = count(v, c);
             if (d > 63) c.fail("must be at most 63");
             s.engine.difficulty_bits = static_cast<std::uint32_t>(d);
         }},
        {"consensus", "hash_energy",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.engine.hash_energy_j = nonnegative(v, c); }},
        {"consensus", "hash_rate",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.engine.hash_rate_hz = positive(v, c); }},
        {"consensus", "validation_energy",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             s.engine.validation_energy_j = nonnegative(v, c);
         }},
        {"consensus", "verify_energy",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.engine.verify_energy_j = nonnegative(v, c); }},
        {"consensus", "authority_count",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             const auto a = count(v, c);
             if (a < 1) c.fail("must be at least 1");
             s.engine.authority_count = a;
         }},
        {"consensus", "latency",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             s.engine.message_latency_s = nonnegative(v, c);
         }},
        {"consensus", "w_timestamp",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.engine.weights.timestamp = fraction(v, c); }},
        {"consensus", "w_identity",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.engine.weights.identity = fraction(v, c); }},
        {"consensus", "w_resources",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.engine.weights.resources = fraction(v, c); }},
        {"consensus", "w_delivery",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.engine.weights.delivery = fraction(v, c); }},

        {"reward", "success_reward",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.reward.success_reward = as_double(v, c); }},
        {"reward", "cost_weight",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.reward.cost_weight = nonnegative(v, c); }},
        {"reward", "penalty_index",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.reward.penalty_index = nonnegative(v, c); }},
        {"reward", "time_limit",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.reward.time_limit_s = positive(v, c); }},
        {"reward", "max_potential",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.reward.max_potential_w = positive(v, c); }},

        {"channel", "channel_count",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             const auto q = count(v, c);
             if (q < 1 || q > 4096) c.fail("must be in [1, 4096]");
             s.channel.channel_count = static_cast<int>(q);
         }},
        {"channel", "bandwidth",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.channel.bandwidth_hz = positive(v, c); }},
        {"channel", "noise",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.channel.noise_w = positive(v, c); }},
        {"channel", "tx_power",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.channel.user_tx_power_w = nonnegative(v, c); }},
        {"channel", "hover_altitude",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.channel.hover_altitude_m = positive(v, c); }},
        {"channel", "reference_distance",
         [](Scenario& s, const std::string& v, const ParseContext& c) {
             s.channel.reference_distance_m = positive(v, c);
         }},
        {"channel", "coverage_radius",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.channel.coverage_radius_m = nonnegative(v, c); }},
        {"channel", "packet_bits_min",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.channel.packet_bits_min = nonnegative(v, c); }},
        {"channel", "packet_bits_max",
         [](Scenario& s, const std::string& v, const ParseContext& c) { s.channel.packet_bits_max = nonnegative(v, c); }},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void validate(const Scenario& s) {
    auto bad = [](const std::string& why) { throw Error(ErrorKind::InvalidParameter, why); };
    validate(s.engine);
    if (s.payload_min_kg > s.payload_max_kg) bad("payload_min exceeds payload_max");
    if (s.cost_min > s.cost_max) bad("cost_min exceeds cost_max");
    if (s.capacity_min_kg > s.capacity_max_kg) bad("capacity_min exceeds capacity_max");
    if (s.channel.packet_bits_min > s.channel.packet_bits_max) bad("packet_bits_min exceeds packet_bits_max");
    if (s.battery_base_j + s.battery_per_kg_j * s.capacity_min_kg <= 0.0) bad("battery capacity must be positive");
    if (s.job_count > 0 && s.waypoint_count < 2) bad("jobs need at least two waypoints");
    if (s.round_duration_s > s.duration_s) bad("round_duration exceeds duration");
    if (s.uav_count > 100000 || s.job_count > 1000000) bad("scenario too large");
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    ParseContext ctx;
    while (std::getline(in, raw)) {
        ++ctx.line;
        ctx.key.clear();
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') ctx.fail("malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "consensus" && section != "reward" && section != "channel") {
                ctx.fail("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) ctx.fail("expected 'key = value'");
        ctx.key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (ctx.key.empty()) ctx.fail("missing key");
        if (value.empty()) ctx.fail("missing value");

        const KeySpec* spec = nullptr;
        for (const auto& k : key_table()) {
            if (ctx.key == k.key && (section.empty() || section == k.section)) {
                spec = &k;
                break;
            }
        }
        if (spec == nullptr) {
            ctx.fail(section.empty() ? "unknown key" : "unknown key in [" + section + "]");
        }
        spec->set(s, value, ctx);
    }
    try {
        validate(s);
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, std::string("scenario: ") + e.what());
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw Error(ErrorKind::Io, "cannot read scenario file " + path);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace birds
