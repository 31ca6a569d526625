#include "cyberevo/sim/scenario_config.hpp"

#include "cyberevo/embedded_data.hpp"

namespace cyberevo::sim {

namespace {

ScenarioConfig builtin() {
    ScenarioConfig c;
    for (std::size_t i = 0; i < kRedActionCount; ++i) c.red_durations[i] = action_catalog(Side::Red)[i].default_duration;
    for (std::size_t i = 0; i < kBlueActionCount; ++i)
        c.blue_durations[i] = action_catalog(Side::Blue)[i].default_duration;
    return c;
}

void apply_range(const KeyValueConfig& kv, std::string_view key, int& lo, int& hi) {
    const auto values = kv.get_int_list(key, {lo, hi});
    if (values.size() != 2) throw Error(std::string(key) + " expects 'min, max'");
    lo = static_cast<int>(values[0]);
    hi = static_cast<int>(values[1]);
}

void check_probability(double p, std::string_view name) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(std::string(name) + " must be a probability in [0, 1]");
}

ScenarioConfig apply(ScenarioConfig c, const KeyValueConfig& kv) {
    c.steps = static_cast<int>(kv.get_int("steps", c.steps));
    const auto phases = kv.get_int_list("phase_boundaries", {c.phases.phase2a_start, c.phases.phase2b_start});
    if (phases.size() != 2) throw Error("phase_boundaries expects two step indices");
    c.phases = {static_cast<int>(phases[0]), static_cast<int>(phases[1])};

    apply_range(kv, "servers_per_zone", c.bounds.min_servers, c.bounds.max_servers);
    apply_range(kv, "users_per_zone", c.bounds.min_users, c.bounds.max_users);
    apply_range(kv, "services_per_host", c.bounds.min_services, c.bounds.max_services);

    c.exploit_prob_scanned = kv.get_double("exploit_prob_scanned", c.exploit_prob_scanned);
    c.exploit_prob_unscanned = kv.get_double("exploit_prob_unscanned", c.exploit_prob_unscanned);
    c.escalate_prob = kv.get_double("escalate_prob", c.escalate_prob);
    c.phishing_prob = kv.get_double("phishing_prob", c.phishing_prob);
    c.compromised_service_spawn_prob = kv.get_double("compromised_service_spawn_prob", c.compromised_service_spawn_prob);
    c.decoy_trip_prob = kv.get_double("decoy_trip_prob", c.decoy_trip_prob);
    c.aggressive_detect_prob = kv.get_double("aggressive_detect_prob", c.aggressive_detect_prob);
    c.stealth_detect_prob = kv.get_double("stealth_detect_prob", c.stealth_detect_prob);
    c.green_local_work_prob = kv.get_double("green_local_work_prob", c.green_local_work_prob);

    for (Side side : {Side::Red, Side::Blue}) {
        const auto catalog = action_catalog(side);
        for (std::size_t i = 0; i < catalog.size(); ++i) {
            const auto key = "duration." + std::string(catalog[i].name);
            auto& slot = side == Side::Red ? c.red_durations[i] : c.blue_durations[i];
            slot = static_cast<int>(kv.get_int(key, slot));
        }
    }
    if (auto path = kv.get("rewards")) c.rewards = RewardTable::load(*path);

    if (auto unused = kv.unused_keys(); !unused.empty()) throw Error("unknown scenario key '" + unused.front() + "'");
    c.validate();
    return c;
}

} // namespace

int ScenarioConfig::duration(Side side, ActionId action) const {
    if (side == Side::Red) return red_durations.at(action);
    return blue_durations.at(action);
}

void ScenarioConfig::validate() const {
    bounds.validate();
    if (steps <= 0) throw Error("steps must be positive");
    if (phases.phase2a_start < 0 || phases.phase2a_start > phases.phase2b_start || phases.phase2b_start > steps)
        throw Error("phase boundaries must satisfy 0 <= phase2a <= phase2b <= steps");
    check_probability(exploit_prob_scanned, "exploit_prob_scanned");
    check_probability(exploit_prob_unscanned, "exploit_prob_unscanned");
    check_probability(escalate_prob, "escalate_prob");
    check_probability(phishing_prob, "phishing_prob");
    check_probability(compromised_service_spawn_prob, "compromised_service_spawn_prob");
    check_probability(decoy_trip_prob, "decoy_trip_prob");
    check_probability(aggressive_detect_prob, "aggressive_detect_prob");
    check_probability(stealth_detect_prob, "stealth_detect_prob");
    check_probability(green_local_work_prob, "green_local_work_prob");
    for (int d : red_durations)
        if (d <= 0) throw Error("action durations must be positive");
    for (int d : blue_durations)
        if (d <= 0) throw Error("action durations must be positive");
}

const ScenarioConfig& ScenarioConfig::defaults() {
    static const ScenarioConfig config =
        apply(builtin(), KeyValueConfig::parse(embedded_file("scenario.cfg"), "data/scenario.cfg"));
    return config;
}

ScenarioConfig ScenarioConfig::parse(std::string_view text, std::string_view origin) {
    return apply(defaults(), KeyValueConfig::parse(text, origin));
}

ScenarioConfig ScenarioConfig::load(const std::string& path) { return parse(read_file(path), path); }

} // namespace cyberevo::sim
