#include "cyberevo/sim/rewards.hpp"

#include "cyberevo/embedded_data.hpp"
#include "cyberevo/kv_config.hpp"

#include <sstream>

namespace cyberevo::sim {

std::string_view phase_name(Phase p) noexcept {
    switch (p) {
    case Phase::Phase1: return "Phase 1";
    case Phase::Phase2A: return "Phase 2A";
    case Phase::Phase2B: return "Phase 2B";
    }
    return "?";
}

Phase parse_phase(std::string_view name) {
    std::string compact;
    for (char c : name)
        if (c != ' ' && c != '_') compact.push_back(c);
    if (compact == "Phase1" || compact == "1") return Phase::Phase1;
    if (compact == "Phase2A" || compact == "2A") return Phase::Phase2A;
    if (compact == "Phase2B" || compact == "2B") return Phase::Phase2B;
    throw Error("unknown phase '" + std::string(name) + "'");
}

Phase phase_of(int step, PhaseBoundaries b, int total_steps) {
    if (step < 0 || step >= total_steps)
        throw Error("step " + std::to_string(step) + " outside [0, " + std::to_string(total_steps) + ")");
    if (step < b.phase2a_start) return Phase::Phase1;
    if (step < b.phase2b_start) return Phase::Phase2A;
    return Phase::Phase2B;
}

std::string_view event_kind_name(EventKind k) noexcept {
    switch (k) {
    case EventKind::LocalWorkFails: return "LocalWorkFails";
    case EventKind::AccessServiceFails: return "AccessServiceFails";
    case EventKind::RedImpactAccess: return "RedImpactAccess";
    }
    return "?";
}

EventKind parse_event_kind(std::string_view name) {
    for (std::size_t i = 0; i < kEventKindCount; ++i) {
        const auto k = static_cast<EventKind>(i);
        if (event_kind_name(k) == name) return k;
    }
    throw Error("unknown event kind '" + std::string(name) + "'");
}

RewardTable RewardTable::parse(std::string_view text) {
    RewardTable table;
    std::array<std::array<bool, kRewardZoneCount>, kPhaseCount> seen{};
    std::optional<Phase> phase;
    std::size_t line_no = 0;
    for (std::string_view raw : split(text, '\n')) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto where = "rewards:" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw Error(where + ": unterminated phase header");
            phase = parse_phase(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        if (!phase) throw Error(where + ": row before any [Phase] header");

        // Zone names contain spaces; the last three fields are the values.
        std::istringstream ss{std::string(line)};
        std::string tok;
        std::vector<std::string> toks;
        while (ss >> tok) toks.push_back(tok);
        if (toks.size() < 4) throw Error(where + ": expected '<zone> <local> <access> <impact>'");
        std::string zone_text;
        for (std::size_t i = 0; i + 3 < toks.size(); ++i) zone_text += (i ? " " : "") + toks[i];
        const auto zone = parse_reward_zone(zone_text);
        const auto p = static_cast<std::size_t>(*phase);
        const auto zi = static_cast<std::size_t>(zone);
        if (seen[p][zi]) throw Error(where + ": duplicate row for " + zone_text);
        seen[p][zi] = true;
        for (std::size_t k = 0; k < kEventKindCount; ++k) {
            const auto value = parse_int(toks[toks.size() - 3 + k], where);
            if (value > 0) throw Error(where + ": reward penalties must be <= 0");
            table.cells_[p][zi][k] = static_cast<int>(value);
        }
    }
    for (std::size_t p = 0; p < kPhaseCount; ++p)
        for (std::size_t z = 0; z < kRewardZoneCount; ++z)
            if (!seen[p][z])
                throw Error("reward table is missing " + std::string(phase_name(static_cast<Phase>(p))) + " / " +
                            std::string(reward_zone_name(static_cast<RewardZone>(z))));
    return table;
}

RewardTable RewardTable::load(const std::string& path) { return parse(read_file(path)); }

const RewardTable& RewardTable::standard() {
    static const RewardTable table = parse(embedded_file("rewards.txt"));
    return table;
}

int RewardTable::at(std::string_view phase, std::string_view zone, std::string_view kind) const {
    return at(parse_phase(phase), parse_reward_zone(zone), parse_event_kind(kind));
}

Rewards reward_for(const StepEvents& events, Phase phase, const RewardTable& table) {
    Rewards r;
    for (const auto& e : events) r.blue += e.count * table.at(phase, reward_zone_of(e.zone), e.kind);
    r.red = -r.blue;
    return r;
}

} // namespace cyberevo::sim
