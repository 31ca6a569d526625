#pragma once

#include "cyberevo/sim/zones.hpp"

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyberevo::sim {

enum class Phase : std::uint8_t { Phase1, Phase2A, Phase2B };
inline constexpr std::size_t kPhaseCount = 3;

std::string_view phase_name(Phase p) noexcept;
Phase parse_phase(std::string_view name);

/// Step indices where Phase2A and Phase2B begin.
struct PhaseBoundaries {
    int phase2a_start = 25;
    int phase2b_start = 50;
};

/// Phase containing `step`. Throws for steps outside [0, total_steps).
Phase phase_of(int step, PhaseBoundaries boundaries, int total_steps = 75);

enum class EventKind : std::uint8_t { LocalWorkFails, AccessServiceFails, RedImpactAccess };
inline constexpr std::size_t kEventKindCount = 3;

std::string_view event_kind_name(EventKind k) noexcept;
EventKind parse_event_kind(std::string_view name);

struct StepEvent {
    Zone zone;
    EventKind kind;
    int count = 1;
};

/// Green-failure and red-impact events raised during one step.
using StepEvents = std::vector<StepEvent>;

/// Penalty per (phase, reward zone, event kind). Values are <= 0 and are
/// applied to blue; red receives the negation.
class RewardTable {
  public:
    /// The shipped table (data/rewards.txt).
    static const RewardTable& standard();
    static RewardTable parse(std::string_view text);
    static RewardTable load(const std::string& path);

    int at(Phase p, RewardZone z, EventKind k) const noexcept {
        return cells_[static_cast<std::size_t>(p)][static_cast<std::size_t>(z)][static_cast<std::size_t>(k)];
    }
    /// String-keyed lookup; throws on an unknown phase, zone or kind.
    int at(std::string_view phase, std::string_view zone, std::string_view kind) const;

    friend bool operator==(const RewardTable&, const RewardTable&) = default;

  private:
    std::array<std::array<std::array<int, kEventKindCount>, kRewardZoneCount>, kPhaseCount> cells_{};
};

struct Rewards {
    int blue = 0;
    int red = 0;
};

/// blue = sum(count * penalty), red = -blue.
Rewards reward_for(const StepEvents& events, Phase phase, const RewardTable& table);

} // namespace cyberevo::sim
