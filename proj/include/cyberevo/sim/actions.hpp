#pragma once

#include "cyberevo/common.hpp"
#include "cyberevo/sim/topology.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace cyberevo::sim {

/// Red actions, in the order the controller grammar lists them.
enum class RedAction : std::uint8_t {
    DiscoverRemoteSystems,
    AggressiveServiceDiscovery,
    StealthServiceDiscovery,
    ExploitRemoteService,
    PrivilegeEscalate,
    DegradeServices,
    DiscoverDeception,
    Impact,
    Withdraw,
    Sleep,
};
inline constexpr std::size_t kRedActionCount = 10;

/// Blue actions, in the order the controller grammar lists them.
enum class BlueAction : std::uint8_t {
    AllowTrafficZone,
    BlockTrafficZone,
    Monitor,
    Analyse,
    Restore,
    Remove,
    DeployDecoy,
    Sleep,
};
inline constexpr std::size_t kBlueActionCount = 8;

enum class GreenAction : std::uint8_t { AccessService, LocalWork };

/// Index into a side's action catalog.
using ActionId = std::uint8_t;

enum class TargetKind : std::uint8_t { None, Host, Zone };

struct ActionSpec {
    std::string_view name;
    TargetKind target;
    int default_duration;
};

std::span<const ActionSpec> action_catalog(Side side) noexcept;
std::size_t action_count(Side side) noexcept;
const ActionSpec& action_spec(Side side, ActionId id);
std::optional<ActionId> find_action(Side side, std::string_view name) noexcept;
ActionId sleep_action(Side side) noexcept;

constexpr ActionId id(RedAction a) noexcept { return static_cast<ActionId>(a); }
constexpr ActionId id(BlueAction a) noexcept { return static_cast<ActionId>(a); }

struct Target {
    TargetKind kind = TargetKind::None;
    std::uint32_t value = 0;

    static constexpr Target none() noexcept { return {}; }
    static constexpr Target host(HostId h) noexcept { return {TargetKind::Host, h}; }
    static constexpr Target zone(Zone z) noexcept { return {TargetKind::Zone, static_cast<std::uint32_t>(z)}; }

    friend bool operator==(const Target&, const Target&) = default;
};

/// What an agent submits for one step.
struct Decision {
    ActionId action = 0;
    Target target;

    friend bool operator==(const Decision&, const Decision&) = default;
};

} // namespace cyberevo::sim
