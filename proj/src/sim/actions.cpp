#include "cyberevo/sim/actions.hpp"

#include <array>
#include <string>

namespace cyberevo::sim {

namespace {

constexpr std::array<ActionSpec, kRedActionCount> kRed{{
    {"DiscoverRemoteSystems", TargetKind::Host, 1},
    {"AggressiveServiceDiscovery", TargetKind::Host, 1},
    {"StealthServiceDiscovery", TargetKind::Host, 3},
    {"ExploitRemoteService", TargetKind::Host, 2},
    {"PrivilegeEscalate", TargetKind::Host, 2},
    {"DegradeServices", TargetKind::Host, 1},
    {"DiscoverDeception", TargetKind::Host, 1},
    {"Impact", TargetKind::Host, 1},
    {"Withdraw", TargetKind::Host, 1},
    {"Sleep", TargetKind::None, 1},
}};

constexpr std::array<ActionSpec, kBlueActionCount> kBlue{{
    {"AllowTrafficZone", TargetKind::Zone, 1},
    {"BlockTrafficZone", TargetKind::Zone, 1},
    {"Monitor", TargetKind::None, 1},
    {"Analyse", TargetKind::Host, 1},
    {"Restore", TargetKind::Host, 2},
    {"Remove", TargetKind::Host, 1},
    {"DeployDecoy", TargetKind::Host, 1},
    {"Sleep", TargetKind::None, 1},
}};

} // namespace

std::span<const ActionSpec> action_catalog(Side side) noexcept {
    if (side == Side::Red) return kRed;
    return kBlue;
}

std::size_t action_count(Side side) noexcept { return side == Side::Red ? kRedActionCount : kBlueActionCount; }

const ActionSpec& action_spec(Side side, ActionId id) {
    const auto catalog = action_catalog(side);
    if (id >= catalog.size())
        throw Error("action id " + std::to_string(id) + " out of range for " + std::string(to_string(side)));
    return catalog[id];
}

std::optional<ActionId> find_action(Side side, std::string_view name) noexcept {
    const auto catalog = action_catalog(side);
    for (std::size_t i = 0; i < catalog.size(); ++i)
        if (catalog[i].name == name) return static_cast<ActionId>(i);
    return std::nullopt;
}

ActionId sleep_action(Side side) noexcept { return side == Side::Red ? id(RedAction::Sleep) : id(BlueAction::Sleep); }

} // namespace cyberevo::sim
