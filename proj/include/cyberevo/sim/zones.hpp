#pragma once

#include "cyberevo/common.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace cyberevo::sim {

/// The nine security zones. Deployed networks A and B have a restricted and an
/// operational zone each, HQ has three zones, the contractor network a single
/// UAV control zone, and the internet joins them.
enum class Zone : std::uint8_t {
    RestrictedA,
    OperationalA,
    RestrictedB,
    OperationalB,
    PublicAccess,
    Admin,
    Office,
    ContractorUav,
    Internet,
};
inline constexpr std::size_t kZoneCount = 9;

inline constexpr std::array<Zone, kZoneCount> kAllZones{
    Zone::RestrictedA, Zone::OperationalA, Zone::RestrictedB, Zone::OperationalB, Zone::PublicAccess,
    Zone::Admin,       Zone::Office,       Zone::ContractorUav, Zone::Internet};

enum class Network : std::uint8_t { DeployedA, DeployedB, HQ, Contractor };
inline constexpr std::size_t kNetworkCount = 4;

/// Reward-table zone granularity: HQ's three zones share one row.
enum class RewardZone : std::uint8_t {
    HqNetwork,
    ContractorNetwork,
    RestrictedZoneA,
    OperationalZoneA,
    RestrictedZoneB,
    OperationalZoneB,
    Internet,
};
inline constexpr std::size_t kRewardZoneCount = 7;

constexpr std::size_t index(Zone z) noexcept { return static_cast<std::size_t>(z); }

std::string_view zone_name(Zone z) noexcept;
Zone parse_zone(std::string_view name);
std::string_view network_name(Network n) noexcept;
std::optional<Network> network_of(Zone z) noexcept;
RewardZone reward_zone_of(Zone z) noexcept;
std::string_view reward_zone_name(RewardZone z) noexcept;
RewardZone parse_reward_zone(std::string_view name);

/// Direct link between two zones (symmetric, irreflexive).
bool linked(Zone a, Zone b) noexcept;

/// Traffic can flow from `from` to `to`: same zone, a direct link, or both
/// zones attached to the internet.
bool routable(Zone from, Zone to) noexcept;

/// Number of red agent slots and blue agents.
inline constexpr std::size_t kRedAgents = 6;
inline constexpr std::size_t kBlueAgents = 5;

/// Zones defended by each blue agent: one per deployed zone, one for all of HQ.
/// The contractor network is undefended.
std::span<const Zone> blue_agent_zones(std::size_t blue_agent);

std::string agent_name(Side side, std::size_t index);

} // namespace cyberevo::sim
