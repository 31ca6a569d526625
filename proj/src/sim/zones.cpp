#include "cyberevo/sim/zones.hpp"

#include <string>

namespace cyberevo::sim {

namespace {

constexpr std::array<std::string_view, kZoneCount> kZoneNames{
    "restricted_zone_a", "operational_zone_a", "restricted_zone_b", "operational_zone_b", "public_access_zone",
    "admin_network",     "office_network",     "contractor_network", "internet"};

constexpr std::array<std::string_view, kRewardZoneCount> kRewardZoneNames{
    "HQ Network",         "Contractor Network", "Restricted Zone A", "Operational Zone A",
    "Restricted Zone B", "Operational Zone B", "Internet"};

constexpr std::array<std::array<Zone, 2>, 9> kLinks{{
    {Zone::RestrictedA, Zone::OperationalA},
    {Zone::RestrictedB, Zone::OperationalB},
    {Zone::PublicAccess, Zone::Admin},
    {Zone::PublicAccess, Zone::Office},
    {Zone::Admin, Zone::Office},
    {Zone::Internet, Zone::RestrictedA},
    {Zone::Internet, Zone::RestrictedB},
    {Zone::Internet, Zone::PublicAccess},
    {Zone::Internet, Zone::ContractorUav},
}};

constexpr std::array<Zone, 1> kBlue0{Zone::RestrictedA};
constexpr std::array<Zone, 1> kBlue1{Zone::OperationalA};
constexpr std::array<Zone, 1> kBlue2{Zone::RestrictedB};
constexpr std::array<Zone, 1> kBlue3{Zone::OperationalB};
constexpr std::array<Zone, 3> kBlue4{Zone::PublicAccess, Zone::Admin, Zone::Office};

} // namespace

std::string_view zone_name(Zone z) noexcept { return kZoneNames[index(z)]; }

Zone parse_zone(std::string_view name) {
    for (Zone z : kAllZones)
        if (zone_name(z) == name) return z;
    throw Error("unknown zone '" + std::string(name) + "'");
}

std::string_view network_name(Network n) noexcept {
    switch (n) {
    case Network::DeployedA: return "deployed_network_a";
    case Network::DeployedB: return "deployed_network_b";
    case Network::HQ: return "hq_network";
    case Network::Contractor: return "contractor_network";
    }
    return "?";
}

std::optional<Network> network_of(Zone z) noexcept {
    switch (z) {
    case Zone::RestrictedA:
    case Zone::OperationalA: return Network::DeployedA;
    case Zone::RestrictedB:
    case Zone::OperationalB: return Network::DeployedB;
    case Zone::PublicAccess:
    case Zone::Admin:
    case Zone::Office: return Network::HQ;
    case Zone::ContractorUav: return Network::Contractor;
    case Zone::Internet: return std::nullopt;
    }
    return std::nullopt;
}

RewardZone reward_zone_of(Zone z) noexcept {
    switch (z) {
    case Zone::RestrictedA: return RewardZone::RestrictedZoneA;
    case Zone::OperationalA: return RewardZone::OperationalZoneA;
    case Zone::RestrictedB: return RewardZone::RestrictedZoneB;
    case Zone::OperationalB: return RewardZone::OperationalZoneB;
    case Zone::PublicAccess:
    case Zone::Admin:
    case Zone::Office: return RewardZone::HqNetwork;
    case Zone::ContractorUav: return RewardZone::ContractorNetwork;
    case Zone::Internet: return RewardZone::Internet;
    }
    return RewardZone::Internet;
}

std::string_view reward_zone_name(RewardZone z) noexcept { return kRewardZoneNames[static_cast<std::size_t>(z)]; }

RewardZone parse_reward_zone(std::string_view name) {
    for (std::size_t i = 0; i < kRewardZoneCount; ++i)
        if (kRewardZoneNames[i] == name) return static_cast<RewardZone>(i);
    throw Error("unknown reward zone '" + std::string(name) + "'");
}

bool linked(Zone a, Zone b) noexcept {
    for (const auto& [x, y] : kLinks)
        if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
}

bool routable(Zone from, Zone to) noexcept {
    if (from == to || linked(from, to)) return true;
    return linked(from, Zone::Internet) && linked(to, Zone::Internet);
}

std::span<const Zone> blue_agent_zones(std::size_t blue_agent) {
    switch (blue_agent) {
    case 0: return kBlue0;
    case 1: return kBlue1;
    case 2: return kBlue2;
    case 3: return kBlue3;
    case 4: return kBlue4;
    default: throw Error("blue agent index out of range: " + std::to_string(blue_agent));
    }
}

std::string agent_name(Side side, std::size_t index) {
    return std::string(to_string(side)) + "_agent_" + std::to_string(index);
}

} // namespace cyberevo::sim
