#pragma once

#include "cyberevo/sim/zones.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cyberevo::sim {

using HostId = std::uint32_t;
inline constexpr HostId kNoHost = static_cast<HostId>(-1);

/// Service kinds a host can expose. Names only matter for reporting.
inline constexpr std::array<std::string_view, 8> kServiceCatalog{"ssh", "http", "https", "smb", "rdp", "ftp", "mysql", "dns"};

struct Host {
    HostId id = 0;
    Zone zone = Zone::Internet;
    bool server = false;
    std::string name;
    /// Indices into kServiceCatalog, distinct, ascending.
    std::vector<std::uint8_t> services;
};

struct TopologyBounds {
    int min_servers = 1;
    int max_servers = 6;
    int min_users = 3;
    int max_users = 10;
    int min_services = 1;
    int max_services = 5;

    void validate() const;
};

/// Randomized CCC4-style network. Hosts are numbered zone by zone, servers
/// before users. The internet zone holds no hosts.
struct Topology {
    std::array<Network, kNetworkCount> networks{Network::DeployedA, Network::DeployedB, Network::HQ, Network::Contractor};
    std::array<Zone, kZoneCount> zones = kAllZones;
    std::vector<Host> hosts;
    std::array<std::vector<HostId>, kZoneCount> zone_hosts;
    std::array<int, kZoneCount> server_count{};
    std::array<int, kZoneCount> user_count{};

    const Host& host(HostId id) const { return hosts.at(id); }
    std::size_t total_services() const noexcept;

    /// Canonical text form; identical topologies serialize identically.
    std::string serialize() const;
};

Topology generate_topology(std::uint64_t seed, const TopologyBounds& bounds = {});

} // namespace cyberevo::sim
