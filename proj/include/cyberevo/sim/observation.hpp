#pragma once

#include "cyberevo/sim/topology.hpp"

#include <memory>
#include <span>
#include <optional>
#include <string_view>
#include <vector>

namespace cyberevo::sim {

enum class Success : std::uint8_t { True, False, Unknown };

std::string_view success_name(Success s) noexcept;
std::optional<Success> parse_success(std::string_view text) noexcept;

/// Flat per-host counters visible to one observer for the current step.
/// Session counts are red sessions the observer knows about: red sees its own
/// team's sessions, blue only sessions revealed by Analyse.
struct HostRecord {
    HostId host = kNoHost;
    Zone zone = Zone::Internet;
    bool server = false;
    int connections = 0;
    int processes = 0;
    int user_files = 0;
    int root_files = 0;
    int user_sessions = 0;
    int root_sessions = 0;
    /// Red agent slot owning the session, -1 when none.
    int session_owner = -1;
    bool decoy_alert = false;
    /// Red: this agent has scanned the host's services.
    bool scanned = false;
    /// Zone the most recent red traffic into this host came from.
    std::optional<Zone> inbound_zone;
};

struct Observation {
    Success success = Success::Unknown;
    /// Shared because every blue agent sees the same host records.
    std::shared_ptr<const std::vector<HostRecord>> hosts;

    std::span<const HostRecord> records() const noexcept {
        if (!hosts) return {};
        return {hosts->data(), hosts->size()};
    }
};

/// Observation helper functions callable from controller programs.
enum class ObservationFn : std::uint8_t { Connections, FilesUser, FilesRoot, NServers, RootAccessLevels };
inline constexpr std::size_t kObservationFnCount = 5;

std::string_view observation_fn_name(ObservationFn fn) noexcept;
std::optional<ObservationFn> find_observation_fn(std::string_view name) noexcept;

} // namespace cyberevo::sim
