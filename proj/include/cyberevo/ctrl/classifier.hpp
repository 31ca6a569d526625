#pragma once

#include "cyberevo/sim/simulator.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace cyberevo::ctrl {

enum class RedFeature : std::uint8_t { HostScanned, HostUser, HostRoot, FreshDiscovery };
enum class BlueFeature : std::uint8_t { NetSuspicious, NetCompromised, HostAnalysedClean, HostSuspicious, HostCompromised };
inline constexpr std::size_t kRedFeatureCount = 4;
inline constexpr std::size_t kBlueFeatureCount = 5;

std::span<const std::string_view> feature_names(Side side) noexcept;

/// Feature vector for one agent, relative to the host it is focusing on
/// (kNoHost: no focus host, host features are zero).
std::vector<int> extract_features(const sim::Observation& obs, const sim::AgentView& view, sim::HostId focus);

/// Maps feature vectors to FSM state names with a truth table: states are
/// checked in priority order and the last one whose condition holds wins.
class StateClassifier {
  public:
    enum class Op : std::uint8_t { Greater, GreaterEqual, Less, LessEqual, Equal };
    struct Term {
        std::size_t feature = 0;
        Op op = Op::Greater;
        int value = 0;
    };
    struct StateRule {
        std::string state;
        /// Conjunction; empty means `always`.
        std::vector<Term> terms;
    };

    /// Parses `[red]` / `[blue]` sections of `STATE: feature > 0, ...` lines.
    static StateClassifier parse(std::string_view text, Side side);
    /// The shipped classifier (data/classifier.txt).
    static const StateClassifier& standard(Side side);

    Side side() const noexcept { return side_; }
    const std::vector<StateRule>& rules() const noexcept { return rules_; }
    /// Index into rules() of the classified state. Throws when no rule holds.
    std::size_t classify(std::span<const int> features) const;
    const std::string& state_name(std::size_t i) const { return rules_.at(i).state; }

  private:
    Side side_ = Side::Red;
    std::vector<StateRule> rules_;
};

} // namespace cyberevo::ctrl
