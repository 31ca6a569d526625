#include "cyberevo/sim/simulator.hpp"

#include <algorithm>

namespace cyberevo::sim {

namespace {

bool has_session(const HostState& h) noexcept { return h.red_access != Access::None; }

bool offline(const HostState& h) noexcept { return h.degraded || h.impacted || h.restoring > 0; }

void add_event(StepEvents& events, Zone zone, EventKind kind) {
    for (auto& e : events)
        if (e.zone == zone && e.kind == kind) {
            ++e.count;
            return;
        }
    events.push_back({zone, kind, 1});
}

void clear_session(HostState& h) {
    h.red_access = Access::None;
    h.owner = -1;
    h.blue_revealed = false;
}

} // namespace

Compromise NetworkState::compromise(HostId h) const {
    const HostState& s = hosts.at(h);
    if (s.degraded) return Compromise::Degraded;
    switch (s.red_access) {
    case Access::Root:
        return Compromise::Root;
    case Access::User:
        return Compromise::User;
    case Access::None:
        break;
    }
    return Compromise::None;
}

Simulator::Simulator(ScenarioConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(derive_seed(seed, {1})) {
    config_.validate();
    state_.topology = generate_topology(derive_seed(seed, {0}), config_.bounds);
    const auto& topo = state_.topology;
    const std::size_t n = topo.hosts.size();
    state_.hosts.assign(n, HostState{});
    state_.zone_owner.fill(-1);
    state_.phase = phase_of(0, config_.phases, config_.steps);

    for (const Host& h : topo.hosts) {
        service_offset_.push_back(service_index_.size());
        for (std::uint8_t s : h.services) service_index_.emplace_back(h.id, s);
    }

    for (auto& r : state_.red) {
        r.is_known.assign(n, false);
        r.known_decoy.assign(n, false);
    }
    for (std::size_t i = 0; i < kBlueAgents; ++i) {
        auto& b = state_.blue[i];
        b.zones = blue_agent_zones(i);
        for (Zone z : b.zones)
            for (HostId h : topo.zone_hosts[index(z)]) b.watch.push_back(h);
    }

    const auto& contractor = topo.zone_hosts[index(Zone::ContractorUav)];
    if (contractor.empty()) throw Error("contractor network has no hosts for the red foothold");
    const int servers = topo.server_count[index(Zone::ContractorUav)];
    const int users = topo.user_count[index(Zone::ContractorUav)];
    const HostId foothold = users > 0 ? contractor[static_cast<std::size_t>(servers) + rng_.index(static_cast<std::size_t>(users))]
                                      : contractor[rng_.index(contractor.size())];
    state_.foothold = foothold;
    state_.red[0].active = true;
    state_.zone_owner[index(Zone::ContractorUav)] = 0;
    grant_session(foothold, 0);
    state_.hosts[foothold].foothold = true;
    state_.red[0].fresh_discoveries = 0;
}

bool Simulator::ready(Side side, std::size_t agent) const {
    if (side == Side::Red) {
        const auto& r = state_.red.at(agent);
        return r.active && !r.pending;
    }
    return !state_.blue.at(agent).pending;
}

AgentView Simulator::view(Side side, std::size_t agent) const {
    AgentView v;
    v.side = side;
    v.index = agent;
    if (side == Side::Red) {
        const auto& r = state_.red.at(agent);
        v.known_hosts = r.known;
        v.fresh_discoveries = r.fresh_discoveries;
    } else {
        const auto& b = state_.blue.at(agent);
        v.known_hosts = b.watch;
        v.zones = b.zones;
        v.last_analysed = b.last_analysed;
        v.last_analysis_clean = b.last_analysis_clean;
    }
    return v;
}

StepResult Simulator::initial_observations() const { return build_observations({}, state_.phase); }

void Simulator::validate(Side side, std::size_t agent, const Decision& d) const {
    const ActionSpec& spec = action_spec(side, d.action);
    const auto where = agent_name(side, agent) + " " + std::string(spec.name);
    if (d.target.kind != spec.target) throw Error(where + ": target kind does not match the action");
    if (spec.target == TargetKind::Host && d.target.value >= state_.hosts.size())
        throw Error(where + ": unknown host " + std::to_string(d.target.value));
    if (spec.target == TargetKind::Zone && d.target.value >= kZoneCount)
        throw Error(where + ": unknown zone " + std::to_string(d.target.value));
}

StepResult Simulator::step(const JointAction& actions) {
    if (done()) throw Error("episode already finished");
    const Phase phase = phase_of(state_.step, config_.phases, config_.steps);
    state_.phase = phase;

    for (auto& h : state_.hosts) {
        h.connections = h.processes = h.user_files = h.root_files = 0;
        h.decoy_alert = false;
    }
    for (auto& r : state_.red) r.fresh_discoveries = 0;

    start_actions(actions);

    std::array<std::optional<PendingAction>, kBlueAgents> blue_done;
    std::array<std::optional<PendingAction>, kRedAgents> red_done;
    for (std::size_t i = 0; i < kBlueAgents; ++i) {
        auto& p = state_.blue[i].pending;
        if (p && --p->remaining == 0) {
            blue_done[i] = *p;
            p.reset();
        } else {
            state_.blue[i].last_success = Success::Unknown;
        }
    }
    for (std::size_t i = 0; i < kRedAgents; ++i) {
        auto& p = state_.red[i].pending;
        if (p && --p->remaining == 0) {
            red_done[i] = *p;
            p.reset();
        } else {
            state_.red[i].last_success = Success::Unknown;
        }
    }

    StepEvents events;
    for (std::size_t i = 0; i < kBlueAgents; ++i)
        if (blue_done[i]) complete_blue(i, *blue_done[i]);
    reap_agents();
    for (std::size_t i = 0; i < kRedAgents; ++i)
        if (red_done[i] && state_.red[i].active) complete_red(i, *red_done[i], events);
    reap_agents();

    run_green(events);
    run_phishing();
    for (auto& h : state_.hosts)
        if (h.restoring > 0) --h.restoring;

    refresh_watch_lists();
    ++state_.step;
    return build_observations(std::move(events), phase);
}

void Simulator::start_actions(const JointAction& actions) {
    for (std::size_t i = 0; i < kBlueAgents; ++i) {
        auto& b = state_.blue[i];
        const Decision d = actions.blue[i].value_or(Decision{sleep_action(Side::Blue), {}});
        validate(Side::Blue, i, d);
        if (b.pending) continue;
        b.pending = PendingAction{d.action, d.target, config_.duration(Side::Blue, d.action)};
        if (d.action == id(BlueAction::Restore) && owns_zone(i, state_.topology.host(d.target.value).zone)) {
            auto& h = state_.hosts[d.target.value];
            h.restoring = std::max(h.restoring, b.pending->remaining);
        }
    }
    for (std::size_t i = 0; i < kRedAgents; ++i) {
        auto& r = state_.red[i];
        if (!r.active) continue;
        const Decision d = actions.red[i].value_or(Decision{sleep_action(Side::Red), {}});
        validate(Side::Red, i, d);
        if (r.pending) continue;
        r.pending = PendingAction{d.action, d.target, config_.duration(Side::Red, d.action)};
    }
}

bool Simulator::owns_zone(std::size_t blue_agent, Zone z) const {
    const auto zones = state_.blue[blue_agent].zones;
    return std::find(zones.begin(), zones.end(), z) != zones.end();
}

void Simulator::complete_blue(std::size_t agent, const PendingAction& a) {
    auto& b = state_.blue[agent];
    const auto action = static_cast<BlueAction>(a.action);
    Success result = Success::False;

    if (action == BlueAction::Sleep) {
        result = Success::Unknown;
    } else if (action == BlueAction::Monitor) {
        result = Success::True;
    } else if (action == BlueAction::BlockTrafficZone || action == BlueAction::AllowTrafficZone) {
        const auto from = static_cast<Zone>(a.target.value);
        if (!owns_zone(agent, from)) {
            for (Zone z : b.zones) state_.blocked[index(from)][index(z)] = action == BlueAction::BlockTrafficZone;
            result = Success::True;
        }
    } else {
        const HostId id = a.target.value;
        auto& h = state_.hosts[id];
        if (owns_zone(agent, state_.topology.host(id).zone)) {
            switch (action) {
            case BlueAction::Analyse:
                if (has_session(h)) h.blue_revealed = true;
                b.last_analysed = id;
                b.last_analysis_clean = !has_session(h);
                result = Success::True;
                break;
            case BlueAction::DeployDecoy:
                if (!h.decoy) {
                    h.decoy = true;
                    result = Success::True;
                }
                break;
            case BlueAction::Remove:
                if (h.red_access == Access::User && !h.foothold) {
                    clear_session(h);
                    result = Success::True;
                }
                break;
            case BlueAction::Restore:
                if (!h.foothold) clear_session(h);
                h.degraded = h.impacted = h.decoy = false;
                h.inbound_zone.reset();
                result = Success::True;
                break;
            default:
                break;
            }
        }
    }
    b.last_success = result;
}

std::optional<Zone> Simulator::red_source_zone(Zone target_zone) const {
    std::array<bool, kZoneCount> present{};
    for (HostId id = 0; id < state_.hosts.size(); ++id)
        if (has_session(state_.hosts[id])) present[index(state_.topology.hosts[id].zone)] = true;
    if (present[index(target_zone)]) return target_zone;
    for (Zone s : kAllZones)
        if (present[index(s)] && routable(s, target_zone) && !state_.blocked[index(s)][index(target_zone)]) return s;
    return std::nullopt;
}

void Simulator::complete_red(std::size_t agent, const PendingAction& a, StepEvents& events) {
    auto& r = state_.red[agent];
    const auto action = static_cast<RedAction>(a.action);
    if (action == RedAction::Sleep) {
        r.last_success = Success::Unknown;
        return;
    }
    const HostId id = a.target.value;
    if (!r.is_known[id]) {
        r.last_success = Success::False;
        return;
    }
    auto& h = state_.hosts[id];
    const Zone zone = state_.topology.host(id).zone;
    Success result = Success::False;

    const auto touch = [&](Zone from) {
        ++h.connections;
        ++h.processes;
        h.inbound_zone = from;
    };

    switch (action) {
    case RedAction::DiscoverRemoteSystems:
        if (red_source_zone(zone)) {
            for (HostId other : state_.topology.zone_hosts[index(zone)]) discover(agent, other);
            for (Zone z : kAllZones) {
                if (z == zone || !routable(zone, z) || state_.blocked[index(zone)][index(z)]) continue;
                const auto& hosts = state_.topology.zone_hosts[index(z)];
                for (int s = 0; s < state_.topology.server_count[index(z)]; ++s)
                    discover(agent, hosts[static_cast<std::size_t>(s)]);
            }
            result = Success::True;
        }
        break;
    case RedAction::AggressiveServiceDiscovery:
    case RedAction::StealthServiceDiscovery:
        if (auto from = red_source_zone(zone)) {
            h.scanned_mask = static_cast<std::uint8_t>(h.scanned_mask | (1u << agent));
            const double detect = action == RedAction::AggressiveServiceDiscovery ? config_.aggressive_detect_prob
                                                                                   : config_.stealth_detect_prob;
            if (rng_.bernoulli(detect)) touch(*from);
            result = Success::True;
        }
        break;
    case RedAction::ExploitRemoteService: {
        if (r.known_decoy[id] || has_session(h)) break;
        const auto from = red_source_zone(zone);
        if (!from) break;
        if (h.decoy) {
            touch(*from);
            if (rng_.bernoulli(config_.decoy_trip_prob)) h.decoy_alert = true;
            break;
        }
        const bool scanned = (h.scanned_mask >> agent) & 1u;
        if (!rng_.bernoulli(scanned ? config_.exploit_prob_scanned : config_.exploit_prob_unscanned)) {
            ++h.connections;
            h.inbound_zone = *from;
            break;
        }
        int owner = state_.zone_owner[index(zone)];
        if (owner < 0) {
            owner = static_cast<int>(agent);
            state_.zone_owner[index(zone)] = owner;
        }
        grant_session(id, owner);
        touch(*from);
        ++h.user_files;
        add_event(events, zone, EventKind::RedImpactAccess);
        result = Success::True;
        break;
    }
    case RedAction::PrivilegeEscalate:
        if (h.red_access == Access::User && rng_.bernoulli(config_.escalate_prob)) {
            h.red_access = Access::Root;
            ++h.root_files;
            ++h.processes;
            result = Success::True;
        }
        break;
    case RedAction::DegradeServices:
        if (h.red_access == Access::Root) {
            h.degraded = true;
            ++h.processes;
            result = Success::True;
        }
        break;
    case RedAction::DiscoverDeception:
        if (h.decoy) {
            r.known_decoy[id] = true;
            result = Success::True;
        }
        break;
    case RedAction::Impact:
        if (h.red_access == Access::Root) {
            h.impacted = true;
            ++h.processes;
            add_event(events, zone, EventKind::RedImpactAccess);
            result = Success::True;
        }
        break;
    case RedAction::Withdraw:
        if (has_session(h) && h.owner == static_cast<int>(agent) && !h.foothold) {
            clear_session(h);
            result = Success::True;
        }
        break;
    case RedAction::Sleep:
        break;
    }
    r.last_success = result;
}

void Simulator::reap_agents() {
    std::array<std::array<bool, kZoneCount>, kRedAgents> present{};
    std::array<bool, kRedAgents> any{};
    for (HostId id = 0; id < state_.hosts.size(); ++id) {
        const auto& h = state_.hosts[id];
        if (!has_session(h)) continue;
        present[static_cast<std::size_t>(h.owner)][index(state_.topology.hosts[id].zone)] = true;
        any[static_cast<std::size_t>(h.owner)] = true;
    }
    for (Zone z : kAllZones) {
        const int owner = state_.zone_owner[index(z)];
        if (owner >= 0 && !present[static_cast<std::size_t>(owner)][index(z)]) state_.zone_owner[index(z)] = -1;
    }
    for (std::size_t i = 0; i < kRedAgents; ++i) {
        auto& r = state_.red[i];
        if (!r.active || any[i]) continue;
        const auto n = state_.hosts.size();
        r = RedAgentState{};
        r.is_known.assign(n, false);
        r.known_decoy.assign(n, false);
    }
}

void Simulator::grant_session(HostId id, int owner) {
    auto& h = state_.hosts[id];
    h.red_access = Access::User;
    h.owner = owner;
    h.blue_revealed = false;
    discover(static_cast<std::size_t>(owner), id);
}

void Simulator::discover(std::size_t agent, HostId id) {
    auto& r = state_.red[agent];
    if (r.is_known[id]) return;
    r.is_known[id] = true;
    r.known.push_back(id);
    r.discovered_at.push_back(state_.step);
    ++r.fresh_discoveries;
}

void Simulator::spawn(HostId id) {
    auto& h = state_.hosts[id];
    if (has_session(h) || h.decoy) return;
    const Zone zone = state_.topology.host(id).zone;
    int owner = state_.zone_owner[index(zone)];
    if (owner < 0) {
        for (std::size_t i = 1; i < kRedAgents; ++i)
            if (!state_.red[i].active) {
                owner = static_cast<int>(i);
                break;
            }
        if (owner < 0) return;
        state_.red[static_cast<std::size_t>(owner)].active = true;
        state_.zone_owner[index(zone)] = owner;
    }
    grant_session(id, owner);
}

GreenChoice Simulator::green_policy(HostId source, Rng& rng) const {
    if (rng.bernoulli(config_.green_local_work_prob)) return {};
    const std::size_t own = state_.topology.host(source).services.size();
    if (service_index_.size() <= own) return {GreenAction::AccessService, kNoHost, 0};
    std::size_t pick = rng.index(service_index_.size() - own);
    if (pick >= service_offset_[source]) pick += own;
    return {GreenAction::AccessService, service_index_[pick].first, service_index_[pick].second};
}

void Simulator::run_green(StepEvents& events) {
    const auto& topo = state_.topology;
    for (Zone z : kAllZones) {
        const auto& hosts = topo.zone_hosts[index(z)];
        for (std::size_t k = static_cast<std::size_t>(topo.server_count[index(z)]); k < hosts.size(); ++k) {
            const HostId src = hosts[k];
            const GreenChoice choice = green_policy(src, rng_);
            if (choice.action == GreenAction::LocalWork) {
                if (offline(state_.hosts[src])) add_event(events, z, EventKind::LocalWorkFails);
                continue;
            }
            if (choice.host == kNoHost) continue;
            const HostId dst = choice.host;
            const Zone dz = topo.hosts[dst].zone;
            const auto& target = state_.hosts[dst];
            if (offline(target) || (dz != z && state_.blocked[index(z)][index(dz)])) {
                add_event(events, z, EventKind::AccessServiceFails);
                continue;
            }
            if (has_session(target) && rng_.bernoulli(config_.compromised_service_spawn_prob)) spawn(src);
        }
    }
}

void Simulator::run_phishing() {
    const auto& topo = state_.topology;
    for (Zone z : kAllZones) {
        if (z == Zone::Internet || z == Zone::ContractorUav) continue;
        if (!rng_.bernoulli(config_.phishing_prob)) continue;
        const auto servers = static_cast<std::size_t>(topo.server_count[index(z)]);
        const auto users = static_cast<std::size_t>(topo.user_count[index(z)]);
        if (users == 0) continue;
        const HostId h = topo.zone_hosts[index(z)][servers + rng_.index(users)];
        if (state_.hosts[h].restoring == 0) spawn(h);
    }
}

void Simulator::refresh_watch_lists() {
    for (auto& b : state_.blue) {
        std::stable_partition(b.watch.begin(), b.watch.end(), [&](HostId id) {
            const auto& h = state_.hosts[id];
            return h.connections == 0 && h.processes == 0 && !h.decoy_alert;
        });
    }
}

StepResult Simulator::build_observations(StepEvents events, Phase phase) const {
    StepResult out;
    out.rewards = reward_for(events, phase, config_.rewards);
    out.events = std::move(events);
    out.phase = phase;
    const auto& topo = state_.topology;

    const auto base_record = [&](HostId id) {
        const auto& h = state_.hosts[id];
        HostRecord rec;
        rec.host = id;
        rec.zone = topo.hosts[id].zone;
        rec.server = topo.hosts[id].server;
        rec.connections = h.connections;
        rec.processes = h.processes;
        rec.user_files = h.user_files;
        rec.root_files = h.root_files;
        rec.decoy_alert = h.decoy_alert;
        rec.inbound_zone = h.inbound_zone;
        return rec;
    };
    const auto set_sessions = [&](HostRecord& rec, const HostState& h) {
        if (!has_session(h)) return;
        (h.red_access == Access::Root ? rec.root_sessions : rec.user_sessions) = 1;
        rec.session_owner = h.owner;
    };

    for (std::size_t i = 0; i < kRedAgents; ++i) {
        const auto& r = state_.red[i];
        out.red[i].success = r.last_success;
        if (!r.active) continue;
        auto records = std::make_shared<std::vector<HostRecord>>();
        records->reserve(r.known.size());
        for (HostId id : r.known) {
            HostRecord rec = base_record(id);
            set_sessions(rec, state_.hosts[id]);
            rec.scanned = (state_.hosts[id].scanned_mask >> i) & 1u;
            records->push_back(rec);
        }
        out.red[i].hosts = std::move(records);
    }

    auto shared = std::make_shared<std::vector<HostRecord>>();
    shared->reserve(topo.hosts.size());
    for (HostId id = 0; id < topo.hosts.size(); ++id) {
        HostRecord rec = base_record(id);
        if (state_.hosts[id].blue_revealed) set_sessions(rec, state_.hosts[id]);
        shared->push_back(rec);
    }
    for (std::size_t i = 0; i < kBlueAgents; ++i) {
        out.blue[i].success = state_.blue[i].last_success;
        out.blue[i].hosts = shared;
    }
    return out;
}

} // namespace cyberevo::sim
