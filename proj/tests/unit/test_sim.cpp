#include "doctest.h"

#include "helpers.hpp"

#include "cyberevo/embedded_data.hpp"

#include <cmath>
#include <map>
#include <set>

using namespace cyberevo;
using namespace cyberevo::sim;
using test_support::play;
using test_support::quiet_config;
using test_support::RandomPolicy;

TEST_CASE("topology generation is deterministic") {
    CHECK(generate_topology(7).serialize() == generate_topology(7).serialize());
    CHECK(generate_topology(7).serialize() != generate_topology(8).serialize());
}

TEST_CASE("topology respects zone bounds for many seeds") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Topology t = generate_topology(seed);
        for (Zone z : kAllZones) {
            int servers = 0, users = 0;
            for (HostId id : t.zone_hosts[index(z)]) (t.hosts[id].server ? servers : users)++;
            if (z == Zone::Internet) {
                CHECK(servers + users == 0);
                continue;
            }
            CHECK(servers >= 1);
            CHECK(servers <= 6);
            CHECK(users >= 3);
            CHECK(users <= 10);
        }
        for (const Host& h : t.hosts) {
            CHECK(h.services.size() >= 1);
            CHECK(h.services.size() <= 5);
            CHECK(std::set<std::uint8_t>(h.services.begin(), h.services.end()).size() == h.services.size());
        }
    }
}

TEST_CASE("topology host count matches an independent recount") {
    const Topology t = generate_topology(7);
    std::size_t expected = 0;
    for (Zone z : kAllZones) expected += static_cast<std::size_t>(t.server_count[index(z)] + t.user_count[index(z)]);
    CHECK(t.hosts.size() == expected);

    // Every host appears in exactly one zone list and its zone field agrees.
    std::map<HostId, int> seen;
    for (Zone z : kAllZones)
        for (HostId id : t.zone_hosts[index(z)]) {
            ++seen[id];
            CHECK(t.hosts[id].zone == z);
        }
    CHECK(seen.size() == t.hosts.size());
    for (const auto& [id, n] : seen) CHECK(n == 1);
}

TEST_CASE("phase schedule matches interval membership") {
    const PhaseBoundaries b{25, 50};
    CHECK(phase_of(0, b) == Phase::Phase1);
    CHECK(phase_of(25, b) == Phase::Phase2A);
    CHECK(phase_of(74, b) == Phase::Phase2B);
    Phase prev = Phase::Phase1;
    for (int step = 0; step < 75; ++step) {
        const Phase expected = step < 25 ? Phase::Phase1 : (step < 50 ? Phase::Phase2A : Phase::Phase2B);
        CHECK(phase_of(step, b) == expected);
        CHECK(static_cast<int>(phase_of(step, b)) >= static_cast<int>(prev));
        prev = phase_of(step, b);
    }
    CHECK_THROWS_AS(phase_of(-1, b), Error);
    CHECK_THROWS_AS(phase_of(75, b), Error);
}

TEST_CASE("reward table lookups") {
    const RewardTable& t = RewardTable::standard();
    CHECK(reward_for({{Zone::OperationalA, EventKind::LocalWorkFails, 1}}, Phase::Phase2A, t).blue == -10);
    const auto r = reward_for({{Zone::ContractorUav, EventKind::AccessServiceFails, 2}}, Phase::Phase1, t);
    CHECK(r.blue == -10);
    CHECK(r.red == 10);
    CHECK(reward_for({}, Phase::Phase2B, t).blue == 0);
    CHECK(reward_for({}, Phase::Phase2B, t).red == 0);
    CHECK(t.at("Phase 2A", "Operational Zone A", "LocalWorkFails") == -10);
    CHECK_THROWS_AS(t.at("Phase 3", "Operational Zone A", "LocalWorkFails"), Error);
    CHECK_THROWS_AS(t.at("Phase 1", "Moon Base", "LocalWorkFails"), Error);
}

TEST_CASE("reward table rejects incomplete or positive tables") {
    CHECK_THROWS_AS(RewardTable::parse("[Phase 1]\nHQ Network 0 -1 -3\n"), Error);
    std::string text(embedded_file("rewards.txt"));
    const auto pos = text.find("-10");
    text.replace(pos, 3, " 10");
    CHECK_THROWS_AS(RewardTable::parse(text), Error);
}

TEST_CASE("scenario config defaults and overrides") {
    const auto& d = ScenarioConfig::defaults();
    CHECK(d.steps == 75);
    CHECK(d.duration(Side::Red, id(RedAction::StealthServiceDiscovery)) == 3);
    CHECK(d.duration(Side::Red, id(RedAction::AggressiveServiceDiscovery)) == 1);
    CHECK(d.duration(Side::Blue, id(BlueAction::Restore)) == 2);
    CHECK(d.exploit_prob_scanned == 0.8);
    const auto c = ScenarioConfig::parse("phishing_prob = 0.5\nduration.Impact = 4\n");
    CHECK(c.phishing_prob == 0.5);
    CHECK(c.duration(Side::Red, id(RedAction::Impact)) == 4);
    CHECK_THROWS_AS(ScenarioConfig::parse("phishing_prob = 1.5\n"), Error);
    CHECK_THROWS_AS(ScenarioConfig::parse("phishng_prob = 0.1\n"), Error);
    CHECK_THROWS_AS(ScenarioConfig::parse("duration.Monitor = 0\n"), Error);
}

TEST_CASE("all-sleep episode earns nothing") {
    for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
        const auto r = run_episode(ScenarioConfig::defaults(), SleepPolicy(Side::Red), SleepPolicy(Side::Blue), seed);
        CHECK(r.steps == 75);
        CHECK(r.blue_reward == 0);
        CHECK(r.red_reward == 0);
    }
}

TEST_CASE("exploit on an undiscovered host fails without side effects") {
    Simulator sim(quiet_config(), 11);
    const auto& known = sim.state().red[0].is_known;
    HostId target = kNoHost;
    for (HostId h = 0; h < known.size(); ++h)
        if (!known[h]) target = h;
    REQUIRE(target != kNoHost);
    const auto before = sim.state();
    JointAction joint;
    joint.red[0] = Decision{id(RedAction::ExploitRemoteService), Target::host(target)};
    // Exploit takes two steps; the second step reports the outcome.
    sim.step(joint);
    const auto result = sim.step({});
    CHECK(result.red[0].success == Success::False);
    const auto& after = sim.state();
    CHECK(after.step == before.step + 2);
    for (HostId h = 0; h < after.hosts.size(); ++h) {
        CHECK(after.hosts[h].red_access == before.hosts[h].red_access);
        CHECK(after.hosts[h].owner == before.hosts[h].owner);
        CHECK(after.hosts[h].connections == 0);
    }
    CHECK(after.red[0].known == before.red[0].known);
}

TEST_CASE("blocking a zone makes its green traffic fail") {
    // Blue agent 4 defends HQ; blocking the contractor zone drops contractor
    // users' requests into HQ.
    Simulator sim(quiet_config(), 5);
    int before_block = 0;
    for (int i = 0; i < 5; ++i)
        for (const auto& e : sim.step({}).events) before_block += e.count;
    CHECK(before_block == 0);

    JointAction block;
    block.blue[4] = Decision{id(BlueAction::BlockTrafficZone), Target::zone(Zone::ContractorUav)};
    auto r = sim.step(block);
    CHECK(r.blue[4].success == Success::True);
    int failures = 0, other = 0;
    for (const auto& e : r.events) (e.zone == Zone::ContractorUav && e.kind == EventKind::AccessServiceFails ? failures : other) += e.count;
    while (!sim.done()) {
        for (const auto& e : sim.step({}).events)
            (e.zone == Zone::ContractorUav && e.kind == EventKind::AccessServiceFails ? failures : other) += e.count;
    }
    CHECK(failures > 0);
    CHECK(other == 0);
}

TEST_CASE("blocking an own zone is a failed no-op") {
    Simulator sim(quiet_config(), 5);
    JointAction joint;
    joint.blue[0] = Decision{id(BlueAction::BlockTrafficZone), Target::zone(Zone::RestrictedA)};
    CHECK(sim.step(joint).blue[0].success == Success::False);
    for (const auto& row : sim.state().blocked)
        for (bool b : row) CHECK_FALSE(b);
}

TEST_CASE("malformed targets are rejected") {
    Simulator sim(quiet_config(), 3);
    JointAction bad_host;
    bad_host.red[0] = Decision{id(RedAction::Impact), Target::host(100000)};
    CHECK_THROWS_AS(sim.step(bad_host), Error);
    JointAction wrong_kind;
    wrong_kind.blue[1] = Decision{id(BlueAction::Analyse), Target::zone(Zone::Admin)};
    CHECK_THROWS_AS(sim.step(wrong_kind), Error);
    JointAction bad_action;
    bad_action.blue[1] = Decision{42, Target::none()};
    CHECK_THROWS_AS(sim.step(bad_action), Error);
}

TEST_CASE("pending actions block new submissions until complete") {
    Simulator sim(quiet_config(), 4);
    const HostId foothold = sim.state().foothold;
    JointAction scan;
    scan.red[0] = Decision{id(RedAction::StealthServiceDiscovery), Target::host(foothold)};
    sim.step(scan);
    CHECK_FALSE(sim.ready(Side::Red, 0));
    JointAction other;
    other.red[0] = Decision{id(RedAction::Impact), Target::host(foothold)};
    CHECK(sim.step(other).red[0].success == Success::Unknown);
    CHECK_FALSE(sim.ready(Side::Red, 0));
    const auto r = sim.step(other);
    CHECK(r.red[0].success == Success::True);
    CHECK(sim.ready(Side::Red, 0));
    CHECK_FALSE(sim.state().hosts[foothold].impacted);
}

TEST_CASE("red attack chain on a discovered server") {
    Simulator sim(quiet_config(), 21);
    const HostId foothold = sim.state().foothold;
    JointAction drs;
    drs.red[0] = Decision{id(RedAction::DiscoverRemoteSystems), Target::host(foothold)};
    auto r = sim.step(drs);
    REQUIRE(r.red[0].success == Success::True);
    CHECK(r.red[0].records().size() == sim.state().red[0].known.size());

    // A restricted zone A server is reachable over the internet.
    const HostId server = sim.state().topology.zone_hosts[index(Zone::RestrictedA)][0];
    REQUIRE(sim.state().red[0].is_known[server]);

    auto run = [&](RedAction a) {
        JointAction j;
        j.red[0] = Decision{id(a), Target::host(server)};
        StepResult res = sim.step(j);
        while (!sim.ready(Side::Red, 0)) res = sim.step({});
        return res;
    };
    run(RedAction::AggressiveServiceDiscovery);
    CHECK((sim.state().hosts[server].scanned_mask & 1u) != 0);
    StepResult res;
    for (int tries = 0; tries < 20 && sim.state().hosts[server].red_access == Access::None; ++tries)
        res = run(RedAction::ExploitRemoteService);
    REQUIRE(sim.state().hosts[server].red_access == Access::User);
    CHECK(sim.state().zone_owner[index(Zone::RestrictedA)] == 0);
    for (int tries = 0; tries < 20 && sim.state().hosts[server].red_access != Access::Root; ++tries)
        run(RedAction::PrivilegeEscalate);
    REQUIRE(sim.state().hosts[server].red_access == Access::Root);
    CHECK(sim.state().compromise(server) == Compromise::Root);
    res = run(RedAction::Impact);
    CHECK(res.red[0].success == Success::True);
    CHECK(sim.state().hosts[server].impacted);
    bool charged = false;
    for (const auto& e : res.events)
        if (e.zone == Zone::RestrictedA && e.kind == EventKind::RedImpactAccess) charged = true;
    CHECK(charged);
    CHECK(res.rewards.blue < 0);
    CHECK(res.rewards.red == -res.rewards.blue);

    // Blue sees the session only after analysing the host.
    auto blue_view = [&](const StepResult& s) {
        for (const auto& rec : s.blue[0].records())
            if (rec.host == server) return rec.root_sessions;
        return -1;
    };
    CHECK(blue_view(sim.step({})) == 0);
    JointAction analyse;
    analyse.blue[0] = Decision{id(BlueAction::Analyse), Target::host(server)};
    CHECK(blue_view(sim.step(analyse)) == 1);

    JointAction restore;
    restore.blue[0] = Decision{id(BlueAction::Restore), Target::host(server)};
    sim.step(restore);
    CHECK(sim.state().hosts[server].restoring > 0);
    sim.step({});
    CHECK(sim.state().hosts[server].red_access == Access::None);
    CHECK_FALSE(sim.state().hosts[server].impacted);
    CHECK(sim.state().zone_owner[index(Zone::RestrictedA)] == -1);
}

TEST_CASE("decoys trip exploits until discovered") {
    Simulator sim(quiet_config(), 21);
    const HostId foothold = sim.state().foothold;
    const HostId server = sim.state().topology.zone_hosts[index(Zone::RestrictedA)][0];
    JointAction decoy;
    decoy.blue[0] = Decision{id(BlueAction::DeployDecoy), Target::host(server)};
    decoy.red[0] = Decision{id(RedAction::DiscoverRemoteSystems), Target::host(foothold)};
    sim.step(decoy);
    JointAction exploit;
    exploit.red[0] = Decision{id(RedAction::ExploitRemoteService), Target::host(server)};
    sim.step(exploit);
    auto r = sim.step({});
    CHECK(r.red[0].success == Success::False);
    CHECK(sim.state().hosts[server].decoy_alert);
    CHECK(sim.state().hosts[server].red_access == Access::None);
    JointAction dd;
    dd.red[0] = Decision{id(RedAction::DiscoverDeception), Target::host(server)};
    CHECK(sim.step(dd).red[0].success == Success::True);
    sim.step(exploit);
    sim.step({});
    CHECK_FALSE(sim.state().hosts[server].decoy_alert);
}

TEST_CASE("green policy splits local work and access evenly") {
    Simulator sim(ScenarioConfig::defaults(), 8);
    Rng rng(123);
    const HostId src = sim.state().foothold;
    const int n = 10000;
    int local = 0;
    for (int i = 0; i < n; ++i) {
        const GreenChoice c = sim.green_policy(src, rng);
        if (c.action == GreenAction::LocalWork) {
            ++local;
            continue;
        }
        REQUIRE(c.host < sim.state().topology.hosts.size());
        CHECK(c.host != src);
        const auto& services = sim.state().topology.host(c.host).services;
        CHECK(std::find(services.begin(), services.end(), c.service) != services.end());
    }
    const double sigma = std::sqrt(n * 0.25);
    CHECK(std::abs(local - n * 0.5) <= 3 * sigma);

    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) {
        const auto x = sim.green_policy(src, a), y = sim.green_policy(src, b);
        CHECK(x.action == y.action);
        CHECK(x.host == y.host);
    }
}

TEST_CASE("random play preserves scenario invariants") {
    const RandomPolicy red(Side::Red), blue(Side::Blue);
    ScenarioConfig config = ScenarioConfig::defaults();
    config.phishing_prob = 0.2;
    config.compromised_service_spawn_prob = 0.5;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Simulator sim(config, seed);
        const HostId foothold = sim.state().foothold;
        int blue_total = 0, red_total = 0;
        play(sim, red, blue, seed, [&](const Simulator& s, const StepResult& r) {
            const auto& st = s.state();
            CHECK(r.rewards.blue + r.rewards.red == 0);
            blue_total += r.rewards.blue;
            red_total += r.rewards.red;
            CHECK(st.hosts[foothold].red_access != Access::None);
            CHECK(st.hosts[foothold].owner == 0);

            std::array<std::set<int>, kZoneCount> owners;
            for (HostId h = 0; h < st.hosts.size(); ++h)
                if (st.hosts[h].red_access != Access::None) owners[index(st.topology.hosts[h].zone)].insert(st.hosts[h].owner);
            for (const auto& o : owners) CHECK(o.size() <= 1);

            for (const auto& agent : st.red) {
                CHECK(std::is_sorted(agent.discovered_at.begin(), agent.discovered_at.end()));
                CHECK(agent.known.size() == agent.discovered_at.size());
                CHECK(std::set<HostId>(agent.known.begin(), agent.known.end()).size() == agent.known.size());
            }
            for (std::size_t i = 0; i < kRedAgents; ++i) {
                if (!st.red[i].active) continue;
                for (const auto& rec : r.red[i].records()) CHECK(st.red[i].is_known[rec.host]);
            }
            CHECK(r.blue[0].records().size() == st.hosts.size());
        });
        CHECK(blue_total == -red_total);
    }
}

TEST_CASE("episodes are deterministic for a fixed seed") {
    const RandomPolicy red(Side::Red), blue(Side::Blue);
    auto trace = [&](std::uint64_t seed) {
        Simulator sim(ScenarioConfig::defaults(), seed);
        std::vector<int> rewards;
        play(sim, red, blue, seed, [&](const Simulator& s, const StepResult& r) {
            rewards.push_back(r.rewards.blue);
            for (const auto& h : s.state().hosts) rewards.push_back(static_cast<int>(h.red_access) * 7 + h.owner);
        });
        return rewards;
    };
    CHECK(trace(17) == trace(17));
    CHECK(run_episode(ScenarioConfig::defaults(), red, blue, 17).blue_reward ==
          run_episode(ScenarioConfig::defaults(), red, blue, 17).blue_reward);
}

TEST_CASE("controller exceptions become faults for the right side") {
    struct Broken final : TeamPolicy {
        Side side() const noexcept override { return Side::Blue; }
        Decision decide(const Observation&, const AgentView&, Rng&) const override { throw Error("boom"); }
    };
    struct BadTarget final : TeamPolicy {
        Side side() const noexcept override { return Side::Red; }
        Decision decide(const Observation&, const AgentView&, Rng&) const override {
            return {id(RedAction::Impact), Target::zone(Zone::Admin)};
        }
    };
    try {
        run_episode(ScenarioConfig::defaults(), SleepPolicy(Side::Red), Broken{}, 1);
        FAIL("expected a fault");
    } catch (const ControllerFault& f) {
        CHECK(f.side() == Side::Blue);
    }
    try {
        run_episode(ScenarioConfig::defaults(), BadTarget{}, SleepPolicy(Side::Blue), 1);
        FAIL("expected a fault");
    } catch (const ControllerFault& f) {
        CHECK(f.side() == Side::Red);
    }
}
