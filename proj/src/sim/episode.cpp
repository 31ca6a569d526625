#include "cyberevo/sim/episode.hpp"

namespace cyberevo::sim {

namespace {

Decision decide_checked(const Simulator& sim, const TeamPolicy& policy, std::size_t agent, const Observation& obs,
                        Rng& rng) {
    const Side side = policy.side();
    try {
        Decision d = policy.decide(obs, sim.view(side, agent), rng);
        sim.validate(side, agent, d);
        return d;
    } catch (const ControllerFault&) {
        throw;
    } catch (const std::exception& e) {
        throw ControllerFault(side, agent_name(side, agent) + ": " + e.what());
    }
}

} // namespace

EpisodeResult run_episode(const ScenarioConfig& config, const TeamPolicy& red, const TeamPolicy& blue,
                          std::uint64_t seed) {
    if (red.side() != Side::Red || blue.side() != Side::Blue) throw Error("run_episode: policies given for the wrong sides");
    Simulator sim(config, seed);
    Rng red_rng(derive_seed(seed, {2}));
    Rng blue_rng(derive_seed(seed, {3}));
    StepResult last = sim.initial_observations();
    EpisodeResult result;
    while (!sim.done()) {
        JointAction joint;
        for (std::size_t i = 0; i < kRedAgents; ++i)
            if (sim.ready(Side::Red, i)) joint.red[i] = decide_checked(sim, red, i, last.red[i], red_rng);
        for (std::size_t i = 0; i < kBlueAgents; ++i)
            if (sim.ready(Side::Blue, i)) joint.blue[i] = decide_checked(sim, blue, i, last.blue[i], blue_rng);
        last = sim.step(joint);
        result.blue_reward += last.rewards.blue;
        result.red_reward += last.rewards.red;
        ++result.steps;
    }
    return result;
}

} // namespace cyberevo::sim
