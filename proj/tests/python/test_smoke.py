import math

import pytest

import cyberevo


def test_experiment_names():
    names = cyberevo.experiment_names()
    assert len(names) == len(set(names))
    for name in ("GA-B", "ES-R", "GE-C", "GE-LLM-C", "GE-B-OE"):
        assert name in names


def test_reward_lookup():
    assert cyberevo.reward("Phase 2A", "Operational Zone A", "LocalWorkFails") == -10
    assert cyberevo.reward("Phase 1", "Contractor Network", "AccessServiceFails") == -5
    with pytest.raises(cyberevo.Error):
        cyberevo.reward("Phase 3", "HQ Network", "LocalWorkFails")


def test_sleep_episode_scores_zero():
    assert cyberevo.play_episode("sleep", "sleep", seed=3) == (0, 0)
    red, blue = cyberevo.play_episode("fsm", "fsm", seed=3)
    assert red == -blue
    assert blue <= 0


def test_normalize_row():
    probs = cyberevo.normalize_row([2.0, None, 6.0])
    assert probs == pytest.approx([0.25, 0.0, 0.75])
    assert cyberevo.normalize_row([0.0, 0.0, None]) == pytest.approx([0.5, 0.5, 0.0])
    with pytest.raises(cyberevo.Error):
        cyberevo.normalize_row([None, None])


def test_genome_mapping_round_trip():
    found = 0
    for seed in range(50):
        genome = [(seed * 37 + i * 101) % 256 for i in range(120)]
        code = cyberevo.map_genome(genome, cyberevo.Side.red)
        if code is None:
            continue
        found += 1
        assert code.startswith("def select_action_and_target(observation, name):")
        assert cyberevo.parse_program(code, cyberevo.Side.red) == code
    assert found > 0
    assert cyberevo.parse_program("action = Jump", cyberevo.Side.blue) is None
    assert "first_target" not in cyberevo.grammar_text(cyberevo.Side.blue, "TN")


def test_run_trial_is_deterministic():
    spec = cyberevo.ExperimentSpec.from_name("GA-B")
    spec.iterations = 3
    spec.population = 4
    spec.steps = 20
    a = cyberevo.run_trial(spec, 0)
    b = cyberevo.run_trial(spec, 0)
    assert len(a) == 3
    assert a == b
    assert all(r.best <= 0 for r in a)
    assert all(a[i].best <= a[i + 1].best for i in range(len(a) - 1))


def test_run_experiment_and_summarize(tmp_path):
    spec = cyberevo.ExperimentSpec.parse(
        "experiment = GE-LLM-C\ntrials = 2\niterations = 2\npopulation = 4\nsteps = 20\nllm.backend = mock\n"
    )
    assert spec.mock_llm
    path = cyberevo.run_experiment(spec, tmp_path)
    rows = cyberevo.read_trace(path)
    assert len(rows) == 2 * 2 * 2
    for red, blue in zip(rows[0::2], rows[1::2]):
        assert red.side == cyberevo.Side.red
        assert blue.side == cyberevo.Side.blue
        assert math.isclose(red.mean, -blue.mean, abs_tol=1e-9)
    summary = cyberevo.summarize([path])
    assert {(s.side, s.iteration) for s in summary} == {
        (side, it) for side in (cyberevo.Side.red, cyberevo.Side.blue) for it in range(2)
    }
    assert all(s.trials == 2 for s in summary)
    assert (tmp_path / "GE-LLM-C_llm.txt").exists()


def test_bad_spec_is_rejected():
    with pytest.raises(cyberevo.Error):
        cyberevo.ExperimentSpec.from_name("XX-B")
    with pytest.raises(cyberevo.Error):
        cyberevo.ExperimentSpec.parse("experiment = GA-B\npopulaton = 3\n")
