"""Evolutionary red and blue team controllers for a simulated network defense scenario."""

from ._core import (
    Error,
    ExperimentSpec,
    Side,
    SummaryRow,
    TraceRow,
    dampening_report,
    experiment_names,
    grammar_text,
    map_genome,
    normalize_row,
    parse_program,
    play_episode,
    read_trace,
    reward,
    run_experiment,
    run_trial,
    summarize,
    trace_csv,
    trial_seed,
)

__all__ = [
    "Error",
    "ExperimentSpec",
    "Side",
    "SummaryRow",
    "TraceRow",
    "dampening_report",
    "experiment_names",
    "grammar_text",
    "map_genome",
    "normalize_row",
    "parse_program",
    "play_episode",
    "read_trace",
    "reward",
    "run_experiment",
    "run_trial",
    "summarize",
    "trace_csv",
    "trial_seed",
]
