"""Experiment specs, seeded run dispatch, statistics, CSV output and figures."""

from moea_lab.harness.runner import ExperimentResult, execute, run_experiment, write_outputs
from moea_lab.harness.spec import ExperimentKind, ExperimentSpec, PopulationRule, load_spec, parse_spec
from moea_lab.harness.stats import QUARTILE_RULE, Summary, aggregate

__all__ = [
    "ExperimentKind",
    "ExperimentResult",
    "ExperimentSpec",
    "PopulationRule",
    "QUARTILE_RULE",
    "Summary",
    "aggregate",
    "execute",
    "load_spec",
    "parse_spec",
    "run_experiment",
    "write_outputs",
]
