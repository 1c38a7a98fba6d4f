"""Seeded dispatch of engine runs and assembly of raw/summary tables."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from moea_lab.benchmarks import Problem, pareto_front
from moea_lab.core import GENERATOR_NAME
from moea_lab.engines import EngineConfig, Mutation, RunTrace, Termination, gsemo_run, nsga2_run, semo_run
from moea_lab.harness.spec import Algorithm, ExperimentKind, ExperimentSpec
from moea_lab.harness.stats import QUARTILE_RULE, aggregate
from moea_lab.metrics import first_generation_both_extremes, max_uncovered_gap
from moea_lab.selection import SelectionScheme

log = logging.getLogger(__name__)

RUNTIME_HEADER = [
    "experiment", "problem", "n", "N", "scheme", "mutation", "seed", "run",
    "generations", "evaluations", "terminated_full_coverage",
]
COVERAGE_HEADER = [
    "problem", "n", "N", "scheme", "mutation", "seed", "run", "generation",
    "coverage_ratio", "coverage_ratio_float",
]
EXTREMES_HEADER = ["problem", "n", "N", "scheme", "mutation", "seed", "run", "first_generation_both_extremes"]
SNAPSHOT_HEADER = ["problem", "n", "run", "f1", "f2"]
GAPS_HEADER = ["run", "max_uncovered_gap"]
SUMMARY_HEADER = ["experiment", "problem", "n", "N", "scheme", "mutation", "statistic", "value"]

ALL_VARIANTS = [(scheme, mutation) for scheme in SelectionScheme for mutation in Mutation]


@dataclass(frozen=True)
class Job:
    n: int
    N: int
    scheme: SelectionScheme
    mutation: Mutation
    algorithm: Algorithm
    run: int
    seed: int
    budget: int
    stop_on_full_coverage: bool

    def config(self, spec: ExperimentSpec, initial_population=None) -> EngineConfig:
        return EngineConfig(
            problem=Problem(spec.problem, self.n),
            N=self.N,
            scheme=self.scheme,
            mutation=self.mutation,
            max_generations=self.budget,
            seed=self.seed,
            tie_order=spec.tie_order,
            stop_on_full_coverage=self.stop_on_full_coverage,
            initial_population=initial_population,
        )

    @property
    def scheme_label(self) -> str:
        return self.scheme.value if self.algorithm is Algorithm.NSGA2 else self.algorithm.value.upper()

    @property
    def size_label(self) -> str:
        return str(self.N) if self.algorithm is Algorithm.NSGA2 else ""


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    jobs: list[Job]
    traces: list[RunTrace]
    tables: dict[str, tuple[list[str], list[list]]] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def rows(self, filename: str) -> list[list]:
        return self.tables[filename][1]

    def summary(self) -> list[dict]:
        header, rows = self.tables["summary.csv"]
        return [dict(zip(header, row)) for row in rows]

    def statistic(self, name: str, **match) -> list[float]:
        return [
            float(r["value"])
            for r in self.summary()
            if r["statistic"] == name and all(str(r[k]) == str(v) for k, v in match.items())
        ]


def plan(spec: ExperimentSpec) -> list[Job]:
    """Every engine run of ``spec`` in output order; run ``i`` uses ``base_seed + i``."""
    kind = spec.kind
    stop = kind in (ExperimentKind.RUNTIME_CURVE, ExperimentKind.EXTREMES_DISCOVERY)
    if kind is ExperimentKind.VARIANT_COMPARISON:
        variants = ALL_VARIANTS
    else:
        mutation = spec.mutation
        if spec.algorithm is Algorithm.SEMO:
            mutation = Mutation.ONE_BIT
        elif spec.algorithm is Algorithm.GSEMO:
            mutation = Mutation.BITWISE
        variants = [(spec.scheme, mutation)]
    jobs = []
    for n in spec.n_values:
        budget = spec.generations(n)
        for scheme, mutation in variants:
            if kind is ExperimentKind.VARIANT_COMPARISON:
                size = spec.population_size(n, SelectionScheme.TWO_PERMUTATION_TOURNAMENTS)
            elif spec.algorithm is Algorithm.NSGA2:
                size = spec.population_size(n, scheme)
            else:
                size = 1
            for run in range(spec.runs):
                jobs.append(Job(n, size, scheme, mutation, spec.algorithm, run, spec.base_seed + run, budget, stop))
    return jobs


_ENGINES = {Algorithm.NSGA2: nsga2_run, Algorithm.SEMO: semo_run, Algorithm.GSEMO: gsemo_run}


def _run(job: Job, spec: ExperimentSpec, cache: dict | None, initial_population=None) -> RunTrace:
    config = job.config(spec, initial_population)
    key = (job.algorithm, config)
    # an injected population is not part of the key, so never cache those runs
    cache = cache if initial_population is None else None
    if cache is not None and key in cache:
        return cache[key]
    trace = _ENGINES[job.algorithm](config)
    if cache is not None:
        cache[key] = trace
    return trace


def _ratio(covered: int, size: int) -> str:
    r = Fraction(covered, size)
    return f"{r.numerator}/{r.denominator}"


def _summary_rows(spec, job: Job, values, statistic_prefix: str = "") -> list[list]:
    stats = aggregate(values)
    return [
        [spec.label, spec.problem.value, job.n, job.size_label, job.scheme_label, job.mutation.value,
         statistic_prefix + name, _num(value)]
        for name, value in stats._asdict().items()
    ]


def _num(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def _groups(jobs: list[Job], traces: list[RunTrace]):
    """Consecutive runs sharing ``n`` and variant."""
    start = 0
    while start < len(jobs):
        end = start
        head = jobs[start]
        while end < len(jobs) and (jobs[end].n, jobs[end].scheme, jobs[end].mutation) == (
            head.n, head.scheme, head.mutation
        ):
            end += 1
        yield head, jobs[start:end], traces[start:end]
        start = end


def _build_tables(spec: ExperimentSpec, jobs: list[Job], traces: list[RunTrace]) -> tuple[dict, list]:
    tables: dict[str, tuple[list[str], list[list]]] = {}
    summary: list[list] = []
    anomalies: list[str] = []
    problem = spec.problem.value
    kind = spec.kind

    if kind is ExperimentKind.RUNTIME_CURVE:
        rows = []
        for job, trace in zip(jobs, traces):
            done = trace.termination is Termination.FULL_FRONT_COVERED
            if not done:
                anomalies.append(f"n={job.n} run={job.run} seed={job.seed}: budget of {job.budget} exhausted")
            rows.append([spec.label, problem, job.n, job.size_label, job.scheme_label, job.mutation.value,
                         job.seed, job.run, trace.generations, trace.evaluations, str(done).lower()])
        tables["runtime_raw.csv"] = (RUNTIME_HEADER, rows)
        for head, group, group_traces in _groups(jobs, traces):
            summary += _summary_rows(spec, head, [t.evaluations for t in group_traces])
            exhausted = sum(t.termination is Termination.BUDGET_EXHAUSTED for t in group_traces)
            summary.append([spec.label, problem, head.n, head.size_label, head.scheme_label,
                            head.mutation.value, "budget_exhausted", exhausted])

    elif kind in (ExperimentKind.COVERAGE_TRACE, ExperimentKind.VARIANT_COMPARISON):
        rows = []
        for head, group, group_traces in _groups(jobs, traces):
            lo, hi = spec.coverage_window(head.n)
            pooled = []
            # CoverageTrace keeps every generation 1..G, VariantComparison only the window
            first, last = (lo, hi) if kind is ExperimentKind.VARIANT_COMPARISON else (1, None)
            for job, trace in zip(group, group_traces):
                stop = trace.generations if last is None else min(last, trace.generations)
                for t in range(first, stop + 1):
                    covered = int(trace.covered[t])
                    rows.append([problem, job.n, job.N, job.scheme_label, job.mutation.value, job.seed,
                                 job.run, t, _ratio(covered, job.n + 1), repr(covered / (job.n + 1))])
                pooled.extend(trace.coverage_ratios[lo : hi + 1])
            summary += _summary_rows(spec, head, pooled)
        name = "coverage_raw.csv" if kind is ExperimentKind.COVERAGE_TRACE else "variants_raw.csv"
        tables[name] = (COVERAGE_HEADER, rows)

    elif kind is ExperimentKind.EXTREMES_DISCOVERY:
        rows = []
        for head, group, group_traces in _groups(jobs, traces):
            found = []
            for job, trace in zip(group, group_traces):
                first = first_generation_both_extremes(trace)
                rows.append([problem, job.n, job.size_label, job.scheme_label, job.mutation.value, job.seed,
                             job.run, "" if first is None else first])
                if first is not None:
                    found.append(first)
            if found:
                summary += _summary_rows(spec, head, found)
            summary.append([spec.label, problem, head.n, head.size_label, head.scheme_label,
                            head.mutation.value, "not_found", len(group) - len(found)])
        tables["extremes_raw.csv"] = (EXTREMES_HEADER, rows)

    elif kind is ExperimentKind.FRONT_SNAPSHOT:
        rows = []
        for head, group, group_traces in _groups(jobs, traces):
            gaps = []
            front = pareto_front(Problem(spec.problem, head.n))
            off_front = 0
            for job, trace in zip(group, group_traces):
                objs = trace.final_population_objectives
                rows.extend([problem, job.n, job.run, int(a), int(b)] for a, b in objs)
                gaps.append(max_uncovered_gap(objs, front))
                off_front += int(np.sum(objs.sum(axis=1) != head.n))
            tables[f"snapshot_gaps_n{head.n}.csv"] = (GAPS_HEADER, [[j.run, g] for j, g in zip(group, gaps)])
            summary += _summary_rows(spec, head, gaps, statistic_prefix="max_uncovered_gap_")
            summary.append([spec.label, problem, head.n, head.size_label, head.scheme_label,
                            head.mutation.value, "off_front_individuals", off_front])
        tables["snapshot_raw.csv"] = (SNAPSHOT_HEADER, rows)

    tables["summary.csv"] = (SUMMARY_HEADER, summary)
    return tables, anomalies


def execute(
    spec: ExperimentSpec, threads: int = 1, cache: dict | None = None, initial_population=None
) -> ExperimentResult:
    """Run every job of ``spec`` and build the output tables in memory.

    Results are collected by job index, so the tables do not depend on
    ``threads``. ``cache`` (keyed by engine configuration) lets callers share
    identical runs between experiments. ``initial_population`` replaces the
    random start of every run.
    """
    spec.validate()
    if threads < 1:
        raise ValueError("threads must be at least 1")
    jobs = plan(spec)
    log.info("%s: %d runs on %d thread(s)", spec.label, len(jobs), threads)
    if threads == 1:
        traces = [_run(job, spec, cache, initial_population) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            traces = list(pool.map(lambda job: _run(job, spec, cache, initial_population), jobs))
    tables, anomalies = _build_tables(spec, jobs, traces)
    for anomaly in anomalies:
        log.warning("%s: %s", spec.label, anomaly)
    metadata = {
        "experiment": spec.to_dict(),
        "generator": GENERATOR_NAME,
        "seed_rule": "run i uses base_seed + i for every n and variant",
        "quartile_rule": QUARTILE_RULE,
        "crowding_tie_order": spec.tie_order.value,
        "budgets": {str(n): spec.generations(n) for n in spec.n_values},
        "anomalies": anomalies,
        "files": sorted(tables),
    }
    return ExperimentResult(spec, jobs, traces, tables, metadata)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def prepare_output(out: str | Path) -> Path:
    """Create ``out`` and prove it is writable before any run starts."""
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(dir=out, prefix=".probe-"):
            pass
    except OSError as exc:
        raise OSError(f"output directory {out} is not writable: {exc}") from exc
    return out


def write_outputs(result: ExperimentResult, out: str | Path, plot: bool = False) -> list[Path]:
    """Write CSVs, metadata and optional figures; files appear only when all are ready."""
    out = prepare_output(out)
    staging = Path(tempfile.mkdtemp(dir=out, prefix=".staging-"))
    try:
        for name, (header, rows) in result.tables.items():
            (staging / name).write_text(_csv_text(header, rows), encoding="utf-8")
        (staging / "metadata.json").write_text(json.dumps(result.metadata, indent=2) + "\n", encoding="utf-8")
        if plot:
            from moea_lab.harness.plotting import render

            render(result, staging)
        written = []
        for path in sorted(staging.iterdir()):
            target = out / path.name
            os.replace(path, target)
            written.append(target)
        return written
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def run_experiment(spec: ExperimentSpec, out: str | Path, threads: int = 1, plot: bool = False) -> list[Path]:
    """Validate, run and write one experiment; returns the written files."""
    spec.validate()
    prepare_output(out)
    return write_outputs(execute(spec, threads), out, plot=plot)
