"""Optional PNG figures rendered from an in-memory experiment result."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from moea_lab.harness.spec import ExperimentKind  # noqa: E402
from moea_lab.metrics import first_generation_both_extremes  # noqa: E402


def _by_n(result):
    groups: dict[int, list] = {}
    for job, trace in zip(result.jobs, result.traces):
        groups.setdefault(job.n, []).append((job, trace))
    return groups


def _runtime(result, ax):
    ns, q1, med, q3 = [], [], [], []
    for n, items in sorted(_by_n(result).items()):
        q = np.percentile([t.evaluations for _, t in items], [25, 50, 75])
        ns.append(n)
        q1.append(q[0])
        med.append(q[1])
        q3.append(q[2])
    med = np.array(med)
    ax.errorbar(ns, med, yerr=[med - q1, np.array(q3) - med], marker="o", capsize=3)
    ax.set_xlabel("n")
    ax.set_ylabel("fitness evaluations")


def _coverage(result, ax):
    for n, items in sorted(_by_n(result).items()):
        ratios = np.array([t.coverage_ratios for _, t in items])
        q1, med, q3 = np.percentile(ratios, [25, 50, 75], axis=0)
        t = np.arange(ratios.shape[1])
        ax.plot(t, med, label=f"n={n}")
        ax.fill_between(t, q1, q3, alpha=0.3)
    ax.set_xlabel("generation")
    ax.set_ylabel("coverage ratio")
    ax.legend()


def _variants(result, ax):
    labels, samples = [], []
    for job, trace in zip(result.jobs, result.traces):
        label = f"{job.scheme.letter}{job.mutation.letter}"
        lo, hi = result.spec.coverage_window(job.n)
        if not labels or labels[-1] != label:
            labels.append(label)
            samples.append([])
        samples[-1].extend(trace.coverage_ratios[lo : hi + 1])
    ax.boxplot(samples, whis=(0, 100))
    ax.set_xticks(range(1, len(labels) + 1), labels)
    ax.set_ylabel("coverage ratio")


def _extremes(result, ax):
    ns, samples = [], []
    for n, items in sorted(_by_n(result).items()):
        values = [g for _, t in items if (g := first_generation_both_extremes(t)) is not None]
        if values:
            ns.append(n)
            samples.append(values)
    if samples:
        ax.boxplot(samples, whis=(0, 100))
        ax.set_xticks(range(1, len(ns) + 1), [str(n) for n in ns])
    ax.set_xlabel("n")
    ax.set_ylabel("first generation with both extremes")


def _snapshot(result, ax):
    for n, items in sorted(_by_n(result).items()):
        objs = items[0][1].final_population_objectives
        ax.scatter(objs[:, 0], objs[:, 1], s=8, label=f"n={n}, run 0")
    ax.set_xlabel("f1")
    ax.set_ylabel("f2")
    ax.legend()


_PAINTERS = {
    ExperimentKind.RUNTIME_CURVE: _runtime,
    ExperimentKind.COVERAGE_TRACE: _coverage,
    ExperimentKind.VARIANT_COMPARISON: _variants,
    ExperimentKind.EXTREMES_DISCOVERY: _extremes,
    ExperimentKind.FRONT_SNAPSHOT: _snapshot,
}


def render(result, out_dir: str | Path) -> Path:
    """Draw one figure for ``result`` into ``out_dir``; returns the PNG path."""
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        _PAINTERS[result.spec.kind](result, ax)
        ax.set_title(f"{result.spec.label} ({result.spec.problem.value})")
        fig.tight_layout()
        path = Path(out_dir) / f"{result.spec.label}.png"
        fig.savefig(path, dpi=120)
    finally:
        plt.close(fig)
    return path
