import math
from dataclasses import replace

import numpy as np
import pytest

from moea_lab.benchmarks import Problem, ProblemKind
from moea_lab.engines import EngineConfig, Mutation, Termination, TieOrder, gsemo_run, nsga2_run, semo_run
from moea_lab.selection import SelectionScheme

OMM, LOTZ = ProblemKind.ONE_MIN_MAX, ProblemKind.LOTZ
VARIANTS = [(s, m) for s in SelectionScheme for m in Mutation]


def _config(kind=OMM, n=8, N=None, scheme=SelectionScheme.TWO_PERMUTATION_TOURNAMENTS, mutation=Mutation.BITWISE, **kw):
    kw.setdefault("max_generations", 2000)
    kw.setdefault("seed", 0)
    return EngineConfig(Problem(kind, n), N or 4 * (n + 1), scheme, mutation, **kw)


def _full_front(n, size):
    pop = np.zeros((size, n), dtype=np.uint8)
    for i in range(size):
        k = i % (n + 1)
        pop[i, :k] = 1
    return pop


class TestValidation:
    @pytest.mark.parametrize(
        "changes",
        [
            {"N": 1},
            {"N": 7},
            {"max_generations": -1},
            {"seed": -1},
            {"seed": 2**64},
            {"initial_population": np.zeros((36, 5), dtype=np.uint8)},
            {"initial_population": np.full((36, 8), 2, dtype=np.uint8)},
        ],
    )
    def test_rejected_before_running(self, changes):
        with pytest.raises(ValueError):
            nsga2_run(replace(_config(), **changes))

    def test_odd_size_fine_without_pairs(self):
        trace = nsga2_run(_config(N=7, scheme=SelectionScheme.UNIFORM_RANDOM, max_generations=3))
        assert trace.population_size == 7


class TestNsga2:
    @pytest.mark.parametrize("scheme, mutation", VARIANTS)
    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_injected_full_front(self, scheme, mutation, kind):
        n = 6
        config = _config(kind, n, 28, scheme, mutation, initial_population=_full_front(n, 28))
        trace = nsga2_run(config)
        assert trace.termination is Termination.FULL_FRONT_COVERED
        assert trace.generations == 0
        assert trace.evaluations == 28
        assert trace.coverage_ratio(0) == 1

    def test_deterministic(self):
        a, b = nsga2_run(_config(seed=42)), nsga2_run(_config(seed=42))
        np.testing.assert_array_equal(a.covered, b.covered)
        np.testing.assert_array_equal(a.final_population, b.final_population)
        assert a.evaluations == b.evaluations

    def test_seed_matters(self):
        a, b = nsga2_run(_config(seed=1)), nsga2_run(_config(seed=2))
        assert not np.array_equal(a.final_population, b.final_population) or a.generations != b.generations

    @pytest.mark.parametrize("scheme, mutation", VARIANTS)
    def test_evaluation_accounting(self, scheme, mutation):
        trace = nsga2_run(_config(LOTZ, 8, 36, scheme, mutation, max_generations=25, stop_on_full_coverage=False))
        assert trace.generations == 25
        assert trace.evaluations == 36 * 26
        assert len(trace.covered) == 26
        assert trace.final_population.shape == (36, 8)

    @pytest.mark.parametrize("scheme, mutation", VARIANTS)
    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_coverage_monotone_at_four_times_front(self, scheme, mutation, kind):
        trace = nsga2_run(_config(kind, 8, None, scheme, mutation, seed=3))
        assert trace.termination is Termination.FULL_FRONT_COVERED
        assert np.all(np.diff(trace.covered) >= 0)
        assert trace.covered[-1] == 9
        assert np.all((trace.covered >= 0) & (trace.covered <= 9))

    def test_stable_tie_order_runs(self):
        trace = nsga2_run(_config(tie_order=TieOrder.STABLE))
        assert trace.termination is Termination.FULL_FRONT_COVERED

    def test_budget_exhausted(self):
        trace = nsga2_run(_config(n=30, N=10, scheme=SelectionScheme.EACH_PARENT_ONCE, max_generations=5))
        assert trace.termination is Termination.BUDGET_EXHAUSTED
        assert trace.generations == 5

    def test_records(self):
        trace = nsga2_run(_config(max_generations=5, stop_on_full_coverage=False))
        records = list(trace.records())
        assert [r.generation for r in records] == list(range(6))

    def test_easy_scheme_median_within_bound(self):
        n = 5
        gens = []
        for seed in range(20):
            trace = nsga2_run(
                _config(OMM, n, 24, SelectionScheme.EACH_PARENT_ONCE, Mutation.ONE_BIT, max_generations=10**5, seed=seed)
            )
            assert trace.termination is Termination.FULL_FRONT_COVERED
            gens.append(trace.generations)
        assert np.median(gens) <= 2 * math.e**2 / (math.e - 1) * n * (math.log(n) + 1)


class TestArchive:
    @pytest.mark.parametrize("run", [semo_run, gsemo_run])
    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_archive_invariants(self, run, kind):
        n = 10
        trace = run(_config(kind, n, 2, max_generations=200_000, seed=5))
        assert trace.termination is Termination.FULL_FRONT_COVERED
        objs = trace.final_population_objectives
        assert len({tuple(v) for v in objs}) == len(objs)
        assert len(objs) <= n + 1
        assert trace.evaluations == trace.generations + 1
        for i, a in enumerate(objs):
            for j, b in enumerate(objs):
                if i != j:
                    assert not (a[0] >= b[0] and a[1] >= b[1])

    def test_archive_grows_one_evaluation_per_iteration(self):
        trace = semo_run(_config(n=20, max_generations=50, stop_on_full_coverage=False))
        assert trace.generations == 50
        assert trace.evaluations == 51

    def test_semo_moves_by_single_flips(self):
        trace = semo_run(_config(OMM, 12, 2, max_generations=200_000, seed=9))
        assert np.all(np.abs(np.diff(trace.covered)) <= 1)

    def test_gsemo_slower_than_nsga2_on_one_min_max(self):
        n = 50
        ns = [nsga2_run(_config(OMM, n, 4 * (n + 1), max_generations=10**6, seed=s)).evaluations for s in range(20)]
        gs = [gsemo_run(_config(OMM, n, 2, max_generations=10**7, seed=s)).evaluations for s in range(20)]
        assert np.median(gs) > np.median(ns)
