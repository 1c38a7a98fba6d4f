import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import lotz_literal, one_min_max_literal

from moea_lab.benchmarks import (
    Problem,
    ProblemKind,
    evaluate,
    evaluate_many,
    is_pareto_optimal,
    pareto_front,
    pareto_optimal_mask,
)
from moea_lab.core import parse_bitstring

OMM, LOTZ = ProblemKind.ONE_MIN_MAX, ProblemKind.LOTZ
bits = st.lists(st.integers(0, 1), min_size=1, max_size=40)


class TestEvaluate:
    @pytest.mark.parametrize(
        "kind, x, expected",
        [(OMM, "10110", (2, 3)), (LOTZ, "11010", (2, 1)), (LOTZ, "00000", (0, 5)), (LOTZ, "11111", (5, 0))],
    )
    def test_examples(self, kind, x, expected):
        assert evaluate(Problem(kind, len(x)), parse_bitstring(x)) == expected

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(Problem(OMM, 4), parse_bitstring("101"))

    @given(bits)
    def test_one_min_max_matches_literal(self, x):
        assert tuple(evaluate(Problem(OMM, len(x)), x)) == one_min_max_literal(x)

    @given(bits)
    def test_lotz_matches_product_sums(self, x):
        assert tuple(evaluate(Problem(LOTZ, len(x)), x)) == lotz_literal(x)

    def test_batch_agrees_with_single(self, np_rng):
        pop = np_rng.integers(0, 2, size=(200, 12), dtype=np.uint8)
        pop[:5] = 0
        pop[5:10] = 1
        for kind in ProblemKind:
            problem = Problem(kind, 12)
            batch = evaluate_many(problem, pop)
            assert batch.dtype == np.int64
            assert [tuple(r) for r in batch] == [tuple(evaluate(problem, x)) for x in pop]


class TestFront:
    def test_examples(self):
        assert pareto_front(Problem(OMM, 2)) == {(0, 2), (1, 1), (2, 0)}
        assert pareto_front(Problem(LOTZ, 1)) == {(0, 1), (1, 0)}
        assert len(pareto_front(Problem(LOTZ, 5))) == 6

    @given(bits)
    def test_one_min_max_always_optimal(self, x):
        assert is_pareto_optimal(Problem(OMM, len(x)), x)

    @pytest.mark.parametrize("x, expected", [("11000", True), ("10100", False), ("00000", True)])
    def test_lotz_optimality(self, x, expected):
        assert is_pareto_optimal(Problem(LOTZ, 5), parse_bitstring(x)) is expected

    @given(bits)
    def test_lotz_optimal_iff_sorted_descending(self, x):
        k = sum(x)
        expected = list(x) == [1] * k + [0] * (len(x) - k)
        assert is_pareto_optimal(Problem(LOTZ, len(x)), x) is expected

    def test_mask(self):
        mask = pareto_optimal_mask(Problem(LOTZ, 5), np.array([[2, 3], [1, 1], [5, 0]]))
        np.testing.assert_array_equal(mask, [True, False, True])


class TestProblem:
    def test_invalid_size(self):
        with pytest.raises(ValueError):
            Problem(OMM, 0)

    @pytest.mark.parametrize("alias", ["OneMinMax", "omm", "LOTZ", "LeadingOnesTrailingZeroes"])
    def test_parse(self, alias):
        assert ProblemKind.parse(alias) in ProblemKind
