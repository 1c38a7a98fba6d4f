import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_force_fronts

from moea_lab.ranking import fast_nondominated_sort, nondominated_ranks

values = st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=40)


class TestExamples:
    def test_lotz_example(self):
        a, b, c, d = (2, 3), (2, 1), (1, 4), (0, 2)
        partition = fast_nondominated_sort([a, b, c, d])
        assert partition.as_sets() == [{0, 2}, {1, 3}]
        np.testing.assert_array_equal(partition.rank_of, [1, 2, 1, 2])

    def test_one_min_max_single_front(self):
        n = 6
        k = np.array([0, 3, 3, 6, 1])
        assert len(fast_nondominated_sort(np.stack([k, n - k], axis=1))) == 1

    def test_singleton(self):
        assert fast_nondominated_sort([(4, 1)]).as_sets() == [{0}]

    def test_chain(self):
        assert fast_nondominated_sort([(0, 0), (1, 1), (2, 2)]).as_sets() == [{2}, {1}, {0}]

    def test_empty(self):
        with pytest.raises(ValueError):
            fast_nondominated_sort(np.empty((0, 2)))
        with pytest.raises(ValueError):
            nondominated_ranks(np.empty((0, 2)))


class TestProperties:
    @given(values)
    def test_matches_recursive_definition(self, vals):
        assert fast_nondominated_sort(vals).as_sets() == brute_force_fronts(vals)

    @given(values)
    def test_sweep_matches_counting(self, vals):
        np.testing.assert_array_equal(nondominated_ranks(vals), fast_nondominated_sort(vals).rank_of)

    @settings(max_examples=50)
    @given(values, st.randoms(use_true_random=False))
    def test_permutation_invariant(self, vals, random):
        perm = list(range(len(vals)))
        random.shuffle(perm)
        ranks = fast_nondominated_sort(vals).rank_of
        shuffled = fast_nondominated_sort([vals[i] for i in perm]).rank_of
        np.testing.assert_array_equal(shuffled, ranks[perm])

    @given(values)
    def test_fronts_partition_and_order(self, vals):
        partition = fast_nondominated_sort(vals)
        members = np.concatenate(partition.fronts)
        assert sorted(members) == list(range(len(vals)))
        for r, front in enumerate(partition.fronts[1:], start=2):
            better = partition.fronts[r - 2]
            for i in front:
                assert any(vals[j][0] >= vals[i][0] and vals[j][1] >= vals[i][1] and vals[j] != vals[i] for j in better)
