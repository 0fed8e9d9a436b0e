import time
from itertools import combinations

import pytest

from backend import config
from backend.counts import (
    EMPTY_PROFILE,
    ConstraintProfile,
    CountTable,
    colored_count,
    colored_table,
    constrained_count,
    convolve,
    partition_count,
    verify_convolution_identity,
)
from backend.exceptions import CapacityError, InvalidProfileError, PreconditionError


def partitions_by_parts(n_max):
    """Coin-change count of partitions, parts 1..n."""
    ways = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            ways[n] += ways[n - part]
    return ways


class TestPartitionCount:
    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (5, 7), (10, 42), (100, 190569292)])
    def test_known_values(self, n, expected):
        assert partition_count(n) == expected

    def test_matches_direct_count_to_200(self):
        assert [partition_count(n) for n in range(201)] == partitions_by_parts(200)

    def test_two_step_bound(self):
        for n in range(2, 1001):
            assert partition_count(n - 1) + partition_count(n - 2) >= partition_count(n)

    def test_doubling_bound_equality_only_at_two(self):
        equal = [n for n in range(2, 1001) if 2 * partition_count(n - 1) == partition_count(n)]
        assert all(2 * partition_count(n - 1) >= partition_count(n) for n in range(2, 1001))
        assert equal == [2]

    def test_negative_n_rejected(self):
        with pytest.raises(PreconditionError):
            partition_count(-1)


class TestColoredCount:
    def test_reference_table(self, reference_table):
        for k, row in reference_table.items():
            assert [colored_count(k, n) for n in range(1, 12)] == row

    @pytest.mark.parametrize("k, n, expected", [(2, 6, 65), (10, 11, 4322110), (3, 0, 1), (1, 5, 7)])
    def test_examples(self, k, n, expected):
        assert colored_count(k, n) == expected

    def test_k1_is_partition_count(self):
        assert [colored_count(1, n) for n in range(60)] == [partition_count(n) for n in range(60)]

    def test_strictly_increasing(self):
        for k in range(2, 7):
            values = colored_table(k, 80).values
            assert all(values[n] < values[n + 1] for n in range(1, 80))

    def test_k_below_one_rejected(self):
        with pytest.raises(PreconditionError):
            colored_count(0, 3)

    def test_capacity_error(self, monkeypatch, fresh_tables):
        monkeypatch.setattr(config, "CAPACITY", 50)
        with pytest.raises(CapacityError):
            colored_count(7, 51)

    def test_table_grows_without_rewriting(self):
        table = colored_table(4, 20)
        head = table.values
        table.extend(40)
        assert table.values[:21] == head
        assert table.limit >= 40

    def test_p2_table_to_5000_is_fast(self):
        start = time.perf_counter()
        CountTable(2).extend(5000)
        assert time.perf_counter() - start < 10


class TestConvolution:
    def test_convolve_small(self):
        assert convolve([1, 1], [1, 2, 3], 2) == [1, 3, 5]

    @pytest.mark.parametrize("k, split, n_max", [(2, 1, 11), (5, 2, 11), (2, 1, 0)])
    def test_examples(self, k, split, n_max):
        assert verify_convolution_identity(k, split, n_max)

    def test_every_split_to_50(self):
        for k in range(2, 7):
            for split in range(1, k):
                assert verify_convolution_identity(k, split, 50)

    def test_split_out_of_range(self):
        with pytest.raises(PreconditionError):
            verify_convolution_identity(3, 3, 5)


class TestConstraintProfile:
    def test_overlap_rejected(self):
        with pytest.raises(InvalidProfileError):
            ConstraintProfile(forbidden_units={1}, required_units={1})

    def test_color_out_of_range(self):
        with pytest.raises(InvalidProfileError):
            constrained_count(2, 3, ConstraintProfile.forbid(3))

    def test_parse_and_describe(self):
        profile = ConstraintProfile.parse("1,2", "3")
        assert profile == ConstraintProfile({1, 2}, {3})
        assert profile.describe() == "no 1_1's and no 1_2's and at least one 1_3's"
        assert EMPTY_PROFILE.describe() == "no condition"

    def test_parse_garbage(self):
        with pytest.raises(InvalidProfileError):
            ConstraintProfile.parse("one")

    def test_hashable_and_equal(self):
        assert hash(ConstraintProfile.forbid(2, 1)) == hash(ConstraintProfile.forbid(1, 2))


class TestConstrainedCount:
    def test_examples(self):
        assert constrained_count(2, 3, ConstraintProfile.forbid(1)) == 5
        assert constrained_count(2, 4, ConstraintProfile.require(1)) == 10

    @pytest.mark.parametrize("k", range(2, 9))
    def test_closed_forms(self, k):
        assert constrained_count(k, 1, ConstraintProfile.forbid(1)) == k - 1
        assert constrained_count(k, 2, ConstraintProfile.forbid(1, 2)) == k * (k - 1) // 2 + 1
        assert constrained_count(k, 2, ConstraintProfile.forbid(1)) == k * (k + 1) // 2

    def test_empty_profile_is_colored_count(self):
        for k in range(1, 6):
            for n in range(30):
                assert constrained_count(k, n) == colored_count(k, n)

    def test_forbid_one_is_first_difference(self):
        for k in range(1, 6):
            for n in range(1, 30):
                expected = colored_count(k, n) - colored_count(k, n - 1)
                assert constrained_count(k, n, ConstraintProfile.forbid(1)) == expected

    def test_zero_with_unit_forbidden_is_one(self):
        assert constrained_count(3, 0, ConstraintProfile.forbid(1, 2, 3)) == 1
        assert constrained_count(3, 0, ConstraintProfile.require(2)) == 0

    def test_required_and_forbidden_split_the_count(self):
        # every partition either has a 1_c or does not
        for k in range(2, 5):
            for colors in combinations(range(1, k + 1), 1):
                for n in range(15):
                    total = constrained_count(k, n, ConstraintProfile.require(*colors))
                    total += constrained_count(k, n, ConstraintProfile.forbid(*colors))
                    assert total == colored_count(k, n)

    def test_at_least_one_unit_is_shift(self):
        for k in range(1, 5):
            for n in range(1, 25):
                assert constrained_count(k, n, ConstraintProfile.require(1)) == colored_count(k, n - 1)
