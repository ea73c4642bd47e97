import pytest

from rcch.errors import NoSingleFlip, OutOfRange
from rcch.graycode import (
    changed_bit,
    flipped_position,
    gray,
    gray_index,
    gray_inv,
    gray_state,
    gray_table,
    single_flip,
)


def test_three_bit_table():
    assert [bits for _, bits in gray_table(3)] == ["000", "001", "011", "010", "110", "111", "101", "100"]


def test_zero_width():
    assert gray(0, 0) == ""
    assert gray_inv(0, "") == 0


@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_inverse_and_single_flip(n):
    codes = [gray(n, k) for k in range(1 << n)]
    assert len(set(codes)) == 1 << n
    for k, bits in enumerate(codes):
        assert gray_inv(n, bits) == k
        assert gray_index(n, gray_state(n, k)) == k
    for u, v in zip(codes, codes[1:]):
        assert sum(x != y for x, y in zip(u, v)) == 1


def test_reflection():
    n = 4
    for k in range(1 << (n - 1)):
        assert gray(n, k) == "0" + gray(n - 1, k)
        assert gray(n, (1 << n) - 1 - k) == "1" + gray(n - 1, k)


def test_changed_bit():
    assert changed_bit(2, 0) == 1
    assert changed_bit(3, 3) == 0
    assert changed_bit(3, 5) == 1
    with pytest.raises(OutOfRange):
        changed_bit(3, 7)


def test_single_flip():
    assert single_flip(3, 3, 4) == 0
    assert single_flip(3, 0, 3) == 1
    assert single_flip(3, 0, 2) is None
    assert single_flip(3, 5, 5) is None


def test_flipped_position_requires_one_difference():
    assert flipped_position(3, "010", "011") == 2
    with pytest.raises(NoSingleFlip):
        flipped_position(3, "000", "011")


@pytest.mark.parametrize("n, k", [(3, 8), (3, -1), (-1, 0)])
def test_out_of_range(n, k):
    with pytest.raises(OutOfRange):
        gray(n, k)


def test_gray_inv_rejects_bad_strings():
    with pytest.raises(OutOfRange):
        gray_inv(3, "01")
    with pytest.raises(OutOfRange):
        gray_inv(2, "0a")


def test_popcount_parity_matches_index_parity():
    for n in range(1, 9):
        for k in range(1 << n):
            assert gray(n, k).count("1") % 2 == k % 2
