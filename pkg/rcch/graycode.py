"""
graycode.py — the n-bit reflected Gray code and its inverse.

Bitstrings are written with the top wire (qubit 0) as the leftmost character,
so gray(n, k) read as a binary number is also the circuit basis-state index.

Usage:
    gray(3, 4)          # "110"
    gray_inv(3, "110")  # 4
    changed_bit(2, 0)   # 1
"""

from __future__ import annotations

from typing import List, Tuple

from rcch.errors import NoSingleFlip, OutOfRange


def to_gray_code(k: int) -> int:
    return (k >> 1) ^ k


def from_gray_code(g: int) -> int:
    mask = g >> 1
    while mask:
        g ^= mask
        mask >>= 1
    return g


def gray(n: int, k: int) -> str:
    """G_n(k): 0G_{n-1}(k) below 2^{n-1}, 1G_{n-1}(2^n-1-k) above."""
    if n < 0 or not 0 <= k < (1 << n):
        raise OutOfRange(f"gray({n}, {k}): index outside 0..{(1 << n) - 1}")
    if n == 0:
        return ""
    return format(to_gray_code(k), f"0{n}b")


def gray_inv(n: int, bits: str) -> int:
    if len(bits) != n or any(c not in "01" for c in bits):
        raise OutOfRange(f"gray_inv({n}, {bits!r}): expected {n} binary digits")
    if n == 0:
        return 0
    return from_gray_code(int(bits, 2))


def gray_state(n: int, k: int) -> int:
    """Circuit basis state labelled by word index k."""
    if not 0 <= k < (1 << n):
        raise OutOfRange(f"gray_state({n}, {k}): index outside 0..{(1 << n) - 1}")
    return to_gray_code(k)


def gray_index(n: int, state: int) -> int:
    """Word index of circuit basis state `state`."""
    if not 0 <= state < (1 << n):
        raise OutOfRange(f"gray_index({n}, {state}): state outside 0..{(1 << n) - 1}")
    return from_gray_code(state)


def changed_bit(n: int, a: int) -> int:
    """Position (0 = leftmost) where gray(n, a) and gray(n, a+1) differ."""
    if not 0 <= a < (1 << n) - 1:
        raise OutOfRange(f"changed_bit({n}, {a}): need 0 <= a < {(1 << n) - 1}")
    return flipped_position(n, gray(n, a), gray(n, a + 1))


def flipped_position(n: int, u: str, v: str) -> int:
    diff = [i for i in range(n) if u[i] != v[i]]
    if len(diff) != 1:
        raise NoSingleFlip(f"{u} and {v} differ in {len(diff)} positions")
    return diff[0]


def single_flip(n: int, a: int, b: int) -> int | None:
    """Wire where the Gray codes of word indices a, b differ, if exactly one."""
    x = to_gray_code(a) ^ to_gray_code(b)
    if x == 0 or x & (x - 1):
        return None
    return n - x.bit_length()


def gray_table(n: int) -> List[Tuple[int, str]]:
    return [(k, gray(n, k)) for k in range(1 << n)]
