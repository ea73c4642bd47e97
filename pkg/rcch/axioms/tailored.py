"""
tailored.py — the W1/W2 words for an H pair whose Gray codes already sit on a face.

When gray(a), gray(b), gray(c), gray(d) read x0y0z, x1y0z, x0y1z, x1y1z (W1)
or x0y0z, x0y1z, x1y0z, x1y1z (W2), H[a,b] H[c,d] is one multi-controlled H.
Both words spell it out the same way: a ladder of adjacent swaps E(∞) moves
the two flipped wires to the bottom (and, for W1, exchanges them), flip
factors ℰ^{1−x}(−⊕) recolour the controls, the base pair (H[0,1] H[3,2]) sits
in the middle, and the flips and the ladder are undone.

With k = the first flipped wire, ℓ = the number of wires between the two
flipped wires and m = the number below the second one, the ladder in listed
order is

    E_{n−2,0}(∞)                                  (W1 only)
    E_{n−j−3,j+1}(∞) E_{n−j−2,j}(∞)    j = 0 .. m−1
    E_{n−j−2,j}(∞)                     j = m+1 .. m+ℓ

Usage:
    w2 = build_w2(0, 1, 3, 2, 3)
    assert pword_semantics(w2) == word_semantics(Word(8, [HGen(0, 1), HGen(3, 2)]))
"""

import logging
from typing import List, Optional, Tuple

from rcch.circuit import Swap
from rcch.codec import encode_gate, flip_factor, gray_hh_form
from rcch.errors import DimensionTooSmall, FormMismatch
from rcch.graycode import gray
from rcch.words import PHH, PairedGen, PWord

logger = logging.getLogger(__name__)


def _swap(q: int, n: int) -> List[PairedGen]:
    """E_{q,n−q−2}(∞): the swap of wires q and q+1."""
    return encode_gate(Swap(q, q + 1), n)


def _ladder(n: int, ell: int, m: int, exchange: bool) -> List[PairedGen]:
    """The right-hand ladder, listed order; its last factor acts first."""
    out: List[PairedGen] = _swap(n - 2, n) if exchange else []
    for j in range(m):
        out += _swap(n - j - 3, n) + _swap(n - j - 2, n)
    for j in range(m + 1, m + ell + 1):
        out += _swap(n - j - 2, n)
    return out


def _ladder_inverse(n: int, ell: int, m: int, exchange: bool) -> List[PairedGen]:
    out: List[PairedGen] = []
    for j in range(m + ell, m, -1):
        out += _swap(n - j - 2, n)
    for j in range(m - 1, -1, -1):
        out += _swap(n - j - 2, n) + _swap(n - j - 3, n)
    if exchange:
        out += _swap(n - 2, n)
    return out


def _control_bits(n: int, a: int, target: int, dashed: int) -> List[int]:
    """gray(a) without the two flipped wires: the concatenated x, y, z bits."""
    return [int(bit) for w, bit in enumerate(gray(n, a)) if w not in (target, dashed)]


def _assemble(n: int, a: int, target: int, dashed: int) -> PWord:
    first, second = sorted((target, dashed))
    ell = second - first - 1
    m = n - second - 1
    exchange = target < dashed
    bits = _control_bits(n, a, target, dashed)
    # after the ladder, control j sits on wire j; the base pair has white controls,
    # so a control reading 1 gets a NOT on each side
    left_flips: List[PairedGen] = []
    for j in range(n - 3, -1, -1):
        left_flips += flip_factor(1 - bits[j], j, n)
    right_flips: List[PairedGen] = []
    for j in range(n - 2):
        right_flips += flip_factor(1 - bits[j], j, n)
    pgens = (_ladder_inverse(n, ell, m, exchange)
             + left_flips
             + [PHH((0, 1), (3, 2))]
             + right_flips
             + _ladder(n, ell, m, exchange))
    return PWord(1 << n, pgens)


def _face(a: int, b: int, c: int, d: int, n: int) -> Tuple[int, int]:
    if n < 3:
        raise DimensionTooSmall(f"W1/W2 need n >= 3, got {n}")
    form = gray_hh_form(n, a, b, c, d)
    if form is None:
        raise FormMismatch(f"({a},{b},{c},{d}) is in neither Gray face form at n={n}")
    return form


def build_w1(a: int, b: int, c: int, d: int, n: int) -> PWord:
    """W1 with [[W1]] = [[H[a,b] H[c,d]]]; the tuple must read x0y0z, x1y0z, x0y1z, x1y1z."""
    target, dashed = _face(a, b, c, d, n)
    if target > dashed:
        raise FormMismatch(f"({a},{b},{c},{d}) reads x0y0z, x0y1z, x1y0z, x1y1z; use W2")
    w1 = _assemble(n, a, target, dashed)
    logger.debug(f"W1 for ({a},{b},{c},{d}): {len(w1)} paired generators")
    return w1


def build_w2(a: int, b: int, c: int, d: int, n: int) -> PWord:
    """W2 with [[W2]] = [[H[a,b] H[c,d]]]; the tuple must read x0y0z, x0y1z, x1y0z, x1y1z."""
    target, dashed = _face(a, b, c, d, n)
    if target < dashed:
        raise FormMismatch(f"({a},{b},{c},{d}) reads x0y0z, x1y0z, x0y1z, x1y1z; use W1")
    w2 = _assemble(n, a, target, dashed)
    logger.debug(f"W2 for ({a},{b},{c},{d}): {len(w2)} paired generators")
    return w2


def build_w1_w2(a: int, b: int, c: int, d: int, n: int) -> Tuple[Optional[PWord], Optional[PWord]]:
    """(W1, None) or (None, W2), whichever face form the tuple is in."""
    target, dashed = _face(a, b, c, d, n)
    if target < dashed:
        return build_w1(a, b, c, d, n), None
    return None, build_w2(a, b, c, d, n)
