"""
synth.py — exact synthesis of orthogonal matrices over Z[1/√2] into generator words.

The column phase clears denominators with two-level Hadamards, one column at a
time from the last; the permutation phase then sorts the remaining signed
permutation. Generators are recorded in the order they are applied to the
working matrix B, so with W_m···W_1·A = I the returned word W_1…W_m denotes A.

Usage:
    w = exact_synthesize(A)            # Word with [[w]] == A
    pw = synthesize_even(A)            # PWord, only for even parities
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from rcch.errors import EntriesNotInRing, InternalProgressFailure, NotOrthogonal, OddParity
from rcch.ring import ONE, RingElem, RingMatrix, lde_vector
from rcch.words import (
    Gen,
    HGen,
    Neg,
    PairedGen,
    PWord,
    Word,
    XGen,
    apply_gen_rows,
    pair_gens,
    pair_sign_after_swap,
)

logger = logging.getLogger(__name__)

TraceStep = Tuple[int, int, int]  # (column, lde before, lde after)


def _check_input(A: RingMatrix) -> None:
    if not all(isinstance(e, RingElem) for e in A.entries.flat):
        raise EntriesNotInRing("every entry must be an element of Z[1/√2]")
    if not A.is_square():
        raise NotOrthogonal(f"matrix is {A.n_rows}x{A.n_cols}, not square")
    if not A.is_orthogonal():
        raise NotOrthogonal("A·Aᵀ ≠ I")


def _odd_rows(column: np.ndarray, k: int) -> List[Tuple[int, Tuple[int, int]]]:
    """Rows whose entry, scaled by √2^k, is 1 or 1+√2 mod 2."""
    out = []
    for i, e in enumerate(column):
        x = e.scale_sqrt2(k)
        if x.k == 0 and x.a % 2:
            out.append((i, x.residue()))
    return out


def _column_phase(B: np.ndarray, emitted: List[Gen], trace: Optional[List[TraceStep]]) -> None:
    n = B.shape[0]
    for j in range(n - 1, -1, -1):
        k = lde_vector(B[:, j])
        while k > 0:
            # pair every odd row at this level; each H halves a residue pair
            while True:
                odd = _odd_rows(B[:, j], k)
                if not odd:
                    break
                i1, cls = odd[0]
                partner = next((i for i, c in odd[1:] if c == cls), None)
                if partner is None:
                    raise InternalProgressFailure(
                        f"column {j}: row {i1} has no partner in residue class {cls} at lde {k}"
                    )
                g = HGen(i1, partner)
                apply_gen_rows(B, g)
                emitted.append(g)
            new_k = lde_vector(B[:, j])
            if new_k >= k:
                raise InternalProgressFailure(f"column {j}: lde stuck at {k}")
            logger.debug(f"column {j}: lde {k} -> {new_k}")
            if trace is not None:
                trace.append((j, k, new_k))
            k = new_k


def _permutation_phase(B: np.ndarray, emitted: List[Gen]) -> None:
    n = B.shape[0]
    for j in range(n - 1, -1, -1):
        hits = [i for i in range(n) if not B[i, j].is_zero()]
        if len(hits) != 1:
            raise InternalProgressFailure(f"column {j} is not a signed unit vector after the column phase")
        a = hits[0]
        if B[a, j] != ONE:
            g = Neg(a)
            apply_gen_rows(B, g)
            emitted.append(g)
        if a != j:
            g = XGen(a, j)
            apply_gen_rows(B, g)
            emitted.append(g)


def _synthesize(A: RingMatrix, trace: Optional[List[TraceStep]] = None) -> List[Gen]:
    _check_input(A)
    B = np.array(A.entries, dtype=object, copy=True)
    emitted: List[Gen] = []
    _column_phase(B, emitted, trace)
    _permutation_phase(B, emitted)
    return emitted


def exact_synthesize(A: RingMatrix) -> Word:
    gens = _synthesize(A)
    logger.debug(f"synthesized {A.n_rows}x{A.n_rows} matrix into {len(gens)} generators")
    return Word(A.n_rows, gens)


def column_phase_trace(A: RingMatrix) -> List[TraceStep]:
    trace: List[TraceStep] = []
    _synthesize(A, trace)
    return trace


def synthesize_even(A: RingMatrix) -> PWord:
    """Paired word for A; the H block and the sign/swap block are paired separately."""
    gens = _synthesize(A)
    h_block = [g for g in gens if isinstance(g, HGen)]
    rest = [g for g in gens if not isinstance(g, HGen)]
    if len(h_block) % 2 or len(rest) % 2:
        raise OddParity(f"parities ({len(h_block) % 2}, {len(rest) % 2}) are not both even")
    pgens: List[PairedGen] = []
    for block in (h_block, rest):
        for g1, g2 in zip(block[0::2], block[1::2]):
            if isinstance(g1, XGen) and isinstance(g2, Neg):
                pgens.append(pair_sign_after_swap(g1, g2))
            else:
                pgens.append(pair_gens(g1, g2))
    return PWord(A.n_rows, pgens)
