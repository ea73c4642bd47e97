"""
normalform.py — canonical forms read off the exact semantics.

  * form (B) for H-free words: sign pairs, then a staircase of signed adjacent
    transpositions;
  * the at-most-one-H-pair form: an optional leading (H H) head over a form (B) tail;
  * the sixteen 1-qubit {H, Z} circuit forms.

Normal forms are functions of the matrix, so two words with the same semantics
always get component-wise identical forms.

Usage:
    nf = nf_hfree(parse_word("dim 4\\nZ[0] Z[2]\\n"))
    nf.sign_pairs          # [(0, 2)]
    nf_1qubit("HZHZ")      # OneQubitNF(family='plain', k=2)
"""

from __future__ import annotations

import logging
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import attrs

from rcch.circuit import Gate, H, Z
from rcch.errors import (
    BadAlphabet,
    ContainsH,
    DimensionMismatch,
    InternalProgressFailure,
    OddParity,
    PreconditionViolated,
    TooManyH,
)
from rcch.ring import ONE, RingMatrix
from rcch.words import (
    Gen,
    HGen,
    Neg,
    PairedGen,
    PWord,
    PZX,
    PZZ,
    Word,
    XGen,
    gen_matrix,
    gens_semantics,
    word_semantics,
)

logger = logging.getLogger(__name__)


def _as_pairs(value: Iterable[Sequence[int]]) -> Tuple[Tuple[int, int], ...]:
    return tuple((int(a), int(b)) for a, b in value)


def _as_ints(value: Iterable[int]) -> Tuple[int, ...]:
    return tuple(int(x) for x in value)


# =================================================
# Form (B)
# =================================================
@attrs.frozen
class NormalFormB:
    dim: int
    sign_pairs: Tuple[Tuple[int, int], ...] = attrs.field(converter=_as_pairs)
    d: Tuple[int, ...] = attrs.field(converter=_as_ints)

    def __attrs_post_init__(self) -> None:
        if len(self.d) != self.dim - 1:
            raise DimensionMismatch(f"form (B) at dim {self.dim} needs {self.dim - 1} staircase starts")
        for i, di in enumerate(self.d, 1):
            if not 0 <= di <= self.dim - i:
                raise PreconditionViolated(f"d_{i} = {di} outside 0..{self.dim - i}")
        chain = [x for pair in self.sign_pairs for x in pair]
        if any(x >= y for x, y in zip(chain, chain[1:])) or any(not 0 <= x < self.dim for x in chain):
            raise PreconditionViolated(f"sign pairs {list(self.sign_pairs)} are not a strictly increasing chain")

    def staircase(self) -> List[Gen]:
        gens: List[Gen] = []
        for i, di in enumerate(self.d, 1):
            for j in range(di, self.dim - i):
                gens.extend((Neg(j), XGen(j, j + 1)))
        return gens

    def to_word(self) -> Word:
        signs: List[Gen] = [Neg(x) for pair in self.sign_pairs for x in pair]
        return Word(self.dim, signs + self.staircase())

    def to_pword(self) -> PWord:
        pgens: List[PairedGen] = [PZZ(a, b) for a, b in self.sign_pairs]
        for i, di in enumerate(self.d, 1):
            pgens.extend(PZX(j, (j, j + 1)) for j in range(di, self.dim - i))
        return PWord(self.dim, pgens)

    def is_identity(self) -> bool:
        return not self.sign_pairs and all(di == self.dim - i for i, di in enumerate(self.d, 1))

    def describe(self) -> str:
        pairs = " ".join(f"({a},{b})" for a, b in self.sign_pairs) or "-"
        return f"form-B dim={self.dim} signs={pairs} d={','.join(str(x) for x in self.d)}"


def _cycle_inverse(m: int, start: int, top: int) -> int:
    """Inverse of the cyclic shift start -> start+1 -> ... -> top -> start."""
    if m == start:
        return top
    if start < m <= top:
        return m - 1
    return m


def _staircase_starts(perm: List[int]) -> List[int]:
    """d_i = π(N−i), then π <- c_i⁻¹ ∘ π, from the highest basis state down."""
    n = len(perm)
    pi = list(perm)
    d: List[int] = []
    for i in range(1, n):
        top = n - i
        di = pi[top]
        if di > top:
            raise InternalProgressFailure(f"stage {i}: basis state {top} maps above itself to {di}")
        d.append(di)
        pi = [_cycle_inverse(x, di, top) for x in pi]
    return d


def _form_b(M: RingMatrix) -> NormalFormB:
    sp = M.signed_permutation()
    if sp is None:
        raise InternalProgressFailure("semantics of an H-free word is not a signed permutation")
    perm, _ = sp
    n = M.n_rows
    d = _staircase_starts(perm)
    stairs = NormalFormB(n, (), d)
    # signs sit to the left of the staircase: S = M·Tᵀ
    S = M @ gens_semantics(stairs.staircase(), n).T
    negative: List[int] = []
    for i in range(n):
        e = S[i, i]
        if e == -ONE:
            negative.append(i)
        elif e != ONE:
            raise InternalProgressFailure(f"residual sign matrix has {e} at ({i},{i})")
    if len(negative) % 2:
        raise OddParity(f"{len(negative)} negated basis states cannot be grouped into sign pairs")
    pairs = list(zip(negative[0::2], negative[1::2]))
    return NormalFormB(n, pairs, d)


def nf_hfree(w: Word) -> NormalFormB:
    if any(isinstance(g, HGen) for g in w.gens):
        raise ContainsH(f"word contains {sum(isinstance(g, HGen) for g in w.gens)} H generators")
    nf = _form_b(word_semantics(w))
    logger.debug(f"form (B) of {len(w)}-generator word: {nf.describe()}")
    return nf


# =================================================
# At most one H pair
# =================================================
def _as_head(value: Optional[Sequence[int]]) -> Optional[Tuple[int, int, int, int]]:
    if value is None:
        return None
    a, b, c, d = value
    return int(a), int(b), int(c), int(d)


def head_allowed(a: int, b: int, c: int, d: int) -> bool:
    if not (a < b and c < d) or {a, b} == {c, d}:
        return False
    if {a, b}.isdisjoint({c, d}):
        return a < c
    return True


@attrs.frozen
class LowHNormalForm:
    head: Optional[Tuple[int, int, int, int]] = attrs.field(converter=_as_head)
    tail: NormalFormB

    def __attrs_post_init__(self) -> None:
        if self.head is not None and not head_allowed(*self.head):
            raise PreconditionViolated(f"head {self.head} violates the ordering conditions")

    @property
    def dim(self) -> int:
        return self.tail.dim

    def head_gens(self) -> List[Gen]:
        if self.head is None:
            return []
        a, b, c, d = self.head
        return [HGen(a, b), HGen(c, d)]

    def to_word(self) -> Word:
        return Word(self.dim, self.head_gens() + list(self.tail.to_word().gens))

    def describe(self) -> str:
        head = "-" if self.head is None else "H[{},{}] H[{},{}]".format(*self.head)
        return f"low-H head={head} tail: {self.tail.describe()}"


def _mixed_rows(M: RingMatrix) -> List[int]:
    rows = []
    for i in range(M.n_rows):
        if any(not e.is_zero() and e != ONE and e != -ONE for e in M.entries[i, :]):
            rows.append(i)
    return rows


def _find_head(M: RingMatrix) -> Tuple[int, int, int, int]:
    n = M.n_rows
    rows = _mixed_rows(M)
    # the H pair touches exactly the rows it leaves mixed
    for size in (3, 4):
        if len(rows) != size:
            continue
        pool = rows if size == 4 else rows + rows
        for a, b, c, d in sorted(set(permutations(pool, 4))):
            if {a, b, c, d} != set(rows) or not head_allowed(a, b, c, d):
                continue
            residue = gen_matrix(HGen(c, d), n) @ (gen_matrix(HGen(a, b), n) @ M)
            if residue.is_signed_permutation():
                return a, b, c, d
    raise InternalProgressFailure(f"no (H H) head clears the mixed rows {rows}")


def nf_low_h(w: Word) -> LowHNormalForm:
    h_count = sum(isinstance(g, HGen) for g in w.gens)
    if h_count > 2:
        raise TooManyH(f"word has {h_count} H generators; at most one pair is allowed")
    if h_count == 1:
        raise OddParity("a single H generator cannot form a pair")
    M = word_semantics(w)
    if M.is_signed_permutation():
        return LowHNormalForm(None, _form_b(M))
    a, b, c, d = _find_head(M)
    residue = gen_matrix(HGen(c, d), w.dim) @ (gen_matrix(HGen(a, b), w.dim) @ M)
    nf = LowHNormalForm((a, b, c, d), _form_b(residue))
    logger.debug(f"low-H form: {nf.describe()}")
    return nf


def _h_pairs(w: Word) -> int:
    h = sum(isinstance(g, HGen) for g in w.gens)
    return (h + 1) // 2


def decide_equiv_low_h(w1: Word, w2: Word) -> bool:
    p1, p2 = _h_pairs(w1), _h_pairs(w2)
    if max(p1, p2) > 2 or min(p1, p2) > 1:
        raise PreconditionViolated(f"H-pair counts ({p1}, {p2}) exceed the decidable class")
    if w1.dim != w2.dim:
        raise DimensionMismatch(f"words of dimension {w1.dim} and {w2.dim}")
    return word_semantics(w1) == word_semantics(w2)


# =================================================
# 1-qubit circuits
# =================================================
@attrs.frozen
class OneQubitNF:
    family: str
    k: int

    def __attrs_post_init__(self) -> None:
        if self.family not in ("plain", "z_prefixed") or not 0 <= self.k <= 7:
            raise PreconditionViolated(f"no 1-qubit form ({self.family}, {self.k})")

    def symbols(self) -> str:
        body = "HZ" * self.k
        return body if self.family == "plain" else "Z" + body

    def gates(self) -> List[Gate]:
        return [H(0) if s == "H" else Z(0) for s in self.symbols()]

    def describe(self) -> str:
        shape = "(HZ)^{}" if self.family == "plain" else "Z(HZ)^{}"
        return f"1-qubit {self.family} k={self.k}: {shape.format(self.k)}"


OneQubitInput = Union[str, Sequence[Union[str, Gate]]]


def _symbol(g: Union[str, Gate]) -> str:
    if g in ("H", "Z"):
        return g  # type: ignore[return-value]
    if isinstance(g, H) and g.q == 0:
        return "H"
    if isinstance(g, Z) and g.q == 0:
        return "Z"
    raise BadAlphabet(f"{g!r} is not a 1-qubit H or Z")


def _cancel(symbols: Iterable[str]) -> List[str]:
    stack: List[str] = []
    for s in symbols:
        if stack and stack[-1] == s:
            stack.pop()
        else:
            stack.append(s)
    return stack


def _drop_periods(symbols: List[str]) -> List[str]:
    # any 16 consecutive letters of an alternating word are (HZ)^8 or (ZH)^8
    return symbols[len(symbols) - len(symbols) % 16:]


def nf_1qubit(gates: OneQubitInput) -> OneQubitNF:
    word = _drop_periods(_cancel(_symbol(g) for g in gates))
    if word and word[-1] == "H":
        word = _drop_periods(_cancel(word + list("HZ" * 8)))
    if not word:
        return OneQubitNF("plain", 0)
    if word[0] == "H":
        return OneQubitNF("plain", len(word) // 2)
    return OneQubitNF("z_prefixed", (len(word) - 1) // 2)
