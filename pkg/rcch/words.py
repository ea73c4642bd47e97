"""
words.py — words over the one/two-level generators G_N and the paired generators P_N.

A word G1 G2 ... Gk denotes the matrix product G1·G2·…·Gk in listed order.
Indices in X[a,b] and H[a,b] are not required to be ordered; H[a,b] carries
+1/√2 on (a,a) and −1/√2 on (b,b).

Text format:
    dim 8
    Z[3] X[0,1] H[3,2]            # Word
    (Z[0] X[2,3]) (H[0,1] H[3,2]) # PWord: each pair in parentheses

Usage:
    w = parse_word("dim 4\\nH[0,1] H[0,1]\\n")
    assert word_semantics(w) == RingMatrix.identity(4)
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import attrs
import numpy as np

from rcch import config
from rcch.errors import DimensionMismatch, IndexOutOfRange, IndicesNotDistinct, OddParity, ParseError
from rcch.ring import INV_SQRT2, ONE, RingMatrix, zeros_array


def _pair(value: Sequence[int]) -> Tuple[int, int]:
    a, b = value
    return int(a), int(b)


# =================================================
# Generators
# =================================================
@attrs.frozen
class Neg:
    """(−1)_[a]"""

    a: int

    def indices(self) -> Tuple[int, ...]:
        return (self.a,)

    def __str__(self) -> str:
        return f"Z[{self.a}]"


@attrs.frozen
class XGen:
    """X_[a,b]: transposition of basis states a and b."""

    a: int
    b: int

    def indices(self) -> Tuple[int, ...]:
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"X[{self.a},{self.b}]"


@attrs.frozen
class HGen:
    """H_[a,b]: Hadamard block on basis states a, b."""

    a: int
    b: int

    def indices(self) -> Tuple[int, ...]:
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"H[{self.a},{self.b}]"


Gen = Union[Neg, XGen, HGen]


def validate_gen(g: Gen, dim: int) -> None:
    for i in g.indices():
        if not 0 <= i < dim:
            raise IndexOutOfRange(f"{g} uses index {i} outside 0..{dim - 1}")
    if not isinstance(g, Neg) and g.a == g.b:
        raise IndicesNotDistinct(f"{g} needs two distinct indices")


def _gen_tuple(value: Iterable[Gen]) -> Tuple[Gen, ...]:
    return tuple(value)


@attrs.frozen
class Word:
    dim: int
    gens: Tuple[Gen, ...] = attrs.field(factory=tuple, converter=_gen_tuple)

    def __attrs_post_init__(self) -> None:
        if self.dim < 1:
            raise IndexOutOfRange(f"word dimension must be positive, got {self.dim}")
        for g in self.gens:
            validate_gen(g, self.dim)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self) -> Iterator[Gen]:
        return iter(self.gens)

    def __add__(self, other: "Word") -> "Word":
        _same_dim(self.dim, other.dim)
        return Word(self.dim, self.gens + other.gens)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.gens) or "ε"


# =================================================
# Paired generators
# =================================================
@attrs.frozen
class PZZ:
    a: int
    c: int

    def parts(self) -> Tuple[Gen, Gen]:
        return Neg(self.a), Neg(self.c)


@attrs.frozen
class PZX:
    a: int
    pair: Tuple[int, int] = attrs.field(converter=_pair)

    def parts(self) -> Tuple[Gen, Gen]:
        return Neg(self.a), XGen(*self.pair)


@attrs.frozen
class PXX:
    first: Tuple[int, int] = attrs.field(converter=_pair)
    second: Tuple[int, int] = attrs.field(converter=_pair)

    def parts(self) -> Tuple[Gen, Gen]:
        return XGen(*self.first), XGen(*self.second)


@attrs.frozen
class PHH:
    first: Tuple[int, int] = attrs.field(converter=_pair)
    second: Tuple[int, int] = attrs.field(converter=_pair)

    def parts(self) -> Tuple[Gen, Gen]:
        return HGen(*self.first), HGen(*self.second)


PairedGen = Union[PZZ, PZX, PXX, PHH]


def pair_gens(g1: Gen, g2: Gen) -> PairedGen:
    """The paired generator whose flattening is g1 g2; only the four P_N shapes exist."""
    if isinstance(g1, Neg) and isinstance(g2, Neg):
        return PZZ(g1.a, g2.a)
    if isinstance(g1, Neg) and isinstance(g2, XGen):
        return PZX(g1.a, (g2.a, g2.b))
    if isinstance(g1, XGen) and isinstance(g2, XGen):
        return PXX((g1.a, g1.b), (g2.a, g2.b))
    if isinstance(g1, HGen) and isinstance(g2, HGen):
        return PHH((g1.a, g1.b), (g2.a, g2.b))
    raise ValueError(f"({g1} {g2}) is not a paired generator")


def pgen_str(p: PairedGen) -> str:
    g1, g2 = p.parts()
    return f"({g1} {g2})"


def _pgen_tuple(value: Iterable[PairedGen]) -> Tuple[PairedGen, ...]:
    return tuple(value)


@attrs.frozen
class PWord:
    dim: int
    pgens: Tuple[PairedGen, ...] = attrs.field(factory=tuple, converter=_pgen_tuple)

    def __attrs_post_init__(self) -> None:
        if self.dim < 1:
            raise IndexOutOfRange(f"word dimension must be positive, got {self.dim}")
        for p in self.pgens:
            for g in p.parts():
                validate_gen(g, self.dim)

    def __len__(self) -> int:
        return len(self.pgens)

    def __iter__(self) -> Iterator[PairedGen]:
        return iter(self.pgens)

    def __add__(self, other: "PWord") -> "PWord":
        _same_dim(self.dim, other.dim)
        return PWord(self.dim, self.pgens + other.pgens)

    def __str__(self) -> str:
        return " ".join(pgen_str(p) for p in self.pgens) or "ε"


def _same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"dimensions {a} and {b} differ")


# =================================================
# Semantics
# =================================================
def apply_gen_rows(arr: np.ndarray, g: Gen) -> None:
    """arr <- [[g]]·arr, in place, as a row operation."""
    if isinstance(g, Neg):
        arr[g.a, :] = -arr[g.a, :]
    elif isinstance(g, XGen):
        arr[[g.a, g.b], :] = arr[[g.b, g.a], :]
    else:
        ra = arr[g.a, :].copy()
        rb = arr[g.b, :].copy()
        arr[g.a, :] = (ra + rb) * INV_SQRT2
        arr[g.b, :] = (ra - rb) * INV_SQRT2


def _identity_array(n: int) -> np.ndarray:
    arr = zeros_array(n)
    for i in range(n):
        arr[i, i] = ONE
    return arr


def gen_matrix(g: Gen, dim: int) -> RingMatrix:
    validate_gen(g, dim)
    arr = _identity_array(dim)
    apply_gen_rows(arr, g)
    return RingMatrix(arr)


def gens_semantics(gens: Sequence[Gen], dim: int) -> RingMatrix:
    arr = _identity_array(dim)
    for g in reversed(gens):
        apply_gen_rows(arr, g)
    return RingMatrix(arr)


def word_semantics(w: Word) -> RingMatrix:
    return gens_semantics(w.gens, w.dim)


def flatten(pw: PWord) -> Word:
    gens: List[Gen] = []
    for p in pw.pgens:
        gens.extend(p.parts())
    return Word(pw.dim, gens)


def pword_semantics(pw: PWord) -> RingMatrix:
    return word_semantics(flatten(pw))


def word_parities(w: Word) -> Tuple[int, int]:
    """(H-parity, ZX-parity)."""
    h = sum(1 for g in w.gens if isinstance(g, HGen))
    return h % 2, (len(w.gens) - h) % 2


def matrix_parities(A: RingMatrix) -> Tuple[int, int]:
    """Parities of any decomposition of A, read off the synthesized word."""
    from rcch.synth import exact_synthesize

    return word_parities(exact_synthesize(A))


# =================================================
# Inverses and pairing
# =================================================
def inverse_word(w: Word) -> Word:
    return Word(w.dim, tuple(reversed(w.gens)))


def _transpose_index(a: int, pair: Tuple[int, int]) -> int:
    c, d = pair
    return d if a == c else c if a == d else a


def inverse_pgen(p: PairedGen) -> PairedGen:
    if isinstance(p, PZZ):
        return PZZ(p.c, p.a)
    if isinstance(p, PZX):
        # X[c,d](−1)[a] = (−1)[τ(a)]X[c,d]
        return PZX(_transpose_index(p.a, p.pair), p.pair)
    return type(p)(p.second, p.first)


def inverse_pword(pw: PWord) -> PWord:
    return PWord(pw.dim, tuple(inverse_pgen(p) for p in reversed(pw.pgens)))


def pair_sign_after_swap(x: XGen, neg: Neg) -> PairedGen:
    """(X[c,d], (−1)[a]) as a single PZX with the same semantics."""
    return PZX(_transpose_index(neg.a, (x.a, x.b)), (x.a, x.b))


def word_to_pword(w: Word) -> PWord:
    """Pair consecutive generators, rewriting (X, Z) pairs into (Z, X) form."""
    if len(w.gens) % 2:
        raise OddParity(f"word of odd length {len(w.gens)} cannot be paired")
    out: List[PairedGen] = []
    for g1, g2 in zip(w.gens[0::2], w.gens[1::2]):
        if isinstance(g1, XGen) and isinstance(g2, Neg):
            out.append(pair_sign_after_swap(g1, g2))
            continue
        try:
            out.append(pair_gens(g1, g2))
        except ValueError:
            raise OddParity(f"({g1} {g2}) mixes an H generator with a sign or swap")
    return PWord(w.dim, out)


# =================================================
# Random words
# =================================================
def random_word(dim: int, length: int, seed: Optional[int] = None, kinds: str = "ZXH") -> Word:
    """`length` generators drawn uniformly from `kinds` ("Z", "X", "H") at dimension `dim`."""
    if dim < 2 and kinds != "Z":
        raise IndexOutOfRange(f"X and H generators need dim >= 2, got {dim}")
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    gens: List[Gen] = []
    for _ in range(length):
        kind = rng.choice(kinds)
        if kind == "Z":
            gens.append(Neg(rng.randrange(dim)))
        else:
            a, b = rng.sample(range(dim), 2)
            gens.append(XGen(a, b) if kind == "X" else HGen(a, b))
    return Word(dim, gens)


# =================================================
# Text format
# =================================================
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<open>\()|(?P<close>\))"
    r"|Z\[\s*(?P<z>\d+)\s*\]"
    r"|(?P<kind>[XH])\[\s*(?P<a>\d+)\s*,\s*(?P<b>\d+)\s*\]"
    r"|(?P<eps>ε))"
)


def _scan(text: str) -> Tuple[int, List[Tuple[str, object, int, int]]]:
    """Header dimension plus a token list of (kind, payload, line, column)."""
    dim = None
    tokens: List[Tuple[str, object, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if dim is None:
            m = re.match(r"^\s*dim\s+(\d+)\s*$", line)
            if not m:
                raise ParseError(f"expected 'dim N' header, got {line.strip()!r}", lineno, 1)
            dim = int(m[1])
            continue
        pos = 0
        while pos < len(line):
            if not line[pos:].strip():
                break
            m = _TOKEN_RE.match(line, pos)
            if not m:
                col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
                bad = line[col - 1:].split()[0]
                raise ParseError(f"unexpected token {bad!r}", lineno, col)
            col = m.start() + len(m.group(0)) - len(m.group(0).lstrip()) + 1
            if m["open"]:
                tokens.append(("open", None, lineno, col))
            elif m["close"]:
                tokens.append(("close", None, lineno, col))
            elif m["z"] is not None:
                tokens.append(("gen", Neg(int(m["z"])), lineno, col))
            elif m["kind"]:
                cls = XGen if m["kind"] == "X" else HGen
                tokens.append(("gen", cls(int(m["a"]), int(m["b"])), lineno, col))
            pos = m.end()
    if dim is None:
        raise ParseError("missing 'dim N' header")
    return dim, tokens


def _checked(g: Gen, dim: int, line: int, col: int) -> Gen:
    try:
        validate_gen(g, dim)
    except (IndexOutOfRange, IndicesNotDistinct) as exc:
        raise ParseError(str(exc), line, col)
    return g


def parse_word(text: str) -> Word:
    dim, tokens = _scan(text)
    gens = []
    for kind, payload, line, col in tokens:
        if kind != "gen":
            raise ParseError("parentheses belong to paired words", line, col)
        gens.append(_checked(payload, dim, line, col))
    return Word(dim, gens)


def parse_pword(text: str) -> PWord:
    dim, tokens = _scan(text)
    pgens: List[PairedGen] = []
    i = 0
    while i < len(tokens):
        kind, _, line, col = tokens[i]
        if kind != "open":
            raise ParseError("expected '(' opening a paired generator", line, col)
        window = tokens[i:i + 4]
        if len(window) < 4 or [t[0] for t in window] != ["open", "gen", "gen", "close"]:
            raise ParseError("a paired generator is '(' gen gen ')'", line, col)
        g1 = _checked(window[1][1], dim, window[1][2], window[1][3])
        g2 = _checked(window[2][1], dim, window[2][2], window[2][3])
        try:
            pgens.append(pair_gens(g1, g2))
        except ValueError as exc:
            raise ParseError(str(exc), line, col)
        i += 4
    return PWord(dim, pgens)


def parse_any(text: str) -> Union[Word, PWord]:
    """PWord when the body uses parentheses, Word otherwise."""
    _, tokens = _scan(text)
    if any(t[0] in ("open", "close") for t in tokens):
        return parse_pword(text)
    return parse_word(text)


def print_word(w: Union[Word, PWord]) -> str:
    body = " ".join(str(g) for g in w.gens) if isinstance(w, Word) else " ".join(pgen_str(p) for p in w.pgens)
    return f"dim {w.dim}\n{body}\n"


print_pword = print_word
