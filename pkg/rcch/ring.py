"""
ring.py — exact arithmetic in Z[1/√2] and dense matrices over it.

An element is stored as (a + b√2)/√2^k in canonical form: k = 0 or a odd.
Matrices are numpy object arrays of RingElem, so products stay exact.

Usage:
    from rcch.ring import RingElem, RingMatrix
    h = RingMatrix.from_rows([[1, 1], [1, -1]]).scale(RingElem(1, 0, 1))
    assert (h @ h) == RingMatrix.identity(2)
"""

from __future__ import annotations

import re
from typing import Iterable, List, Sequence, Tuple, Union

import attrs
import numpy as np

from rcch.errors import DimensionMismatch, ParseError

_ENTRY_RE = re.compile(r"^(-?\d+)\+(-?\d+)\*r2/r2\^(\d+)$")
_INT_RE = re.compile(r"^-?\d+$")


@attrs.frozen(eq=False)
class RingElem:
    """(a + b√2)/√2^k, canonicalized on construction."""

    a: int = attrs.field(converter=int)
    b: int = attrs.field(converter=int, default=0)
    k: int = attrs.field(converter=int, default=0)

    def __attrs_post_init__(self) -> None:
        a, b, k = self.a, self.b, self.k
        while k < 0:
            a, b, k = 2 * b, a, k + 1
        while k > 0 and a % 2 == 0:
            if a == 0 and b == 0:
                break
            a, b, k = b, a // 2, k - 1
        if a == 0 and b == 0:
            k = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", k)

    # --- coercion ---

    @staticmethod
    def _coerce(other) -> "RingElem | None":
        if isinstance(other, RingElem):
            return other
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return RingElem(int(other))
        return None

    def _numerator_at(self, k: int) -> Tuple[int, int]:
        # multiply the numerator by √2 until the exponent reaches k
        a, b = self.a, self.b
        for _ in range(k - self.k):
            a, b = 2 * b, a
        return a, b

    # --- arithmetic ---

    def __add__(self, other) -> "RingElem":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        k = max(self.k, y.k)
        a1, b1 = self._numerator_at(k)
        a2, b2 = y._numerator_at(k)
        return RingElem(a1 + a2, b1 + b2, k)

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem(-self.a, -self.b, self.k)

    def __sub__(self, other) -> "RingElem":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other) -> "RingElem":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other) -> "RingElem":
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return RingElem(
            self.a * y.a + 2 * self.b * y.b,
            self.a * y.b + self.b * y.a,
            self.k + y.k,
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return (self.a, self.b, self.k) == (y.a, y.b, y.k)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.k))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # --- queries ---

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def lde(self) -> int:
        """Least m ≥ 0 with √2^m·x in Z[√2]; the canonical exponent."""
        return self.k

    def scale_sqrt2(self, m: int) -> "RingElem":
        """x·√2^m."""
        return RingElem(self.a, self.b, self.k - m)

    def residue(self) -> Tuple[int, int]:
        """Class of the numerator in Z[√2]/2Z[√2], as (a mod 2, b mod 2)."""
        return self.a % 2, self.b % 2

    def __float__(self) -> float:
        return (self.a + self.b * 2 ** 0.5) / (2 ** 0.5) ** self.k

    # --- text ---

    def __str__(self) -> str:
        return f"{self.a}+{self.b}*r2/r2^{self.k}"

    @classmethod
    def parse(cls, token: str) -> "RingElem":
        m = _ENTRY_RE.match(token)
        if m:
            return cls(int(m.group(1)), int(m.group(2)), int(m.group(3)))
        if _INT_RE.match(token):
            return cls(int(token))
        raise ParseError(f"bad ring entry {token!r}")


ZERO = RingElem(0)
ONE = RingElem(1)
SQRT2 = RingElem(0, 1, 0)
INV_SQRT2 = RingElem(1, 0, 1)

Scalar = Union[RingElem, int]


def ring_add(x: RingElem, y: RingElem) -> RingElem:
    return x + y


def ring_mul(x: RingElem, y: RingElem) -> RingElem:
    return x * y


def lde_elem(x: RingElem) -> int:
    return x.lde()


def lde_vector(entries: Iterable[RingElem]) -> int:
    return max((e.lde() for e in entries), default=0)


def _as_elem(v) -> RingElem:
    if isinstance(v, RingElem):
        return v
    return RingElem(int(v))


class RingMatrix:
    """Dense matrix over Z[1/√2]; read-only once built."""

    __slots__ = ("entries",)

    def __init__(self, entries: np.ndarray):
        arr = np.array(entries, dtype=object, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch(f"matrix must be 2-dimensional, got shape {arr.shape}")
        arr.flags.writeable = False
        self.entries = arr

    # --- constructors ---

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "RingMatrix":
        if not rows:
            raise DimensionMismatch("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        arr = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                arr[i, j] = _as_elem(v)
        return cls(arr)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> "RingMatrix":
        return cls(zeros_array(n_rows, n_cols))

    @classmethod
    def identity(cls, n: int) -> "RingMatrix":
        arr = zeros_array(n)
        for i in range(n):
            arr[i, i] = ONE
        return cls(arr)

    @classmethod
    def from_columns(cls, columns: Sequence[dict], n: int) -> "RingMatrix":
        """Build from sparse columns {row: value}."""
        arr = zeros_array(n, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                arr[i, j] = v
        return cls(arr)

    # --- shape ---

    @property
    def n_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n_cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, idx) -> RingElem:
        return self.entries[idx]

    def column(self, j: int) -> List[RingElem]:
        return list(self.entries[:, j])

    def rows(self) -> List[List[RingElem]]:
        return [list(r) for r in self.entries]

    # --- algebra ---

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.entries.T)

    @property
    def T(self) -> "RingMatrix":
        return self.transpose()

    def scale(self, s: Scalar) -> "RingMatrix":
        s = _as_elem(s)
        return RingMatrix(np.vectorize(lambda e: e * s, otypes=[object])(self.entries))

    def __neg__(self) -> "RingMatrix":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(x == y for x, y in zip(self.entries.flat, other.entries.flat))

    __hash__ = None  # type: ignore[assignment]

    def lde(self) -> int:
        return lde_vector(self.entries.flat)

    def column_lde(self, j: int) -> int:
        return lde_vector(self.entries[:, j])

    # --- structure tests ---

    def is_orthogonal(self) -> bool:
        return is_orthogonal(self)

    def signed_permutation(self) -> Tuple[List[int], List[int]] | None:
        """(perm, signs) with M·e_j = signs[j]·e_{perm[j]}, or None if M is not a signed permutation."""
        if not self.is_square():
            return None
        n = self.n_rows
        perm: List[int] = []
        signs: List[int] = []
        seen = set()
        for j in range(n):
            hit = [(i, e) for i, e in enumerate(self.entries[:, j]) if not e.is_zero()]
            if len(hit) != 1:
                return None
            i, e = hit[0]
            if e == ONE:
                signs.append(1)
            elif e == -ONE:
                signs.append(-1)
            else:
                return None
            if i in seen:
                return None
            seen.add(i)
            perm.append(i)
        return perm, signs

    def is_signed_permutation(self) -> bool:
        return self.signed_permutation() is not None

    # --- text ---

    def dumps(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.entries) + "\n"

    @classmethod
    def parse(cls, text: str) -> "RingMatrix":
        rows: List[List[RingElem]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            row = []
            pos = 0
            for token in line.split():
                pos = raw.index(token, pos)
                try:
                    row.append(RingElem.parse(token))
                except ParseError:
                    raise ParseError(f"bad ring entry {token!r}", lineno, pos + 1)
                pos += len(token)
            if rows and len(row) != len(rows[0]):
                raise ParseError(f"row has {len(row)} entries, expected {len(rows[0])}", lineno)
            rows.append(row)
        if not rows:
            raise ParseError("empty matrix")
        return cls.from_rows(rows)

    def __repr__(self) -> str:
        return f"RingMatrix({self.n_rows}x{self.n_cols})"


def zeros_array(n_rows: int, n_cols: int | None = None) -> np.ndarray:
    arr = np.empty((n_rows, n_rows if n_cols is None else n_cols), dtype=object)
    arr.fill(ZERO)
    return arr


def mat_mul(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    if A.n_cols != B.n_rows:
        raise DimensionMismatch(f"cannot multiply {A.n_rows}x{A.n_cols} by {B.n_rows}x{B.n_cols}")
    # object dtype: numpy sums the RingElem products exactly
    return RingMatrix(A.entries.dot(B.entries))


def is_orthogonal(A: RingMatrix) -> bool:
    if not A.is_square():
        return False
    return mat_mul(A, A.transpose()) == RingMatrix.identity(A.n_rows)
