"""
circuit.py — circuit IR for the real-Clifford+CH fragment and its exact semantics.

Gate order: gates[0] is applied first, so [[g1, ..., gm]] = [[gm]]···[[g1]].
Qubit 0 is the top wire and the most significant bit of a basis index.

Text format (one gate per line, after a `qubits N` header):
    H q | Z q | X q | CZ a b | CH c t | CNOT c t | SWAP a b | PP a b
    MCZ [+a,-b] dashed=d | MCH [+a] t dashed=d | MCZX [+a] t sign=0|1
`+` is a black control (fires on |1>), `-` a white one (fires on |0>).

Usage:
    c = parse_circuit("qubits 2\\nCH 0 1\\n")
    m = semantics(c)
"""

from __future__ import annotations

import logging
import random
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import attrs

from rcch import config
from rcch.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    IndicesNotDistinct,
    ParseError,
    RcchError,
    WidthTooLarge,
)
from rcch.ring import INV_SQRT2, ONE, ZERO, RingElem, RingMatrix

logger = logging.getLogger(__name__)

Control = Tuple[int, int]  # (qubit, polarity bit)


def _controls(value: Iterable[Sequence[int]]) -> Tuple[Control, ...]:
    return tuple((int(q), int(p)) for q, p in value)


# =================================================
# Gates
# =================================================
@attrs.frozen
class H:
    q: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.q,)


@attrs.frozen
class Z:
    q: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.q,)


@attrs.frozen
class X:
    q: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.q,)


@attrs.frozen
class CZ:
    q1: int
    q2: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.q1, self.q2)


@attrs.frozen
class CH:
    control: int
    target: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.control, self.target)


@attrs.frozen
class Cnot:
    control: int
    target: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.control, self.target)


@attrs.frozen
class Swap:
    q1: int
    q2: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.q1, self.q2)


@attrs.frozen
class PPair:
    q1: int
    q2: int

    def qubits(self) -> Tuple[int, ...]:
        return (self.q1, self.q2)


@attrs.frozen
class McZ:
    """−1 on every basis state matching the controls; identity on the dashed wire."""

    controls: Tuple[Control, ...] = attrs.field(converter=_controls)
    dashed: int

    def qubits(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.controls) + (self.dashed,)


@attrs.frozen
class McH:
    controls: Tuple[Control, ...] = attrs.field(converter=_controls)
    target: int
    dashed: int

    def qubits(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.controls) + (self.target, self.dashed)


@attrs.frozen
class McZX:
    """(−1)^sign_a · ZX on the target when the controls fire."""

    controls: Tuple[Control, ...] = attrs.field(converter=_controls)
    target: int
    sign_a: int

    def qubits(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.controls) + (self.target,)


Gate = Union[H, Z, X, CZ, CH, Cnot, Swap, PPair, McZ, McH, McZX]

PRIMITIVE_GATES = (H, Z, CZ, CH, Swap)
SHORTCUT_GATES = (X, Cnot)
MACRO_GATES = (McZ, McH, McZX, PPair)


def is_primitive(g: Gate) -> bool:
    return isinstance(g, PRIMITIVE_GATES + SHORTCUT_GATES)


def validate_gate(g: Gate, n_qubits: int) -> None:
    qs = g.qubits()
    for q in qs:
        if not 0 <= q < n_qubits:
            raise IndexOutOfRange(f"{g} names qubit {q} outside 0..{n_qubits - 1}")
    if len(set(qs)) != len(qs):
        raise IndicesNotDistinct(f"{g} repeats a qubit")
    if isinstance(g, (McZ, McH)):
        if any(p not in (0, 1) for _, p in g.controls):
            raise IndexOutOfRange(f"{g}: control polarity must be 0 or 1")
    if isinstance(g, McZX):
        if any(p not in (0, 1) for _, p in g.controls) or g.sign_a not in (0, 1):
            raise IndexOutOfRange(f"{g}: polarity and sign must be 0 or 1")


# =================================================
# Circuits
# =================================================
def _gate_tuple(value: Iterable[Gate]) -> Tuple[Gate, ...]:
    return tuple(value)


@attrs.frozen
class Circuit:
    n_qubits: int
    gates: Tuple[Gate, ...] = attrs.field(factory=tuple, converter=_gate_tuple)

    def __attrs_post_init__(self) -> None:
        if self.n_qubits < 1:
            raise IndexOutOfRange(f"circuit needs at least one qubit, got {self.n_qubits}")
        for g in self.gates:
            validate_gate(g, self.n_qubits)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatch(f"cannot concatenate {self.n_qubits}- and {other.n_qubits}-qubit circuits")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def then(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.n_qubits, self.gates + tuple(gates))


# =================================================
# Semantics
# =================================================
_PP_PLUS = RingElem(1, 1, 3)     # (√2+1)/(2√2)
_PP_MINUS = RingElem(-1, 1, 3)   # (√2−1)/(2√2)
_PP_ONE = RingElem(1, 0, 3)      # 1/(2√2)

PP_MATRIX = [
    [_PP_PLUS, _PP_ONE, _PP_ONE, _PP_MINUS],
    [_PP_ONE, -_PP_PLUS, _PP_MINUS, -_PP_ONE],
    [_PP_ONE, _PP_MINUS, -_PP_PLUS, -_PP_ONE],
    [_PP_MINUS, -_PP_ONE, -_PP_ONE, _PP_PLUS],
]


def _bit(n: int, s: int, q: int) -> int:
    return (s >> (n - 1 - q)) & 1


def _set(n: int, s: int, q: int, v: int) -> int:
    mask = 1 << (n - 1 - q)
    return (s | mask) if v else (s & ~mask)


def _fires(n: int, s: int, controls: Tuple[Control, ...]) -> bool:
    return all(_bit(n, s, q) == p for q, p in controls)


def _hadamard(n: int, s: int, q: int) -> List[Tuple[int, RingElem]]:
    b = _bit(n, s, q)
    return [(_set(n, s, q, 0), INV_SQRT2), (_set(n, s, q, 1), -INV_SQRT2 if b else INV_SQRT2)]


def gate_action(g: Gate, n: int, s: int) -> List[Tuple[int, RingElem]]:
    """Column s of [[g]] as a sparse list of (row, value)."""
    if isinstance(g, H):
        return _hadamard(n, s, g.q)
    if isinstance(g, Z):
        return [(s, -ONE if _bit(n, s, g.q) else ONE)]
    if isinstance(g, X):
        return [(s ^ (1 << (n - 1 - g.q)), ONE)]
    if isinstance(g, CZ):
        both = _bit(n, s, g.q1) and _bit(n, s, g.q2)
        return [(s, -ONE if both else ONE)]
    if isinstance(g, CH):
        if _bit(n, s, g.control):
            return _hadamard(n, s, g.target)
        return [(s, ONE)]
    if isinstance(g, Cnot):
        if _bit(n, s, g.control):
            return [(s ^ (1 << (n - 1 - g.target)), ONE)]
        return [(s, ONE)]
    if isinstance(g, Swap):
        b1, b2 = _bit(n, s, g.q1), _bit(n, s, g.q2)
        return [(_set(n, _set(n, s, g.q1, b2), g.q2, b1), ONE)]
    if isinstance(g, McZ):
        return [(s, -ONE if _fires(n, s, g.controls) else ONE)]
    if isinstance(g, McH):
        if _fires(n, s, g.controls):
            return _hadamard(n, s, g.target)
        return [(s, ONE)]
    if isinstance(g, McZX):
        if not _fires(n, s, g.controls):
            return [(s, ONE)]
        # ZX|0> = −|1>, ZX|1> = |0>
        sign = -ONE if g.sign_a else ONE
        flipped = s ^ (1 << (n - 1 - g.target))
        return [(flipped, sign if _bit(n, s, g.target) else -sign)]
    if isinstance(g, PPair):
        col = 2 * _bit(n, s, g.q1) + _bit(n, s, g.q2)
        out = []
        for row in range(4):
            t = _set(n, _set(n, s, g.q1, row >> 1), g.q2, row & 1)
            out.append((t, PP_MATRIX[row][col]))
        return out
    raise RcchError(f"unknown gate {g!r}")


def apply_gates(gates: Sequence[Gate], n: int, vec: Dict[int, RingElem]) -> Dict[int, RingElem]:
    for g in gates:
        out: Dict[int, RingElem] = {}
        for s, amp in vec.items():
            for t, coef in gate_action(g, n, s):
                out[t] = out.get(t, ZERO) + amp * coef
        vec = {t: v for t, v in out.items() if not v.is_zero()}
    return vec


def semantics(c: Circuit, max_qubits: Optional[int] = None) -> RingMatrix:
    """Exact 2^n × 2^n matrix of c, built column by column."""
    cap = config.MAX_QUBITS if max_qubits is None else max_qubits
    if c.n_qubits > cap:
        raise WidthTooLarge(f"{c.n_qubits} qubits exceeds the cap of {cap}")
    size = 1 << c.n_qubits
    columns = [apply_gates(c.gates, c.n_qubits, {j: ONE}) for j in range(size)]
    return RingMatrix.from_columns(columns, size)


def check_circuit_equation(lhs: Circuit, rhs: Circuit) -> bool:
    """Soundness of a circuit equation: both sides have the same semantics."""
    if lhs.n_qubits != rhs.n_qubits:
        raise DimensionMismatch(f"equation sides have {lhs.n_qubits} and {rhs.n_qubits} qubits")
    return semantics(lhs) == semantics(rhs)


# =================================================
# Constructions
# =================================================
def inverse_gate(g: Gate) -> Gate:
    # (ZX)^-1 = −ZX; everything else is an involution
    if isinstance(g, McZX):
        return McZX(g.controls, g.target, 1 - g.sign_a)
    return g


def dagger(c: Circuit) -> Circuit:
    """Mirrored circuit: reversed gate list, each gate inverted."""
    return Circuit(c.n_qubits, tuple(inverse_gate(g) for g in reversed(c.gates)))


def random_circuit(n: int, length: int, seed: Optional[int] = None) -> Circuit:
    if n < 1:
        raise IndexOutOfRange(f"random_circuit needs n >= 1, got {n}")
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    kinds = ["H", "Z"] + (["CZ", "CH", "SWAP"] if n >= 2 else [])
    gates: List[Gate] = []
    for _ in range(length):
        kind = rng.choice(kinds)
        if kind == "H":
            gates.append(H(rng.randrange(n)))
        elif kind == "Z":
            gates.append(Z(rng.randrange(n)))
        else:
            a, b = rng.sample(range(n), 2)
            gates.append({"CZ": CZ, "CH": CH, "SWAP": Swap}[kind](a, b))
    return Circuit(n, gates)


def _bubble(q_from: int, q_to: int) -> List[Gate]:
    """Adjacent swaps moving the content of wire q_from to wire q_to."""
    if q_from > q_to:
        return [Swap(k - 1, k) for k in range(q_from, q_to, -1)]
    return [Swap(k, k + 1) for k in range(q_from, q_to)]


def _adjacent_form(g: Gate, expand_x: bool) -> List[Gate]:
    if isinstance(g, (H, Z)):
        return [g]
    if isinstance(g, X):
        return [H(g.q), Z(g.q), H(g.q)] if expand_x else [g]
    if isinstance(g, Cnot):
        return [H(g.target)] + _adjacent_form(CZ(g.control, g.target), expand_x) + [H(g.target)]
    if isinstance(g, (CZ, Swap)):
        a, b = sorted(g.qubits())
        if b == a + 1:
            return [type(g)(a, b)]
        route = _bubble(b, a + 1)
        return route + [type(g)(a, a + 1)] + list(reversed(route))
    if isinstance(g, CH):
        c, t = g.control, g.target
        if t == c + 1:
            return [g]
        if t == c - 1:
            return [Swap(t, c), CH(t, c), Swap(t, c)]
        target_slot = c + 1 if t > c else c - 1
        route = _bubble(t, target_slot)
        return route + _adjacent_form(CH(c, target_slot), expand_x) + list(reversed(route))
    return [g]


def expand_shortcuts(c: Circuit, expand_x: bool = True) -> Circuit:
    """Rewrite X, CNOT and non-adjacent/reversed two-qubit gates into adjacent primitive gates.

    Macro gates pass through untouched.
    """
    out: List[Gate] = []
    for g in c.gates:
        out.extend(_adjacent_form(g, expand_x))
    return Circuit(c.n_qubits, out)


# =================================================
# Text format
# =================================================
_CONTROLS_RE = r"\[\s*((?:[+-]\d+\s*(?:,\s*[+-]\d+\s*)*)?)\]"

_GATE_PATTERNS = [
    ("H", re.compile(r"^H\s+(\d+)$"), lambda m: H(int(m[1]))),
    ("Z", re.compile(r"^Z\s+(\d+)$"), lambda m: Z(int(m[1]))),
    ("X", re.compile(r"^X\s+(\d+)$"), lambda m: X(int(m[1]))),
    ("CZ", re.compile(r"^CZ\s+(\d+)\s+(\d+)$"), lambda m: CZ(int(m[1]), int(m[2]))),
    ("CH", re.compile(r"^CH\s+(\d+)\s+(\d+)$"), lambda m: CH(int(m[1]), int(m[2]))),
    ("CNOT", re.compile(r"^CNOT\s+(\d+)\s+(\d+)$"), lambda m: Cnot(int(m[1]), int(m[2]))),
    ("SWAP", re.compile(r"^SWAP\s+(\d+)\s+(\d+)$"), lambda m: Swap(int(m[1]), int(m[2]))),
    ("PP", re.compile(r"^PP\s+(\d+)\s+(\d+)$"), lambda m: PPair(int(m[1]), int(m[2]))),
    ("MCZ", re.compile(r"^MCZ\s+" + _CONTROLS_RE + r"\s+dashed=(\d+)$"),
     lambda m: McZ(_parse_controls(m[1]), int(m[2]))),
    ("MCH", re.compile(r"^MCH\s+" + _CONTROLS_RE + r"\s+(\d+)\s+dashed=(\d+)$"),
     lambda m: McH(_parse_controls(m[1]), int(m[2]), int(m[3]))),
    ("MCZX", re.compile(r"^MCZX\s+" + _CONTROLS_RE + r"\s+(\d+)\s+sign=([01])$"),
     lambda m: McZX(_parse_controls(m[1]), int(m[2]), int(m[3]))),
]


def _parse_controls(body: str) -> List[Control]:
    out = []
    for item in filter(None, (t.strip() for t in body.split(","))):
        out.append((int(item[1:]), 1 if item[0] == "+" else 0))
    return out


def _format_controls(controls: Tuple[Control, ...]) -> str:
    return "[" + ",".join(f"{'+' if p else '-'}{q}" for q, p in controls) + "]"


def format_gate(g: Gate) -> str:
    if isinstance(g, H):
        return f"H {g.q}"
    if isinstance(g, Z):
        return f"Z {g.q}"
    if isinstance(g, X):
        return f"X {g.q}"
    if isinstance(g, CZ):
        return f"CZ {g.q1} {g.q2}"
    if isinstance(g, CH):
        return f"CH {g.control} {g.target}"
    if isinstance(g, Cnot):
        return f"CNOT {g.control} {g.target}"
    if isinstance(g, Swap):
        return f"SWAP {g.q1} {g.q2}"
    if isinstance(g, PPair):
        return f"PP {g.q1} {g.q2}"
    if isinstance(g, McZ):
        return f"MCZ {_format_controls(g.controls)} dashed={g.dashed}"
    if isinstance(g, McH):
        return f"MCH {_format_controls(g.controls)} {g.target} dashed={g.dashed}"
    if isinstance(g, McZX):
        return f"MCZX {_format_controls(g.controls)} {g.target} sign={g.sign_a}"
    raise RcchError(f"unknown gate {g!r}")


def print_circuit(c: Circuit) -> str:
    return "\n".join([f"qubits {c.n_qubits}"] + [format_gate(g) for g in c.gates]) + "\n"


def parse_circuit(text: str) -> Circuit:
    n_qubits: Optional[int] = None
    gates: List[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        column = raw.index(line[0]) + 1
        if n_qubits is None:
            m = re.match(r"^qubits\s+(\d+)$", line)
            if not m:
                raise ParseError(f"expected 'qubits N' header, got {line!r}", lineno, column)
            n_qubits = int(m[1])
            if n_qubits < 1:
                raise ParseError("circuit needs at least one qubit", lineno, column)
            continue
        head = line.split()[0]
        for name, pattern, build in _GATE_PATTERNS:
            if head != name:
                continue
            m = pattern.match(line)
            if not m:
                raise ParseError(f"malformed {name} gate {line!r}", lineno, column)
            gate = build(m)
            try:
                validate_gate(gate, n_qubits)
            except RcchError as exc:
                raise ParseError(str(exc), lineno, column)
            gates.append(gate)
            break
        else:
            raise ParseError(f"unknown gate {head!r}", lineno, column)
    if n_qubits is None:
        raise ParseError("missing 'qubits N' header")
    return Circuit(n_qubits, gates)
