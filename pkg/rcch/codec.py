"""
codec.py — translations between circuits and generator words.

Two qubits use the plain binary basis: [[encode2(c)]] = [[c]].
From three qubits on, word index i stands for the circuit basis state whose
bits are gray(n, i), so [[encode_n(c)]] = gray_relabel([[c]]) and
gray_relabel([[decode_n(pw)]]) = [[pw]].

Ordering: encoding emits E(gm)…E(g1) for gates g1..gm; decoding P1…Pk emits
the gates of D(Pk) first and those of D(P1) last.

Usage:
    pw = encode_n(random_circuit(3, 10, seed=1))
    c = decode_n(pw)
    assert roundtrip(c)
"""

from __future__ import annotations

import functools
import itertools
import logging
from typing import Dict, Iterator, List, Optional, Tuple, Union

import attrs
import numpy as np

from rcch.circuit import (
    CH,
    CZ,
    Circuit,
    Cnot,
    Gate,
    H,
    McH,
    McZ,
    McZX,
    PPair,
    Swap,
    X,
    Z,
    dagger,
    expand_shortcuts,
    semantics,
)
from rcch.errors import (
    DimensionMismatch,
    DimensionNotPowerOfTwo,
    DimensionTooSmall,
    IndicesNotDistinct,
    UnsupportedGate,
)
from rcch.graycode import gray, gray_index, gray_inv, gray_state, single_flip
from rcch.ring import RingMatrix
from rcch.words import (
    PHH,
    PXX,
    PZX,
    PZZ,
    Gen,
    HGen,
    Neg,
    PairedGen,
    PWord,
    Word,
    XGen,
    flatten,
    word_to_pword,
)

logger = logging.getLogger(__name__)


# =================================================
# Basis bridges
# =================================================
def gray_relabel(M: RingMatrix, n: int) -> RingMatrix:
    """out[i][j] = M[g(i)][g(j)] with g(i) = int(gray(n, i), 2)."""
    perm = [gray_state(n, i) for i in range(1 << n)]
    return RingMatrix(M.entries[np.ix_(perm, perm)])


def gray_unrelabel(M: RingMatrix, n: int) -> RingMatrix:
    inv = [gray_index(n, s) for s in range(1 << n)]
    return RingMatrix(M.entries[np.ix_(inv, inv)])


def word_basis(M: RingMatrix, n: int) -> RingMatrix:
    """Circuit semantics expressed in the basis the n-qubit words use."""
    return M if n == 2 else gray_relabel(M, n)


def qubits_for_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise DimensionNotPowerOfTwo(f"dimension {dim} is not a power of two")
    return n


def _reject_macros(c: Circuit) -> None:
    for g in c.gates:
        if isinstance(g, (McZ, McH, McZX, PPair)):
            raise UnsupportedGate(f"{g} is a macro gate; only primitive gates can be encoded")


# =================================================
# Two qubits
# =================================================
_ENCODE2 = {
    ("H", 1): [HGen(0, 1), HGen(2, 3)],
    ("H", 0): [HGen(0, 2), HGen(1, 3)],
    ("Z", 1): [Neg(1), Neg(3)],
    ("Z", 0): [Neg(2), Neg(3)],
}


def _encode2_gate(g: Gate) -> List[Gen]:
    if isinstance(g, H):
        return list(_ENCODE2[("H", g.q)])
    if isinstance(g, Z):
        return list(_ENCODE2[("Z", g.q)])
    if isinstance(g, CZ):
        return [Neg(3)]
    if isinstance(g, CH):
        return [HGen(2, 3)]
    if isinstance(g, Swap):
        return [XGen(1, 2)]
    raise UnsupportedGate(f"{g} has no two-qubit encoding")


def encode2(c: Circuit) -> Word:
    if c.n_qubits != 2:
        raise DimensionMismatch(f"encode2 needs a 2-qubit circuit, got {c.n_qubits}")
    _reject_macros(c)
    flat = expand_shortcuts(c, expand_x=True)
    gens: List[Gen] = []
    for g in reversed(flat.gates):
        gens.extend(_encode2_gate(g))
    return Word(4, gens)


# adjacent transpositions of basis states as 2-qubit circuits
_TRANSPOSITIONS: Dict[int, List[Gate]] = {
    0: [X(1), Cnot(0, 1)],   # 00 <-> 01
    1: [Swap(0, 1)],         # 01 <-> 10
    2: [Cnot(0, 1)],         # 10 <-> 11
}


def _permutation_circuit(images: List[int]) -> List[Gate]:
    """Gates whose semantics sends e_i to e_{images[i]}."""
    s = list(images)
    gates: List[Gate] = []
    changed = True
    while changed:
        changed = False
        for j in range(3):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                gates.extend(_TRANSPOSITIONS[j])
                changed = True
    return gates


def _images(fixed: Dict[int, int]) -> List[int]:
    rest = iter(sorted(set(range(4)) - set(fixed.values())))
    return [fixed[i] if i in fixed else next(rest) for i in range(4)]


def _conjugated(base: List[Gate], fixed: Dict[int, int]) -> List[Gate]:
    p = _permutation_circuit(_images(fixed))
    return list(dagger(Circuit(2, p)).gates) + base + p


@functools.lru_cache(maxsize=1)
def decode2_table() -> Dict[Gen, Tuple[Gate, ...]]:
    """The 22 generators of G_4 mapped to short 2-qubit circuits."""
    table: Dict[Gen, Tuple[Gate, ...]] = {}
    for a in range(4):
        table[Neg(a)] = tuple(_conjugated([CZ(0, 1)], {3: a}))
    for a, b in itertools.combinations(range(4), 2):
        table[XGen(a, b)] = tuple(_conjugated([Cnot(0, 1)], {2: a, 3: b}))
    for a, b in itertools.permutations(range(4), 2):
        table[HGen(a, b)] = tuple(_conjugated([CH(0, 1)], {2: a, 3: b}))
    return table


def _table_key(g: Gen) -> Gen:
    if isinstance(g, XGen):
        return XGen(min(g.a, g.b), max(g.a, g.b))
    return g


def decode2(w: Word) -> Circuit:
    if w.dim != 4:
        raise DimensionMismatch(f"decode2 needs a word over G_4, got dimension {w.dim}")
    table = decode2_table()
    gates: List[Gate] = []
    for g in reversed(w.gens):
        gates.extend(table[_table_key(g)])
    return Circuit(2, gates)


# =================================================
# n qubits: encoding
# =================================================
def _strings(m: int) -> Iterator[str]:
    for bits in itertools.product("01", repeat=m):
        yield "".join(bits)


def _idx(n: int, bits: str) -> int:
    return gray_inv(n, bits)


def flip_factor(x: int, wire: int, n: int) -> List[PairedGen]:
    """ℰ^{1−x}(−⊕) on `wire`: ε when x is 1, otherwise E(Z) followed by the
    ((−1)[x1y] X[x0y,x1y]) factors, which together act as NOT on `wire`."""
    if x == 1:
        return []
    return _encode_x(wire, n)


def _encode_z(k: int, n: int) -> List[PairedGen]:
    ell = n - k - 1
    if ell >= 1:
        return [PZZ(_idx(n, x + "10" + y), _idx(n, x + "11" + y))
                for x in _strings(k) for y in _strings(ell - 1)]
    return [PZZ(_idx(n, "0" + x + "1"), _idx(n, "1" + x + "1")) for x in _strings(k - 1)]


def _encode_h(k: int, n: int) -> List[PairedGen]:
    ell = n - k - 1
    if ell >= 1:
        return [PHH((_idx(n, x + "00" + y), _idx(n, x + "10" + y)),
                    (_idx(n, x + "01" + y), _idx(n, x + "11" + y)))
                for x in _strings(k) for y in _strings(ell - 1)]
    return [PHH((_idx(n, "0" + x + "0"), _idx(n, "0" + x + "1")),
                (_idx(n, "1" + x + "0"), _idx(n, "1" + x + "1")))
            for x in _strings(k - 1)]


def _encode_cz(k: int, n: int) -> List[PairedGen]:
    ell = n - k - 2
    if ell >= 1:
        return [PZZ(_idx(n, x + "110" + y), _idx(n, x + "111" + y))
                for x in _strings(k) for y in _strings(ell - 1)]
    return [PZZ(_idx(n, "0" + x + "11"), _idx(n, "1" + x + "11")) for x in _strings(k - 1)]


def _encode_ch(k: int, n: int) -> List[PairedGen]:
    ell = n - k - 2
    if ell >= 1:
        return [PHH((_idx(n, x + "100" + y), _idx(n, x + "110" + y)),
                    (_idx(n, x + "101" + y), _idx(n, x + "111" + y)))
                for x in _strings(k) for y in _strings(ell - 1)]
    return [PHH((_idx(n, "0" + x + "10"), _idx(n, "0" + x + "11")),
                (_idx(n, "1" + x + "10"), _idx(n, "1" + x + "11")))
            for x in _strings(k - 1)]


def _encode_swap(k: int, n: int) -> List[PairedGen]:
    ell = n - k - 2
    blocks = [(x, y) for x in _strings(k) for y in _strings(ell)]
    a_part = [PZX(_idx(n, x + "11" + y), (_idx(n, x + "10" + y), _idx(n, x + "11" + y))) for x, y in blocks]
    b_part = [PZX(_idx(n, x + "01" + y), (_idx(n, x + "01" + y), _idx(n, x + "11" + y))) for x, y in blocks]
    return _encode_cz(k, n) + a_part + b_part + a_part


def _encode_x(j: int, n: int) -> List[PairedGen]:
    ell = n - j - 1
    swaps = [PZX(_idx(n, x + "1" + y), (_idx(n, x + "0" + y), _idx(n, x + "1" + y)))
             for x in _strings(j) for y in _strings(ell)]
    return _encode_z(j, n) + swaps


def encode_gate(g: Gate, n: int) -> List[PairedGen]:
    """E_{k,ℓ}(g) for one adjacent primitive gate at wire offset k."""
    if n < 3:
        raise DimensionTooSmall(f"the paired encoding needs n >= 3, got {n}")
    if isinstance(g, H):
        return _encode_h(g.q, n)
    if isinstance(g, Z):
        return _encode_z(g.q, n)
    if isinstance(g, X):
        return _encode_x(g.q, n)
    if isinstance(g, CZ):
        k = min(g.q1, g.q2)
        if abs(g.q1 - g.q2) != 1:
            raise UnsupportedGate(f"{g} is not on adjacent wires")
        return _encode_cz(k, n)
    if isinstance(g, CH):
        if g.target != g.control + 1:
            raise UnsupportedGate(f"{g} must have its target directly below the control")
        return _encode_ch(g.control, n)
    if isinstance(g, Swap):
        k = min(g.q1, g.q2)
        if abs(g.q1 - g.q2) != 1:
            raise UnsupportedGate(f"{g} is not on adjacent wires")
        return _encode_swap(k, n)
    raise UnsupportedGate(f"{g} has no paired encoding")


def encode_n(c: Circuit) -> PWord:
    n = c.n_qubits
    if n < 3:
        raise DimensionTooSmall(f"encode_n needs n >= 3, got {n}")
    _reject_macros(c)
    flat = expand_shortcuts(c, expand_x=False)
    pgens: List[PairedGen] = []
    for g in reversed(flat.gates):
        pgens.extend(encode_gate(g, n))
    logger.debug(f"encoded {len(c.gates)} gates into {len(pgens)} paired generators")
    return PWord(1 << n, pgens)


# =================================================
# Σ permutation words
# =================================================
@attrs.frozen
class SigmaPair:
    forward: Word
    backward: Word
    dim: int

    def forward_pword(self) -> PWord:
        return word_to_pword(self.forward)

    def backward_pword(self) -> PWord:
        return word_to_pword(self.backward)


def _tau(k: int, i: int, x: int) -> int:
    return i if x == k else k if x == i else x


def _step(t: Tuple[int, int], e: int, x: int) -> int:
    return _tau(t[0], t[1], x) if e else x


def sigma(a: int, b: int, c: int, d: int, dim: int) -> SigmaPair:
    """Signed-permutation words sending basis states 0, 1, 3, 2 to a, b, c, d."""
    if len({a, b, c, d}) != 4:
        raise IndicesNotDistinct(f"sigma needs four distinct indices, got {(a, b, c, d)}")
    if dim < 8:
        raise DimensionTooSmall(f"sigma needs dimension >= 8, got {dim}")
    if any(not 0 <= v < dim for v in (a, b, c, d)):
        raise IndicesNotDistinct(f"indices {(a, b, c, d)} exceed dimension {dim}")

    t3 = (d, 2)
    e3 = int(d != 2)
    m3 = _step(t3, e3, 4)
    i2 = _step(t3, e3, 3)

    t2 = (c, i2)
    e2 = int(c != i2)
    m2 = _step(t2, e2, m3)
    i1 = _step(t2, e2, _step(t3, e3, 1))

    t1 = (b, i1)
    e1 = int(b != i1)
    m1 = _step(t1, e1, m2)
    i0 = _step(t1, e1, _step(t2, e2, _step(t3, e3, 0)))

    t0 = (a, i0)
    e0 = int(a != i0)
    m0 = _step(t0, e0, m1)

    forward: List[Gen] = []
    for e, m, (p, q) in ((e0, m0, t0), (e1, m1, t1), (e2, m2, t2), (e3, m3, t3)):
        if e:
            forward += [Neg(m), XGen(p, q)]
    backward: List[Gen] = []
    for e, m, (p, q) in ((e3, 4, t3), (e2, m3, t2), (e1, m2, t1), (e0, m1, t0)):
        if e:
            backward += [Neg(m), XGen(p, q)]
    return SigmaPair(Word(dim, forward), Word(dim, backward), dim)


# =================================================
# n qubits: decoding
# =================================================
def _controls_except(n: int, bits: str, skip: Tuple[int, ...]) -> List[Tuple[int, int]]:
    return [(q, int(bits[q])) for q in range(n) if q not in skip]


def decode_pzz(a: int, b: int, n: int, compiled: bool = True) -> List[Gate]:
    if a == b:
        return []
    wire = single_flip(n, a, b)
    if wire is not None and (compiled or abs(a - b) == 1):
        return [McZ(_controls_except(n, gray(n, a), (wire,)), wire)]
    lo, hi = sorted((a, b))
    gates: List[Gate] = []
    for k in range(lo, hi):
        gates.extend(decode_pzz(k, k + 1, n, compiled))
    return gates


def decode_pzx(e: int, a: int, b: int, n: int, compiled: bool = True) -> List[Gate]:
    """Gates for (−1)_[e] X_[a,b]."""
    if e not in (a, b):
        # (−1)[e]X[a,b] = ((−1)[e](−1)[a]) ((−1)[a]X[a,b])
        return decode_pzx(a, a, b, n, compiled) + decode_pzz(e, a, n, compiled)
    a, b = sorted((a, b))
    wire = single_flip(n, a, b)
    if wire is not None and (compiled or b == a + 1):
        sign_a = 1 - int(gray(n, e)[wire])
        return [McZX(_controls_except(n, gray(n, a), (wire,)), wire, sign_a)]
    if (b - a) % 2:
        left = (a + 1, a, a + 1)
        middle = (a + 1 if e == a else b, a + 1, b)
        right = (a, a, a + 1)
    else:
        t = b - 1
        left = (t, t, b)
        middle = (a if e == a else t, a, t)
        right = (b, t, b)
    # word L·M·R: R acts first
    return (decode_pzx(*right, n, compiled)
            + decode_pzx(*middle, n, compiled)
            + decode_pzx(*left, n, compiled))


def gray_hh_form(n: int, a: int, b: int, c: int, d: int) -> Optional[Tuple[int, int]]:
    """(target, dashed) when gray codes of a, b, c, d read x0y0z, x1y0z, x0y1z, x1y1z
    or x0y0z, x0y1z, x1y0z, x1y1z; None otherwise."""
    if len({a, b, c, d}) != 4:
        return None
    ga, gd = gray(n, a), gray(n, d)
    target = single_flip(n, a, b)
    dashed = single_flip(n, a, c)
    if target is None or dashed is None or target == dashed:
        return None
    if ga[target] != "0" or ga[dashed] != "0":
        return None
    expected = list(ga)
    expected[target] = expected[dashed] = "1"
    if gd != "".join(expected):
        return None
    return target, dashed


def gray_form_first(n: int, a: int, b: int, c: int, d: int) -> bool:
    form = gray_hh_form(n, a, b, c, d)
    return form is not None and form[0] < form[1]


def gray_form_second(n: int, a: int, b: int, c: int, d: int) -> bool:
    form = gray_hh_form(n, a, b, c, d)
    return form is not None and form[0] > form[1]


def base_hh(n: int) -> McH:
    """[[H_[0,1] H_[3,2]]] in the Gray basis."""
    return McH([(q, 0) for q in range(n - 2)], n - 1, n - 2)


def two_smallest_outside(dim: int, used: set) -> Tuple[int, int]:
    free = [i for i in range(dim) if i not in used]
    return free[0], free[1]


def decode_phh(first: Tuple[int, int], second: Tuple[int, int], n: int, compiled: bool = True) -> List[Gate]:
    (a, b), (c, d) = first, second
    if (a, b) == (c, d):
        return []
    if len({a, b, c, d}) < 4:
        # H[a,b]H[c,d] = (H[a,b]H[e,f]) (H[e,f]H[c,d])
        e, f = two_smallest_outside(1 << n, {a, b, c, d})
        return decode_phh((e, f), (c, d), n, compiled) + decode_phh((a, b), (e, f), n, compiled)
    form = gray_hh_form(n, a, b, c, d)
    if form is not None:
        target, dashed = form
        return [McH(_controls_except(n, gray(n, a), (target, dashed)), target, dashed)]
    sp = sigma(a, b, c, d, 1 << n)
    # H[a,b]H[c,d] = Σ · H[0,1]H[3,2] · Σ'
    return (_decode_pgens(sp.backward_pword().pgens, n, compiled)
            + [base_hh(n)]
            + _decode_pgens(sp.forward_pword().pgens, n, compiled))


def decode_pgen(p: PairedGen, n: int, compiled: bool = True) -> List[Gate]:
    if isinstance(p, PZZ):
        return decode_pzz(p.a, p.c, n, compiled)
    if isinstance(p, PZX):
        return decode_pzx(p.a, p.pair[0], p.pair[1], n, compiled)
    if isinstance(p, PXX):
        # X[a,b]X[c,d] = ((−1)[a]X[a,b]) ((−1)[b]X[c,d])
        (a, b), (c, d) = p.first, p.second
        return decode_pzx(b, c, d, n, compiled) + decode_pzx(a, a, b, n, compiled)
    return decode_phh(p.first, p.second, n, compiled)


def _decode_pgens(pgens, n: int, compiled: bool) -> List[Gate]:
    gates: List[Gate] = []
    for p in reversed(tuple(pgens)):
        gates.extend(decode_pgen(p, n, compiled))
    return gates


def decode_n(pw: Union[PWord, Word], compiled: bool = True) -> Circuit:
    n = qubits_for_dim(pw.dim)
    if n < 3:
        raise DimensionTooSmall(f"decode_n needs dimension >= 8, got {pw.dim}")
    if isinstance(pw, Word):
        pw = word_to_pword(pw)
    gates = _decode_pgens(pw.pgens, n, compiled)
    logger.debug(f"decoded {len(pw.pgens)} paired generators into {len(gates)} gates")
    return Circuit(n, gates)


# =================================================
# Dispatch
# =================================================
def encode(c: Circuit) -> Union[Word, PWord]:
    if c.n_qubits == 2:
        return encode2(c)
    return encode_n(c)


def decode(w: Union[Word, PWord]) -> Circuit:
    if w.dim == 4:
        if isinstance(w, PWord):
            w = flatten(w)
        return decode2(w)
    return decode_n(w)


def roundtrip(c: Circuit) -> bool:
    """[[decode(encode(c))]] == [[c]], exactly."""
    if c.n_qubits < 2:
        raise DimensionTooSmall(f"roundtrip needs at least 2 qubits, got {c.n_qubits}")
    back = decode(encode(c))
    return semantics(back) == semantics(c)
