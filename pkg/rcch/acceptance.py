"""
acceptance.py — seeded sweeps over every operation, shared by `selftest` and the slow tests.

Each sweep runs a fixed number of cases and returns a SweepResult listing the
cases that failed; a domain error inside a case counts as a failure of that
case. Defaults are the acceptance sizes.

Usage:
    from rcch.acceptance import sweep_synthesis
    result = sweep_synthesis(seed=0)
    assert result.ok, result.failures
"""

import logging
import random
from typing import Callable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from rcch import config
from rcch.axioms.tailored import build_w1, build_w2
from rcch.circuit import Circuit, H, Z, random_circuit, semantics
from rcch.codec import gray_hh_form, roundtrip, sigma
from rcch.errors import OddParity, RcchError
from rcch.graycode import gray, gray_inv
from rcch.normalform import decide_equiv_low_h, nf_1qubit, nf_hfree, nf_low_h
from rcch.ring import RingMatrix
from rcch.synth import exact_synthesize, synthesize_even
from rcch.words import (
    Gen,
    HGen,
    Neg,
    Word,
    XGen,
    matrix_parities,
    pword_semantics,
    random_word,
    word_parities,
    word_semantics,
)

logger = logging.getLogger(__name__)


class SweepResult(BaseModel):
    name: str
    cases: int
    failures: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.failures


def _run(name: str, cases: Sequence, check: Callable[..., Optional[str]]) -> SweepResult:
    """Run `check` on every case; it returns None on success or a short failure text."""
    failures: List[str] = []
    for case in cases:
        try:
            problem = check(case)
        except RcchError as exc:
            problem = f"{case}: {type(exc).__name__}: {exc}"
        if problem is not None:
            failures.append(problem)
    result = SweepResult(name=name, cases=len(cases), failures=failures)
    if result.ok:
        logger.info(f"{name}: {result.cases} cases passed")
    else:
        logger.warning(f"{name}: {len(failures)} of {result.cases} cases failed")
    return result


def _seed(seed: Optional[int]) -> int:
    return config.DEFAULT_SEED if seed is None else seed


# =================================================
# Gray codes
# =================================================
def _gray_problem(n: int) -> Optional[str]:
    codes = [gray(n, k) for k in range(1 << n)]
    if len(set(codes)) != len(codes):
        return f"n={n}: codes are not distinct"
    if any(gray_inv(n, bits) != k for k, bits in enumerate(codes)):
        return f"n={n}: gray_inv does not invert gray"
    if any(sum(x != y for x, y in zip(u, v)) != 1 for u, v in zip(codes, codes[1:])):
        return f"n={n}: consecutive codes differ in more than one bit"
    if any(bits.count("1") % 2 != k % 2 for k, bits in enumerate(codes)):
        return f"n={n}: popcount parity differs from index parity"
    return None


def sweep_gray(max_n: int = 12) -> SweepResult:
    return _run(f"gray codes n<={max_n}", list(range(1, max_n + 1)), _gray_problem)


# =================================================
# Synthesis and parities
# =================================================
def sweep_synthesis(count: int = 500, max_length: int = 30, dims: Sequence[int] = (2, 4, 8, 16),
                    seed: Optional[int] = None) -> SweepResult:
    """Exact synthesis of random words; the synthesized word keeps the input's parities."""
    rng = random.Random(_seed(seed))
    cases = [(dims[i % len(dims)], rng.randrange(max_length + 1), rng.randrange(1 << 30)) for i in range(count)]

    def check(case: Tuple[int, int, int]) -> Optional[str]:
        dim, length, s = case
        w = random_word(dim, length, seed=s)
        A = word_semantics(w)
        out = exact_synthesize(A)
        if word_semantics(out) != A:
            return f"dim={dim} seed={s}: synthesized word has different semantics"
        if word_parities(out) != word_parities(w):
            return f"dim={dim} seed={s}: parities {word_parities(w)} became {word_parities(out)}"
        return None

    return _run(f"synthesis of {count} words", cases, check)


def sweep_even_parity(count: int = 200, max_length: int = 20, seed: Optional[int] = None) -> SweepResult:
    """3-qubit circuits have parities (0, 0) and pair up; diag(1, ..., 1, -1) does not."""
    rng = random.Random(_seed(seed))
    cases: List = [(rng.randrange(max_length + 1), rng.randrange(1 << 30)) for _ in range(count)]

    def check(case) -> Optional[str]:
        if case == "odd":
            D = RingMatrix.from_rows([[(-1 if i == 7 else 1) if i == j else 0 for j in range(8)] for i in range(8)])
            try:
                synthesize_even(D)
            except OddParity:
                return None
            return "diag(1, ..., 1, -1) was paired"
        length, s = case
        A = semantics(random_circuit(3, length, seed=s))
        if matrix_parities(A) != (0, 0):
            return f"seed={s}: circuit matrix has parities {matrix_parities(A)}"
        if pword_semantics(synthesize_even(A)) != A:
            return f"seed={s}: paired synthesis has different semantics"
        return None

    return _run(f"even parity of {count} circuits", cases + ["odd"], check)


# =================================================
# Encoding
# =================================================
def sweep_roundtrips(two_qubit: int = 200, three_qubit: int = 50, seed: Optional[int] = None) -> SweepResult:
    """decode(encode(c)) against c for 2-qubit circuits up to 20 gates and 3-qubit up to 10."""
    rng = random.Random(_seed(seed))
    cases = ([(2, rng.randrange(21), rng.randrange(1 << 30)) for _ in range(two_qubit)]
             + [(3, rng.randrange(11), rng.randrange(1 << 30)) for _ in range(three_qubit)])

    def check(case: Tuple[int, int, int]) -> Optional[str]:
        n, length, s = case
        if not roundtrip(random_circuit(n, length, seed=s)):
            return f"n={n} length={length} seed={s}: decode(encode(c)) differs from c"
        return None

    return _run(f"codec roundtrips ({two_qubit} + {three_qubit})", cases, check)


def _sigma_problem(case: Tuple[int, Tuple[int, int, int, int]]) -> Optional[str]:
    dim, (a, b, c, d) = case
    sp = sigma(a, b, c, d, dim)
    S = word_semantics(sp.forward)
    if word_semantics(sp.backward) @ S != RingMatrix.identity(dim):
        return f"dim={dim} {(a, b, c, d)}: backward does not undo forward"
    found = S.signed_permutation()
    if found is None:
        return f"dim={dim} {(a, b, c, d)}: forward is not a signed permutation"
    perm, _ = found
    if [perm[0], perm[1], perm[3], perm[2]] != [a, b, c, d]:
        return f"dim={dim} {(a, b, c, d)}: 0, 1, 3, 2 go to {[perm[0], perm[1], perm[3], perm[2]]}"
    if (a, b, c, d) == (0, 1, 3, 2) and (len(sp.forward) or len(sp.backward)):
        return f"dim={dim}: sigma of (0, 1, 3, 2) is not empty"
    return None


def sweep_sigma(count: int = 100, dims: Sequence[int] = (8, 16), seed: Optional[int] = None) -> SweepResult:
    rng = random.Random(_seed(seed))
    cases: List[Tuple[int, Tuple[int, int, int, int]]] = []
    for dim in dims:
        tuples = {(0, 1, 3, 2)}
        while len(tuples) < count:
            tuples.add(tuple(rng.sample(range(dim), 4)))
        cases.extend((dim, t) for t in sorted(tuples))
    return _run(f"sigma over {count} tuples at N={','.join(map(str, dims))}", cases, _sigma_problem)


def _face_tuples(n: int) -> List[Tuple[int, int, int, int]]:
    """Every (a, b, c, d) in either Gray face form at n qubits."""
    out = []
    for a in range(1 << n):
        bits = gray(n, a)
        zeros = [w for w in range(n) if bits[w] == "0"]
        for t in zeros:
            for dashed in zeros:
                if t == dashed:
                    continue
                b, c = list(bits), list(bits)
                b[t], c[dashed] = "1", "1"
                d = list(b)
                d[dashed] = "1"
                out.append((a, gray_inv(n, "".join(b)), gray_inv(n, "".join(c)), gray_inv(n, "".join(d))))
    return out


def sweep_w1_w2(qubits: Sequence[int] = (3, 4)) -> SweepResult:
    """[[W1]] resp. [[W2]] equals [[H[a,b] H[c,d]]] for every face tuple."""
    cases = [(n, t) for n in qubits for t in _face_tuples(n)]

    def check(case) -> Optional[str]:
        n, (a, b, c, d) = case
        target, dashed = gray_hh_form(n, a, b, c, d)
        w = (build_w1 if target < dashed else build_w2)(a, b, c, d, n)
        if pword_semantics(w) != word_semantics(Word(1 << n, [HGen(a, b), HGen(c, d)])):
            return f"n={n} {(a, b, c, d)}: W{1 if target < dashed else 2} has different semantics"
        return None

    return _run(f"W1/W2 over n={','.join(map(str, qubits))}", cases, check)


# =================================================
# Normal forms
# =================================================
def _even_hfree(dim: int, length: int, rng: random.Random) -> Word:
    w = random_word(dim, length, seed=rng.randrange(1 << 30), kinds="ZX")
    if word_parities(w)[1]:
        w = Word(dim, list(w.gens) + [Neg(rng.randrange(dim))])
    return w


def _rewrite(w: Word, rng: random.Random, steps: int = 6) -> Word:
    """A different word with the same semantics: inserted g g pairs and Z[a] X[a,b] -> X[a,b] Z[b]."""
    gens: List[Gen] = list(w.gens)
    for _ in range(steps):
        if gens and rng.random() < 0.5:
            i = rng.randrange(len(gens))
            for j in range(i, len(gens) - 1):
                g, x = gens[j], gens[j + 1]
                if isinstance(g, Neg) and isinstance(x, XGen) and g.a in (x.a, x.b):
                    other = x.b if g.a == x.a else x.a
                    gens[j:j + 2] = [x, Neg(other)]
                    break
        else:
            a, b = rng.sample(range(w.dim), 2)
            g = rng.choice([Neg(a), XGen(a, b)])
            i = rng.randrange(len(gens) + 1)
            gens[i:i] = [g, g]
    return Word(w.dim, gens)


def sweep_form_b(pairs: int = 200, dim: int = 8, max_length: int = 20, seed: Optional[int] = None) -> SweepResult:
    """Form (B) is unique: equal semantics give equal forms, different semantics different forms."""
    rng = random.Random(_seed(seed))
    cases = []
    for _ in range(pairs):
        w = _even_hfree(dim, rng.randrange(max_length + 1), rng)
        cases.append((w, _rewrite(w, rng), _even_hfree(dim, rng.randrange(max_length + 1), rng)))

    def check(case: Tuple[Word, Word, Word]) -> Optional[str]:
        w, same, other = case
        nf = nf_hfree(w)
        if word_semantics(nf.to_word()) != word_semantics(w):
            return f"{w}: form (B) {nf.describe()} has different semantics"
        if nf_hfree(same) != nf:
            return f"{w} and {same}: equal semantics, different forms"
        if (nf_hfree(other) == nf) != (word_semantics(other) == word_semantics(w)):
            return f"{w} and {other}: form equality disagrees with semantic equality"
        return None

    return _run(f"form (B) uniqueness over {pairs} pairs", cases, check)


def sweep_low_h(pairs: int = 200, dim: int = 8, max_length: int = 10, seed: Optional[int] = None) -> SweepResult:
    """Words with one H pair: equal semantics give equal forms, and a sign pair is always detected."""
    rng = random.Random(_seed(seed))
    cases = []
    for _ in range(pairs):
        a, b, c, d = rng.sample(range(dim), 4)
        w = Word(dim, list(_even_hfree(dim, rng.randrange(max_length + 1), rng).gens)
                 + [HGen(a, b), HGen(c, d)]
                 + list(_even_hfree(dim, rng.randrange(max_length + 1), rng).gens))
        cases.append((w, _rewrite(w, rng), rng.sample(range(dim), 2)))

    def check(case) -> Optional[str]:
        w, same, (p, q) = case
        nf = nf_low_h(w)
        if word_semantics(nf.to_word()) != word_semantics(w):
            return f"{w}: {nf.describe()} has different semantics"
        if nf_low_h(same) != nf or not decide_equiv_low_h(w, same):
            return f"{w} and {same}: equal semantics, different forms"
        signed = Word(dim, list(w.gens) + [Neg(p), Neg(q)])
        if decide_equiv_low_h(w, signed) or nf_low_h(signed) == nf:
            return f"{w}: appending Z[{p}] Z[{q}] went unnoticed"
        return None

    return _run(f"one-H-pair forms over {pairs} pairs", cases, check)


def sweep_one_qubit(max_length: int = 12) -> SweepResult:
    """Every H/Z word up to `max_length` lands in one of 16 forms, each with its own matrix."""
    classes = {}
    problems: List[str] = []
    words = ["".join("H" if (bits >> i) & 1 else "Z" for i in range(length))
             for length in range(max_length + 1) for bits in range(1 << length)]

    def check(text: str) -> Optional[str]:
        nf = nf_1qubit(text)
        m = semantics(Circuit(1, [H(0) if s == "H" else Z(0) for s in text]))
        if semantics(Circuit(1, nf.gates())) != m:
            return f"{text or 'ε'}: {nf.describe()} has different semantics"
        if classes.setdefault((nf.family, nf.k), m) != m:
            return f"{text or 'ε'}: {nf.describe()} already holds another matrix"
        return None

    result = _run(f"1-qubit forms up to length {max_length}", words, check)
    if len(classes) != 16:
        problems.append(f"{len(classes)} classes instead of 16")
    if len({m.dumps() for m in classes.values()}) != len(classes):
        problems.append("two classes share a matrix")
    return result.model_copy(update={"failures": result.failures + problems})


def acceptance_sweeps(seed: Optional[int] = None) -> List[Callable[[], SweepResult]]:
    """Every sweep at acceptance size, not yet run."""
    return [
        sweep_gray,
        sweep_w1_w2,
        lambda: sweep_roundtrips(seed=seed),
        lambda: sweep_synthesis(seed=seed),
        lambda: sweep_even_parity(seed=seed),
        lambda: sweep_sigma(seed=seed),
        lambda: sweep_form_b(seed=seed),
        lambda: sweep_low_h(seed=seed),
        sweep_one_qubit,
    ]
