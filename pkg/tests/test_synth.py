import random

import pytest

from rcch.circuit import Circuit, PPair, random_circuit, semantics
from rcch.errors import NotOrthogonal, OddParity
from rcch.ring import RingMatrix
from rcch.synth import column_phase_trace, exact_synthesize, synthesize_even
from rcch.words import HGen, Neg, Word, XGen, flatten, matrix_parities, word_parities, word_semantics


def _random_word(dim, length, seed):
    rng = random.Random(seed)
    gens = []
    for _ in range(length):
        kind = rng.choice("ZXH")
        if kind == "Z":
            gens.append(Neg(rng.randrange(dim)))
        else:
            a, b = rng.sample(range(dim), 2)
            gens.append(XGen(a, b) if kind == "X" else HGen(a, b))
    return Word(dim, gens)


def test_identity_needs_no_generators():
    assert exact_synthesize(RingMatrix.identity(4)) == Word(4)


def test_signed_permutation_uses_no_hadamards():
    M = RingMatrix.from_rows([[0, -1, 0], [0, 0, 1], [1, 0, 0]])
    w = exact_synthesize(M)
    assert not any(isinstance(g, HGen) for g in w.gens)
    assert word_semantics(w) == M


@pytest.mark.parametrize("seed", range(6))
def test_roundtrip_random_words(seed):
    dim = [2, 3, 5, 8, 6, 4][seed]
    w = _random_word(dim, 14, seed)
    A = word_semantics(w)
    out = exact_synthesize(A)
    assert word_semantics(out) == A
    assert word_parities(out) == word_parities(w)


@pytest.mark.parametrize("seed", range(3))
def test_roundtrip_circuit_matrices(seed):
    A = semantics(random_circuit(3, 20, seed=seed))
    assert word_semantics(exact_synthesize(A)) == A


def test_trace_is_strictly_decreasing():
    A = semantics(random_circuit(2, 15, seed=11))
    trace = column_phase_trace(A)
    for _, before, after in trace:
        assert after < before
    columns = [j for j, _, _ in trace]
    assert columns == sorted(columns, reverse=True)
    assert bool(trace) == (A.lde() > 0)


def test_even_synthesis():
    w = Word(4, [HGen(0, 1), HGen(2, 3), Neg(1), XGen(0, 2)])
    A = word_semantics(w)
    pw = synthesize_even(A)
    assert word_semantics(flatten(pw)) == A


def test_odd_parity_rejected(hadamard):
    with pytest.raises(OddParity):
        synthesize_even(hadamard)
    with pytest.raises(OddParity):
        synthesize_even(word_semantics(Word(2, [Neg(0)])))


def test_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        exact_synthesize(RingMatrix.from_rows([[1, 1], [0, 1]]))
    with pytest.raises(NotOrthogonal):
        exact_synthesize(RingMatrix.from_rows([[1, 0, 0], [0, 1, 0]]))


def test_circuit_matrices_have_even_parities():
    for seed in range(10):
        assert matrix_parities(semantics(random_circuit(3, 15, seed=seed))) == (0, 0)


def test_odd_determinant_is_rejected():
    rows = [[int(i == j) for j in range(8)] for i in range(8)]
    rows[7][7] = -1
    with pytest.raises(OddParity):
        synthesize_even(RingMatrix.from_rows(rows))


def test_ppair_matrix_synthesizes_exactly():
    A = semantics(Circuit(2, [PPair(0, 1)]))
    assert word_semantics(exact_synthesize(A)) == A
