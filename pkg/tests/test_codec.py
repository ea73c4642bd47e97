import random

import pytest

from rcch.circuit import CH, CZ, H, X, Z, Circuit, McZ, Swap, random_circuit, semantics
from rcch.codec import (
    decode,
    decode2,
    decode2_table,
    decode_n,
    encode,
    encode2,
    encode_gate,
    encode_n,
    flip_factor,
    gray_form_first,
    gray_form_second,
    gray_hh_form,
    gray_relabel,
    gray_unrelabel,
    qubits_for_dim,
    roundtrip,
    sigma,
)
from rcch.errors import (
    DimensionMismatch,
    DimensionNotPowerOfTwo,
    DimensionTooSmall,
    IndicesNotDistinct,
    UnsupportedGate,
)
from rcch.ring import RingMatrix
from rcch.words import HGen, Neg, PWord, Word, XGen, gen_matrix, pword_semantics, word_semantics, word_to_pword


def _random_pword(dim, length, seed):
    rng = random.Random(seed)
    gens = []
    while len(gens) < 2 * length:
        if rng.random() < 0.4:
            a, b, c, d = rng.sample(range(dim), 4)
            gens += [HGen(a, b), HGen(c, d)]
        else:
            a, b, c = rng.sample(range(dim), 3)
            gens += [Neg(a), XGen(b, c) if rng.random() < 0.5 else Neg(c)]
    return word_to_pword(Word(dim, gens))


def test_two_qubit_encoding_table():
    assert encode2(Circuit(2, [H(1)])) == Word(4, [HGen(0, 1), HGen(2, 3)])
    assert encode2(Circuit(2, [CZ(0, 1)])) == Word(4, [Neg(3)])
    assert encode2(Circuit(2, [Swap(0, 1)])) == Word(4, [XGen(1, 2)])
    assert encode2(Circuit(2, [Z(0), CH(0, 1)])) == Word(4, [HGen(2, 3), Neg(2), Neg(3)])


@pytest.mark.parametrize("seed", range(5))
def test_two_qubit_encoding_keeps_semantics(seed):
    c = random_circuit(2, 15, seed=seed).then([X(0), CH(1, 0)])
    assert word_semantics(encode2(c)) == semantics(c)


def test_decode2_table_covers_all_generators():
    table = decode2_table()
    assert len(table) == 22
    for g, gates in table.items():
        assert semantics(Circuit(2, gates)) == gen_matrix(g, 4)


def test_decode2():
    w = Word(4, [HGen(3, 1), XGen(2, 0), Neg(1), HGen(0, 2)])
    assert semantics(decode2(w)) == word_semantics(w)
    with pytest.raises(DimensionMismatch):
        decode2(Word(8))


def test_gray_relabel_inverts():
    M = semantics(random_circuit(3, 8, seed=2))
    assert gray_unrelabel(gray_relabel(M, 3), 3) == M
    perm = gray_relabel(RingMatrix.identity(8), 3)
    assert perm == RingMatrix.identity(8)


@pytest.mark.parametrize("n, seed", [(3, 0), (3, 1), (4, 2)])
def test_paired_encoding_keeps_semantics(n, seed):
    c = random_circuit(n, 12, seed=seed).then([X(0), CH(n - 1, 0)])
    pw = encode_n(c)
    assert pw.dim == 1 << n
    assert pword_semantics(pw) == gray_relabel(semantics(c), n)


@pytest.mark.parametrize("compiled", [True, False])
@pytest.mark.parametrize("seed", range(3))
def test_paired_decoding_keeps_semantics(seed, compiled):
    pw = _random_pword(8, 6, seed)
    c = decode_n(pw, compiled=compiled)
    assert gray_relabel(semantics(c), 3) == pword_semantics(pw)


def test_decode_accepts_even_words():
    w = Word(8, [HGen(0, 5), HGen(7, 2), Neg(6), XGen(1, 4)])
    assert gray_relabel(semantics(decode_n(w)), 3) == word_semantics(w)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_roundtrip(n):
    for seed in range(3):
        assert roundtrip(random_circuit(n, 10, seed=seed))


def test_dispatch():
    c2 = random_circuit(2, 5, seed=3)
    assert isinstance(encode(c2), Word)
    assert isinstance(encode(random_circuit(3, 5, seed=3)), PWord)
    assert decode(PWord(4)).n_qubits == 2
    assert decode(PWord(16)).n_qubits == 4


def test_rejections():
    with pytest.raises(DimensionTooSmall):
        roundtrip(Circuit(1, [H(0)]))
    with pytest.raises(UnsupportedGate):
        encode_n(Circuit(3, [McZ([(0, 1)], 1)]))
    with pytest.raises(UnsupportedGate):
        encode_gate(CZ(0, 2), 3)
    with pytest.raises(DimensionTooSmall):
        encode_gate(H(0), 2)
    with pytest.raises(DimensionNotPowerOfTwo):
        qubits_for_dim(6)
    assert qubits_for_dim(16) == 4


def test_gray_face_forms():
    assert gray_hh_form(3, 0, 1, 3, 2) == (2, 1)
    assert gray_form_second(3, 0, 1, 3, 2)
    assert gray_hh_form(3, 0, 3, 1, 2) == (1, 2)
    assert gray_form_first(3, 0, 3, 1, 2)
    assert gray_hh_form(3, 0, 1, 2, 3) is None
    assert gray_hh_form(3, 0, 0, 1, 2) is None


@pytest.mark.parametrize("abcd", [(0, 1, 3, 2), (5, 2, 7, 0), (6, 4, 1, 3), (2, 3, 0, 1)])
def test_sigma_conjugates_base_pair(abcd):
    a, b, c, d = abcd
    sp = sigma(a, b, c, d, 8)
    lhs = sp.forward + Word(8, [HGen(0, 1), HGen(3, 2)]) + sp.backward
    assert word_semantics(lhs) == word_semantics(Word(8, [HGen(a, b), HGen(c, d)]))
    assert len(sp.forward) % 2 == 0 and len(sp.backward) % 2 == 0
    assert pword_semantics(sp.forward_pword()) == word_semantics(sp.forward)


def test_sigma_rejections():
    with pytest.raises(IndicesNotDistinct):
        sigma(0, 1, 1, 2, 8)
    with pytest.raises(DimensionTooSmall):
        sigma(0, 1, 3, 2, 4)


@pytest.mark.parametrize("seed", range(4))
def test_sigma_is_a_signed_permutation_onto_the_tuple(seed):
    rng = random.Random(seed)
    dim = 16 if seed % 2 else 8
    a, b, c, d = rng.sample(range(dim), 4)
    sp = sigma(a, b, c, d, dim)
    S = word_semantics(sp.forward)
    assert word_semantics(sp.backward) @ S == RingMatrix.identity(dim)
    perm, _ = S.signed_permutation()
    assert [perm[0], perm[1], perm[3], perm[2]] == [a, b, c, d]


def test_sigma_of_base_tuple_is_empty():
    sp = sigma(0, 1, 3, 2, 8)
    assert len(sp.forward) == 0 and len(sp.backward) == 0


@pytest.mark.parametrize("gate", [H(0), H(2), Z(1), X(0), X(2), CZ(0, 1), CZ(2, 1), CH(0, 1), CH(1, 2),
                                  Swap(0, 1), Swap(2, 1)])
def test_per_gate_clause_contract(gate):
    pw = PWord(8, encode_gate(gate, 3))
    assert pword_semantics(pw) == gray_relabel(semantics(Circuit(3, [gate])), 3)


@pytest.mark.parametrize("wire", range(3))
def test_flip_factor(wire):
    assert flip_factor(1, wire, 3) == []
    pw = PWord(8, flip_factor(0, wire, 3))
    assert len(pw) > 0
    assert pword_semantics(pw) == gray_relabel(semantics(Circuit(3, [X(wire)])), 3)
