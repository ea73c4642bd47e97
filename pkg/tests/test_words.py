import pytest

from rcch.errors import DimensionMismatch, IndexOutOfRange, IndicesNotDistinct, OddParity, ParseError
from rcch.ring import INV_SQRT2, RingMatrix
from rcch.words import (
    PHH,
    PXX,
    PZX,
    PZZ,
    HGen,
    Neg,
    PWord,
    Word,
    flatten,
    gen_matrix,
    inverse_pword,
    inverse_word,
    matrix_parities,
    pair_gens,
    parse_any,
    parse_pword,
    parse_word,
    print_word,
    pword_semantics,
    random_word,
    word_parities,
    word_semantics,
    word_to_pword,
    XGen,
)

SAMPLE = Word(8, [Neg(3), XGen(0, 5), HGen(2, 6), HGen(7, 1), XGen(4, 3), Neg(0), HGen(0, 1)])


def test_h_sign_follows_second_index():
    m = gen_matrix(HGen(1, 0), 2)
    assert m[1, 1] == INV_SQRT2
    assert m[0, 0] == -INV_SQRT2
    assert m[0, 1] == INV_SQRT2 and m[1, 0] == INV_SQRT2


def test_word_is_product_in_listed_order():
    gens = [Neg(0), HGen(0, 1), XGen(1, 2)]
    expected = gen_matrix(gens[0], 3) @ gen_matrix(gens[1], 3) @ gen_matrix(gens[2], 3)
    assert word_semantics(Word(3, gens)) == expected


def test_involutions():
    for g in (Neg(2), XGen(0, 3), HGen(1, 3)):
        assert word_semantics(Word(4, [g, g])) == RingMatrix.identity(4)
    assert word_semantics(Word(4)) == RingMatrix.identity(4)


def test_inverses():
    assert word_semantics(SAMPLE + inverse_word(SAMPLE)) == RingMatrix.identity(8)
    pw = PWord(4, [PZX(0, (0, 1)), PHH((0, 1), (3, 2)), PXX((1, 2), (0, 3)), PZZ(1, 2)])
    assert pword_semantics(pw + inverse_pword(pw)) == RingMatrix.identity(4)


def test_parities():
    assert word_parities(SAMPLE) == (1, 0)
    assert matrix_parities(word_semantics(SAMPLE)) == (1, 0)
    assert word_parities(Word(2)) == (0, 0)


def test_pairing_preserves_semantics():
    w = Word(4, [XGen(0, 1), Neg(0), HGen(0, 1), HGen(2, 3), Neg(1), Neg(3)])
    pw = word_to_pword(w)
    assert isinstance(pw.pgens[0], PZX)
    assert pword_semantics(pw) == word_semantics(w)


def test_pairing_rejects_odd_and_mixed():
    with pytest.raises(OddParity):
        word_to_pword(Word(2, [Neg(0)]))
    with pytest.raises(OddParity):
        word_to_pword(Word(2, [Neg(0), HGen(0, 1)]))
    with pytest.raises(ValueError):
        pair_gens(HGen(0, 1), Neg(0))


def test_text_roundtrip():
    assert parse_word(print_word(SAMPLE)) == SAMPLE
    pw = PWord(4, [PZZ(0, 3), PHH((0, 1), (3, 2))])
    assert print_word(pw) == "dim 4\n(Z[0] Z[3]) (H[0,1] H[3,2])\n"
    assert parse_pword(print_word(pw)) == pw
    assert flatten(pw) == Word(4, [Neg(0), Neg(3), HGen(0, 1), HGen(3, 2)])


def test_parse_any_dispatch():
    assert isinstance(parse_any("dim 4\nZ[0] X[1,2]\n"), Word)
    assert isinstance(parse_any("dim 4\n(Z[0] X[1,2])\n"), PWord)
    assert parse_any("dim 2\nε\n") == Word(2)


@pytest.mark.parametrize("text, line, column", [
    ("Z[0]\n", 1, 1),
    ("dim 4\nZ[0] Q[1]\n", 2, 6),
    ("dim 4\nZ[9]\n", 2, 1),
    ("dim 4\n\nH[1,1]\n", 3, 1),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_word(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_parse_pword_errors():
    with pytest.raises(ParseError):
        parse_word("dim 4\n(Z[0] Z[1])\n")
    with pytest.raises(ParseError):
        parse_pword("dim 4\n(Z[0] Z[1]\n")
    with pytest.raises(ParseError):
        parse_pword("dim 4\n(X[0,1] Z[1])\n")


def test_validation():
    with pytest.raises(IndexOutOfRange):
        Word(2, [Neg(2)])
    with pytest.raises(IndicesNotDistinct):
        Word(3, [XGen(1, 1)])
    with pytest.raises(DimensionMismatch):
        Word(2) + Word(4)


def test_random_word():
    w = random_word(8, 30, seed=3)
    assert len(w) == 30 and w.dim == 8
    assert w == random_word(8, 30, seed=3)
    assert not any(isinstance(g, HGen) for g in random_word(8, 30, seed=3, kinds="ZX"))
    with pytest.raises(IndexOutOfRange):
        random_word(1, 3)
