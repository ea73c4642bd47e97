import pytest

from rcch.circuit import (
    CH,
    CZ,
    H,
    X,
    Z,
    Circuit,
    Cnot,
    McH,
    McZ,
    McZX,
    PPair,
    Swap,
    check_circuit_equation,
    dagger,
    expand_shortcuts,
    format_gate,
    parse_circuit,
    print_circuit,
    random_circuit,
    semantics,
)
from rcch.errors import DimensionMismatch, IndexOutOfRange, IndicesNotDistinct, ParseError, WidthTooLarge
from rcch.ring import INV_SQRT2, RingMatrix

Z1 = RingMatrix.from_rows([[1, 0], [0, -1]])


def test_single_qubit_gates(hadamard):
    assert semantics(Circuit(1, [H(0)])) == hadamard
    assert semantics(Circuit(1, [Z(0)])) == Z1
    assert semantics(Circuit(1, [X(0)])) == RingMatrix.from_rows([[0, 1], [1, 0]])


def test_first_gate_applies_first(hadamard):
    assert semantics(Circuit(1, [H(0), Z(0)])) == Z1 @ hadamard
    assert semantics(Circuit(1, [H(0), Z(0)])) != hadamard @ Z1


def test_qubit_zero_is_most_significant():
    m = semantics(Circuit(2, [X(0)]))
    assert m[2, 0] == 1 and m[0, 0] == 0
    m = semantics(Circuit(2, [X(1)]))
    assert m[1, 0] == 1


def test_controlled_hadamard():
    r = INV_SQRT2
    expected = RingMatrix.from_rows([
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, r, r],
        [0, 0, r, -r],
    ])
    assert semantics(Circuit(2, [CH(0, 1)])) == expected


def test_multi_controlled_gates_reduce_to_primitives():
    assert check_circuit_equation(Circuit(2, [McZ([(0, 1)], 1)]), Circuit(2, [Z(0)]))
    assert check_circuit_equation(Circuit(3, [McZ([(0, 1), (1, 1)], 2)]), Circuit(3, [CZ(0, 1)]))
    assert check_circuit_equation(Circuit(3, [McH([(0, 1)], 1, 2)]), Circuit(3, [CH(0, 1)]))
    white = Circuit(2, [X(0), McZ([(0, 1)], 1), X(0)])
    assert check_circuit_equation(Circuit(2, [McZ([(0, 0)], 1)]), white)


def test_controlled_zx_and_its_inverse():
    c = Circuit(2, [McZX([(0, 1)], 1, 0)])
    zx = Circuit(2, [X(1), Z(1)])
    assert check_circuit_equation(c, Circuit(2, [Cnot(0, 1), CZ(0, 1)]))
    assert semantics(c + dagger(c)) == RingMatrix.identity(4)
    assert check_circuit_equation(Circuit(2, [McZX([], 1, 0)]), zx)


def test_ppair_is_orthogonal():
    m = semantics(Circuit(2, [PPair(0, 1)]))
    assert m.is_orthogonal()
    assert m.lde() == 3


def test_dagger_inverts():
    c = random_circuit(3, 25, seed=4)
    assert semantics(c + dagger(c)) == RingMatrix.identity(8)


def test_random_circuit_is_seeded():
    assert random_circuit(3, 10, seed=7) == random_circuit(3, 10, seed=7)
    assert len(random_circuit(1, 5, seed=1)) == 5


def test_expand_shortcuts_keeps_semantics():
    c = Circuit(4, [CZ(0, 3), CH(3, 0), CH(1, 3), Swap(0, 2), Cnot(2, 0), X(1), CH(2, 1)])
    expanded = expand_shortcuts(c)
    assert check_circuit_equation(c, expanded)
    for g in expanded.gates:
        assert isinstance(g, (H, Z, CZ, CH, Swap))
        if len(g.qubits()) == 2:
            a, b = g.qubits()
            assert abs(a - b) == 1
        if isinstance(g, CH):
            assert g.target == g.control + 1


def test_text_roundtrip(sample_circuit_text):
    c = parse_circuit(sample_circuit_text)
    assert c.n_qubits == 2
    assert c.gates == (H(0), CZ(0, 1), Z(1), CH(1, 0), Swap(0, 1))
    assert parse_circuit(print_circuit(c)) == c


def test_macro_gate_text():
    c = Circuit(3, [McZ([(0, 1), (1, 0)], 2), McH([(0, 0)], 1, 2), McZX([(2, 1)], 0, 1)])
    text = print_circuit(c)
    assert "MCZ [+0,-1] dashed=2" in text
    assert format_gate(McZX([(2, 1)], 0, 1)) == "MCZX [+2] 0 sign=1"
    assert parse_circuit(text) == c


@pytest.mark.parametrize("text, line", [
    ("H 0\n", 1),
    ("qubits 2\nH 0\nFOO 1\n", 3),
    ("qubits 2\nCZ 0 0\n", 2),
    ("qubits 2\nH 2\n", 2),
    ("qubits 2\nCH 0\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_circuit(text)
    assert exc.value.line == line


def test_missing_header():
    with pytest.raises(ParseError):
        parse_circuit("# only a comment\n")


def test_validation():
    with pytest.raises(IndicesNotDistinct):
        Circuit(2, [CZ(1, 1)])
    with pytest.raises(IndexOutOfRange):
        Circuit(2, [H(2)])
    with pytest.raises(IndexOutOfRange):
        Circuit(0)


def test_width_cap_and_dimension_mismatch():
    with pytest.raises(WidthTooLarge):
        semantics(Circuit(4), max_qubits=3)
    with pytest.raises(DimensionMismatch):
        check_circuit_equation(Circuit(1), Circuit(2))
