import pytest

from rcch.ring import INV_SQRT2, RingMatrix


@pytest.fixture
def hadamard():
    """1-qubit Hadamard over Z[1/√2]."""
    return RingMatrix.from_rows([[1, 1], [1, -1]]).scale(INV_SQRT2)


@pytest.fixture
def sample_circuit_text():
    return "qubits 2\nH 0\nCZ 0 1\nZ 1\nCH 1 0\nSWAP 0 1\n"
