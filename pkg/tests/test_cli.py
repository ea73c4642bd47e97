import io

import pytest

from rcch.axioms import load_catalog_file
from rcch.circuit import parse_circuit, print_circuit, random_circuit, semantics
from rcch.cli import main
from rcch.ring import RingMatrix
from rcch.words import parse_word, word_semantics


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def test_gray(capsys):
    assert main(["gray", "3"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "0  000" and rows[-1] == "7  100"
    assert main(["gray", "3", "4"]) == 0
    assert capsys.readouterr().out.strip() == "110"


def test_synth(write, tmp_path):
    A = semantics(random_circuit(2, 12, seed=1))
    src = write("a.mat", A.dumps())
    out = tmp_path / "a.word"
    assert main(["synth", src, "--out", str(out), "--verify"]) == 0
    assert word_semantics(parse_word(out.read_text())) == A


def test_synth_paired_rejects_odd_parity(write, hadamard):
    src = write("h.mat", hadamard.dumps())
    assert main(["synth", src, "--paired"]) == 1


def test_encode_and_decode(write, tmp_path, capsys):
    c = random_circuit(3, 10, seed=2)
    src = write("c.circ", print_circuit(c))
    word_file = tmp_path / "c.word"
    assert main(["encode", src, "--out", str(word_file), "--verify"]) == 0
    assert word_file.read_text().startswith("dim 8\n")
    back = tmp_path / "back.circ"
    assert main(["decode", str(word_file), "--out", str(back), "--verify"]) == 0
    assert semantics(parse_circuit(back.read_text())) == semantics(c)


def test_decode_from_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("dim 4\nH[2,3] Z[1]\n"))
    assert main(["decode", "-"]) == 0
    assert capsys.readouterr().out.startswith("qubits 2\n")


def test_normalize(write, capsys):
    assert main(["normalize", write("w.word", "dim 4\nZ[2] Z[0]\n")]) == 0
    out = capsys.readouterr().out
    assert "Z[0] Z[2]" in out and "form-B" in out
    assert main(["normalize", write("h.word", "dim 4\nH[2,3] H[0,1]\n")]) == 0
    assert "head=H[0,1] H[2,3]" in capsys.readouterr().out
    assert main(["normalize", write("one.circ", "qubits 1\nZ 0\nH 0\nH 0\n")]) == 0
    assert "z_prefixed k=0" in capsys.readouterr().out


def test_equiv(write, capsys):
    a = write("a.circ", "qubits 2\nCZ 0 1\n")
    b = write("b.circ", "qubits 2\nCZ 1 0\n")
    c = write("c.circ", "qubits 2\nZ 0\n")
    assert main(["equiv", a, b]) == 0
    assert capsys.readouterr().out.strip() == "equivalent"
    assert main(["equiv", a, c]) == 1
    assert capsys.readouterr().out.strip() == "not equivalent"
    assert main(["equiv", a, write("w.word", "dim 4\nZ[3]\n")]) == 2


def test_parity(write, capsys):
    assert main(["parity", write("w.word", "dim 4\nH[0,1] Z[2] X[1,3]\n")]) == 0
    assert capsys.readouterr().out.strip() == "H-parity 1  ZX-parity 0"
    assert main(["parity", write("m.mat", RingMatrix.identity(2).dumps())]) == 0
    assert capsys.readouterr().out.strip() == "H-parity 0  ZX-parity 0"


def test_verify_axioms(capsys):
    assert main(["verify-axioms", "--catalog", "fig7", "--dim", "4", "--budget", "20"]) == 0
    assert "all schemas pass" in capsys.readouterr().out


def test_rs_gen(tmp_path):
    out = tmp_path / "rs.toml"
    assert main(["rs-gen", "--out", str(out)]) == 0
    (catalog,) = load_catalog_file(out)
    assert catalog.get("DE-HH").rhs == "(H[$a,$b] H[0,1]) (H[0,1] H[$c,$d])"


def test_roundtrip(write, capsys):
    assert main(["roundtrip", "--qubits", "2", "--count", "3", "--length", "8"]) == 0
    assert "3/3 ok" in capsys.readouterr().out
    assert main(["roundtrip", write("c.circ", "qubits 3\nCH 2 0\nSWAP 0 2\n")]) == 0


@pytest.mark.parametrize("argv", [
    ["gray"],
    ["frobnicate"],
    ["verify-axioms", "--catalog", "fig99"],
])
def test_usage_errors(argv):
    assert main(argv) == 2


def test_parse_and_io_errors(write, capsys):
    assert main(["encode", write("bad.circ", "qubits 2\nH 0\nFOO 1\n")]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["parity", "/nonexistent/word.txt"]) == 2
    assert main(["normalize", write("two.circ", "qubits 2\nH 0\n")]) == 2


def test_domain_errors_exit_one(write, capsys):
    assert main(["normalize", write("many.word", "dim 4\nH[0,1] H[1,2] H[2,3] H[0,3]\n")]) == 1
    assert "TooManyH" in capsys.readouterr().err


@pytest.mark.slow
def test_selftest(capsys):
    assert main(["selftest", "--budget", "20"]) == 0
    out = capsys.readouterr().out
    assert "ok   catalog fig8 at N=16" in out
    assert "ok   synthesis of 500 words" in out
    assert "selftest passed" in out
