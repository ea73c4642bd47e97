"""
cli.py — command-line front door for rcch.

Usage:
    python main.py gray 3                                  # 8-row Gray table
    python main.py synth matrix.txt --out word.txt --verify
    python main.py encode circuit.txt --verify
    python main.py decode word.txt --out circuit.txt
    python main.py normalize word.txt
    python main.py equiv a.circ b.circ
    python main.py parity word.txt
    python main.py verify-axioms --catalog fig8 --dim 8 --budget 2000 --seed 0
    python main.py rs-gen --out rs.toml --verify
    python main.py roundtrip --qubits 3 --count 20 --seed 1
    python main.py selftest

Every FILE argument accepts '-' for stdin. Exit codes: 0 success, 1 a semantic
check failed, 2 usage or parse error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

from rcch import config
from rcch.acceptance import acceptance_sweeps
from rcch.axioms import (
    CATALOG_IDS,
    check_catalog,
    dump_catalog,
    render_report,
    report_json,
    rs_transport,
    verify_h_table,
)
from rcch.circuit import Circuit, check_circuit_equation, parse_circuit, print_circuit, random_circuit, semantics
from rcch.codec import decode, encode, roundtrip, word_basis
from rcch.errors import ConfigError, ParseError, RcchError
from rcch.graycode import gray, gray_table
from rcch.normalform import nf_1qubit, nf_hfree, nf_low_h
from rcch.ring import RingMatrix
from rcch.synth import exact_synthesize, synthesize_even
from rcch.words import (
    HGen,
    PWord,
    Word,
    flatten,
    matrix_parities,
    parse_any,
    print_word,
    word_parities,
    word_semantics,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


# =================================================
# I/O helpers
# =================================================
def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _header(text: str) -> str:
    """First keyword of the first non-comment line: 'qubits', 'dim' or a matrix entry."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0]
    raise ParseError("empty input")


def _as_word(w: Union[Word, PWord]) -> Word:
    return flatten(w) if isinstance(w, PWord) else w


def _read_circuit_or_word(path: str) -> Union[Circuit, Word, PWord]:
    text = _read(path)
    if _header(text) == "qubits":
        return parse_circuit(text)
    return parse_any(text)


# =================================================
# Subcommands
# =================================================
def cmd_gray(args: argparse.Namespace) -> int:
    if args.k is not None:
        print(gray(args.n, args.k))
        return EXIT_OK
    for k, bits in gray_table(args.n):
        print(f"{k}  {bits}")
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    A = RingMatrix.parse(_read(args.file))
    w = synthesize_even(A) if args.paired else exact_synthesize(A)
    _emit(print_word(w), args.out)
    if args.verify:
        ok = word_semantics(_as_word(w)) == A
        print(f"verify: {'ok' if ok else 'FAIL'}", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    c = parse_circuit(_read(args.file))
    if args.qubits is not None and args.qubits != c.n_qubits:
        raise ConfigError(f"--qubits {args.qubits} does not match the circuit header ({c.n_qubits})")
    w = encode(c)
    _emit(print_word(w), args.out)
    if args.verify:
        ok = semantics(decode(w)) == semantics(c)
        print(f"verify: {'ok' if ok else 'FAIL'}", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    w = parse_any(_read(args.file))
    if args.dim is not None and args.dim != w.dim:
        raise ConfigError(f"--dim {args.dim} does not match the word header ({w.dim})")
    c = decode(w)
    _emit(print_circuit(c), args.out)
    if args.verify:
        ok = word_basis(semantics(c), c.n_qubits) == word_semantics(_as_word(w))
        print(f"verify: {'ok' if ok else 'FAIL'}", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    item = _read_circuit_or_word(args.file)
    if isinstance(item, Circuit):
        if item.n_qubits != 1:
            raise ConfigError(f"circuit normal forms are for 1 qubit, got {item.n_qubits}")
        nf1 = nf_1qubit(item.gates)
        _emit(print_circuit(Circuit(1, nf1.gates())), args.out)
        print(f"# {nf1.describe()}")
        return EXIT_OK
    w = _as_word(item)
    nf = nf_low_h(w) if any(isinstance(g, HGen) for g in w.gens) else nf_hfree(w)
    _emit(print_word(nf.to_word()), args.out)
    print(f"# {nf.describe()}")
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace) -> int:
    left, right = _read_circuit_or_word(args.left), _read_circuit_or_word(args.right)
    if isinstance(left, Circuit) != isinstance(right, Circuit):
        raise ConfigError("equiv compares two circuit files or two word files, not one of each")
    if isinstance(left, Circuit):
        same = check_circuit_equation(left, right)
    else:
        lw, rw = _as_word(left), _as_word(right)
        same = lw.dim == rw.dim and word_semantics(lw) == word_semantics(rw)
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_FAIL


def cmd_parity(args: argparse.Namespace) -> int:
    text = _read(args.file)
    if _header(text) == "dim":
        h_par, zx_par = word_parities(_as_word(parse_any(text)))
    else:
        h_par, zx_par = matrix_parities(RingMatrix.parse(text))
    print(f"H-parity {h_par}  ZX-parity {zx_par}")
    return EXIT_OK


def cmd_verify_axioms(args: argparse.Namespace) -> int:
    ids = list(CATALOG_IDS) if args.catalog == ["all"] else args.catalog
    failed = False
    for catalog_id in ids:
        report = check_catalog(catalog_id, args.dim, args.budget, args.seed, workers=args.workers)
        print(report_json(report) if args.json else render_report(report))
        failed = failed or not report.ok
    return EXIT_FAIL if failed else EXIT_OK


def cmd_rs_gen(args: argparse.Namespace) -> int:
    catalog = rs_transport()
    _emit(dump_catalog(catalog), args.out)
    if args.verify:
        report = check_catalog(catalog, args.dim, args.budget, args.seed, workers=args.workers)
        text = report_json(report) if args.json else render_report(report)
        print(text, file=sys.stderr if not args.out else sys.stdout)
        return EXIT_OK if report.ok else EXIT_FAIL
    return EXIT_OK


def cmd_roundtrip(args: argparse.Namespace) -> int:
    if args.file:
        circuits = [parse_circuit(_read(args.file))]
    else:
        circuits = [random_circuit(args.qubits, args.length, seed=args.seed + i) for i in range(args.count)]
    bad = [i for i, c in enumerate(circuits) if not roundtrip(c)]
    print(f"roundtrip: {len(circuits) - len(bad)}/{len(circuits)} ok")
    for i in bad:
        print(f"FAIL circuit {i}")
    return EXIT_FAIL if bad else EXIT_OK


# =================================================
# Selftest
# =================================================
SELFTEST_DIMS = (8, 16)


def cmd_selftest(args: argparse.Namespace) -> int:
    failed = 0
    for sweep in acceptance_sweeps(args.seed):
        result = sweep()
        failed += not result.ok
        print(f"{'ok  ' if result.ok else 'FAIL'} {result.name}")
        for text in result.failures[:5]:
            print(f"     {text}")

    checks: List[Tuple[str, Callable[[], bool]]] = [("h table at N=8", lambda: not verify_h_table(8))]
    for dim in SELFTEST_DIMS:
        for catalog_id in CATALOG_IDS:
            checks.append((f"catalog {catalog_id} at N={dim}",
                           lambda cid=catalog_id, d=dim: check_catalog(cid, d, args.budget, args.seed,
                                                                       workers=args.workers).ok))
        checks.append((f"rs_transport at N={dim}",
                       lambda d=dim: check_catalog(rs_transport(), d, args.budget, args.seed,
                                                   workers=args.workers).ok))
    for name, check in checks:
        try:
            ok = check()
        except RcchError as exc:
            logger.error(f"{name}: {exc}")
            ok = False
        failed += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
    print("selftest passed" if not failed else f"selftest: {failed} checks failed")
    return EXIT_FAIL if failed else EXIT_OK


# =================================================
# Parser
# =================================================
def _sampling_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, default=8, help="dimension N to instantiate at (default: 8)")
    p.add_argument("--budget", type=int, default=config.DEFAULT_BUDGET, help="instances per schema before sampling")
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1, help="processes for the soundness checks")
    p.add_argument("--json", action="store_true", help="machine-readable report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcch", description="Exact tooling for real-Clifford+CH circuits")
    parser.add_argument("--log-level", default=None, help=f"logging level (default: {config.LOG_LEVEL})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gray", help="Gray code table, or one code")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int, nargs="?")
    p.set_defaults(func=cmd_gray)

    p = sub.add_parser("synth", help="matrix file -> word file")
    p.add_argument("file")
    p.add_argument("--paired", action="store_true", help="emit a paired word (even parities only)")
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("encode", help="circuit file -> word file")
    p.add_argument("file")
    p.add_argument("--qubits", type=int)
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="word file -> circuit file")
    p.add_argument("file")
    p.add_argument("--dim", type=int)
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("normalize", help="normal form of a word file or a 1-qubit circuit file")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("equiv", help="exact semantic comparison of two circuit or word files")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("parity", help="(H-parity, ZX-parity) of a word or matrix file")
    p.add_argument("file")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("verify-axioms", help="check every instance of a catalog")
    p.add_argument("--catalog", action="append", required=True,
                   choices=list(CATALOG_IDS) + ["all"], help="catalog id, repeatable, or 'all'")
    _sampling_flags(p)
    p.set_defaults(func=cmd_verify_axioms)

    p = sub.add_parser("rs-gen", help="generate the transported theory as a catalog file")
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true", help="also check the generated equations")
    _sampling_flags(p)
    p.set_defaults(func=cmd_rs_gen)

    p = sub.add_parser("roundtrip", help="decode(encode(c)) against c, for a file or random circuits")
    p.add_argument("file", nargs="?")
    p.add_argument("--qubits", type=int, default=3)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--length", type=int, default=16)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("selftest", help="reduced acceptance sweep")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    config.setup_logging(args.log_level.upper() if args.log_level else None)
    try:
        return args.func(args)
    except (ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RcchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
