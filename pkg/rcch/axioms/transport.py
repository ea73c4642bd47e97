"""
transport.py — coset data and the generator for the even-parity equational theory.

The even-parity matrices form an index-4 subgroup. Each generator read from a
coset representative c is rewritten as a paired word p followed by a new
representative c' with [[c·g]] = [[p·c']]. Running a word through that table
from a fixed representative gives its transport h**(c, w).

rs_transport() builds two families of equations from it:
  * DE-*: each paired generator equals the transport of its flattening from ε;
  * <coset>-<label>: each fig7 equation transported from each representative.

Usage:
    cat = rs_transport()
    assert not verify_h_table(8)
"""

import itertools
import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple

import attrs

from rcch.axioms.catalog import Catalog, load_catalog
from rcch.axioms.schema import (
    EquationSchema,
    Group,
    Item,
    MacroTemplate,
    build_word,
    condition_holds,
    parse_pattern,
)
from rcch.errors import TransportInvariantViolated
from rcch.words import Gen, HGen, Neg, PWord, XGen, gens_semantics, word_to_pword

logger = logging.getLogger(__name__)

FEASIBILITY_DIM = 8


# =================================================
# Coset data
# =================================================
COSETS: Dict[str, Tuple[Gen, ...]] = {
    "ε": (),
    "Z": (Neg(1),),
    "H": (HGen(0, 1),),
    "HZ": (HGen(0, 1), Neg(1)),
}


@attrs.frozen
class HCase:
    coset: str
    kind: str          # "Z", "X" or "H"
    when: str          # condition over $a, $b
    output: str        # paired pattern over $a, $b
    next: str


H_TABLE: Tuple[HCase, ...] = (
    HCase("ε", "Z", "True", "(Z[1] Z[$a])", "Z"),
    HCase("ε", "X", "$a == 1 or $b == 1", "(Z[$a*$b] X[$a,$b])", "Z"),
    HCase("ε", "X", "$a != 1 and $b != 1", "(Z[1] X[$a,$b])", "Z"),
    HCase("ε", "H", "True", "(H[$a,$b] H[0,1])", "H"),

    HCase("Z", "Z", "True", "(Z[1] Z[$a])", "ε"),
    HCase("Z", "X", "True", "(Z[1] X[$a,$b])", "ε"),
    HCase("Z", "H", "$a == 1 or $b == 1", "(Z[$b] X[$a,$b]) (H[$a,$b] H[0,1])", "HZ"),
    HCase("Z", "H", "$a != 1 and $b != 1", "(H[$a,$b] H[0,1])", "HZ"),

    HCase("H", "Z", "$a in {0, 1}", "(Z[1] Z[$a])", "HZ"),
    HCase("H", "Z", "$a not in {0, 1}", "(Z[$a] X[0,1])", "HZ"),
    HCase("H", "X", "{$a, $b} == {0, 1}", "(Z[1] X[0,1])", "HZ"),
    HCase("H", "X", "{$a, $b} & {0, 1} == {0}", "(X[0,1] X[$a,$b]) (H[$a+$b,1] H[0,1])", "HZ"),
    HCase("H", "X", "{$a, $b} & {0, 1} == {1}", "(Z[$a*$b] X[$a,$b]) (H[0,$a*$b] H[0,1])", "HZ"),
    HCase("H", "X", "not ({$a, $b} & {0, 1})", "(X[$a,$b] X[0,1])", "HZ"),
    HCase("H", "H", "True", "(H[0,1] H[$a,$b])", "ε"),

    HCase("HZ", "Z", "$a in {0, 1}", "(Z[1] Z[$a])", "H"),
    HCase("HZ", "Z", "$a not in {0, 1}", "(Z[$a] X[0,1])", "H"),
    HCase("HZ", "X", "{$a, $b} == {0, 1}", "(Z[0] X[0,1])", "H"),
    HCase("HZ", "X", "{$a, $b} & {0, 1} == {0}", "(X[0,1] X[$a,$b]) (H[$a+$b,1] H[0,1])", "H"),
    HCase("HZ", "X", "{$a, $b} & {0, 1} == {1}", "(X[0,1] X[$a,$b]) (H[0,$a*$b] H[0,1])", "H"),
    HCase("HZ", "X", "not ({$a, $b} & {0, 1})", "(X[$a,$b] X[0,1])", "H"),
    HCase("HZ", "H", "$a == 1 or $b == 1", "(H[0,1] H[$a,$b]) (Z[$a] X[$a,$b])", "Z"),
    HCase("HZ", "H", "$a != 1 and $b != 1", "(H[0,1] H[$a,$b])", "Z"),
)


def _kind(g: Gen) -> str:
    return "Z" if isinstance(g, Neg) else "X" if isinstance(g, XGen) else "H"


def _gen_env(g: Gen) -> Dict[str, int]:
    return {"a": g.a} if isinstance(g, Neg) else {"a": g.a, "b": g.b}


def h(coset: str, g: Gen, dim: int) -> Tuple[PWord, str]:
    """One transversal step on concrete indices: (p, c') with [[c·g]] = [[p·c']]."""
    env = _gen_env(g)
    for case in H_TABLE:
        if case.coset == coset and case.kind == _kind(g) and condition_holds(case.when, env, dim):
            return word_to_pword(build_word(case.output, env, dim)), case.next
    raise TransportInvariantViolated(f"no transversal case for ({coset}, {g})")


def h_star(coset: str, gens: Sequence[Gen], dim: int) -> Tuple[PWord, str]:
    pgens = []
    for g in gens:
        p, coset = h(coset, g, dim)
        pgens.extend(p.pgens)
    return PWord(dim, pgens), coset


def _all_gens(dim: int) -> List[Gen]:
    gens: List[Gen] = [Neg(a) for a in range(dim)]
    for a, b in itertools.permutations(range(dim), 2):
        gens.extend((XGen(a, b), HGen(a, b)))
    return gens


def verify_h_table(dim: int = FEASIBILITY_DIM) -> List[str]:
    """Every (coset, generator) at this dimension; returns the failing entries."""
    failures: List[str] = []
    for coset, rep in COSETS.items():
        for g in _all_gens(dim):
            p, nxt = h(coset, g, dim)
            left = gens_semantics(list(rep) + [g], dim)
            right = gens_semantics([x for pg in p.pgens for x in pg.parts()] + list(COSETS[nxt]), dim)
            if left != right:
                failures.append(f"h({coset}, {g}) = ({p}, {nxt})")
    logger.info(f"h table at dim {dim}: {len(failures)} failing entries")
    return failures


# =================================================
# Symbolic transport
# =================================================
_NAME_RE = re.compile(r"[A-Za-z_]\w*")
_COMPACT_RE = re.compile(r"^(\w+)\s*([*+])\s*(\w+)$")


def _dollar(expr: str) -> str:
    return _NAME_RE.sub(lambda m: "$" + m[0], expr)


def _simplify(expr: str) -> str:
    m = _COMPACT_RE.match(expr)
    if not m:
        return expr
    x, op, y = m[1], m[2], m[3]
    if x.isdigit() and y.isdigit():
        return str(int(x) * int(y) if op == "*" else int(x) + int(y))
    unit = "1" if op == "*" else "0"
    if x == unit:
        return y
    if y == unit:
        return x
    return f"{x}{op}{y}"


def _substitute(expr: str, args: Dict[str, str]) -> str:
    return _simplify(re.sub(r"\b([ab])\b", lambda m: args[m[1]], expr))


@attrs.frozen
class _SymGen:
    kind: str
    args: Tuple[str, ...]   # variable names or integer literals

    def text(self) -> str:
        return f"{self.kind}[{','.join(_dollar(a) for a in self.args)}]"


@attrs.frozen
class _Branch:
    when: Tuple[str, ...]
    pairs: Tuple[str, ...]
    coset: str


def _flatten_items(items: Sequence[Item]) -> List[_SymGen]:
    out: List[_SymGen] = []
    for item in items:
        if isinstance(item, Group):
            body = _flatten_items(item.items)
            out.extend(body * item.power)
        elif isinstance(item, MacroTemplate):
            raise TransportInvariantViolated(f"macro {item.name} cannot be transported")
        else:
            out.append(_SymGen(item.kind, tuple(a.replace(" ", "") for a in item.args)))
    return out


def _sym_gens(pattern: str) -> List[_SymGen]:
    return _flatten_items(parse_pattern(pattern))


class _Feasibility:
    def __init__(self, names: List[str], distinct: bool):
        self.names = names
        self.distinct = distinct
        self._seen: Dict[Tuple[str, ...], bool] = {}

    def holds(self, when: Tuple[str, ...]) -> bool:
        if when not in self._seen:
            self._seen[when] = any(
                all(condition_holds(c, dict(zip(self.names, vals)), FEASIBILITY_DIM) for c in when)
                for vals in itertools.product(range(FEASIBILITY_DIM), repeat=len(self.names))
                if not self.distinct or len(set(vals)) == len(vals)
            )
        return self._seen[when]


def _case_output(case: HCase, args: Dict[str, str]) -> List[str]:
    pairs: List[str] = []
    for group in parse_pattern(case.output):
        gens = [_SymGen(t.kind, tuple(_substitute(a, args) for a in t.args)) for t in group.items]
        pairs.append("(" + " ".join(g.text() for g in gens) + ")")
    return pairs


def _case_condition(case: HCase, args: Dict[str, str]) -> Optional[str]:
    if case.when == "True":
        return None
    return re.sub(r"\$([ab])\b", lambda m: _dollar(args[m[1]]), case.when)


def _transport(coset: str, gens: Sequence[_SymGen], feasible: _Feasibility,
               start: Tuple[str, ...] = ()) -> List[_Branch]:
    branches = [_Branch(start, (), coset)]
    for g in gens:
        args = {"a": g.args[0], "b": g.args[1] if len(g.args) > 1 else g.args[0]}
        grown: List[_Branch] = []
        for br in branches:
            for case in H_TABLE:
                if case.coset != br.coset or case.kind != g.kind:
                    continue
                cond = _case_condition(case, args)
                when = br.when
                if cond is not None and "$" not in cond:
                    # no variables left: decide now
                    if not condition_holds(cond, {}, FEASIBILITY_DIM):
                        continue
                elif cond is not None and cond not in when:
                    when = when + (cond,)
                if not feasible.holds(when):
                    continue
                grown.append(_Branch(when, br.pairs + tuple(_case_output(case, args)), case.next))
        branches = grown
    return branches


def _pattern(pairs: Sequence[str]) -> str:
    return " ".join(pairs) or "ε"


def _variables(pattern: str) -> List[str]:
    names: List[str] = []
    for g in _sym_gens(pattern):
        for a in g.args:
            if not a.isdigit() and a not in names:
                names.append(a)
    return names


def _equations(label: str, lhs_branches: List[_Branch], rhs_branches: List[_Branch],
               feasible: _Feasibility, schema: EquationSchema) -> List[EquationSchema]:
    found: List[Tuple[Tuple[str, ...], str, str]] = []
    for lb in lhs_branches:
        for rb in rhs_branches:
            when = lb.when + tuple(c for c in rb.when if c not in lb.when)
            if not feasible.holds(when):
                continue
            if lb.coset != rb.coset:
                raise TransportInvariantViolated(
                    f"{label}: sides end in cosets {lb.coset} and {rb.coset} under {list(when)}")
            found.append((when, _pattern(lb.pairs), _pattern(rb.pairs)))
    out = []
    for k, (when, lhs, rhs) in enumerate(found, 1):
        name = label if len(found) == 1 else f"{label}-{k}"
        out.append(EquationSchema(name=name, lhs=lhs, rhs=rhs, when=list(when),
                                  distinct=schema.distinct, min_dim=schema.min_dim))
    return out


_DE_SHAPES = (
    ("DE-ZZ", "(Z[$a] Z[$b])"),
    ("DE-ZX", "(Z[$a] X[$c,$d])"),
    ("DE-XX", "(X[$a,$b] X[$c,$d])"),
    ("DE-HH", "(H[$a,$b] H[$c,$d])"),
)


def _decomposition_equations() -> List[EquationSchema]:
    out: List[EquationSchema] = []
    for label, pattern in _DE_SHAPES:
        gens = _sym_gens(pattern)
        feasible = _Feasibility(_variables(pattern), distinct=False)
        within = tuple(f"${g.args[0]} != ${g.args[1]}" for g in gens if g.kind != "Z")
        branches = _transport("ε", gens, feasible, start=within)
        base = EquationSchema(name=label, lhs=pattern, min_dim=4)
        for k, br in enumerate(branches, 1):
            if br.coset != "ε":
                raise TransportInvariantViolated(f"{label}: flattening ends in coset {br.coset}")
            name = label if len(branches) == 1 else f"{label}-{k}"
            extra = [c for c in br.when if c not in within]
            out.append(EquationSchema(name=name, lhs=pattern, rhs=_pattern(br.pairs), when=extra,
                                      distinct=base.distinct, min_dim=base.min_dim))
    return out


def _coset_equations(source: Catalog) -> List[EquationSchema]:
    out: List[EquationSchema] = []
    for schema in source.schemas:
        label = schema.name.split(":", 1)[-1]
        names = _variables(schema.lhs + " " + schema.rhs)
        feasible = _Feasibility(names, schema.distinct)
        lhs, rhs = _sym_gens(schema.lhs), _sym_gens(schema.rhs)
        start = tuple(schema.when)
        for coset in COSETS:
            out.extend(_equations(f"{coset}-{label}", _transport(coset, lhs, feasible, start),
                                  _transport(coset, rhs, feasible, start), feasible, schema))
    return out


def rs_transport(source: Optional[Catalog] = None) -> Catalog:
    """Presentation of the even-parity subgroup generated from the fig7 catalog."""
    source = source or load_catalog("fig7")
    schemas = _decomposition_equations() + _coset_equations(source)
    logger.info(f"transport generated {len(schemas)} equations from {len(source.schemas)} source schemas")
    return Catalog(
        id="rs_transport",
        description=f"generated by transport of {source.id} through the four coset representatives",
        schemas=schemas,
    )
