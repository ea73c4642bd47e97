"""
schema.py — equation schemas: the record model, the pattern language and instantiation.

Patterns use the word syntax with index expressions inside the brackets:

    (Z[$a] X[$a,$a+1]) (Z[$a+1] X[$a+1,$a+2])
    (H[$c,$d] H[$a,$c] H[$b,$d])^4
    SIGMA[$a,$b,$c,$d] (H[0,1] H[3,2]) SIGMAP[$a,$b,$c,$d]
    (H[$a,$b] H[E[$a,$b,$c,$d],F[$a,$b,$c,$d]])

Parentheses group (and mark pairs); `^k` repeats the preceding group or
generator. Side conditions are expressions over the same `$` variables.
Inside both, N is the dimension and n its qubit count.

Usage:
    s = EquationSchema(name="fig8:24", lhs="...", rhs="...")
    for inst in instantiate(s, 8, budget=2000, seed=0):
        check_sound(inst.lhs, inst.rhs)
"""

from __future__ import annotations

import ast
import functools
import itertools
import logging
import random
import re
from types import CodeType
from typing import Callable, Dict, Iterator, List, Literal, Optional, Sequence, Tuple, Union

import attrs
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from rcch import config
from rcch.circuit import Circuit, parse_circuit
from rcch.codec import gray_form_first, gray_form_second, sigma, two_smallest_outside
from rcch.errors import (
    DimensionTooSmall,
    FormMismatch,
    IndexOutOfRange,
    IndicesNotDistinct,
    ParseError,
)
from rcch.words import Gen, HGen, Neg, Word, XGen, flatten, validate_gen

logger = logging.getLogger(__name__)

_VAR_RE = re.compile(r"\$([A-Za-z_]\w*)")


# =================================================
# Pattern syntax tree
# =================================================
@attrs.frozen
class GenTemplate:
    kind: str                # "Z", "X" or "H"
    args: Tuple[str, ...]    # python index expressions


@attrs.frozen
class MacroTemplate:
    name: str                # SIGMA, SIGMAP, W1, W2
    args: Tuple[str, ...]


@attrs.frozen
class Group:
    items: Tuple["Item", ...]
    power: int = 1


Item = Union[GenTemplate, MacroTemplate, Group]

_ARITY = {"Z": 1, "X": 2, "H": 2, "SIGMA": 4, "SIGMAP": 4, "W1": 4, "W2": 4}


def _to_python(expr: str) -> str:
    return _VAR_RE.sub(r"\1", expr).replace("[", "(").replace("]", ")")


def _split_args(body: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i].strip())
            start = i + 1
    parts.append(body[start:].strip())
    return parts


class _PatternParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str) -> ParseError:
        return ParseError(f"{message} in pattern {self.text!r}", None, self.pos + 1)

    def skip_space(self) -> None:
        while self.pos < len(self.text) and (self.text[self.pos].isspace() or self.text[self.pos] == "ε"):
            self.pos += 1

    def power(self) -> int:
        m = re.compile(r"\s*\^\s*(\d+)").match(self.text, self.pos)
        if not m:
            return 1
        self.pos = m.end()
        return int(m[1])

    def bracket_body(self) -> str:
        depth = 0
        start = self.pos + 1
        for i in range(self.pos, len(self.text)):
            if self.text[i] == "[":
                depth += 1
            elif self.text[i] == "]":
                depth -= 1
                if depth == 0:
                    self.pos = i + 1
                    return self.text[start:i]
        raise self.fail("unbalanced '['")

    def sequence(self, closing: bool) -> Tuple[Item, ...]:
        items: List[Item] = []
        while True:
            self.skip_space()
            if self.pos >= len(self.text):
                if closing:
                    raise self.fail("missing ')'")
                return tuple(items)
            ch = self.text[self.pos]
            if ch == ")":
                if not closing:
                    raise self.fail("unexpected ')'")
                self.pos += 1
                return tuple(items)
            if ch == "(":
                self.pos += 1
                item: Item = Group(self.sequence(closing=True))
            else:
                item = self.generator()
            k = self.power()
            if k != 1:
                item = Group((item,), k)
            items.append(item)

    def generator(self) -> Item:
        m = re.compile(r"[A-Z][A-Z0-9]*").match(self.text, self.pos)
        if not m or m[0] not in _ARITY:
            raise self.fail("expected Z[..], X[..], H[..] or a macro")
        name = m[0]
        self.pos = m.end()
        if self.pos >= len(self.text) or self.text[self.pos] != "[":
            raise self.fail(f"expected '[' after {name}")
        args = _split_args(self.bracket_body())
        if len(args) != _ARITY[name] or not all(args):
            raise self.fail(f"{name} takes {_ARITY[name]} indices, got {len(args)}")
        py_args = tuple(_to_python(a) for a in args)
        for a in py_args:
            compile_expr(a)
        if name in ("Z", "X", "H"):
            return GenTemplate(name, py_args)
        return MacroTemplate(name, py_args)


@functools.lru_cache(maxsize=None)
def parse_pattern(text: str) -> Tuple[Item, ...]:
    return _PatternParser(text).sequence(closing=False)


def pattern_variables(text: str) -> List[str]:
    return list(dict.fromkeys(_VAR_RE.findall(text)))


# =================================================
# Expressions
# =================================================
_ALLOWED_NODES = (
    ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.Not, ast.USub, ast.UAdd,
    ast.BinOp, ast.Add, ast.Sub, ast.Mult, ast.Mod, ast.FloorDiv, ast.BitAnd, ast.BitOr,
    ast.Compare, ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE, ast.In, ast.NotIn,
    ast.Name, ast.Load, ast.Constant, ast.Set, ast.Tuple, ast.Call,
)

FUNCTION_NAMES = frozenset({"len", "min", "max", "abs", "E", "F", "gray_form_first", "gray_form_second"})


@functools.lru_cache(maxsize=None)
def compile_expr(text: str) -> CodeType:
    """Compile an index expression or side condition, rejecting anything outside the small grammar."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad expression {text!r}: {exc.msg}", None, exc.offset)
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ParseError(f"{type(node).__name__} is not allowed in {text!r}")
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTION_NAMES or node.keywords:
                raise ParseError(f"only {sorted(FUNCTION_NAMES)} may be called in {text!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, int):
            raise ParseError(f"only integer constants are allowed in {text!r}")
    return compile(tree, "<schema>", "eval")


@functools.lru_cache(maxsize=None)
def _functions(dim: int) -> Dict[str, Callable]:
    n = dim.bit_length() - 1

    def outside(a: int, b: int, c: int, d: int) -> Tuple[int, int]:
        return two_smallest_outside(dim, {a, b, c, d})

    return {
        "len": len, "min": min, "max": max, "abs": abs,
        "E": lambda a, b, c, d: outside(a, b, c, d)[0],
        "F": lambda a, b, c, d: outside(a, b, c, d)[1],
        "gray_form_first": lambda a, b, c, d: gray_form_first(n, a, b, c, d),
        "gray_form_second": lambda a, b, c, d: gray_form_second(n, a, b, c, d),
        "N": dim,
        "n": n,
    }


def evaluate(text: str, env: Dict[str, int], dim: int):
    """Evaluate a python-form expression over integer variables."""
    scope = dict(_functions(dim))
    scope.update(env)
    try:
        return eval(compile_expr(text), {"__builtins__": {}}, scope)
    except NameError as exc:
        raise ParseError(f"unbound name in {text!r}: {exc}")


def condition_holds(condition: str, env: Dict[str, int], dim: int) -> bool:
    return bool(evaluate(_to_condition(condition), env, dim))


def _to_condition(text: str) -> str:
    return _VAR_RE.sub(r"\1", text)


def _index(expr: str, env: Dict[str, int], dim: int) -> int:
    value = evaluate(expr, env, dim)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"index expression {expr!r} did not give an integer")
    return value


# =================================================
# Building words
# =================================================
def _macro_gens(m: MacroTemplate, values: List[int], dim: int) -> List[Gen]:
    if m.name in ("SIGMA", "SIGMAP"):
        sp = sigma(*values, dim)
        return list((sp.forward if m.name == "SIGMA" else sp.backward).gens)
    # W1/W2 need the codec-tailored words
    from rcch.axioms.tailored import build_w1, build_w2

    n = dim.bit_length() - 1
    build = build_w1 if m.name == "W1" else build_w2
    return list(flatten(build(*values, n)).gens)


def build_gens(items: Sequence[Item], env: Dict[str, int], dim: int) -> List[Gen]:
    out: List[Gen] = []
    for item in items:
        if isinstance(item, Group):
            body = build_gens(item.items, env, dim)
            out.extend(body * item.power)
            continue
        values = [_index(a, env, dim) for a in item.args]
        if isinstance(item, MacroTemplate):
            out.extend(_macro_gens(item, values, dim))
            continue
        g: Gen
        if item.kind == "Z":
            g = Neg(values[0])
        elif item.kind == "X":
            g = XGen(*values)
        else:
            g = HGen(*values)
        validate_gen(g, dim)
        out.append(g)
    return out


def build_word(pattern: str, env: Dict[str, int], dim: int) -> Word:
    return Word(dim, build_gens(parse_pattern(pattern), env, dim))


def pattern_shape(pattern: str) -> Tuple[Tuple[str, Tuple[str, ...]], ...]:
    """Flat (kind, args) sequence with groups expanded; used to compare listings."""
    out: List[Tuple[str, Tuple[str, ...]]] = []

    def walk(items: Sequence[Item]) -> None:
        for item in items:
            if isinstance(item, Group):
                for _ in range(item.power):
                    walk(item.items)
            elif isinstance(item, MacroTemplate):
                out.append((item.name, tuple(a.replace(" ", "") for a in item.args)))
            else:
                out.append((item.kind, tuple(a.replace(" ", "") for a in item.args)))

    walk(parse_pattern(pattern))
    return tuple(out)


# =================================================
# Schema records
# =================================================
class EquationSchema(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    lhs: str
    rhs: str = "ε"
    when: List[str] = []
    distinct: bool = False
    min_dim: int = 2
    kind: Literal["word", "circuit"] = "word"
    qubits: Optional[int] = None
    note: str = ""

    @field_validator("when", mode="before")
    @classmethod
    def _single_condition(cls, v):
        return [v] if isinstance(v, str) else v

    @model_validator(mode="after")
    def _check_syntax(self) -> "EquationSchema":
        if self.kind == "circuit":
            if not self.qubits or self.qubits < 1:
                raise ValueError(f"{self.name}: circuit schemas need a positive 'qubits'")
        else:
            parse_pattern(self.lhs)
            parse_pattern(self.rhs)
        for c in self.when:
            compile_expr(_to_condition(c))
        return self

    def variables(self) -> List[str]:
        text = " ".join([self.lhs, self.rhs] + list(self.when))
        return pattern_variables(text)

    def domain(self, dim: int) -> range:
        return range(self.qubits) if self.kind == "circuit" else range(dim)

    def shape(self) -> Tuple[tuple, tuple]:
        """Flattened (lhs, rhs) token sequences with variables renamed v0, v1, ... by first appearance."""
        names = pattern_variables(self.lhs + " " + self.rhs)
        rename = {name: f"v{i}" for i, name in enumerate(names)}

        def renamed(text: str) -> str:
            return _VAR_RE.sub(lambda m: "$" + rename[m[1]], text)

        return pattern_shape(renamed(self.lhs)), pattern_shape(renamed(self.rhs))


@attrs.frozen
class Instance:
    schema: str
    assignment: Tuple[Tuple[str, int], ...]
    lhs: Optional[Union[Word, Circuit]]
    rhs: Optional[Union[Word, Circuit]]
    # set when the assignment passed the side conditions but a side could not be built
    error: Optional[str] = None

    @property
    def built(self) -> bool:
        return self.error is None

    def describe(self) -> str:
        env = ", ".join(f"{k}={v}" for k, v in self.assignment) or "-"
        if self.error is not None:
            return f"{self.schema} [{env}]: not built: {self.error}"
        return f"{self.schema} [{env}]: {self.lhs} ≈ {self.rhs}"


def _circuit_from(body: str, qubits: int, env: Dict[str, int]) -> Circuit:
    text = _VAR_RE.sub(lambda m: str(env[m[1]]), body)
    lines = [f"qubits {qubits}"] + [part.strip() for part in text.replace("ε", "").split(";")]
    return parse_circuit("\n".join(lines) + "\n")


def accepts(schema: EquationSchema, env: Dict[str, int], dim: int) -> bool:
    if schema.distinct and len(set(env.values())) != len(env):
        return False
    return all(condition_holds(c, env, dim) for c in schema.when)


def build_instance(schema: EquationSchema, env: Dict[str, int], dim: int) -> Instance:
    assignment = tuple(env.items())
    if schema.kind == "circuit":
        return Instance(schema.name, assignment,
                        _circuit_from(schema.lhs, schema.qubits, env),
                        _circuit_from(schema.rhs, schema.qubits, env))
    return Instance(schema.name, assignment,
                    build_word(schema.lhs, env, dim),
                    build_word(schema.rhs, env, dim))


def _assignments(schema: EquationSchema, dim: int, budget: int, rng: random.Random) -> List[Tuple[int, ...]]:
    names = schema.variables()
    domain = schema.domain(dim)
    space = len(domain) ** len(names)
    if space <= config.ENUM_LIMIT:
        found = [vals for vals in itertools.product(domain, repeat=len(names))
                 if accepts(schema, dict(zip(names, vals)), dim)]
        if len(found) > budget:
            rng.shuffle(found)
        return found
    # too many to enumerate: draw uniformly and keep the admissible ones
    tried: set = set()
    kept: List[Tuple[int, ...]] = []
    for _ in range(max(100 * budget, 10_000)):
        vals = tuple(rng.choice(domain) for _ in names)
        if vals in tried:
            continue
        tried.add(vals)
        if accepts(schema, dict(zip(names, vals)), dim):
            kept.append(vals)
            if len(kept) >= 2 * budget:
                break
    logger.debug(f"{schema.name}: sampled {len(kept)} admissible assignments from a space of {space}")
    return kept


def instantiate(schema: EquationSchema, dim: int, budget: Optional[int] = None,
                seed: Optional[int] = None) -> List[Instance]:
    """Instances satisfying the side conditions, in canonical order; seeded sample above budget.

    An admissible assignment whose sides cannot be built comes back with `error` set.
    """
    if dim < schema.min_dim:
        raise DimensionTooSmall(f"{schema.name} needs dimension >= {schema.min_dim}, got {dim}")
    budget = config.DEFAULT_BUDGET if budget is None else budget
    rng = random.Random(config.DEFAULT_SEED if seed is None else seed)
    names = schema.variables()
    built: List[Instance] = []
    for vals in _assignments(schema, dim, budget, rng):
        if len(built) >= budget:
            break
        env = dict(zip(names, vals))
        try:
            built.append(build_instance(schema, env, dim))
        except (IndexOutOfRange, IndicesNotDistinct, FormMismatch) as exc:
            logger.warning(f"{schema.name}: {env} passes the side conditions but cannot be built: {exc}")
            built.append(Instance(schema.name, tuple(env.items()), None, None,
                                  error=f"{type(exc).__name__}: {exc}"))
    built.sort(key=lambda inst: tuple(v for _, v in inst.assignment))
    if not built:
        logger.warning(f"{schema.name}: no admissible instance at dimension {dim}")
    return built


def iter_instances(schema: EquationSchema, dim: int, budget: Optional[int] = None,
                   seed: Optional[int] = None) -> Iterator[Instance]:
    yield from instantiate(schema, dim, budget, seed)
