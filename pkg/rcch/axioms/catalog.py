"""
catalog.py — equation catalogs: loading, exact soundness checks and reports.

Catalogs live in data/catalogs.toml, one table per catalog. Keys of a catalog
table other than description/schemas/skipped are defaults merged into each of
its schemas.

Usage:
    report = check_catalog("fig7", dim=8, budget=2000, seed=0)
    print(render_report(report))
"""

import json
import logging
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ValidationError, model_validator

from rcch import config
from rcch.axioms.schema import EquationSchema, Instance, instantiate
from rcch.circuit import Circuit, check_circuit_equation, format_gate
from rcch.errors import ConfigError, DimensionMismatch, ParseError
from rcch.words import PWord, Word, flatten, print_word, word_semantics

logger = logging.getLogger(__name__)

DATA_FILE = Path(__file__).parent / "data" / "catalogs.toml"
CHUNK_SIZE = 250


# =================================================
# Models
# =================================================
class SkippedEntry(BaseModel):
    name: str
    reason: str = "source-unreadable"


class Catalog(BaseModel):
    id: str
    description: str = ""
    schemas: List[EquationSchema]
    skipped: List[SkippedEntry] = []

    @model_validator(mode="after")
    def _unique_names(self) -> "Catalog":
        seen = set()
        for s in self.schemas:
            if s.name in seen:
                raise ValueError(f"duplicate schema name {s.name!r} in catalog {self.id}")
            seen.add(s.name)
        return self

    def get(self, name: str) -> EquationSchema:
        for s in self.schemas:
            if s.name == name:
                return s
        raise KeyError(name)


class SchemaResult(BaseModel):
    name: str
    instances: int
    passed: int
    failures: List[str] = []
    applicable: bool = True

    @property
    def ok(self) -> bool:
        return self.passed == self.instances


class CatalogReport(BaseModel):
    catalog: str
    dim: int
    budget: int
    seed: int
    results: List[SchemaResult]
    skipped: List[SkippedEntry] = []

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failing(self) -> List[SchemaResult]:
        return [r for r in self.results if not r.ok]


# =================================================
# Loading
# =================================================
_CATALOG_KEYS = {"description", "schemas", "skipped"}


def _read(path: Optional[Path]) -> Dict:
    path = path or DATA_FILE
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}")
    except OSError as exc:
        raise ConfigError(f"cannot read catalog file {path}: {exc}")


def catalog_ids(path: Optional[Path] = None) -> List[str]:
    return list(_read(path))


def _build(catalog_id: str, table: Dict) -> Catalog:
    defaults = {k: v for k, v in table.items() if k not in _CATALOG_KEYS}
    schemas = [{**defaults, **entry} for entry in table.get("schemas", [])]
    try:
        return Catalog(
            id=catalog_id,
            description=table.get("description", ""),
            schemas=schemas,
            skipped=table.get("skipped", []),
        )
    except ValidationError as exc:
        raise ParseError(f"catalog {catalog_id}: {exc}")


def load_catalog(catalog_id: str, path: Optional[Path] = None) -> Catalog:
    data = _read(path)
    if catalog_id not in data:
        raise ConfigError(f"unknown catalog {catalog_id!r}; known: {', '.join(data)}")
    catalog = _build(catalog_id, data[catalog_id])
    logger.debug(f"loaded catalog {catalog_id}: {len(catalog.schemas)} schemas, {len(catalog.skipped)} skipped")
    return catalog


def load_catalog_file(path: Path) -> List[Catalog]:
    return [_build(cid, table) for cid, table in _read(path).items()]


def _toml_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, list):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    return json.dumps(value, ensure_ascii=False)


def dump_catalog(catalog: Catalog) -> str:
    """TOML text that load_catalog reads back into the same catalog."""
    lines = [f"[{json.dumps(catalog.id)}]", f"description = {_toml_value(catalog.description)}", ""]
    for s in catalog.schemas:
        lines.append(f"[[{json.dumps(catalog.id)}.schemas]]")
        record = s.model_dump(exclude_defaults=True)
        for key in ("name", "lhs", "rhs", "when", "distinct", "min_dim", "kind", "qubits", "note"):
            if key in record and record[key] is not None:
                lines.append(f"{key} = {_toml_value(record[key])}")
        lines.append("")
    for entry in catalog.skipped:
        lines.append(f"[[{json.dumps(catalog.id)}.skipped]]")
        lines.append(f"name = {_toml_value(entry.name)}")
        lines.append(f"reason = {_toml_value(entry.reason)}")
        lines.append("")
    return "\n".join(lines)


# =================================================
# Checking
# =================================================
Side = Union[Word, PWord, Circuit]


def _as_word(w: Union[Word, PWord]) -> Word:
    return flatten(w) if isinstance(w, PWord) else w


def check_sound(lhs: Side, rhs: Side) -> bool:
    """Both sides have the same semantics, exactly."""
    if isinstance(lhs, Circuit) or isinstance(rhs, Circuit):
        if not (isinstance(lhs, Circuit) and isinstance(rhs, Circuit)):
            return False
        try:
            return check_circuit_equation(lhs, rhs)
        except DimensionMismatch:
            return False
    if lhs.dim != rhs.dim:
        return False
    return word_semantics(_as_word(lhs)) == word_semantics(_as_word(rhs))


def _check_chunk(pairs: Sequence[Tuple[Side, Side]]) -> List[bool]:
    return [check_sound(lhs, rhs) for lhs, rhs in pairs]


def _side_text(side: Side) -> str:
    if isinstance(side, Circuit):
        return "; ".join(format_gate(g) for g in side.gates) or "ε"
    return print_word(side).split("\n", 1)[1].strip() or "ε"


def _failure_text(inst: Instance) -> str:
    env = ", ".join(f"{k}={v}" for k, v in inst.assignment) or "-"
    if not inst.built:
        return f"[{env}] not built: {inst.error}"
    return f"[{env}] {_side_text(inst.lhs)} ≈ {_side_text(inst.rhs)}"


def _chunks(items: List, size: int) -> List[List]:
    return [items[i:i + size] for i in range(0, len(items), size)]


def check_catalog(catalog: Union[str, Catalog], dim: int, budget: Optional[int] = None,
                  seed: Optional[int] = None, workers: int = 1) -> CatalogReport:
    """Instantiate every schema at `dim` and check each instance; results sorted by schema name."""
    if isinstance(catalog, str):
        catalog = load_catalog(catalog)
    budget = config.DEFAULT_BUDGET if budget is None else budget
    seed = config.DEFAULT_SEED if seed is None else seed

    planned: List[Tuple[EquationSchema, List[Instance]]] = []
    for schema in catalog.schemas:
        if dim < schema.min_dim:
            planned.append((schema, []))
            continue
        planned.append((schema, instantiate(schema, dim, budget, seed)))

    pairs = [(inst.lhs, inst.rhs) for _, insts in planned for inst in insts if inst.built]
    if workers > 1 and len(pairs) > CHUNK_SIZE:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            checked = [v for chunk in pool.map(_check_chunk, _chunks(pairs, CHUNK_SIZE)) for v in chunk]
    else:
        checked = _check_chunk(pairs)
    # instances that could not be built count as failures
    it = iter(checked)
    verdicts = [next(it) if inst.built else False for _, insts in planned for inst in insts]

    results: List[SchemaResult] = []
    pos = 0
    for schema, insts in planned:
        ok = verdicts[pos:pos + len(insts)]
        pos += len(insts)
        results.append(SchemaResult(
            name=schema.name,
            instances=len(insts),
            passed=sum(ok),
            failures=[_failure_text(inst) for inst, good in zip(insts, ok) if not good],
            applicable=dim >= schema.min_dim,
        ))
    results.sort(key=lambda r: r.name)

    report = CatalogReport(catalog=catalog.id, dim=dim, budget=budget, seed=seed,
                           results=results, skipped=catalog.skipped)
    if catalog.skipped:
        logger.warning(f"{catalog.id}: {len(catalog.skipped)} entries skipped as unreadable")
    logger.info(f"checked {catalog.id} at dim {dim}: {len(pairs)} instances, "
                f"{len(report.failing)} failing schemas")
    return report


# =================================================
# Rendering
# =================================================
def render_report(report: CatalogReport) -> str:
    rows = [{
        "schema": r.name,
        "instances": r.instances,
        "passed": r.passed,
        "status": "ok" if r.ok and r.applicable else "n/a" if not r.applicable else "FAIL",
    } for r in report.results]
    df = pd.DataFrame(rows, columns=["schema", "instances", "passed", "status"])
    lines = [f"catalog {report.catalog}  dim={report.dim}  budget={report.budget}  seed={report.seed}",
             df.to_string(index=False) if rows else "(no schemas)"]
    for r in report.failing:
        lines.append(f"FAIL {r.name}:")
        lines.extend(f"  {f}" for f in r.failures)
    for s in report.skipped:
        lines.append(f"skipped {s.name}: {s.reason}")
    lines.append("all schemas pass" if report.ok else f"{len(report.failing)} schemas fail")
    return "\n".join(lines)


def report_json(report: CatalogReport) -> str:
    return report.model_dump_json()
