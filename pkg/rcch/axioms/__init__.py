"""
axioms — equation catalogs, schema instantiation, exact soundness checks and
the coset transport that generates the raw even-parity theory.
"""

from rcch.axioms.catalog import (
    Catalog,
    CatalogReport,
    SchemaResult,
    SkippedEntry,
    catalog_ids,
    check_catalog,
    check_sound,
    dump_catalog,
    load_catalog,
    load_catalog_file,
    render_report,
    report_json,
)
from rcch.axioms.schema import EquationSchema, Instance, instantiate, iter_instances
from rcch.axioms.tailored import build_w1, build_w1_w2, build_w2
from rcch.axioms.transport import COSETS, H_TABLE, h, h_star, rs_transport, verify_h_table

CATALOG_IDS = ("fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12_13_semantic", "a32_raw")

__all__ = [
    "CATALOG_IDS",
    "COSETS",
    "Catalog",
    "CatalogReport",
    "EquationSchema",
    "H_TABLE",
    "Instance",
    "SchemaResult",
    "SkippedEntry",
    "build_w1",
    "build_w1_w2",
    "build_w2",
    "catalog_ids",
    "check_catalog",
    "check_sound",
    "dump_catalog",
    "h",
    "h_star",
    "instantiate",
    "iter_instances",
    "load_catalog",
    "load_catalog_file",
    "render_report",
    "report_json",
    "rs_transport",
    "verify_h_table",
]
