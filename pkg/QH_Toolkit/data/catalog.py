"""Built-in example algebras shipped as `.alg` files next to this module."""

from __future__ import annotations

from pathlib import Path

from QH_Toolkit.core.bqa import BoundQuiverAlgebra
from QH_Toolkit.data.ingestion import load_algebra
from QH_Toolkit.theory.poset import WeightPoset


CATALOG_DIR = Path(__file__).resolve().parent / "catalog"

CATALOG = {
    "semisimple": "k x k, no arrows",
    "a2": "path algebra of 1 -> 2, order 2 < 1",
    "exm_strictness": "1 <-> 2 <-> 3, dim 17, order 2 < 1, 2 < 3 fails (st2'); strictness fails at {2}",
    "dual_numbers": "k[x]/(x^2), negative control",
    "incidence4": "commuting square on 4 vertices",
    "two_cycle": "1 <-> 2 with square-zero relations, Ext-cycle between the simples",
    "auslander_dual_numbers": "Auslander algebra of k[x]/(x^2), order 2 < 1, T(1) = P(2)",
}

# file orders passing the highest weight check
HW_EXAMPLES = ("semisimple", "a2", "incidence4", "auslander_dual_numbers")


def catalog_path(name: str) -> Path:
    if name not in CATALOG:
        raise KeyError(f"no catalog entry {name!r}; available: {', '.join(sorted(CATALOG))}")
    return CATALOG_DIR / f"{name}.alg"


def catalog_text(name: str) -> str:
    return catalog_path(name).read_text(encoding="utf-8")


def load_catalog(name: str) -> tuple[BoundQuiverAlgebra, WeightPoset]:
    return load_algebra(catalog_path(name))
