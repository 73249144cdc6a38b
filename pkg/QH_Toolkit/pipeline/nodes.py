"""Pipeline nodes for the highest weight check.

Each node is a pure function that accepts the state dictionary and returns
the keys it updates. Per-weight work fans out through joblib; results are
collected back in vertex order.
"""

from __future__ import annotations

import logging
from dataclasses import replace

from joblib import Parallel, delayed
from typing_extensions import TypedDict

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra
from QH_Toolkit.core.rep import composition_factors, endomorphism_radical, hom_space, projective_module
from QH_Toolkit.errors import LocalityFailure
from QH_Toolkit.theory.hw import (
    HwReport,
    WeightReport,
    adapted_filtration,
    costandard_module,
    delta_membership,
    standard_module,
)
from QH_Toolkit.theory.poset import WeightPoset


log = logging.getLogger(__name__)


# ─────────────────────────────────────────────
# Define pipeline state
# ─────────────────────────────────────────────
class HwState(TypedDict, total=False):
    """TypedDict describing the check_hw state shape."""
    algebra: BoundQuiverAlgebra
    poset: WeightPoset
    budget: int
    cap: int
    per_weight: dict
    failing_clause: str | None
    message: str
    report: HwReport


def fan_out(func, weights: list[str], *args) -> list:
    # threads keep every result attached to the same algebra object
    return Parallel(n_jobs=config.N_JOBS, backend="threading")(delayed(func)(*args, w) for w in weights)


# ─────────────────────────────────────────────
# 1️⃣ Standard modules and (st1)
# ─────────────────────────────────────────────
def _standard_entry(a: BoundQuiverAlgebra, poset: WeightPoset, w: str) -> WeightReport:
    delta = standard_module(a, poset, w)
    end_dim = hom_space(delta, delta).dim
    top_mult = composition_factors(delta)[w]
    if end_dim > 1 and a.field.is_finite:
        try:
            endomorphism_radical(delta)
            log.warning("End(Δ(%s)) is local of dimension %d over %s", w, end_dim, a.field)
        except LocalityFailure:
            log.debug("End(Δ(%s)) is not local", w)
    return WeightReport(w, delta, end_dim=end_dim, top_multiplicity=top_mult, st1=end_dim == 1)


def compute_standards(state: HwState) -> dict:
    """Build every Δ(λ) and record dim End(Δ(λ))."""
    a, poset = state["algebra"], state["poset"]
    entries = fan_out(_standard_entry, list(a.vertices), a, poset)
    per_weight = {e.weight: e for e in entries}
    for e in entries:
        log.info("Δ(%s) dims %s, dim End = %d", e.weight, e.standard.dimension_vector(), e.end_dim)
    failing = next((e for e in entries if not e.st1), None)
    if failing is not None:
        return {
            "per_weight": per_weight,
            "failing_clause": "st1",
            "message": f"st1 failed: End(Δ({failing.weight})) has dimension {failing.end_dim}",
        }
    return {"per_weight": per_weight, "failing_clause": None, "message": ""}


# ─────────────────────────────────────────────
# 2️⃣ Costandard modules
# ─────────────────────────────────────────────
def compute_costandards(state: HwState) -> dict:
    """Attach ∇(λ) to each weight entry."""
    a, poset = state["algebra"], state["poset"]
    per_weight = dict(state["per_weight"])
    nablas = fan_out(costandard_module, list(a.vertices), a, poset)
    for w, nabla in zip(a.vertices, nablas):
        per_weight[w] = replace(per_weight[w], costandard=nabla)
    return {"per_weight": per_weight}


# ─────────────────────────────────────────────
# 3️⃣ Δ-filtrations of projectives, (st2) and (st2')
# ─────────────────────────────────────────────
def _projective_entry(a: BoundQuiverAlgebra, poset: WeightPoset, budget: int, cap: int, w: str):
    adapted = adapted_filtration(a, poset, w, budget=budget)
    if adapted.member:
        return adapted, adapted
    # the Ext criterion is vacuous on projectives, so the rationals use trace layers
    method = "filtration" if a.field.is_finite else "trace"
    return adapted, delta_membership(projective_module(a, w), poset, method=method, budget=budget, cap=cap)


def search_filtrations(state: HwState) -> dict:
    """Look for a Δ-filtration of every P(λ) with Δ(λ) on top over Δ(μ), μ ≻ λ."""
    a, poset = state["algebra"], state["poset"]
    budget = state.get("budget", config.SEARCH_NODE_BUDGET)
    cap = state.get("cap", config.RESOLUTION_CAP)
    per_weight = dict(state["per_weight"])
    results = fan_out(_projective_entry, list(a.vertices), a, poset, budget, cap)
    clause, message = None, ""
    for w, (adapted, plain) in zip(a.vertices, results):
        witness = adapted.witness if adapted.member else plain.witness
        per_weight[w] = replace(per_weight[w], st2=plain.member, st2_prime=adapted.member,
                                filtration=witness, membership_method=adapted.method)
        if witness is not None:
            log.info("P(%s) has a Δ-filtration with factors %s", w, witness.labels)
        if clause is not None or adapted.member:
            continue
        if plain.member:
            clause = "st2'"
            message = (f"st2' failed: P({w}) has the Δ-filtration {plain.witness.labels}, "
                       f"but none with Δ({w}) on top over factors Δ(μ), μ ≻ {w}")
        else:
            clause, message = "st2", f"st2 failed: P({w}) has no Δ-filtration"
    if clause is not None:
        return {"per_weight": per_weight, "failing_clause": clause, "message": message}
    return {"per_weight": per_weight}


# ─────────────────────────────────────────────
# 4️⃣ Summarize
# ─────────────────────────────────────────────
def summarize(state: HwState) -> dict:
    """Fold the per-weight entries into an HwReport."""
    clause = state.get("failing_clause")
    report = HwReport(
        algebra=state["algebra"],
        poset=state["poset"],
        per_weight=state["per_weight"],
        verdict=clause is None,
        failing_clause=clause,
        message=state.get("message", "") or "highest weight structure verified",
    )
    log.info("check_hw(%s, %s): %s", report.algebra.name or "A", report.poset.to_text(), report.message)
    return {"report": report}
