"""
highest_weight_cli.py
───────────────────────────────
Command line front end: highest weight structure on bound quiver algebras.

Every command prints a Report and exits with 0 (verdict true or success),
1 (verdict false, certified) or 2 (error, undecided, budget exhausted).
An ALGEBRA argument is a path to an `.alg` file or the name of a catalog entry.
"""

from __future__ import annotations

import functools
import logging
from pathlib import Path

import click

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra, build_algebra
from QH_Toolkit.data.catalog import CATALOG, catalog_path, catalog_text
from QH_Toolkit.data.corpus import module_corpus
from QH_Toolkit.data.ingestion import parse_algebra_file, parse_module_file, print_algebra, presentation_order
from QH_Toolkit.errors import InvariantBreach, QHError
from QH_Toolkit.report import Report, dims_of, filtration_summary, module_summary
from QH_Toolkit.theory.envelope import (
    characteristic_tilting,
    double_ringel_dual,
    left_envelope,
    right_envelope,
    ringel_dual,
    ringel_routes,
    thin_collection,
)
from QH_Toolkit.theory.hw import (
    canonical_poset,
    check_hw,
    costandard_module,
    costandard_modules,
    delta_membership,
    hw_equivalent,
    simple_collection,
    standard_module,
    standard_modules,
)
from QH_Toolkit.theory.poset import WeightPoset, dominates
from QH_Toolkit.theory.recollement import (
    counit_failures,
    recollement_for_ideal,
    strictness_report,
    verify_pack,
)


log = logging.getLogger("QH_Toolkit.cli")

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


# ─────────────────────────────────────────────
# Shared plumbing
# ─────────────────────────────────────────────
def _load(spec: str, order: str | None) -> tuple[BoundQuiverAlgebra, WeightPoset]:
    path = Path(spec)
    if not path.exists() and spec in CATALOG:
        path = catalog_path(spec)
    p = parse_algebra_file(path)
    a = build_algebra(p)
    poset = WeightPoset.parse(a.vertices, order) if order is not None else presentation_order(p)
    return a, poset


def _emit(ctx: click.Context, report: Report) -> None:
    click.echo(report.render(ctx.obj["format"]), nl=False)
    if report.verdict is False:
        ctx.exit(EXIT_FALSE)
    ctx.exit(EXIT_TRUE)


def guarded(name: str):
    """Render library errors as a report and exit 2."""
    def wrap(func):
        @functools.wraps(func)
        def inner(ctx: click.Context, *args, **kwargs):
            try:
                return func(ctx, *args, **kwargs)
            except (QHError, ValueError, KeyError, OSError) as exc:
                clause = getattr(exc, "clause", "error")
                log.debug("%s failed", name, exc_info=True)
                report = Report(command=name, failing_clause=clause, message=f"{clause} failed: {exc}")
                click.echo(report.render(ctx.obj["format"]), nl=False)
                ctx.exit(EXIT_ERROR)
        return inner
    return wrap


def algebra_argument(func):
    func = click.option("--order", default=None,
                        help="Override the file's order, e.g. '2<1,2<3' or 'discrete'.")(func)
    return click.argument("algebra")(func)


def _collection(a: BoundQuiverAlgebra, poset: WeightPoset, kind: str) -> dict:
    if kind == "standard":
        return standard_modules(a, poset)
    if kind == "costandard":
        return costandard_modules(a, poset)
    return simple_collection(a)


def _require_hw(ctx: click.Context, a: BoundQuiverAlgebra, poset: WeightPoset):
    report = check_hw(a, poset, budget=ctx.obj["budget"], cap=ctx.obj["cap"])
    if not report.verdict:
        raise ValueError(f"({a.name or 'A'}, {poset.to_text()}) is not highest weight: {report.message}")
    return report


def _algebra_extra(a: BoundQuiverAlgebra, poset: WeightPoset) -> dict:
    return {"algebra": a.name or "A", "field": str(a.field), "dim": a.dim, "order": poset.to_text()}


# ─────────────────────────────────────────────
# Command group
# ─────────────────────────────────────────────
@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text", show_default=True)
@click.option("--log-level", default=config.LOG_LEVEL, show_default=True)
@click.option("--budget", type=int, default=config.SEARCH_NODE_BUDGET, show_default=True,
              help="Node budget of the Δ-filtration search.")
@click.option("--resolution-cap", type=int, default=config.RESOLUTION_CAP, show_default=True,
              help="Longest projective resolution computed.")
@click.option("--iso-cap", type=int, default=config.ISO_ENUMERATION_CAP, show_default=True,
              help="Largest Hom enumeration in isomorphism tests.")
@click.pass_context
def cli(ctx: click.Context, fmt: str, log_level: str, budget: int, resolution_cap: int, iso_cap: int):
    """Highest weight structure on bound quiver algebras."""
    config.configure_logging(log_level.upper())
    config.ISO_ENUMERATION_CAP = iso_cap
    ctx.obj = {"format": fmt, "budget": budget, "cap": resolution_cap}


# ─────────────────────────────────────────────
# 1️⃣ Highest weight check
# ─────────────────────────────────────────────
@cli.command("check-hw")
@algebra_argument
@click.pass_context
@guarded("check-hw")
def check_hw_cmd(ctx, algebra, order):
    """Verify (st1), (st2) and (st2') for the algebra and order."""
    a, poset = _load(algebra, order)
    hw = check_hw(a, poset, budget=ctx.obj["budget"], cap=ctx.obj["cap"])
    per_weight = {}
    for w, r in hw.per_weight.items():
        entry = {"standard": list(r.standard.dimension_vector()), "end_dim": r.end_dim,
                 "st1": r.st1, "st1_prime": r.st1_prime}
        if r.costandard is not None:
            entry["costandard"] = list(r.costandard.dimension_vector())
        if r.st2 is not None:
            entry["st2"] = r.st2
            entry["st2_prime"] = r.st2_prime
            entry["method"] = r.membership_method
            entry["filtration"] = filtration_summary(r.filtration)
        per_weight[w] = entry
    _emit(ctx, Report(command="check-hw", verdict=hw.verdict, failing_clause=hw.failing_clause,
                      message=hw.message, per_weight=per_weight, cartan=a.cartan_matrix(),
                      dims=dims_of(hw.standards), extra=_algebra_extra(a, poset)))


# ─────────────────────────────────────────────
# 2️⃣ Standard, costandard and tilting modules
# ─────────────────────────────────────────────
def _module_report(ctx, name: str, algebra: str, order: str | None, weight: str | None, build) -> None:
    a, poset = _load(algebra, order)
    weights = [a.check_vertex(weight)] if weight else list(a.vertices)
    modules = {w: build(a, poset, w) for w in weights}
    _emit(ctx, Report(command=name, per_weight={w: module_summary(m) for w, m in modules.items()},
                      dims=dims_of(modules), extra=_algebra_extra(a, poset)))


@cli.command("standard")
@algebra_argument
@click.option("--weight", default=None, help="Only this weight.")
@click.pass_context
@guarded("standard")
def standard_cmd(ctx, algebra, order, weight):
    """Standard modules Δ(λ)."""
    _module_report(ctx, "standard", algebra, order, weight, standard_module)


@cli.command("costandard")
@algebra_argument
@click.option("--weight", default=None, help="Only this weight.")
@click.pass_context
@guarded("costandard")
def costandard_cmd(ctx, algebra, order, weight):
    """Costandard modules ∇(λ)."""
    _module_report(ctx, "costandard", algebra, order, weight, costandard_module)


@cli.command("tilting")
@algebra_argument
@click.pass_context
@guarded("tilting")
def tilting_cmd(ctx, algebra, order):
    """Characteristic tilting module via universal coextensions."""
    a, poset = _load(algebra, order)
    _require_hw(ctx, a, poset)
    t = characteristic_tilting(a, poset, cap=ctx.obj["cap"])
    per_weight = {w: {**module_summary(m), "filtration": filtration_summary(t.filtrations[w])}
                  for w, m in t.summands.items()}
    _emit(ctx, Report(command="tilting", verdict=True, message="Ext^i(T, T) = 0 and T ∈ F(Δ)",
                      per_weight=per_weight, dims=dims_of(t.summands), extra=_algebra_extra(a, poset)))


# ─────────────────────────────────────────────
# 3️⃣ Ringel duality
# ─────────────────────────────────────────────
@cli.command("ringel-dual")
@algebra_argument
@click.option("--routes", is_flag=True, help="Also compare against both envelope routes.")
@click.pass_context
@guarded("ringel-dual")
def ringel_dual_cmd(ctx, algebra, order, routes):
    """End_A(T) with the opposite order."""
    a, poset = _load(algebra, order)
    _require_hw(ctx, a, poset)
    dual = ringel_dual(a, poset)
    extra = {"source": _algebra_extra(a, poset), "dual": _algebra_extra(dual.algebra, dual.poset),
             "presentation": print_algebra(dual.algebra.presentation)}
    if routes:
        found = ringel_routes(a, poset)
        extra["routes"] = {"tilting": found.tilting, "left_of_standards": found.left_of_standards,
                           "right_of_costandards": found.right_of_costandards, "agree": found.agree}
    per_weight = {w: {"T": list(dual.tilting.summands[w].dimension_vector()),
                      "standard": list(dual.standards[w].dimension_vector()),
                      "costandard": list(dual.costandards[w].dimension_vector())} for w in a.vertices}
    _emit(ctx, Report(command="ringel-dual", verdict=True, message=dual.report.message,
                      per_weight=per_weight, cartan=dual.cartan(), dims=dims_of(dual.tilting.summands),
                      extra=extra))


@cli.command("double-dual")
@algebra_argument
@click.pass_context
@guarded("double-dual")
def double_dual_cmd(ctx, algebra, order):
    """Ringel dual of the Ringel dual, compared with the original."""
    a, poset = _load(algebra, order)
    _require_hw(ctx, a, poset)
    dd = double_ringel_dual(a, poset)
    message = "Cartan data of RD(RD(A)) match A" if dd.matches else "Cartan data of RD(RD(A)) differ from A"
    _emit(ctx, Report(command="double-dual", verdict=dd.matches, failing_clause=None if dd.matches else "double-dual",
                      message=message, cartan=dd.second.cartan(),
                      extra={"original": a.cartan_matrix(), "first": dd.first.cartan(),
                             "order": dd.second.poset.to_text()}))


# ─────────────────────────────────────────────
# 4️⃣ Canonical posets and equivalence
# ─────────────────────────────────────────────
@cli.command("canonical-poset")
@algebra_argument
@click.option("--collection", type=click.Choice(["standard", "costandard", "simple"]), default="standard",
              show_default=True)
@click.pass_context
@guarded("canonical-poset")
def canonical_poset_cmd(ctx, algebra, order, collection):
    """Λ_E: the order generated by nonzero Hom and Ext^1 inside a collection."""
    a, poset = _load(algebra, order)
    modules = _collection(a, poset, collection)
    canonical = canonical_poset(modules)
    extra = {"canonical": canonical.to_text(), "opposite": canonical.opposite().to_text(),
             "collection": collection, **_algebra_extra(a, poset)}
    verdict = None
    if collection == "standard":
        verdict = dominates(poset, canonical.opposite())
        extra["dominated"] = verdict
    _emit(ctx, Report(command="canonical-poset", verdict=verdict, dims=dims_of(modules), extra=extra,
                      message=f"canonical order {canonical.to_text()}"))


@cli.command("hw-equivalent")
@algebra_argument
@click.option("--other", required=True, help="Second order, e.g. '1<2'.")
@click.pass_context
@guarded("hw-equivalent")
def hw_equivalent_cmd(ctx, algebra, order, other):
    """Whether two orders give the same standard modules."""
    a, poset = _load(algebra, order)
    second = WeightPoset.parse(a.vertices, other)
    reports = (_require_hw(ctx, a, poset), _require_hw(ctx, a, second))
    verdict = hw_equivalent(a, poset, second, reports=reports)
    _emit(ctx, Report(command="hw-equivalent", verdict=verdict.equivalent, message=verdict.explanation,
                      extra={"canonical": verdict.canonical.to_text(), "other": second.to_text(),
                             **_algebra_extra(a, poset)}))


# ─────────────────────────────────────────────
# 5️⃣ Membership in F(Δ)
# ─────────────────────────────────────────────
@cli.command("membership")
@algebra_argument
@click.argument("module")
@click.option("--method", type=click.Choice(["filtration", "ext", "counit", "all"]), default="all",
              show_default=True)
@click.pass_context
@guarded("membership")
def membership_cmd(ctx, algebra, order, module, method):
    """Decide M ∈ F(Δ) by filtration search, Ext vanishing against T, or counits."""
    a, poset = _load(algebra, order)
    m = parse_module_file(module, a)
    if method != "filtration":
        _require_hw(ctx, a, poset)
    budget, cap = ctx.obj["budget"], ctx.obj["cap"]
    verdicts, witness, extra = {}, None, _algebra_extra(a, poset)
    if method in ("filtration", "all"):
        search = "filtration" if a.field.is_finite else "trace"
        found = delta_membership(m, poset, method=search, budget=budget, cap=cap)
        verdicts["filtration"] = found.member
        witness = filtration_summary(found.witness)
    if method in ("ext", "all"):
        verdicts["ext"] = delta_membership(m, poset, method="ext", budget=budget, cap=cap).member
    if method in ("counit", "all"):
        failures = counit_failures(a, poset, m)
        verdicts["counit"] = not failures
        extra["counit_failures"] = failures
    values = set(verdicts.values())
    if len(values) != 1:
        raise InvariantBreach(f"membership methods disagree: {verdicts}")
    extra["verdicts"] = verdicts
    extra["agree"] = True
    verdict = values.pop()
    _emit(ctx, Report(command="membership", verdict=verdict, witness=witness,
                      message=f"{m.name or 'M'} {'is' if verdict else 'is not'} in F(Δ)",
                      dims={"M": list(m.dimension_vector())}, extra=extra))


# ─────────────────────────────────────────────
# 6️⃣ Envelopes
# ─────────────────────────────────────────────
@cli.command("envelope")
@algebra_argument
@click.option("--side", type=click.Choice(["right", "left"]), default="right", show_default=True)
@click.option("--collection", type=click.Choice(["standard", "costandard", "simple"]), default="standard",
              show_default=True)
@click.pass_context
@guarded("envelope")
def envelope_cmd(ctx, algebra, order, side, collection):
    """Right or left abelian envelope of a thin collection."""
    a, poset = _load(algebra, order)
    c = thin_collection(_collection(a, poset, collection))
    result = right_envelope(c) if side == "right" else left_envelope(c)
    per_weight = {w: {"generator": list(result.generators[w].dimension_vector()),
                      "transport": list(result.transports[w].dimension_vector())} for w in c.weights}
    if result.relative is not None:
        for w in c.weights:
            per_weight[w]["layers"] = result.relative.layers[w]
    extra = {"collection": collection, "side": side, "canonical": c.poset.to_text(),
             "envelope": _algebra_extra(result.algebra, result.poset),
             "presentation": print_algebra(result.algebra.presentation)}
    if result.relative is not None:
        extra["square_zero"] = [r.verdict for r in result.relative.square_zero]
    _emit(ctx, Report(command="envelope", verdict=result.report.verdict, message=result.report.message,
                      per_weight=per_weight, cartan=result.cartan(), dims=dims_of(c.modules), extra=extra))


# ─────────────────────────────────────────────
# 7️⃣ Recollements
# ─────────────────────────────────────────────
@cli.command("recollement")
@algebra_argument
@click.option("--ideal", required=True, help="Comma separated Serre weights, e.g. '2'.")
@click.option("--strictness", is_flag=True, help="Compare the layers of the filtration by lower ideals.")
@click.pass_context
@guarded("recollement")
def recollement_cmd(ctx, algebra, order, ideal, strictness):
    """Corner algebra, quotient algebra and the recollement functors for an ideal."""
    a, poset = _load(algebra, order)
    weights = [w.strip() for w in ideal.split(",") if w.strip()]
    pack = recollement_for_ideal(a, weights)
    check = verify_pack(pack, module_corpus(a, size=config.PACK_CHECK_MODULES))
    extra = {"serre": list(pack.serre_weights), "corner_weights": list(pack.corner_weights),
             "corner_dim": pack.corner.dim, "quotient_dim": pack.quotient.dim,
             "corner_presentation": print_algebra(pack.corner.presentation),
             "pack_checked": check.checked, "pack_failures": check.failures, **_algebra_extra(a, poset)}
    verdict, clause, message = check.ok, None if check.ok else "recollement", "recollement functors verified"
    if not check.ok:
        message = check.failures[0]
    if strictness:
        if not poset.is_lower_ideal(weights):
            raise ValueError(f"{weights} is not a lower ideal of {poset.to_text()}")
        rows = strictness_report(a, poset, weights)
        extra["strictness"] = [{"I": list(r.lower), "J": list(r.upper), "whole": r.whole,
                                "first": r.first, "second": r.second, "strict": r.strict} for r in rows]
        broken = [r for r in rows if not r.strict]
        if broken:
            r = broken[0]
            verdict, clause = False, "strictness"
            message = (f"strictness failed: dim {r.whole} of A/A_K against {r.first} + {r.second} "
                       f"for I={','.join(r.lower)}, J={','.join(r.upper)}")
        elif verdict:
            message = "filtration by lower ideals is strict"
    _emit(ctx, Report(command="recollement", verdict=verdict, failing_clause=clause, message=message,
                      cartan=pack.corner.cartan_matrix(), extra=extra))


# ─────────────────────────────────────────────
# 8️⃣ Catalog
# ─────────────────────────────────────────────
@cli.command("catalog")
@click.argument("name", required=False)
@click.pass_context
@guarded("catalog")
def catalog_cmd(ctx, name):
    """List the built-in algebras, or print one."""
    if name is None:
        _emit(ctx, Report(command="catalog", extra=dict(CATALOG)))
        return
    text = catalog_text(name)
    if ctx.obj["format"] == "text":
        click.echo(text, nl=False)
        ctx.exit(EXIT_TRUE)
    _emit(ctx, Report(command="catalog", message=CATALOG[name], extra={"name": name, "text": text}))


if __name__ == "__main__":
    cli()
