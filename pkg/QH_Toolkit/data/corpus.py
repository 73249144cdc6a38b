"""Seeded module corpora.

Corpora mix the structural modules of an algebra (simples, projectives,
injectives and, given an order, standard and costandard modules) with random
ones: cyclic quotients of projectives and iterated random extensions of
standard modules. Everything is drawn from `numpy.random.default_rng` with
the configured seed, so a corpus is reproducible from its arguments.
"""

from __future__ import annotations

import logging

import numpy as np

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra
from QH_Toolkit.core.exactla import random_matrix
from QH_Toolkit.core.homalg import ext, realize_extension
from QH_Toolkit.core.rep import (
    Representation,
    generated_submodule,
    injective_module,
    projective_module,
    quotient,
    simple_module,
)
from QH_Toolkit.theory.hw import costandard_module, standard_module
from QH_Toolkit.theory.poset import WeightPoset


log = logging.getLogger(__name__)


def _random_vertex(a: BoundQuiverAlgebra, rng: np.random.Generator) -> str:
    return a.vertices[int(rng.integers(len(a.vertices)))]


def random_cyclic_quotient(a: BoundQuiverAlgebra, rng: np.random.Generator) -> Representation:
    """P(v) modulo a submodule generated by random vectors, for a random vertex v."""
    v = _random_vertex(a, rng)
    p = projective_module(a, v)
    gens = {}
    for w in a.vertices:
        if p.dims[w] and (w != v or p.dims[w] > 1) and rng.random() < 0.5:
            gens[w] = random_matrix(a.field, 1, p.dims[w], rng)
    sub = generated_submodule(p, gens)
    if sub.basis[v].nrows == p.dims[v]:
        return p
    return quotient(sub, name=f"P({v})/~").module


def random_delta_extension(a: BoundQuiverAlgebra, poset: WeightPoset, rng: np.random.Generator, *,
                           max_dim: int = config.FUZZ_MAX_DIM, rounds: int = 3) -> Representation:
    """Iterated random extensions M ↪ E ↠ Δ(μ), starting from a random Δ(λ)."""
    m = standard_module(a, poset, _random_vertex(a, rng))
    for _ in range(rounds):
        delta = standard_module(a, poset, _random_vertex(a, rng))
        if m.dimension + delta.dimension > max_dim:
            break
        space = ext(delta, m, 1)
        coords = [a.field.random(rng) for _ in range(space.dim)]
        m = realize_extension(space, coords).middle
    m.name = m.name or "Δ-ext"
    return m


def module_corpus(a: BoundQuiverAlgebra, poset: WeightPoset | None = None, *,
                  size: int = config.FUZZ_MODULES, max_dim: int = config.FUZZ_MAX_DIM,
                  seed: int = config.RANDOM_SEED) -> list[Representation]:
    """Structural modules first, then random ones, all of dimension <= max_dim."""
    rng = np.random.default_rng(seed)
    out: list[Representation] = []
    for v in a.vertices:
        out.extend([simple_module(a, v), projective_module(a, v), injective_module(a, v)])
        if poset is not None:
            out.extend([standard_module(a, poset, v), costandard_module(a, poset, v)])
    out = [m for m in out if m.dimension <= max_dim][:size]
    attempts = 0
    while len(out) < size and attempts < 10 * size:
        attempts += 1
        if poset is not None and rng.random() < 0.5:
            m = random_delta_extension(a, poset, rng, max_dim=max_dim)
        else:
            m = random_cyclic_quotient(a, rng)
        if 0 < m.dimension <= max_dim:
            out.append(m)
    log.debug("corpus for %s: %d modules after %d random draws", a.name or "A", len(out), attempts)
    return out
