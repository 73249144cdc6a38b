"""Weight posets on vertex labels.

A WeightPoset stores the reflexive-transitive closure of a relation as a
networkx DiGraph with an edge x -> y for every x ≺ y. Lower ideals, principal
ideals, minimal elements and domination are answered from that closure.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import networkx as nx

from QH_Toolkit.errors import CyclicRelation, UnknownWeight


log = logging.getLogger(__name__)


class WeightPoset:
    """Partial order Λ on weights; `leq(x, y)` means x ⪯ y."""

    def __init__(self, elements: Sequence[str], relations: Iterable[tuple[str, str]] = ()):
        self.elements: tuple[str, ...] = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        for x, y in relations:
            for w in (x, y):
                if w not in graph:
                    raise UnknownWeight(f"weight {w!r} is not an element of the poset")
            if x != y:
                graph.add_edge(x, y)
        try:
            cycle = nx.find_cycle(graph)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle:
            raise CyclicRelation(cycle)
        self.graph: nx.DiGraph = nx.transitive_closure_dag(graph)
        self._position = {w: i for i, w in enumerate(self.elements)}

    # ─────────────────────────────────────────────
    # Constructors
    # ─────────────────────────────────────────────
    @classmethod
    def discrete(cls, elements: Sequence[str]) -> "WeightPoset":
        return cls(elements)

    @classmethod
    def chain(cls, order: Sequence[str]) -> "WeightPoset":
        """Total order order[0] ≺ order[1] ≺ ..."""
        return cls(order, zip(order, order[1:]))

    @classmethod
    def parse(cls, elements: Sequence[str], text: str) -> "WeightPoset":
        """`2<1,2<3`, `1<2<3` or `discrete`."""
        text = text.strip()
        if text in ("", "discrete"):
            return cls(elements)
        pairs = []
        for part in text.split(","):
            chain = [w.strip() for w in part.split("<")]
            if len(chain) < 2 or not all(chain):
                raise ValueError(f"cannot read order clause {part!r}")
            pairs.extend(zip(chain, chain[1:]))
        return cls(elements, pairs)

    # ─────────────────────────────────────────────
    # Queries
    # ─────────────────────────────────────────────
    def __contains__(self, w: str) -> bool:
        return w in self._position

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeightPoset) and set(self.elements) == set(other.elements)
                and self.strict_pairs() == other.strict_pairs())

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), self.strict_pairs()))

    def __repr__(self) -> str:
        return f"<WeightPoset {self.to_text()}>"

    def check(self, w: str) -> str:
        if w not in self._position:
            raise UnknownWeight(f"weight {w!r} is not an element of the poset")
        return w

    def leq(self, x: str, y: str) -> bool:
        self.check(x)
        self.check(y)
        return x == y or self.graph.has_edge(x, y)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: str, y: str) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def strict_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.graph.edges())

    def cover_pairs(self) -> list[tuple[str, str]]:
        """Hasse diagram edges, sorted by element position."""
        reduced = nx.transitive_reduction(self.graph)
        return sorted(reduced.edges(), key=lambda e: (self._position[e[0]], self._position[e[1]]))

    def ordered(self, weights: Iterable[str]) -> list[str]:
        return sorted(weights, key=self._position.__getitem__)

    def principal_lower(self, w: str) -> list[str]:
        """I_λ = {μ : μ ⪯ λ}."""
        self.check(w)
        return self.ordered({w} | set(self.graph.predecessors(w)))

    def strictly_below(self, w: str) -> list[str]:
        """I_{<λ}."""
        self.check(w)
        return self.ordered(self.graph.predecessors(w))

    def principal_upper(self, w: str) -> list[str]:
        """{μ : μ ⪰ λ}, the principal lower ideal of Λ^op."""
        self.check(w)
        return self.ordered({w} | set(self.graph.successors(w)))

    def strictly_above(self, w: str) -> list[str]:
        self.check(w)
        return self.ordered(self.graph.successors(w))

    def lower_closure(self, weights: Iterable[str]) -> list[str]:
        out = set()
        for w in weights:
            out.update(self.principal_lower(w))
        return self.ordered(out)

    def is_lower_ideal(self, weights: Iterable[str]) -> bool:
        ws = set(weights)
        return all(set(self.graph.predecessors(w)) <= ws for w in ws)

    def lower_ideals(self) -> list[tuple[str, ...]]:
        """All lower ideals, as position-sorted tuples, smallest first."""
        ideals = {tuple(self.lower_closure(antichain)) for antichain in self.antichains()}
        return sorted(ideals, key=lambda i: (len(i), [self._position[w] for w in i]))

    def antichains(self) -> Iterator[tuple[str, ...]]:
        for r in range(len(self.elements) + 1):
            for subset in combinations(self.elements, r):
                if all(not self.comparable(x, y) for x, y in combinations(subset, 2)):
                    yield subset

    def minimal_elements(self, weights: Iterable[str] | None = None) -> list[str]:
        """Minimal elements of a subset, in input label order."""
        ws = set(self.elements if weights is None else weights)
        return [w for w in self.elements if w in ws and not any(self.lt(u, w) for u in ws)]

    def maximal_elements(self, weights: Iterable[str] | None = None) -> list[str]:
        ws = set(self.elements if weights is None else weights)
        return [w for w in self.elements if w in ws and not any(self.lt(w, u) for u in ws)]

    def opposite(self) -> "WeightPoset":
        return WeightPoset(self.elements, [(y, x) for x, y in self.graph.edges()])

    def restrict(self, weights: Iterable[str]) -> "WeightPoset":
        ws = set(weights)
        keep = [w for w in self.elements if w in ws]
        return WeightPoset(keep, [(x, y) for x, y in self.graph.edges() if x in ws and y in ws])

    def relabel(self, mapping: dict[str, str]) -> "WeightPoset":
        return WeightPoset([mapping[w] for w in self.elements],
                           [(mapping[x], mapping[y]) for x, y in self.graph.edges()])

    def linear_extension(self) -> list[str]:
        """One linear refinement, ties broken by element position."""
        return list(nx.lexicographical_topological_sort(self.graph, key=self._position.__getitem__))

    def linear_extensions(self) -> list[tuple[str, ...]]:
        return sorted(tuple(order) for order in nx.all_topological_sorts(self.graph))

    def to_text(self) -> str:
        pairs = self.cover_pairs()
        if not pairs:
            return "discrete"
        return ",".join(f"{x}<{y}" for x, y in pairs)


def dominates(big: WeightPoset, small: WeightPoset) -> bool:
    """Whether every relation of `small` holds in `big`."""
    if set(big.elements) != set(small.elements):
        raise ValueError("domination compares orders on the same weights")
    return small.strict_pairs() <= big.strict_pairs()


def linear_orders(elements: Sequence[str]) -> list[WeightPoset]:
    """All total orders on the given weights."""
    return [WeightPoset.chain(order) for order in WeightPoset.discrete(elements).linear_extensions()]
