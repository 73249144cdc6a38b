"""Exception hierarchy.

Every error carries a short `clause` tag; reports print it as the failing
clause and the CLI maps any of these to exit code 2.
"""

from __future__ import annotations


class QHError(Exception):
    clause = "error"


class ParseError(QHError):
    clause = "parse"

    def __init__(self, line: int | None, message: str):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class NonAdmissible(QHError):
    """The relations do not contain a power of the arrow ideal within the bound."""
    clause = "admissibility"


class RelationViolation(QHError):
    clause = "relation"

    def __init__(self, relation: str, vertex: str):
        self.relation = relation
        self.vertex = vertex
        super().__init__(f"relation {relation} fails at vertex {vertex}")


class UnknownWeight(QHError, ValueError):
    clause = "weight"


class Undecided(QHError):
    clause = "undecided"


class ResolutionBoundExceeded(QHError):
    clause = "resolution-cap"


class SearchBudgetExceeded(QHError):
    clause = "search-budget"


class CyclicRelation(QHError):
    clause = "cycle"

    def __init__(self, cycle: list):
        self.cycle = list(cycle)
        path = " -> ".join(str(edge[0]) for edge in self.cycle)
        super().__init__(f"relation has a cycle: {path} -> {self.cycle[0][0]}" if self.cycle
                         else "relation has a cycle")


class LocalityFailure(QHError):
    clause = "locality"


class InvariantBreach(QHError):
    """A postcondition that must hold by theory did not; indicates a bug."""
    clause = "invariant"
