"""Reports printed by the command line tool.

A Report has stable field names. The machine format is orjson with sorted
keys and two-space indentation; every scalar is either an int, a bool or a
canonical string, so identical inputs give byte-identical output.
"""

from __future__ import annotations

from typing import Any

import orjson
from pydantic import BaseModel, Field

from QH_Toolkit.core.rep import Representation
from QH_Toolkit.theory.hw import FiltrationWitness


class Report(BaseModel):
    command: str
    verdict: bool | None = None
    failing_clause: str | None = None
    message: str = ""
    per_weight: dict[str, dict[str, Any]] = Field(default_factory=dict)
    witness: Any = None
    cartan: list[list[int]] | None = None
    dims: dict[str, list[int]] = Field(default_factory=dict)
    extra: dict[str, Any] = Field(default_factory=dict)

    def to_machine(self) -> bytes:
        return orjson.dumps(self.model_dump(), option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2)

    def to_text(self) -> str:
        lines = [f"{self.command}: {_verdict_word(self.verdict)}"]
        if self.failing_clause:
            lines.append(f"  failing_clause: {self.failing_clause}")
        if self.message:
            lines.append(f"  message: {self.message}")
        for key in ("dims", "extra"):
            block = getattr(self, key)
            if block:
                lines.append(f"  {key}:")
                lines += _aligned(block, indent=4)
        if self.cartan is not None:
            lines.append("  cartan:")
            lines += ["    " + " ".join(f"{x:>3}" for x in row) for row in self.cartan]
        for w in sorted(self.per_weight):
            lines.append(f"  weight {w}:")
            lines += _aligned(self.per_weight[w], indent=4)
        if self.witness is not None:
            lines.append(f"  witness: {_flat(self.witness)}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "machine":
            return self.to_machine().decode() + "\n"
        return self.to_text()


def _verdict_word(verdict: bool | None) -> str:
    if verdict is None:
        return "done"
    return "true" if verdict else "false"


def _flat(value: Any) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_flat(value[k])}" for k in sorted(value)) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_flat(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _aligned(block: dict[str, Any], *, indent: int) -> list[str]:
    width = max((len(str(k)) for k in block), default=0)
    pad = " " * indent
    return [f"{pad}{str(k).ljust(width)} : {_flat(block[k])}" for k in sorted(block)]


# ─────────────────────────────────────────────
# Canonical renderings
# ─────────────────────────────────────────────
def module_summary(m: Representation) -> dict[str, Any]:
    """Dimension vector and arrow matrices as canonical strings."""
    return {
        "dims": list(m.dimension_vector()),
        "action": {name: [" ".join(row) for row in m.text_rows(name)]
                   for name in m.algebra.arrows if not m.action[name].is_zero()},
    }


def filtration_summary(witness: FiltrationWitness | None) -> dict[str, Any] | None:
    if witness is None:
        return None
    return {
        "factors": list(witness.labels),
        "pieces": [list(s.dimension_vector()) for s in witness.chain],
    }


def dims_of(modules: dict[str, Representation]) -> dict[str, list[int]]:
    return {w: list(m.dimension_vector()) for w, m in modules.items()}
