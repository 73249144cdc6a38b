"""Graph builder for the highest weight check.

Provides the routing function and a `build_graph` helper that returns a
compiled StateGraph; `run_check_hw` invokes it and returns the report.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from langgraph.graph import END, START, StateGraph

from QH_Toolkit import config
from QH_Toolkit.core.bqa import BoundQuiverAlgebra
from QH_Toolkit.pipeline.nodes import (
    HwState,
    compute_costandards,
    compute_standards,
    search_filtrations,
    summarize,
)
from QH_Toolkit.theory.hw import HwReport
from QH_Toolkit.theory.poset import WeightPoset


log = logging.getLogger(__name__)


def route_after_costandards(state: HwState) -> str:
    """Skip the filtration search once (st1) has failed."""
    if state.get("failing_clause"):
        log.info("route: %s failed, skipping the filtration search", state["failing_clause"])
        return "summarize"
    return "filtrations"


@lru_cache(maxsize=1)
def build_graph():
    """Construct and compile the check_hw StateGraph."""
    workflow = StateGraph(HwState)

    workflow.add_node("standards", compute_standards)
    workflow.add_node("costandards", compute_costandards)
    workflow.add_node("filtrations", search_filtrations)
    workflow.add_node("summarize", summarize)

    workflow.add_edge(START, "standards")
    workflow.add_edge("standards", "costandards")
    workflow.add_conditional_edges(
        "costandards",
        route_after_costandards,
        {"filtrations": "filtrations", "summarize": "summarize"},
    )
    workflow.add_edge("filtrations", "summarize")
    workflow.add_edge("summarize", END)

    return workflow.compile()


def run_check_hw(a: BoundQuiverAlgebra, poset: WeightPoset, *,
                 budget: int = config.SEARCH_NODE_BUDGET, cap: int = config.RESOLUTION_CAP) -> HwReport:
    result = build_graph().invoke({"algebra": a, "poset": poset, "budget": budget, "cap": cap})
    return result["report"]
