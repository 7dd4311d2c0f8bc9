"""The per-group verification suite run by ``powergraph verify``.

Each check confirms one structural fact about the power graph that must
hold for every finite group; a failure indicates a construction bug.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (is_transitive, perfection_check, power_digraph, power_graph,
                     transitive_orientation)
from .groups import Group
from .metric import class_structure_check, twin_partition
from .posets import comparability_graph, element_poset, verify_decomposition


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def verification_suite(g: Group) -> list[CheckResult]:
    results = []
    orientation = transitive_orientation(g)
    digraph = power_digraph(g)
    pg = power_graph(g)

    results.append(CheckResult(
        "orientation-transitive", is_transitive(orientation),
        f"{orientation.arc_count} arcs"))
    inside = not (orientation.arcs & ~digraph.arcs).any()
    results.append(CheckResult(
        "orientation-within-power-digraph", inside,
        f"{digraph.arc_count} power arcs"))
    one_per_edge = (orientation.underlying_graph() == pg
                    and not (orientation.arcs & orientation.arcs.T).any())
    results.append(CheckResult(
        "orientation-covers-each-edge-once", one_per_edge,
        f"{pg.edge_count} edges"))
    results.append(CheckResult(
        "element-poset-comparability", comparability_graph(element_poset(g)) == pg,
        "comparability graph equals power graph"))
    decomposition = verify_decomposition(g)
    results.append(CheckResult(
        "lex-product-decomposition", decomposition.holds,
        f"{len(g.cyclic_subgroup_poset)} cyclic subgroups"))
    total, holds = g.euler_sum_check()
    results.append(CheckResult(
        "totient-sum-equals-order", holds, f"sum={total} order={g.n}"))
    perf = perfection_check(g)
    results.append(CheckResult(
        "coloring-matches-clique-number", perf.holds,
        f"omega={perf.omega} chi={perf.chi}"))
    tp = twin_partition(g)
    results.append(CheckResult(
        "twin-class-structure", class_structure_check(g, tp),
        f"{len(tp.classes)} twin classes"))
    return results
