"""Independent brute-force verifiers.

``brute_force_dim`` finds the exact metric dimension by exhausting
candidate resolving sets; every resolving set must contain all but one
member of each twin class, and swapping twins is a graph automorphism,
so candidates are parametrized by which twin classes appear in full.
``graph_iso`` is a small backtracking isomorphism search with degree and
neighbor-degree pruning.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import Graph, distance_matrix
from .metric import TwinPartition


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 48
    max_candidates: int = 1_000_000
    seconds: float = 120.0


DIM_BUDGET = SearchBudget(max_vertices=48, max_candidates=1_000_000, seconds=120.0)
ISO_BUDGET = SearchBudget(max_vertices=16, max_candidates=1_000_000, seconds=60.0)


class BudgetExceeded(RuntimeError):
    """Search gave up; ``lower`` and ``upper`` bracket the true answer
    where that makes sense (dimension search only)."""

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


def is_resolving(pg: Graph, witnesses: Sequence[int]) -> bool:
    """True when the distance vectors towards ``witnesses`` are pairwise
    distinct over all vertices."""
    w = list(witnesses)
    if pg.n <= 1:
        return True
    if not w:
        return False
    vectors = distance_matrix(pg)[:, w]
    return len(np.unique(vectors, axis=0)) == pg.n


def brute_force_dim(pg: Graph, tp: TwinPartition,
                    budget: SearchBudget = DIM_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Exact metric dimension with its lexicographically least witness set.

    Candidates take all but the largest member of every twin class, plus
    ``extra`` classes completed in full; cardinalities are searched in
    ascending order, so the first success is optimal and failure of a
    whole level certifies no smaller resolving set exists.
    """
    n = pg.n
    if n > budget.max_vertices:
        raise BudgetExceeded(
            f"graph has {n} vertices, dimension budget allows {budget.max_vertices}",
            lower=n - len(tp.classes), upper=n - 1)
    classes = [list(c.members) for c in tp.classes]
    base = n - len(classes)
    deadline = time.monotonic() + budget.seconds
    examined = 0
    for extra in range(len(classes) + 1):
        hits: list[tuple[int, ...]] = []
        for full in itertools.combinations(range(len(classes)), extra):
            examined += 1
            if examined > budget.max_candidates:
                raise BudgetExceeded(
                    f"examined {examined} candidate sets", lower=base + extra, upper=n - 1)
            if time.monotonic() > deadline:
                raise BudgetExceeded(
                    f"dimension search timed out after {budget.seconds}s",
                    lower=base + extra, upper=n - 1)
            full_set = set(full)
            candidate: list[int] = []
            for ci, members in enumerate(classes):
                candidate.extend(members if ci in full_set else members[:-1])
            candidate.sort()
            if is_resolving(pg, candidate):
                hits.append(tuple(candidate))
        if hits:
            return base + extra, min(hits)
    raise AssertionError("the full vertex set always resolves")


# ---------------------------------------------------------------------------
# Graph isomorphism
# ---------------------------------------------------------------------------

def graph_iso(g1: Graph, g2: Graph,
              budget: SearchBudget = ISO_BUDGET) -> list[int] | None:
    """An edge-preserving bijection from g1 to g2, or None.

    Backtracking over vertices ordered to stay connected to the mapped
    region, with candidates prefiltered by (degree, neighbor-degree
    multiset) signatures.
    """
    if g1.n != g2.n:
        return None
    n = g1.n
    if n > budget.max_vertices:
        raise BudgetExceeded(f"graphs have {n} vertices, budget allows {budget.max_vertices}")
    if n == 0:
        return []
    if g1.edge_count != g2.edge_count:
        return None

    def signatures(g: Graph) -> list[tuple]:
        deg = g.adj.sum(axis=1)
        return [(int(deg[v]), tuple(sorted(int(deg[u]) for u in np.flatnonzero(g.adj[v]))))
                for v in range(g.n)]

    sig1, sig2 = signatures(g1), signatures(g2)
    if Counter(sig1) != Counter(sig2):
        return None
    buckets: dict[tuple, list[int]] = {}
    for w, s in enumerate(sig2):
        buckets.setdefault(s, []).append(w)

    # visit vertices so each one touches the already-mapped region if the
    # graph allows it; ties favor rarer signatures
    order: list[int] = []
    placed = np.zeros(n, dtype=bool)
    attached = np.zeros(n, dtype=np.int64)
    for _ in range(n):
        choices = [v for v in range(n) if not placed[v]]
        v = max(choices, key=lambda u: (attached[u], -len(buckets[sig1[u]]), -u))
        order.append(v)
        placed[v] = True
        attached[g1.adj[v]] += 1

    adj1, adj2 = g1.adj, g2.adj
    mapping = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    deadline = time.monotonic() + budget.seconds
    nodes = 0

    def extend(k: int, src: list[int], dst: list[int]) -> bool:
        nonlocal nodes
        if k == n:
            return True
        v = order[k]
        src_arr = np.array(src, dtype=np.int64)
        dst_arr = np.array(dst, dtype=np.int64)
        for w in buckets[sig1[v]]:
            if used[w]:
                continue
            nodes += 1
            if nodes > budget.max_candidates:
                raise BudgetExceeded(f"isomorphism search explored {nodes} nodes")
            if nodes % 4096 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded(f"isomorphism search timed out after {budget.seconds}s")
            if src and not np.array_equal(adj1[src_arr, v], adj2[dst_arr, w]):
                continue
            mapping[v] = w
            used[w] = True
            src.append(v)
            dst.append(w)
            if extend(k + 1, src, dst):
                return True
            src.pop()
            dst.pop()
            used[w] = False
            mapping[v] = -1
        return False

    if extend(0, [], []):
        return [int(x) for x in mapping]
    return None
