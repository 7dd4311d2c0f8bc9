"""Power digraph, power graph, and its transitive orientation.

Graphs and digraphs are dense boolean adjacency matrices; everything is
immutable after construction. Power graphs of nontrivial groups have a
universal vertex (the identity), so distances live in {0, 1, 2} and are
computed by a guarded closed form instead of BFS.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arith import euler_phi
from .groups import Group, _readonly


class Graph:
    """Undirected simple graph on vertices 0..n-1."""

    def __init__(self, adj: np.ndarray):
        adj = np.asarray(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got {adj.shape}")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        self.adj = _readonly(adj.copy())
        self.n = adj.shape[0]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            adj[i, j] = adj[j, i] = True
        return cls(adj)

    def neighbors(self, x: int) -> frozenset[int]:
        return frozenset(int(i) for i in np.flatnonzero(self.adj[x]))

    def degree(self, x: int) -> int:
        return int(self.adj[x].sum())

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adj))
        return sorted(zip(map(int, i), map(int, j)))

    @property
    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[i, j] for i, j in self.edges()]}

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))


def complete_graph(n: int) -> Graph:
    adj = np.ones((n, n), dtype=bool)
    np.fill_diagonal(adj, False)
    return Graph(adj)


class Digraph:
    """Directed graph without loops; ``arcs[x, y]`` means an arc x -> y."""

    def __init__(self, arcs: np.ndarray):
        arcs = np.asarray(arcs, dtype=bool)
        if arcs.ndim != 2 or arcs.shape[0] != arcs.shape[1]:
            raise ValueError(f"arc matrix must be square, got {arcs.shape}")
        if arcs.diagonal().any():
            raise ValueError("loops are not allowed")
        self.arcs = _readonly(arcs.copy())
        self.n = arcs.shape[0]

    def arc_list(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(self.arcs)
        return sorted(zip(map(int, i), map(int, j)))

    @property
    def arc_count(self) -> int:
        return int(self.arcs.sum())

    def successors(self, x: int) -> frozenset[int]:
        return frozenset(int(i) for i in np.flatnonzero(self.arcs[x]))

    def underlying_graph(self) -> Graph:
        return Graph(self.arcs | self.arcs.T)

    def __eq__(self, other) -> bool:
        return isinstance(other, Digraph) and np.array_equal(self.arcs, other.arcs)

    def __hash__(self):
        return hash((self.n, self.arcs.tobytes()))


# ---------------------------------------------------------------------------
# Constructions from a group
# ---------------------------------------------------------------------------

def power_digraph(g: Group) -> Digraph:
    """Arc x -> y exactly when x != y and y is a positive power of x."""
    arcs = g.power_membership.copy()
    np.fill_diagonal(arcs, False)
    return Digraph(arcs)


def power_graph(g: Group) -> Graph:
    """Join two distinct elements when one is a power of the other."""
    m = g.power_membership
    adj = m | m.T
    np.fill_diagonal(adj, False)
    return Graph(adj)


def transitive_orientation(g: Group,
                           class_orderings: Sequence[Sequence[int]] | None = None) -> Digraph:
    """Orient each power-graph edge from the later to the earlier element of
    the precedence relation (strict subgroup inclusion, with the per-class
    ordering breaking ties inside a generator class).

    The result is a transitive orientation and a subdigraph of the power
    digraph; different class orderings give isomorphic digraphs.
    """
    return Digraph(g.precedence_matrix(class_orderings).T)


def is_transitive(d: Digraph) -> bool:
    """True when arcs (u,v) and (v,w) always force the arc (u,w)."""
    a = d.arcs.astype(np.uint8)
    reach2 = (a @ a) > 0
    return not (reach2 & ~d.arcs).any()


# ---------------------------------------------------------------------------
# Distances (diameter <= 2 for power graphs of groups)
# ---------------------------------------------------------------------------

def distance(pg: Graph, x: int, y: int) -> int:
    """Graph distance, valid for graphs of diameter <= 2.

    A missing common neighbor for a non-adjacent pair would mean distance
    above 2 (or infinity); that never happens for power graphs of groups
    and is guarded by an assertion.
    """
    if x == y:
        return 0
    if pg.adj[x, y]:
        return 1
    assert (pg.adj[x] & pg.adj[y]).any(), (
        f"vertices {x} and {y} are farther than 2 apart; not a group power graph?")
    return 2


def distance_matrix(pg: Graph) -> np.ndarray:
    """All pairwise distances under the {0,1,2} closed form.

    Verified cheaply through a universal vertex when one exists (the
    identity of a power graph is one); otherwise every non-adjacent pair
    is checked for a common neighbor.
    """
    n = pg.n
    dist = np.full((n, n), 2, dtype=np.int8)
    dist[pg.adj] = 1
    np.fill_diagonal(dist, 0)
    degrees = pg.adj.sum(axis=1)
    if not (degrees == n - 1).any():
        a = pg.adj.astype(np.uint8)
        two_step = (a @ a) > 0
        far = (dist == 2) & ~two_step
        assert not far.any(), "graph has diameter above 2"
    return _readonly(dist)


def neighborhoods(pg: Graph, x: int) -> tuple[frozenset[int], frozenset[int]]:
    """Open and closed neighborhood of ``x``."""
    open_n = pg.neighbors(x)
    return open_n, open_n | {x}


def separating_set(pg: Graph, x: int, y: int) -> frozenset[int]:
    """Vertices whose distance to x and to y differ; contains both x and y."""
    if x == y:
        raise ValueError("separating_set needs two distinct vertices")
    d = distance_matrix(pg)
    return frozenset(int(z) for z in np.flatnonzero(d[x] != d[y]))


# ---------------------------------------------------------------------------
# Clique number vs chromatic number
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerfectionReport:
    omega: int
    chi: int
    holds: bool


def perfection_check(g: Group) -> PerfectionReport:
    """Compare the clique and chromatic numbers of the power graph.

    omega: cliques of the power graph are chains of nested cyclic
    subgroups, so the maximum clique is the heaviest chain in the
    cyclic-subgroup poset with weights phi(|C|) (a small DP).

    chi: color every element by its height in the element precedence
    order; the coloring is checked proper and uses longest-chain-many
    colors. Both numbers equal the longest chain, so any discrepancy
    flags a construction bug.
    """
    cp = g.cyclic_subgroup_poset
    k = len(cp)
    weights = [euler_phi(size) for size in cp.labels]
    best = list(weights)
    for j in range(k):  # subgroups sorted by size: predecessors come first
        below = np.flatnonzero(cp.less[:, j])
        if below.size:
            best[j] = weights[j] + max(best[int(i)] for i in below)
    omega = max(best)

    prec = g.precedence_matrix()
    order = sorted(range(g.n), key=lambda x: (g.element_order(x), x))
    height = np.zeros(g.n, dtype=np.int64)
    for x in order:
        below = np.flatnonzero(prec[:, x])
        if below.size:
            height[x] = height[below].max() + 1
    proper = not (prec & (height[:, None] == height[None, :])).any()
    assert proper, "height coloring collided on a comparable pair"
    chi = int(height.max()) + 1
    return PerfectionReport(omega=int(omega), chi=chi, holds=int(omega) == chi)


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

def _dot_quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def export_dot(obj: Graph | Digraph, labels: Sequence[str] | None = None) -> str:
    """Deterministic DOT text; vertices ascending, edges sorted."""
    if labels is None:
        labels = [str(i) for i in range(obj.n)]
    if len(labels) != obj.n:
        raise ValueError("need one label per vertex")
    lines = []
    if isinstance(obj, Digraph):
        lines.append("digraph power {")
        for v in range(obj.n):
            lines.append(f"  v{v} [label={_dot_quote(labels[v])}];")
        for i, j in obj.arc_list():
            lines.append(f"  v{i} -> v{j};")
    else:
        lines.append("graph power {")
        for v in range(obj.n):
            lines.append(f"  v{v} [label={_dot_quote(labels[v])}];")
        for i, j in obj.edges():
            lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
