"""Finite posets: homogeneous sets, quotients, lexicographic sums.

This also hosts the two results that tie posets to power graphs: the
element precedence order whose comparability graph is the power graph,
the decomposition of a power graph as a generalized lexicographic
product over the cyclic-subgroup poset, and the labelled-poset
isomorphism criterion for power graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .arith import euler_phi
from .graphs import Graph, complete_graph
from .groups import Group, _readonly


class PosetError(ValueError):
    pass


class Poset:
    """Strict partial order on 0..n-1 stored as a dense boolean matrix.

    ``labels`` are optional per-vertex integers (used for labelled
    isomorphism), ``names`` optional display strings.
    """

    def __init__(self, lt: np.ndarray, labels: Sequence[int] | None = None,
                 names: Sequence[str] | None = None, *, validate: bool = True):
        lt = np.asarray(lt, dtype=bool)
        if lt.ndim != 2 or lt.shape[0] != lt.shape[1]:
            raise PosetError(f"order matrix must be square, got {lt.shape}")
        if validate:
            if lt.diagonal().any():
                v = int(np.flatnonzero(lt.diagonal())[0])
                raise PosetError(f"not irreflexive: {v} < {v}")
            if (lt & lt.T).any():
                a, b = map(int, np.argwhere(lt & lt.T)[0])
                raise PosetError(f"not antisymmetric: {a} < {b} and {b} < {a}")
            closure = (lt.astype(np.uint8) @ lt.astype(np.uint8)) > 0
            if (closure & ~lt).any():
                a, b = map(int, np.argwhere(closure & ~lt)[0])
                raise PosetError(f"not transitive: missing {a} < {b}")
        self.lt = _readonly(lt.copy())
        self.n = lt.shape[0]
        self.labels = tuple(int(x) for x in labels) if labels is not None else None
        self.names = tuple(names) if names is not None else None

    def less(self, x: int, y: int) -> bool:
        return bool(self.lt[x, y])

    def comparable(self, x: int, y: int) -> bool:
        return x != y and bool(self.lt[x, y] or self.lt[y, x])

    def covers(self) -> np.ndarray:
        """Cover (Hasse) relation derived from the full order."""
        lt8 = self.lt.astype(np.uint8)
        return self.lt & ~((lt8 @ lt8) > 0)

    def heights(self) -> np.ndarray:
        """Longest-chain-below height of every vertex."""
        order = np.argsort(self.lt.sum(axis=0), kind="stable")
        h = np.zeros(self.n, dtype=np.int64)
        for x in order:
            below = np.flatnonzero(self.lt[:, x])
            if below.size:
                h[x] = h[below].max() + 1
        return h

    def induced(self, vertices: Sequence[int]) -> "Poset":
        """Subposet on the given vertices, renumbered in the given order."""
        idx = list(vertices)
        labels = [self.labels[v] for v in idx] if self.labels is not None else None
        names = [self.names[v] for v in idx] if self.names is not None else None
        return Poset(self.lt[np.ix_(idx, idx)], labels, names, validate=False)

    def is_chain(self, vertices: Iterable[int] | None = None) -> bool:
        idx = list(vertices) if vertices is not None else list(range(self.n))
        sub = self.lt[np.ix_(idx, idx)]
        comp = sub | sub.T
        np.fill_diagonal(comp, True)
        return bool(comp.all())

    def is_antichain(self, vertices: Iterable[int] | None = None) -> bool:
        idx = list(vertices) if vertices is not None else list(range(self.n))
        return not self.lt[np.ix_(idx, idx)].any()

    def relation_pairs(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(self.lt)
        return sorted(zip(map(int, i), map(int, j)))

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"id": v, "label": self.labels[v] if self.labels is not None else None}
                for v in range(self.n)
            ],
            "less_than": [[a, b] for a, b in self.relation_pairs()],
        }

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poset) and np.array_equal(self.lt, other.lt)
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.n, self.lt.tobytes(), self.labels))


def comparability_graph(p: Poset) -> Graph:
    """Join two distinct vertices when they are comparable."""
    return Graph(p.lt | p.lt.T)


def is_homogeneous(p: Poset, subset: Iterable[int]) -> bool:
    """True when every outside vertex relates uniformly to the whole subset:
    above all of it, below all of it, or incomparable to all of it."""
    s = sorted(set(subset))
    if any(v < 0 or v >= p.n for v in s):
        raise PosetError("subset contains vertices outside the poset")
    if len(s) <= 1:
        return True
    outside = np.ones(p.n, dtype=bool)
    outside[s] = False
    out = np.flatnonzero(outside)
    if out.size == 0:
        return True
    below = p.lt[np.ix_(s, out)]        # [i, y]: s_i < y
    above = p.lt[np.ix_(out, s)].T      # [i, y]: y < s_i
    ok = ((below.all(axis=0) & ~above.any(axis=0))
          | (above.all(axis=0) & ~below.any(axis=0))
          | (~below.any(axis=0) & ~above.any(axis=0)))
    return bool(ok.all())


def quotient(p: Poset, partition: Sequence[Iterable[int]]) -> Poset:
    """Order the blocks of a homogeneous partition by their members' order.

    Blocks are renumbered by least member; rejects partitions that do not
    cover the poset or contain a non-homogeneous block (reported with a
    witness vertex).
    """
    blocks = [sorted(set(b)) for b in partition]
    flat = [v for b in blocks for v in b]
    if sorted(flat) != list(range(p.n)):
        raise PosetError("blocks must partition the vertex set")
    for b in blocks:
        if not is_homogeneous(p, b):
            witness = _non_uniform_vertex(p, b)
            raise PosetError(
                f"block {b} is not homogeneous (vertex {witness} sees it non-uniformly)")
    blocks.sort(key=lambda b: b[0])
    reps = [b[0] for b in blocks]
    lt = p.lt[np.ix_(reps, reps)]
    names = [f"[{p.names[r]}]" if p.names is not None else f"[{r}]" for r in reps]
    return Poset(lt, names=names)


def _non_uniform_vertex(p: Poset, block: Sequence[int]) -> int:
    s = list(block)
    for y in range(p.n):
        if y in set(s):
            continue
        below = [p.lt[x, y] for x in s]
        above = [p.lt[y, x] for x in s]
        uniform = ((all(below) and not any(above))
                   or (all(above) and not any(below))
                   or (not any(below) and not any(above)))
        if not uniform:
            return y
    raise AssertionError("block is homogeneous after all")


def lexicographic_sum(outer: Poset, inners: Sequence[Poset]) -> tuple[Poset, tuple[tuple[int, int], ...]]:
    """Replace every outer vertex x by the poset ``inners[x]``.

    (x1,y1) < (x2,y2) iff x1 < x2 in the outer poset, or x1 = x2 and
    y1 < y2 inside that vertex's poset. Returns the sum together with the
    (outer, inner) pair carried by each new vertex.
    """
    if len(inners) != outer.n:
        raise PosetError(f"need one inner poset per outer vertex "
                         f"({outer.n} vertices, {len(inners)} posets)")
    sizes = [q.n for q in inners]
    pairs = tuple((x, y) for x in range(outer.n) for y in range(sizes[x]))
    total = len(pairs)
    lt = np.repeat(np.repeat(outer.lt, sizes, axis=0), sizes, axis=1)
    offset = 0
    for q in inners:
        lt[offset:offset + q.n, offset:offset + q.n] = q.lt
        offset += q.n
    assert offset == total
    return Poset(lt), pairs


def generalized_lex_product(h: Graph, family: Sequence[Graph]) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Substitute ``family[v]`` for every vertex v of ``h``: join (v1,w1) and
    (v2,w2) when v1 v2 is an edge of h, or v1 = v2 and w1 w2 is an edge of
    that vertex's graph."""
    if len(family) != h.n:
        raise ValueError(f"need one graph per vertex ({h.n} vertices, {len(family)} graphs)")
    sizes = [f.n for f in family]
    pairs = tuple((v, w) for v in range(h.n) for w in range(sizes[v]))
    adj = np.repeat(np.repeat(h.adj, sizes, axis=0), sizes, axis=1)
    offset = 0
    for f in family:
        adj[offset:offset + f.n, offset:offset + f.n] = f.adj
        offset += f.n
    return Graph(adj), pairs


# ---------------------------------------------------------------------------
# Posets attached to a group
# ---------------------------------------------------------------------------

def element_poset(g: Group) -> Poset:
    """The order on group elements behind the transitive orientation; its
    comparability graph is exactly the power graph."""
    return Poset(g.precedence_matrix(), names=g.names)


def subgroup_poset(g: Group) -> Poset:
    """Cyclic subgroups under strict inclusion, labelled by subgroup size."""
    cp = g.cyclic_subgroup_poset
    names = [f"<{g.names[s.generator]}>" for s in cp.subgroups]
    return Poset(cp.less, labels=cp.labels, names=names)


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of rebuilding the power graph as a lexicographic product."""
    holds: bool
    mapping: tuple[tuple[int, int], ...]  # element -> (subgroup index, rank in its generator set)


def verify_decomposition(g: Group) -> DecompositionReport:
    """Rebuild the power graph by substituting a complete graph of order
    phi(|C|) into each vertex C of the subgroup comparability graph, then
    check that x -> (<x>, rank of x among the generators of <x>) matches
    edges exactly in both directions."""
    from .graphs import power_graph  # local import keeps module deps one-way

    cp = g.cyclic_subgroup_poset
    ig = comparability_graph(subgroup_poset(g))
    inner = [complete_graph(euler_phi(size)) for size in cp.labels]
    product, pairs = generalized_lex_product(ig, inner)
    slot = {pair: i for i, pair in enumerate(pairs)}

    mapping = []
    image = np.empty(g.n, dtype=np.int64)
    for x in range(g.n):
        ci = int(cp.index_of_element[x])
        rank = sorted(cp.subgroups[ci].gens).index(x)
        mapping.append((ci, rank))
        image[x] = slot[(ci, rank)]
    ok = (sorted(map(int, image)) == list(range(g.n))
          and np.array_equal(power_graph(g).adj, product.adj[np.ix_(image, image)]))
    return DecompositionReport(holds=bool(ok), mapping=tuple(mapping))


# ---------------------------------------------------------------------------
# Poset isomorphism
# ---------------------------------------------------------------------------

ISO_VERTEX_CAP = 200


def poset_isomorphism(p1: Poset, p2: Poset, *, respect_labels: bool = False,
                      max_vertices: int = ISO_VERTEX_CAP) -> list[int] | None:
    """Backtracking order-isomorphism search with (height, label, up-degree,
    down-degree) signature pruning. Returns a vertex mapping or None."""
    if p1.n != p2.n:
        return None
    n = p1.n
    if n > max_vertices:
        raise PosetError(f"poset has {n} vertices, isomorphism cap is {max_vertices}")
    if respect_labels:
        if p1.labels is None or p2.labels is None:
            raise PosetError("labelled isomorphism needs labels on both posets")
        lab1, lab2 = p1.labels, p2.labels
    else:
        lab1 = lab2 = (0,) * n
    if n == 0:
        return []

    def signatures(p: Poset, lab) -> list[tuple]:
        h = p.heights()
        up = p.lt.sum(axis=1)
        down = p.lt.sum(axis=0)
        return [(int(h[v]), lab[v], int(up[v]), int(down[v])) for v in range(p.n)]

    sig1, sig2 = signatures(p1, lab1), signatures(p2, lab2)
    buckets: dict[tuple, list[int]] = {}
    for w, s in enumerate(sig2):
        buckets.setdefault(s, []).append(w)
    if sorted(sig1) != sorted(sig2):
        return None

    order = sorted(range(n), key=lambda v: (len(buckets[sig1[v]]), sig1[v], v))
    lt1, lt2 = p1.lt, p2.lt
    mapping = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    placed_src: list[int] = []
    placed_dst: list[int] = []

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        src = np.array(placed_src, dtype=np.int64)
        dst = np.array(placed_dst, dtype=np.int64)
        for w in buckets[sig1[v]]:
            if used[w]:
                continue
            if placed_src and not (
                    np.array_equal(lt1[src, v], lt2[dst, w])
                    and np.array_equal(lt1[v, src], lt2[w, dst])):
                continue
            mapping[v] = w
            used[w] = True
            placed_src.append(v)
            placed_dst.append(w)
            if extend(k + 1):
                return True
            placed_src.pop()
            placed_dst.pop()
            used[w] = False
            mapping[v] = -1
        return False

    if extend(0):
        return [int(x) for x in mapping]
    return None


def labeled_poset_iso(p1: Poset, p2: Poset,
                      max_vertices: int = ISO_VERTEX_CAP) -> list[int] | None:
    """Order isomorphism that must preserve vertex labels, or None."""
    return poset_isomorphism(p1, p2, respect_labels=True, max_vertices=max_vertices)


def power_graph_iso(g1: Group, g2: Group) -> bool:
    """Power graphs are isomorphic exactly when the size-labelled
    cyclic-subgroup posets admit a label-preserving order isomorphism."""
    return labeled_poset_iso(subgroup_poset(g1), subgroup_poset(g2)) is not None
