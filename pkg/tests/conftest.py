"""Shared fixtures and independent reference implementations.

The reference helpers here deliberately avoid the library's vectorized
code paths (pure-python powers, quadratic scans) so tests compare two
independent routes to the same answer.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from powergraph import Group, build_group, distance_matrix, power_graph


@pytest.fixture(scope="session")
def corpus_groups():
    from powergraph import iter_corpus
    return list(iter_corpus())


def G(spec: str) -> Group:
    return build_group(spec)


@pytest.fixture
def z6():
    return G("Z(6)")


@pytest.fixture
def q8():
    return G("Q(8)")


@pytest.fixture
def klein():
    return G("Z(2)xZ(2)")


@pytest.fixture
def s3():
    return G("S(3)")


# ---------------------------------------------------------------------------
# Reference implementations
# ---------------------------------------------------------------------------

def py_powers(g: Group, x: int) -> set[int]:
    """Positive powers of x collected by repeated multiplication."""
    seen = set()
    p = x
    while p not in seen:
        seen.add(p)
        p = g.op(p, x)
    return seen


def py_power_graph_edges(g: Group) -> set[tuple[int, int]]:
    powers = {x: py_powers(g, x) for x in range(g.n)}
    return {(x, y) for x in range(g.n) for y in range(x + 1, g.n)
            if y in powers[x] or x in powers[y]}


def py_twin_classes(g: Group) -> list[set[int]]:
    """Quadratic scan for the open/closed neighborhood equivalence."""
    adj = power_graph(g).adj
    n = g.n
    opens = [frozenset(np.flatnonzero(adj[i]).tolist()) for i in range(n)]
    closed = [opens[i] | {i} for i in range(n)]
    related = [[opens[i] == opens[j] or closed[i] == closed[j] for j in range(n)]
               for i in range(n)]
    seen = [False] * n
    classes = []
    for start in range(n):
        if seen[start]:
            continue
        block, todo = set(), [start]
        while todo:
            v = todo.pop()
            if seen[v]:
                continue
            seen[v] = True
            block.add(v)
            todo.extend(u for u in range(n) if related[v][u] and not seen[u])
        classes.append(block)
    return classes


def py_resolving_involutions(g: Group) -> dict[int, list[tuple[int, int]]]:
    """Definition-faithful full pair scan."""
    d = distance_matrix(power_graph(g))
    classes = py_twin_classes(g)
    cls_of = {}
    for block in classes:
        for v in block:
            cls_of[v] = block
    out: dict[int, list[tuple[int, int]]] = {}
    for w in range(g.n):
        if g.element_order(w) != 2:
            continue
        excluded = cls_of[w]
        pairs = []
        for x in range(g.n):
            for y in range(x + 1, g.n):
                if x in excluded or y in excluded:
                    continue
                sep = {z for z in range(g.n) if d[x, z] != d[y, z]}
                if sep == {x, y, w}:
                    pairs.append((x, y))
        if pairs:
            out[w] = sorted(pairs)
    return out


def exhaustive_dim(pg) -> int:
    """Minimum resolving set by scanning every subset, smallest first."""
    from powergraph import is_resolving
    for k in range(pg.n + 1):
        for comb in itertools.combinations(range(pg.n), k):
            if is_resolving(pg, comb):
                return k
    raise AssertionError("the full vertex set resolves")


def heisenberg_27_table() -> np.ndarray:
    """Cayley table of the order-27 exponent-3 group of unitriangular
    3x3 matrices over the field with three elements."""
    elems = list(itertools.product(range(3), repeat=3))
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int32)
    for a, b, c in elems:
        for a2, b2, c2 in elems:
            prod = ((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3)
            table[index[a, b, c], index[a2, b2, c2]] = index[prod]
    return table


def write_table_file(path, table: np.ndarray) -> str:
    lines = [str(len(table))]
    lines += [" ".join(str(int(v)) for v in row) for row in table]
    path.write_text("\n".join(lines) + "\n")
    return str(path)
