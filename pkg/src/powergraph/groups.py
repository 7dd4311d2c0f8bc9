"""Finite groups as validated multiplication tables.

Elements are integers 0..n-1 with the identity always renumbered to 0.
Groups are built either from a small expression language over standard
families (``Z(12)``, ``D(4)xZ(3)``, ``table:foo.tbl`` ...) or directly
from a Cayley table. Construction validates the group axioms; tables
that fail report the broken axiom together with a witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .arith import euler_phi, is_prime

DEFAULT_ORDER_CAP = 2048


class GroupError(ValueError):
    """Base class for group construction problems."""


class GroupParseError(GroupError):
    """Bad group-spec text; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class TableFileError(GroupError):
    """Malformed Cayley-table file (before any axiom checking)."""


class GroupTableError(GroupError):
    """A multiplication table violating a group axiom.

    ``axiom`` is one of ``closure``, ``identity``, ``associativity``,
    ``inverses``; ``witness`` holds the offending elements, e.g. the
    triple (a, g, b) with (a*g)*b != a*(g*b).
    """

    def __init__(self, axiom: str, witness: tuple | None, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class OrderCapError(GroupError):
    """Requested group exceeds the configured construction cap."""


# ---------------------------------------------------------------------------
# Group-spec expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int  # order is 2n


@dataclass(frozen=True)
class Quaternion:
    order: int  # 2**m with m >= 3


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int
    k: int


@dataclass(frozen=True)
class TableFile:
    path: str


@dataclass(frozen=True)
class Product:
    left: "GroupSpec"
    right: "GroupSpec"


GroupSpec = Union[
    Cyclic, Dihedral, Quaternion, Symmetric, Alternating,
    ElementaryAbelian, TableFile, Product,
]

_ATOM_NAMES = {"Z", "D", "Q", "S", "A", "E"}


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``expr := atom ('x' atom)*`` where an atom is ``NAME(INT[,INT])``
    or ``table:PATH`` (path runs to the next whitespace)."""
    if not text or not text.strip():
        raise GroupParseError("empty group spec", 0)
    pos = 0

    def skip_ws(p: int) -> int:
        while p < len(text) and text[p].isspace():
            p += 1
        return p

    def parse_int(p: int) -> tuple[int, int]:
        q = p
        while q < len(text) and text[q].isdigit():
            q += 1
        if q == p:
            raise GroupParseError("expected an integer", p)
        return int(text[p:q]), q

    def parse_atom(p: int) -> tuple[GroupSpec, int]:
        if text.startswith("table:", p):
            q = p + len("table:")
            r = q
            while r < len(text) and not text[r].isspace():
                r += 1
            if r == q:
                raise GroupParseError("expected a file path after 'table:'", q)
            return TableFile(text[q:r]), r
        q = p
        while q < len(text) and text[q].isalpha():
            q += 1
        name = text[p:q]
        if name not in _ATOM_NAMES:
            raise GroupParseError(
                f"unknown group family {name!r} (expected one of Z D Q S A E or 'table:')", p)
        q = skip_ws(q)
        if q >= len(text) or text[q] != "(":
            raise GroupParseError(f"expected '(' after {name}", q)
        q = skip_ws(q + 1)
        first, q = parse_int(q)
        second = None
        q = skip_ws(q)
        if q < len(text) and text[q] == ",":
            q = skip_ws(q + 1)
            second, q = parse_int(q)
            q = skip_ws(q)
        if q >= len(text) or text[q] != ")":
            raise GroupParseError("expected ')'", q)
        return _make_atom(name, first, second, p), q + 1

    def _make_atom(name: str, a: int, b: int | None, at: int) -> GroupSpec:
        if name == "E":
            if b is None:
                raise GroupParseError("E(p,k) takes two parameters", at)
            if not is_prime(a):
                raise GroupParseError(f"E(p,k) needs a prime p, got {a}", at)
            if b < 1:
                raise GroupParseError(f"E(p,k) needs k >= 1, got {b}", at)
            return ElementaryAbelian(a, b)
        if b is not None:
            raise GroupParseError(f"{name}(n) takes one parameter", at)
        if name == "Q":
            if a < 8 or a & (a - 1):
                raise GroupParseError(
                    f"Q({a}): order must be 2^m with m >= 3", at)
            return Quaternion(a)
        if a < 1:
            raise GroupParseError(f"{name}({a}): parameter must be >= 1", at)
        return {"Z": Cyclic, "D": Dihedral, "S": Symmetric, "A": Alternating}[name](a)

    pos = skip_ws(pos)
    spec, pos = parse_atom(pos)
    while True:
        pos = skip_ws(pos)
        if pos >= len(text):
            return spec
        if text[pos] != "x":
            raise GroupParseError(f"expected 'x' or end of spec, found {text[pos]!r}", pos)
        pos = skip_ws(pos + 1)
        rhs, pos = parse_atom(pos)
        spec = Product(spec, rhs)


def spec_order(spec: GroupSpec) -> int:
    """Order of the group a spec describes, without building its table."""
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, Dihedral):
        return 2 * spec.n
    if isinstance(spec, Quaternion):
        return spec.order
    if isinstance(spec, Symmetric):
        return math.factorial(spec.n)
    if isinstance(spec, Alternating):
        return max(1, math.factorial(spec.n) // 2)
    if isinstance(spec, ElementaryAbelian):
        return spec.p ** spec.k
    if isinstance(spec, TableFile):
        return _peek_table_order(spec.path)
    if isinstance(spec, Product):
        return spec_order(spec.left) * spec_order(spec.right)
    raise TypeError(f"not a group spec: {spec!r}")


# ---------------------------------------------------------------------------
# Family tables
# ---------------------------------------------------------------------------

def _cyclic(n: int):
    a = np.arange(n, dtype=np.int32)
    table = (a[:, None] + a[None, :]) % n
    names = ["e"] + ["g" if i == 1 else f"g^{i}" for i in range(1, n)]
    return table.astype(np.int32), names


def _dihedral(n: int):
    # element s^eps r^i at index eps*n + i; r^i s = s r^-i
    eps = np.arange(2)
    i = np.arange(n)
    e1, i1, e2, i2 = np.ix_(eps, i, eps, i)
    sign = np.where(e2 == 1, -1, 1)
    res_i = (i2 + sign * i1) % n
    res_e = e1 ^ e2
    table = (res_e * n + res_i).reshape(2 * n, 2 * n)
    rot = ["e"] + ["r" if k == 1 else f"r^{k}" for k in range(1, n)]
    ref = ["s"] + ["s*r" if k == 1 else f"s*r^{k}" for k in range(1, n)]
    return table.astype(np.int32), rot + ref


def _quaternion(order: int):
    # a of order 2^(m-1), b^2 = a^(2^(m-2)), b a b^-1 = a^-1;
    # element a^i b^eps at index eps*half + i
    half = order // 2
    quarter = order // 4
    eps = np.arange(2)
    i = np.arange(half)
    e1, i1, e2, i2 = np.ix_(eps, i, eps, i)
    plain = (i1 + i2) % half
    flipped = (i1 - i2 + np.where(e2 == 1, quarter, 0)) % half
    res_i = np.where(e1 == 0, plain, flipped)
    res_e = e1 ^ e2
    table = (res_e * half + res_i).reshape(order, order)
    apow = ["e"] + ["a" if k == 1 else f"a^{k}" for k in range(1, half)]
    bpow = ["b"] + ["a*b" if k == 1 else f"a^{k}*b" for k in range(1, half)]
    return table.astype(np.int32), apow + bpow


def _perm_name(p: tuple[int, ...]) -> str:
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        cycles.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(cycles) if cycles else "e"


def _perm_table(perms: list[tuple[int, ...]]):
    arr = np.array(perms, dtype=np.int32)
    index = {row.tobytes(): i for i, row in enumerate(arr)}
    m = len(arr)
    table = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        composed = arr[i][arr]  # row j is p_i after p_j
        table[i] = [index[row.tobytes()] for row in composed]
    return table, [_perm_name(p) for p in perms]


def _symmetric(n: int):
    return _perm_table(list(itertools.permutations(range(n))))


def _is_even(p: tuple[int, ...]) -> bool:
    seen = [False] * len(p)
    parity = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        nxt = start
        while not seen[nxt]:
            seen[nxt] = True
            nxt = p[nxt]
            length += 1
        parity ^= (length - 1) & 1
    return parity == 0


def _alternating(n: int):
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _perm_table(perms)


def _elementary_abelian(p: int, k: int):
    n = p**k
    idx = np.arange(n)
    digits = np.empty((n, k), dtype=np.int64)
    rem = idx.copy()
    for j in range(k - 1, -1, -1):
        digits[:, j] = rem % p
        rem //= p
    summed = (digits[:, None, :] + digits[None, :, :]) % p
    weights = p ** np.arange(k - 1, -1, -1)
    table = (summed * weights).sum(axis=2)
    names = ["(" + ",".join(str(d) for d in row) + ")" for row in digits]
    return table.astype(np.int32), names


def _product(t1, n1_names, t2, n2_names):
    n2 = len(t2)
    table = (t1[:, None, :, None].astype(np.int64) * n2 + t2[None, :, None, :])
    n = len(t1) * n2
    names = [f"({a},{b})" for a in n1_names for b in n2_names]
    return table.reshape(n, n).astype(np.int32), names


# ---------------------------------------------------------------------------
# Cayley-table files
# ---------------------------------------------------------------------------

def load_cayley_table(path: str | Path) -> np.ndarray:
    """Read the table file format: first token n, then n*n 0-based entries."""
    try:
        tokens = Path(path).read_text().split()
    except OSError as exc:
        raise TableFileError(f"cannot read table file {path}: {exc}") from exc
    if not tokens:
        raise TableFileError(f"table file {path} is empty")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise TableFileError(f"table file {path}: non-integer token") from exc
    n = values[0]
    if n < 1:
        raise TableFileError(f"table file {path}: order must be >= 1, got {n}")
    if len(values) != 1 + n * n:
        raise TableFileError(
            f"table file {path}: expected {n * n} entries after the order, got {len(values) - 1}")
    return np.array(values[1:], dtype=np.int32).reshape(n, n)


def _peek_table_order(path: str | Path) -> int:
    try:
        with open(path) as fh:
            first = fh.readline().split()
    except OSError as exc:
        raise TableFileError(f"cannot read table file {path}: {exc}") from exc
    if not first:
        raise TableFileError(f"table file {path} is empty")
    try:
        return int(first[0])
    except ValueError as exc:
        raise TableFileError(f"table file {path}: bad order line") from exc


def normalize_identity(table: np.ndarray) -> np.ndarray:
    """Renumber elements so the identity sits at index 0."""
    n = len(table)
    idx = np.arange(n)
    ident = [e for e in range(n)
             if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx)]
    if not ident:
        raise GroupTableError("identity", None, "table has no identity element")
    e = ident[0]
    if e == 0:
        return table
    sigma = idx.copy()
    sigma[0], sigma[e] = e, 0  # involution: sigma == sigma^-1
    return sigma[table[np.ix_(sigma, sigma)]].astype(np.int32)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _generating_set(table: np.ndarray) -> list[int]:
    """Greedy generating set: repeatedly adjoin the least element not yet
    reachable and close under the operation."""
    n = len(table)
    members = np.zeros(n, dtype=bool)
    members[0] = True
    gens: list[int] = []
    while not members.all():
        x = int(np.argmin(members))
        gens.append(x)
        members[x] = True
        while True:
            idx = np.flatnonzero(members)
            reached = np.zeros(n, dtype=bool)
            reached[table[np.ix_(idx, idx)].ravel()] = True
            if (reached & ~members).any():
                members |= reached
            else:
                break
    return gens


def validate_table(table: np.ndarray) -> None:
    """Check the group axioms, raising GroupTableError with a witness.

    Associativity uses Light's test over a greedy generating set: with
    identity present, checking (a*g)*b == a*(g*b) for every generator g
    and all a, b implies full associativity. Once associativity and the
    identity hold, existence of right inverses makes the table a group
    (a finite monoid with right inverses is cancellative).
    """
    n = len(table)
    idx = np.arange(n)
    bad = (table < 0) | (table >= n)
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        raise GroupTableError(
            "closure", (a, b),
            f"entry {a}*{b} = {int(table[a, b])} is outside 0..{n - 1}")
    if not (np.array_equal(table[0], idx) and np.array_equal(table[:, 0], idx)):
        row_bad = np.flatnonzero(table[0] != idx)
        a = int(row_bad[0]) if row_bad.size else int(np.flatnonzero(table[:, 0] != idx)[0])
        raise GroupTableError(
            "identity", (a,), f"element 0 is not an identity (fails at {a})")
    for g in _generating_set(table):
        lhs = table[table[:, g], :]
        rhs = table[:, table[g, :]]
        if not np.array_equal(lhs, rhs):
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            raise GroupTableError(
                "associativity", (a, g, b),
                f"({a}*{g})*{b} = {int(lhs[a, b])} but {a}*({g}*{b}) = {int(rhs[a, b])}")
    has_inv = (table == 0).any(axis=1)
    if not has_inv.all():
        a = int(np.argmin(has_inv))
        raise GroupTableError("inverses", (a,), f"element {a} has no inverse")


# ---------------------------------------------------------------------------
# Structures derived from a group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicSubgroup:
    """One cyclic subgroup <x>: canonical generator, members, generator set."""
    generator: int
    size: int
    members: frozenset[int]
    gens: frozenset[int]


@dataclass(frozen=True, eq=False)
class GeneratorPartition:
    """Partition of the group into generator classes [x] = {y : <y> = <x>}.

    Classes are ordered by least member; inside each class the imposed
    ordering is ascending element index.
    """
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    rank_of: np.ndarray


@dataclass(frozen=True, eq=False)
class CyclicSubgroupPoset:
    """All cyclic subgroups ordered by inclusion, labelled by their size.

    ``less`` is the full strict-order matrix and ``hasse`` its cover
    reduction; subgroups are sorted by (size, canonical generator).
    """
    subgroups: tuple[CyclicSubgroup, ...]
    less: np.ndarray
    hasse: np.ndarray
    labels: tuple[int, ...]
    index_of_element: np.ndarray

    def __len__(self) -> int:
        return len(self.subgroups)

    def maximal_indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(~self.less.any(axis=1)))


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Group:
    """Immutable finite group on 0..n-1; index 0 is the identity."""

    def __init__(self, table, names: Sequence[str] | None = None, *,
                 validate: bool = True, name: str | None = None):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError(f"multiplication table must be square and nonempty, got {table.shape}")
        if validate:
            validate_table(table)
        self.table = _readonly(table)
        self.n = table.shape[0]
        self.name = name
        if names is None:
            names = [str(i) for i in range(self.n)]
        if len(names) != self.n:
            raise GroupError("need one name per element")
        self.names = tuple(names)
        self.inverse = _readonly(np.argmax(table == 0, axis=1).astype(np.int32))
        self._init_powers()

    def _init_powers(self) -> None:
        n = self.n
        idx = np.arange(n)
        member = np.zeros((n, n), dtype=bool)
        orders = np.zeros(n, dtype=np.int64)
        pw = idx.copy()
        k = 1
        while True:
            member[idx, pw] = True
            done = (pw == 0) & (orders == 0)
            orders[done] = k
            if (orders > 0).all():
                break
            if k > n:  # only reachable on an unvalidated non-group table
                raise GroupError("element powers never reach the identity")
            pw = self.table[pw, idx]
            k += 1
        self.power_membership = _readonly(member)  # [x, y] <=> y in <x>
        self.orders = _readonly(orders)

    # -- basic queries ----------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse_of(self, a: int) -> int:
        return int(self.inverse[a])

    def element_order(self, x: int) -> int:
        """Least k >= 1 with x^k = e."""
        return int(self.orders[x])

    @cached_property
    def is_cyclic(self) -> bool:
        return bool((self.orders == self.n).any())

    def name_of(self, x: int) -> str:
        return self.names[x]

    # -- cyclic-subgroup structure ----------------------------------------

    def generator_class(self, x: int) -> frozenset[int]:
        """[x] = every y with <y> = <x>; its size is phi(o(x))."""
        m = self.power_membership
        return frozenset(int(i) for i in np.flatnonzero(m[x] & m[:, x]))

    @cached_property
    def generator_partition(self) -> GeneratorPartition:
        m = self.power_membership
        same = m & m.T
        class_of = np.full(self.n, -1, dtype=np.int64)
        rank_of = np.zeros(self.n, dtype=np.int64)
        classes: list[tuple[int, ...]] = []
        for x in range(self.n):
            if class_of[x] >= 0:
                continue
            members = tuple(int(i) for i in np.flatnonzero(same[x]))
            ci = len(classes)
            classes.append(members)
            for r, y in enumerate(members):
                class_of[y] = ci
                rank_of[y] = r
        return GeneratorPartition(tuple(classes), _readonly(class_of), _readonly(rank_of))

    @cached_property
    def cyclic_subgroup_poset(self) -> CyclicSubgroupPoset:
        part = self.generator_partition
        subs = []
        for members in part.classes:
            rep = members[0]
            subs.append(CyclicSubgroup(
                generator=rep,
                size=self.element_order(rep),
                members=frozenset(int(i) for i in np.flatnonzero(self.power_membership[rep])),
                gens=frozenset(members),
            ))
        subs.sort(key=lambda s: (s.size, s.generator))
        k = len(subs)
        reps = np.array([s.generator for s in subs])
        m = self.power_membership
        # <a> < <b> strictly iff a in <b> but b not in <a>
        less = m[np.ix_(reps, reps)].T & ~m[np.ix_(reps, reps)]
        hasse = less & ~(less.astype(np.uint8) @ less.astype(np.uint8)).astype(bool)
        index_of_element = np.empty(self.n, dtype=np.int64)
        for i, s in enumerate(subs):
            for x in s.gens:
                index_of_element[x] = i
        return CyclicSubgroupPoset(
            subgroups=tuple(subs),
            less=_readonly(less),
            hasse=_readonly(hasse),
            labels=tuple(s.size for s in subs),
            index_of_element=_readonly(index_of_element),
        )

    def maximal_involutions(self) -> tuple[int, ...]:
        """Involutions whose cyclic subgroup is inclusion-maximal."""
        cp = self.cyclic_subgroup_poset
        maximal = set(cp.maximal_indices())
        return tuple(x for x in range(self.n)
                     if self.element_order(x) == 2 and int(cp.index_of_element[x]) in maximal)

    def euler_sum_check(self) -> tuple[int, bool]:
        """Sum phi(|C|) over all cyclic subgroups; holds iff it equals |G|."""
        total = sum(euler_phi(size) for size in self.cyclic_subgroup_poset.labels)
        return total, total == self.n

    # -- the precedence relation behind the transitive orientation --------

    def precedence_matrix(self, class_orderings: Sequence[Sequence[int]] | None = None) -> np.ndarray:
        """Strict relation: x before y iff <x> is strictly inside <y>, or both
        generate the same subgroup and x comes earlier in its class ordering.

        ``class_orderings`` overrides the default ascending-index ordering;
        it must list every generator class exactly (any order of classes).
        """
        m = self.power_membership
        proper = m.T & ~m          # [x, y] <=> <x> strictly inside <y>
        same = m & m.T
        np.fill_diagonal(same, False)
        if class_orderings is None:
            pos = np.arange(self.n)
        else:
            part = self.generator_partition
            expect = {frozenset(c) for c in part.classes}
            got = {frozenset(c) for c in class_orderings}
            if expect != got or sum(len(c) for c in class_orderings) != self.n:
                raise GroupError("class_orderings must cover each generator class exactly")
            pos = np.empty(self.n, dtype=np.int64)
            for ordering in class_orderings:
                for r, x in enumerate(ordering):
                    pos[x] = r
        earlier = pos[:, None] < pos[None, :]
        return proper | (same & earlier)


def build_group(spec: GroupSpec | str, max_order: int = DEFAULT_ORDER_CAP) -> Group:
    """Build and validate the group described by ``spec``.

    Accepts either a parsed GroupSpec or the spec text itself.
    """
    if isinstance(spec, str):
        text = spec
        spec = parse_group_spec(spec)
    else:
        text = _spec_text(spec)
    order = spec_order(spec)
    if order > max_order:
        raise OrderCapError(f"group of order {order} exceeds the cap {max_order}")
    table, names = _build_table(spec)
    return Group(table, names, validate=True, name=text)


def _build_table(spec: GroupSpec):
    if isinstance(spec, Cyclic):
        return _cyclic(spec.n)
    if isinstance(spec, Dihedral):
        return _dihedral(spec.n)
    if isinstance(spec, Quaternion):
        return _quaternion(spec.order)
    if isinstance(spec, Symmetric):
        return _symmetric(spec.n)
    if isinstance(spec, Alternating):
        return _alternating(spec.n)
    if isinstance(spec, ElementaryAbelian):
        return _elementary_abelian(spec.p, spec.k)
    if isinstance(spec, TableFile):
        table = normalize_identity(load_cayley_table(spec.path))
        return table, [f"x{i}" for i in range(len(table))]
    if isinstance(spec, Product):
        t1, names1 = _build_table(spec.left)
        t2, names2 = _build_table(spec.right)
        return _product(t1, names1, t2, names2)
    raise TypeError(f"not a group spec: {spec!r}")


def _spec_text(spec: GroupSpec) -> str:
    if isinstance(spec, Cyclic):
        return f"Z({spec.n})"
    if isinstance(spec, Dihedral):
        return f"D({spec.n})"
    if isinstance(spec, Quaternion):
        return f"Q({spec.order})"
    if isinstance(spec, Symmetric):
        return f"S({spec.n})"
    if isinstance(spec, Alternating):
        return f"A({spec.n})"
    if isinstance(spec, ElementaryAbelian):
        return f"E({spec.p},{spec.k})"
    if isinstance(spec, TableFile):
        return f"table:{spec.path}"
    if isinstance(spec, Product):
        return f"{_spec_text(spec.left)}x{_spec_text(spec.right)}"
    raise TypeError(f"not a group spec: {spec!r}")
