"""Twin classes, resolving involutions, and the metric-dimension formula.

The dimension of a power graph comes out of three ingredients: the twin
partition (vertices with identical open or closed neighborhoods), the
resolving involutions (involutions w admitting a pair x, y whose
distances differ only at x, y, w), and membership in the exceptional
family of noncyclic groups where the formula adds one instead of the
resolving-involution count. Cyclic groups additionally get closed forms
for all three, used as independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .arith import divisors, euler_phi, prime_factors, prime_power_root
from .graphs import distance_matrix, power_graph
from .groups import Group, _readonly
from .posets import element_poset, is_homogeneous

CLIQUE = "clique"
INDEPENDENT = "independent"
SINGLETON = "singleton"

FAIL_PRIMES = "prime-divisors-not-2-and-p"
FAIL_UNIQUE_P = "order-p-subgroup-not-unique"
FAIL_ORDER_4 = "element-of-order-4"
FAIL_2P_COVER = "involution-outside-2p-cyclic"


@dataclass(frozen=True)
class TwinClass:
    members: tuple[int, ...]
    kind: str  # clique | independent | singleton


@dataclass(frozen=True, eq=False)
class TwinPartition:
    classes: tuple[TwinClass, ...]
    class_of: np.ndarray

    def __len__(self) -> int:
        return len(self.classes)

    def class_containing(self, x: int) -> TwinClass:
        return self.classes[int(self.class_of[x])]

    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted((len(c.members) for c in self.classes), reverse=True))


def twin_partition(g: Group) -> TwinPartition:
    """Classes of the relation N(x)=N(y) or N[x]=N[y]; every class is a
    clique or an independent set of the power graph."""
    pg = power_graph(g)
    adj = pg.adj
    closed = adj.copy()
    np.fill_diagonal(closed, True)

    parent = list(range(g.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for rows in (adj, closed):
        seen: dict[bytes, int] = {}
        for x in range(g.n):
            key = rows[x].tobytes()
            if key in seen:
                union(seen[key], x)
            else:
                seen[key] = x

    members_by_root: dict[int, list[int]] = {}
    for x in range(g.n):
        members_by_root.setdefault(find(x), []).append(x)
    classes = []
    class_of = np.empty(g.n, dtype=np.int64)
    for root in sorted(members_by_root):
        members = tuple(sorted(members_by_root[root]))
        kind = _class_kind(adj, members)
        for x in members:
            class_of[x] = len(classes)
        classes.append(TwinClass(members, kind))
    return TwinPartition(tuple(classes), _readonly(class_of))


def _class_kind(adj: np.ndarray, members: tuple[int, ...]) -> str:
    if len(members) == 1:
        return SINGLETON
    block = adj[np.ix_(members, members)]
    off_diag = block.sum() // 2
    all_pairs = len(members) * (len(members) - 1) // 2
    if off_diag == all_pairs:
        return CLIQUE
    if off_diag == 0:
        return INDEPENDENT
    raise AssertionError(f"twin class {members} is neither a clique nor independent")


def twin_partition_cyclic_closedform(n: int) -> tuple[int, ...]:
    """Twin-class sizes of the cyclic group of order n, largest first:
    a single class for prime powers, otherwise the generator classes with
    the identity merged into the top class."""
    if n < 1:
        raise ValueError("order must be positive")
    if len(prime_factors(n)) <= 1:
        return (n,)
    sizes = [euler_phi(d) for d in divisors(n) if d not in (1, n)]
    sizes.append(1 + euler_phi(n))
    return tuple(sorted(sizes, reverse=True))


def class_structure_check(g: Group, tp: TwinPartition) -> bool:
    """Confirm the structural description of every twin class.

    Clique classes other than the identity's are a single generator class
    or a union of nested ones whose orders are consecutive powers of one
    prime; independent classes of size >= 2 are exactly the maximal
    involutions; for noncyclic groups, clique classes of size >= 2 are
    maximal homogeneous chains of the element order and singleton classes
    extend to no homogeneous pair.
    """
    part = g.generator_partition
    cp = g.cyclic_subgroup_poset
    maxinv = set(g.maximal_involutions())
    identity_class = set(tp.class_containing(0).members)

    for cls in tp.classes:
        members = set(cls.members)
        if cls.kind == INDEPENDENT and not members == maxinv:
            return False
        if cls.kind == CLIQUE and members != identity_class:
            if not _is_generator_class_tower(g, part, cp, members):
                return False

    if not g.is_cyclic:
        poset = element_poset(g)
        pair_ok = _homogeneous_pair_matrix(poset)
        for cls in tp.classes:
            members = list(cls.members)
            if cls.kind == CLIQUE:
                if not poset.is_chain(members) or not is_homogeneous(poset, members):
                    return False
                for y in range(g.n):
                    if y in set(members):
                        continue
                    if poset.is_chain(members + [y]) and is_homogeneous(poset, members + [y]):
                        return False
            elif cls.kind == SINGLETON:
                x = members[0]
                if pair_ok[x].any():
                    return False
    return True


def _is_generator_class_tower(g, part, cp, members: set[int]) -> bool:
    class_ids = sorted({int(part.class_of[m]) for m in members})
    union = set()
    for ci in class_ids:
        union.update(part.classes[ci])
    if union != members:
        return False
    if len(class_ids) == 1:
        return True
    sub_ids = sorted({int(cp.index_of_element[part.classes[ci][0]]) for ci in class_ids},
                     key=lambda i: cp.labels[i])
    roots = [prime_power_root(cp.labels[i]) for i in sub_ids]
    if any(r is None for r in roots):
        return False
    primes = {p for p, _ in roots}
    exps = [k for _, k in roots]
    if len(primes) != 1 or exps[0] < 1:
        return False
    if exps != list(range(exps[0], exps[0] + len(exps))):
        return False
    return all(cp.less[sub_ids[i], sub_ids[i + 1]] for i in range(len(sub_ids) - 1))


def _homogeneous_pair_matrix(poset) -> np.ndarray:
    """pair_ok[x, y] marks {x, y} homogeneous (every outsider sees the two
    vertices identically)."""
    lt = poset.lt
    n = poset.n
    ok = np.ones((n, n), dtype=bool)
    np.fill_diagonal(ok, False)
    for z in range(n):
        below_differs = lt[z, :, None] != lt[z, None, :]       # z < x vs z < y
        above_differs = lt[:, z][:, None] != lt[:, z][None, :]  # x < z vs y < z
        bad = below_differs | above_differs
        bad[z, :] = False
        bad[:, z] = False
        ok &= ~bad
    return ok


# ---------------------------------------------------------------------------
# Resolving involutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResolvingInvolution:
    """An involution w together with every pair (x, y) outside its twin
    class whose distances differ exactly on {x, y, w}."""
    w: int
    pairs: tuple[tuple[int, int], ...]


def resolving_involutions(g: Group) -> tuple[ResolvingInvolution, ...]:
    """Exhaustive search for resolving involutions.

    Twins have identical distances to everything else, so it is enough to
    test one representative pair per pair of twin classes; a hit promotes
    every pair in the class product to a witness.
    """
    pg = power_graph(g)
    d = distance_matrix(pg)
    tp = twin_partition(g)
    found = []
    for w in range(g.n):
        if g.element_order(w) != 2 or len(tp.class_containing(w).members) != 1:
            continue
        wc = int(tp.class_of[w])
        pairs: list[tuple[int, int]] = []
        for i, ci in enumerate(tp.classes):
            if i == wc:
                continue
            for j in range(i + 1, len(tp.classes)):
                if j == wc:
                    continue
                cj = tp.classes[j]
                x, y = ci.members[0], cj.members[0]
                diff = np.flatnonzero(d[x] != d[y])
                if diff.size == 3 and {int(v) for v in diff} == {x, y, w}:
                    pairs.extend((min(a, b), max(a, b))
                                 for a in ci.members for b in cj.members)
        if pairs:
            found.append(ResolvingInvolution(w, tuple(sorted(pairs))))
    return tuple(found)


def resolving_involutions_cyclic_closedform(n: int) -> int:
    """Number of resolving involutions of the cyclic group of order n:
    one when n = 2*p^m or 2^m*p for an odd prime p, else zero."""
    if n < 1:
        raise ValueError("order must be positive")
    facs = prime_factors(n)
    if len(facs) != 2 or facs[0][0] != 2:
        return 0
    two_exp, odd_exp = facs[0][1], facs[1][1]
    return 1 if (two_exp == 1 or odd_exp == 1) else 0


def resolving_involution_characterization(g: Group, w: int) -> bool:
    """Subposet test for a noncyclic group: w resolves exactly when some
    cyclic subgroup C of order 2*p^m contains w and C minus <w> is
    homogeneous once w is deleted from the element order."""
    if g.is_cyclic:
        raise ValueError("characterization applies to noncyclic groups only")
    if g.element_order(w) != 2:
        raise ValueError(f"element {w} has order {g.element_order(w)}, not 2")
    cp = g.cyclic_subgroup_poset
    poset = element_poset(g)
    keep = [v for v in range(g.n) if v != w]
    sub = poset.induced(keep)
    pos = {v: i for i, v in enumerate(keep)}
    for sg, size in zip(cp.subgroups, cp.labels):
        if size % 2:
            continue
        root = prime_power_root(size // 2)
        if root is None or root[0] == 2:
            continue
        if w not in sg.members:
            continue
        rest = [pos[v] for v in sorted(sg.members - {0, w})]
        if is_homogeneous(sub, rest):
            return True
    return False


# ---------------------------------------------------------------------------
# The exceptional family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalFamilyReport:
    """Noncyclic groups of order 2^a * p^b with a unique subgroup of order
    p, no element of order 4, and every involution inside a cyclic
    subgroup of order 2p. Their power graphs gain a single extra landmark
    instead of one per resolving involution."""
    member: bool
    p: int | None
    failures: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {"member": self.member, "p": self.p, "failures": list(self.failures)}


def exceptional_family(g: Group) -> ExceptionalFamilyReport:
    facs = prime_factors(g.n)
    odd = [p for p, _ in facs if p != 2]
    failures: list[str] = []
    p = odd[0] if (len(facs) == 2 and facs[0][0] == 2) else None
    if p is None:
        failures.append(FAIL_PRIMES)
    if (g.orders == 4).any():
        failures.append(FAIL_ORDER_4)
    if p is not None:
        cp = g.cyclic_subgroup_poset
        if sum(1 for s in cp.labels if s == p) != 1:
            failures.append(FAIL_UNIQUE_P)
        covers = [sg.members for sg, size in zip(cp.subgroups, cp.labels) if size == 2 * p]
        for w in np.flatnonzero(g.orders == 2):
            if not any(int(w) in members for members in covers):
                failures.append(FAIL_2P_COVER)
                break
    member = (not g.is_cyclic) and p is not None and not failures
    return ExceptionalFamilyReport(member=member, p=p if member else None,
                                   failures=tuple(failures))


def exceptional_family_from_separations(g: Group) -> bool:
    """Independent membership test for noncyclic groups: some non-identity
    x separates from the identity through involutions only, and at least
    r-3 of those involutions are non-maximal (r = max(|R{e,x}|, 4))."""
    if g.is_cyclic:
        raise ValueError("separation test applies to noncyclic groups only")
    d = distance_matrix(power_graph(g))
    maxinv = set(g.maximal_involutions())
    for x in range(1, g.n):
        sep = np.flatnonzero(d[0] != d[x])
        rest = [int(z) for z in sep if z not in (0, x)]
        if any(g.element_order(z) != 2 for z in rest):
            continue
        r = max(len(sep), 4)
        non_maximal = sum(1 for z in rest if z not in maxinv)
        if non_maximal >= r - 3:
            return True
    return False


# ---------------------------------------------------------------------------
# The dimension formula
# ---------------------------------------------------------------------------

class DimensionMismatchError(RuntimeError):
    """Formula and brute-force dimension disagree (indicates a bug)."""

    def __init__(self, report: "DimReport"):
        super().__init__(
            f"formula gives {report.dim_formula} but the oracle found {report.dim_oracle}")
        self.report = report


@dataclass(frozen=True)
class DimReport:
    order: int
    u_count: int
    resolving: tuple[ResolvingInvolution, ...]
    family: ExceptionalFamilyReport
    lower_bound: int
    dim_formula: int
    dim_oracle: int | None = None
    oracle_note: str | None = None

    @property
    def w_count(self) -> int:
        return len(self.resolving)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "u_count": self.u_count,
            "w": [{"w": r.w, "pairs": [list(p) for p in r.pairs]} for r in self.resolving],
            "psi": self.family.to_json_dict(),
            "lower_bound": self.lower_bound,
            "dim_formula": self.dim_formula,
            "dim_oracle": self.dim_oracle,
        }


def dim_formula(g: Group, verify: bool = False, budget=None) -> DimReport:
    """Metric dimension of the power graph by the closed formula:
    |G| - #twin classes + 1 inside the exceptional family, and
    |G| - #twin classes + #resolving involutions otherwise.

    With ``verify`` the brute-force search must reproduce the value;
    running out of budget leaves ``dim_oracle`` unset with a note, while
    a disagreement raises DimensionMismatchError.
    """
    from .oracle import BudgetExceeded, brute_force_dim

    tp = twin_partition(g)
    resolving = resolving_involutions(g)
    family = exceptional_family(g)
    u = len(tp.classes)
    w = len(resolving)
    lower = g.n - u + w
    value = g.n - u + 1 if family.member else g.n - u + w
    oracle_value = None
    note = None
    if verify:
        pg = power_graph(g)
        try:
            if budget is None:
                oracle_value, _ = brute_force_dim(pg, tp)
            else:
                oracle_value, _ = brute_force_dim(pg, tp, budget)
        except BudgetExceeded as exc:
            note = str(exc)
    report = DimReport(order=g.n, u_count=u, resolving=resolving, family=family,
                       lower_bound=lower, dim_formula=value,
                       dim_oracle=oracle_value, oracle_note=note)
    if verify and oracle_value is not None and oracle_value != value:
        raise DimensionMismatchError(report)
    return report


def dim_cyclic_closedform(n: int) -> int:
    """Dimension of the power graph of the cyclic group of order n, via
    the four-case closed form over the factorization of n."""
    if n < 1:
        raise ValueError("order must be positive")
    facs = prime_factors(n)
    if len(facs) <= 1:
        return n - 1
    exps = [r for _, r in facs]
    if len(facs) == 2 and facs[0][0] == 2:
        if exps[0] == 1:
            return n - 2 * exps[1]
        if exps[1] == 1:
            return n - 2 * exps[0]
    prod = 1
    for r in exps:
        prod *= r + 1
    return n + 1 - prod
