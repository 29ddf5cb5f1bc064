"""Concrete finite groups as Cayley tables.

A :class:`FiniteGroup` is fully materialized: elements are indexed
``0..order-1`` and all structure (centers, centralizers, quotients) is
computed from the multiplication table with numpy.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import DomainError, GroupSizeError

DEFAULT_ORDER_CAP = 10_000

Rational = Fraction


@dataclass(frozen=True)
class Context:
    """An ambient composition law: ``compose(x, y)`` on hashable element keys."""

    identity: Hashable
    compose: Callable[[Hashable, Hashable], Hashable]
    describe: Callable[[Hashable], str] = str


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    elements: tuple
    mul_table: np.ndarray
    inv_table: np.ndarray
    identity: int = 0
    name: str = "G"
    describe: Callable[[Hashable], str] = field(default=str, repr=False)

    def __post_init__(self):
        self.mul_table.setflags(write=False)
        self.inv_table.setflags(write=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inv_table[x])

    def label(self, x: int) -> str:
        return self.describe(self.elements[x])

    def index(self, element: Hashable) -> int:
        return self._index[element]

    @cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def commutes(self) -> np.ndarray:
        """Boolean matrix: commutes[x, y] iff xy == yx."""
        c = self.mul_table == self.mul_table.T
        c.setflags(write=False)
        return c

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.commutes.all())

    def validate(self, exhaustive_limit: int = 200, samples: int = 20_000, seed: int = 0) -> None:
        """Check Latin square, identity/inverse laws and associativity; raise AssertionError."""
        n, t = self.order, self.mul_table
        ref = np.arange(n)
        assert (np.sort(t, axis=0) == ref[:, None]).all(), "columns are not permutations"
        assert (np.sort(t, axis=1) == ref[None, :]).all(), "rows are not permutations"
        assert (t[self.identity] == ref).all() and (t[:, self.identity] == ref).all()
        assert (t[ref, self.inv_table] == self.identity).all()
        if n <= exhaustive_limit:
            # (xy)z == x(yz) for every triple, one x-slab at a time
            for x in range(n):
                assert (t[t[x]][:, :] == t[x][t]).all(), f"associativity fails at x={x}"
        else:
            rng = np.random.default_rng(seed)
            x, y, z = rng.integers(0, n, size=(3, samples))
            assert (t[t[x, y], z] == t[x, t[y, z]]).all(), "associativity fails on a sample"


def from_table(elements: Sequence, mul_table, name: str = "G", describe=str) -> FiniteGroup:
    t = np.asarray(mul_table, dtype=np.int64)
    n = len(elements)
    ident = [i for i in range(n) if (t[i] == np.arange(n)).all()]
    if len(ident) != 1:
        raise DomainError("table has no unique left identity")
    e = ident[0]
    rows, cols = np.nonzero(t == e)
    inv = np.empty(n, dtype=np.int64)
    inv[rows] = cols
    return FiniteGroup(tuple(elements), t, inv, e, name, describe)


def closure_from_generators(
    context: Context, gens: Sequence, cap: int = DEFAULT_ORDER_CAP, name: str = "G"
) -> FiniteGroup:
    """Materialize the subgroup generated by ``gens`` inside ``context``.

    Elements are indexed in breadth-first discovery order from the identity
    (right multiplication by generators), so the identity has index 0.
    """
    if not gens:
        raise DomainError("need at least one generator")
    gens = list(dict.fromkeys(gens))
    elements = [context.identity]
    index = {context.identity: 0}
    parent = [(-1, -1)]  # element i == elements[parent_i] * gens[gen_i]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for s, g in enumerate(gens):
            y = context.compose(elements[i], g)
            if y not in index:
                if len(elements) >= cap:
                    raise GroupSizeError(f"closure exceeds order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                parent.append((i, s))
                queue.append(index[y])
    n = len(elements)
    # right multiplication by each generator, for every element
    right = np.array(
        [[index[context.compose(x, g)] for g in gens] for x in elements], dtype=np.int64
    ).reshape(n, len(gens))
    t = np.empty((n, n), dtype=np.int64)
    t[:, 0] = np.arange(n)
    for y in range(1, n):
        py, s = parent[y]
        t[:, y] = right[t[:, py], s]
    return from_table(elements, t, name, context.describe)


def from_elements(
    elements: Sequence, compose: Callable, name: str = "G", describe=str, cap: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    """Materialize a group from an explicit element list (identity must be first)."""
    if len(elements) > cap:
        raise GroupSizeError(f"{len(elements)} elements exceeds order cap {cap}")
    index = {e: i for i, e in enumerate(elements)}
    t = np.array([[index[compose(x, y)] for y in elements] for x in elements], dtype=np.int64)
    return from_table(list(elements), t, name, describe)


def center(G: FiniteGroup) -> np.ndarray:
    return np.flatnonzero(G.commutes.all(axis=1))


def centralizer(G: FiniteGroup, x: int) -> np.ndarray:
    return np.flatnonzero(G.commutes[x])


def is_abelian_subset(G: FiniteGroup, members) -> bool:
    members = np.asarray(members)
    return bool(G.commutes[np.ix_(members, members)].all())


@dataclass(frozen=True)
class CentralizerPartition:
    center: frozenset
    centralizers: tuple  # tuple of sorted index tuples, ascending by (size, min index)

    @property
    def sizes(self) -> list[int]:
        return [len(x) for x in self.centralizers]

    @property
    def n(self) -> int:
        return len(self.centralizers)

    def pairwise_meets_center(self) -> bool:
        sets = [set(x) for x in self.centralizers]
        return all(
            sets[i] & sets[j] == self.center
            for i in range(len(sets))
            for j in range(i + 1, len(sets))
        )


def _distinct_centralizer_rows(G: FiniteGroup, rows) -> list[tuple]:
    seen = {}
    for x in rows:
        key = G.commutes[x].tobytes()
        if key not in seen:
            seen[key] = tuple(int(i) for i in np.flatnonzero(G.commutes[x]))
    return list(seen.values())


def centralizer_partition(G: FiniteGroup) -> CentralizerPartition:
    z = center(G)
    if len(z) == G.order:
        raise DomainError("abelian group has no non-central elements")
    noncentral = np.setdiff1d(np.arange(G.order), z)
    cents = _distinct_centralizer_rows(G, noncentral)
    # every centralizer contains the center, so ties compare the smallest non-central member
    zs = set(int(i) for i in z)
    cents.sort(key=lambda c: (len(c), min(i for i in c if i not in zs)))
    return CentralizerPartition(frozenset(zs), tuple(cents))


def is_ac_group(G: FiniteGroup) -> bool:
    if G.is_abelian:
        return True
    noncentral = np.setdiff1d(np.arange(G.order), center(G))
    return all(is_abelian_subset(G, c) for c in _distinct_centralizer_rows(G, noncentral))


def distinct_centralizer_count(G: FiniteGroup) -> int:
    return len({G.commutes[x].tobytes() for x in range(G.order)})


def commuting_probability(G: FiniteGroup) -> Fraction:
    return Fraction(int(G.commutes.sum()), G.order**2)


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    t, inv = G.mul_table, G.inv_table
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = np.unique(t[t[:, x], inv])  # g x g^-1 over all g
        seen[orbit] = True
        classes.append([int(i) for i in orbit])
    return classes


def element_orders(G: FiniteGroup) -> list[int]:
    n, t = G.order, G.mul_table
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    power, k = idx.copy(), 1
    while (orders == 0).any():
        done = (power == G.identity) & (orders == 0)
        orders[done] = k
        power = t[power, idx]
        k += 1
    return orders.tolist()


def subgroup_generated(G: FiniteGroup, gens) -> np.ndarray:
    """Sorted indices of the subgroup generated by ``gens`` (identity if empty)."""
    member = np.zeros(G.order, dtype=bool)
    member[G.identity] = True
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    frontier = np.array([G.identity])
    while frontier.size:
        nxt = np.unique(G.mul_table[np.ix_(frontier, gens)]) if gens.size else np.array([], dtype=np.int64)
        nxt = nxt[~member[nxt]]
        member[nxt] = True
        frontier = nxt
    return np.flatnonzero(member)


def derived_subgroup(G: FiniteGroup, H=None) -> np.ndarray:
    """Commutator subgroup [H, H] (H defaults to G)."""
    H = np.arange(G.order) if H is None else np.asarray(H)
    t, inv = G.mul_table, G.inv_table
    xy = t[np.ix_(H, H)]
    comm = t[t[xy, inv[H][:, None]], inv[H][None, :]]  # x y x^-1 y^-1
    return subgroup_generated(G, np.unique(comm))


def is_solvable(G: FiniteGroup) -> bool:
    H = np.arange(G.order)
    while len(H) > 1:
        D = derived_subgroup(G, H)
        if len(D) == len(H):
            return False
        H = D
    return True


def direct_product(G: FiniteGroup, A: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """G x A with element (g, a) at index g * |A| + a."""
    if G.order * A.order > cap:
        raise GroupSizeError(f"|G x A| = {G.order * A.order} exceeds order cap {cap}")
    na = A.order
    g_idx = np.repeat(np.arange(G.order), na)
    a_idx = np.tile(np.arange(na), G.order)
    t = G.mul_table[np.ix_(g_idx, g_idx)] * na + A.mul_table[np.ix_(a_idx, a_idx)]
    inv = G.inv_table[g_idx] * na + A.inv_table[a_idx]
    elements = tuple(zip((G.elements[i] for i in g_idx), (A.elements[j] for j in a_idx)))

    def describe(e, _g=G.describe, _a=A.describe):
        return f"({_g(e[0])}, {_a(e[1])})"

    return FiniteGroup(
        elements, t, inv, G.identity * na + A.identity, f"{G.name} x {A.name}", describe
    )


def quotient_by_center(G: FiniteGroup) -> FiniteGroup:
    """G/Z(G); cosets are labelled by their smallest member and ordered by it."""
    z = center(G)
    t = G.mul_table
    coset_rep = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset_rep[x] < 0:
            coset = t[x, z]
            coset_rep[coset] = x
            reps.append(x)
    pos = {r: i for i, r in enumerate(reps)}
    lookup = np.array([pos[int(coset_rep[x])] for x in range(G.order)])
    rep_arr = np.array(reps)
    qt = lookup[t[np.ix_(rep_arr, rep_arr)]]
    return from_table(
        [G.elements[r] for r in reps], qt, f"{G.name}/Z", lambda e, _d=G.describe: f"{_d(e)}Z"
    )


@dataclass(frozen=True)
class FamilyTag:
    kind: str  # "elementary_abelian" | "dihedral" | "sz2" | "other"
    param: int | None = None
    rank: int | None = None

    def __str__(self):
        if self.kind == "elementary_abelian":
            return f"ElementaryAbelian({self.param}^{self.rank})"
        if self.kind == "dihedral":
            return f"Dihedral({self.param})"
        return {"sz2": "Sz2", "other": "Other"}[self.kind]


def signature(G: FiniteGroup) -> tuple:
    """Order, abelian flag, element-order multiset and derived-subgroup order."""
    orders = tuple(sorted(Counter(element_orders(G)).items()))
    return (G.order, G.is_abelian, orders, len(derived_subgroup(G)))


def recognize_small_family(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> FamilyTag:
    """Classify by invariants only; no isomorphism testing."""
    from . import catalog  # catalog depends on this module

    n = G.order
    if n == 1 or n > cap:
        return FamilyTag("other")
    if G.is_abelian:
        orders = set(element_orders(G)) - {1}
        if len(orders) == 1:
            p, rank = orders.pop(), 0
            while p**rank < n:
                rank += 1
            if p**rank == n:
                return FamilyTag("elementary_abelian", p, rank)
        return FamilyTag("other")
    sig = signature(G)
    if n == 20 and sig == signature(catalog.frobenius20()):
        return FamilyTag("sz2")
    if n % 2 == 0 and n >= 6 and sig == signature(catalog.dihedral(n // 2)):
        return FamilyTag("dihedral", n)
    return FamilyTag("other")
