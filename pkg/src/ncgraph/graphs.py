"""Non-commuting graphs and the few graph algorithms the spectra need."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import networkx as nx
import numpy as np

from .errors import CapabilityError, DomainError
from .groups import FiniteGroup, center

MAX_CLIQUE_LIMIT = 200
PLANARITY_LIMIT = 100


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    adjacency: np.ndarray  # symmetric bool matrix, empty diagonal
    labels: tuple = ()

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("adjacency must be a square matrix")
        if (a != a.T).any() or a.diagonal().any():
            raise DomainError("adjacency must be symmetric with an empty diagonal")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(a.shape[0])))

    @classmethod
    def from_edges(cls, n: int, edges) -> SimpleGraph:
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u != v:
                a[u, v] = a[v, u] = True
        return cls(a)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        u, v = np.nonzero(np.triu(self.adjacency))
        return list(zip(u.tolist(), v.tolist()))

    def __eq__(self, other):
        return isinstance(other, SimpleGraph) and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def write_edge_list(self, path) -> None:
        """One ``u v`` line per edge, zero-based vertex positions."""
        Path(path).write_text("".join(f"{u} {v}\n" for u, v in self.edges()))

    @classmethod
    def read_edge_list(cls, path, n: int) -> SimpleGraph:
        edges = [tuple(map(int, line.split())) for line in Path(path).read_text().splitlines() if line.strip()]
        return cls.from_edges(n, edges)


def non_commuting_graph(G: FiniteGroup) -> SimpleGraph:
    """Vertices are the non-central elements of G, adjacent when they do not commute."""
    if G.is_abelian:
        raise DomainError(f"{G.name} is abelian: no non-commuting graph")
    z = center(G)
    vs = np.setdiff1d(np.arange(G.order), z)
    return SimpleGraph(~G.commutes[np.ix_(vs, vs)], tuple(int(v) for v in vs))


def complement(g: SimpleGraph) -> SimpleGraph:
    a = ~g.adjacency
    np.fill_diagonal(a, False)
    return SimpleGraph(a, g.labels)


def connected_components(g: SimpleGraph) -> list[list[int]]:
    n = g.vertex_count
    comp = np.full(n, -1)
    out = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        frontier = np.array([s])
        while frontier.size:
            reach = np.flatnonzero(g.adjacency[frontier].any(axis=0) & (comp < 0))
            comp[reach] = len(out)
            frontier = reach
        out.append(np.flatnonzero(comp == len(out)).tolist())
    return out


@dataclass(frozen=True)
class CliqueUnion:
    parts: tuple  # ((clique size, count), ...) with sizes strictly ascending

    @classmethod
    def from_sizes(cls, sizes) -> CliqueUnion:
        return cls(tuple(sorted(Counter(sizes).items())))

    @property
    def vertex_count(self) -> int:
        return sum(m * l for m, l in self.parts)

    @property
    def clique_count(self) -> int:
        return sum(l for _, l in self.parts)

    def sizes(self) -> list[int]:
        return [m for m, l in self.parts for _ in range(l)]

    def graph(self) -> SimpleGraph:
        n = self.vertex_count
        a = np.zeros((n, n), dtype=bool)
        start = 0
        for m in self.sizes():
            a[start : start + m, start : start + m] = True
            start += m
        np.fill_diagonal(a, False)
        return SimpleGraph(a)


class NotCliqueUnion(DomainError):
    def __init__(self, component):
        self.component = list(component)
        super().__init__(f"component {self.component[:10]}{'...' if len(self.component) > 10 else ''} is not complete")


def as_clique_union(g: SimpleGraph) -> CliqueUnion:
    """Decompose g as a disjoint union of complete graphs or raise NotCliqueUnion."""
    sizes = []
    for comp in connected_components(g):
        k = len(comp)
        if int(g.adjacency[np.ix_(comp, comp)].sum()) != k * (k - 1):
            raise NotCliqueUnion(comp)
        sizes.append(k)
    return CliqueUnion.from_sizes(sizes)


def _bit_neighbors(g: SimpleGraph) -> list[int]:
    packed = np.packbits(g.adjacency, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def max_clique(g: SimpleGraph, limit: int = MAX_CLIQUE_LIMIT) -> int:
    """Exact clique number by branch and bound with greedy-colouring bounds.

    When the complement is a union of cliques those cliques are exactly the
    colour classes the greedy step finds, so the bound is tight at once.
    """
    n = g.vertex_count
    if n > limit:
        raise CapabilityError(f"max_clique limited to {limit} vertices, graph has {n}")
    if n == 0:
        return 0
    nbrs = _bit_neighbors(g)
    best = 0

    def colour_sort(cand: int):
        order, bounds = [], []
        uncoloured, colour = cand, 0
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                order.append(v)
                bounds.append(colour)
                uncoloured &= ~low
                q &= ~low & ~nbrs[v]
        return order, bounds

    def expand(cand: int, size: int):
        nonlocal best
        order, bounds = colour_sort(cand)
        for v, bound in zip(reversed(order), reversed(bounds)):
            if size + bound <= best:
                return
            new = cand & nbrs[v]
            if new:
                expand(new, size + 1)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand((1 << n) - 1, 0)
    return best


def is_planar(g: SimpleGraph, limit: int = PLANARITY_LIMIT) -> bool:
    v, e = g.vertex_count, g.edge_count
    if v > limit:
        raise CapabilityError(f"planarity test limited to {limit} vertices, graph has {v}")
    if v >= 3 and e > 3 * v - 6:
        return False
    h = nx.Graph()
    h.add_nodes_from(range(v))
    h.add_edges_from(g.edges())
    planar, _ = nx.check_planarity(h)
    return bool(planar)
