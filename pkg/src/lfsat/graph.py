"""Undirected simple graphs stored as per-vertex neighbor bitsets.

A :class:`Graph` is immutable: every "modifying" helper returns a new value.
Vertices are ``0 .. n-1``; ``adj[v]`` is an int whose bit ``u`` is set iff
``uv`` is an edge.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

INF = math.inf


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int] | None = None, *, check: bool = True):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        self.n = n
        self.adj = tuple(adj) if adj is not None else (0,) * n
        self._hash = None
        if check:
            self._check()

    def _check(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length differs from vertex count")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full:
                raise ValueError(f"vertex {v} has a neighbor index >= n")
            if a >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(a):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        # handshake self-test
        assert sum(self.degrees()) == 2 * self.num_edges()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    # -- basic queries -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, a in enumerate(self.adj):
            for v in bits(a >> (u + 1)):
                yield u, u + 1 + v

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v: int) -> int:
        self._vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def neighbors(self, v: int) -> list[int]:
        self._vertex(v)
        return list(bits(self.adj[v]))

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def _vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    # -- derived graphs ------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        self._vertex(u)
        self._vertex(v)
        if u == v:
            raise ValueError("cannot add a loop")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, adj, check=False)

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj, check=False)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.n
        for v, a in enumerate(self.adj):
            m = 0
            for u in bits(a):
                m |= 1 << perm[u]
            adj[perm[v]] = m
        return Graph(self.n, adj, check=False)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled ``vertices[i] -> i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            m = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    m |= 1 << pos[u]
            adj.append(m)
        return Graph(len(vertices), adj, check=False)

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph(self.n, [full & ~a & ~(1 << v) for v, a in enumerate(self.adj)], check=False)

    def __add__(self, other: "Graph") -> "Graph":
        return disjoint_union(self, other)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; the vertices of each operand are shifted in order."""
    adj: list[int] = []
    offset = 0
    for g in graphs:
        adj.extend(a << offset for a in g.adj)
        offset += g.n
    return Graph(offset, adj, check=False)


def vertices_of_degree(g: Graph, i: int) -> list[int]:
    return [v for v, a in enumerate(g.adj) if a.bit_count() == i]


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by least vertex."""
    rest = g.vertex_mask if within is None else within
    adj = g.adj
    out = []
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def components(g: Graph) -> list[list[int]]:
    return [list(bits(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def is_forest(g: Graph) -> bool:
    return g.num_edges() == g.n - len(component_masks(g))


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Edge-count distances from ``source``; unreachable vertices get ``inf``."""
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in bits(g.adj[v]):
            if dist[u] == INF:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def dist_vertices(g: Graph, u: int, v: int) -> float:
    """Fewest vertices on a ``u``-``v`` path (so ``dist(u, u) == 1``)."""
    g._vertex(u)
    g._vertex(v)
    d = bfs_distances(g, u)[v]
    return d + 1 if d != INF else INF


def complement_nonedges(g: Graph) -> Iterator[tuple[int, int]]:
    """Unordered non-adjacent pairs ``(u, v)``, ``u < v``, lexicographically."""
    for u, v in combinations(range(g.n), 2):
        if not g.adj[u] >> v & 1:
            yield u, v


# -- standard graphs ---------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)], check=False)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with center 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
