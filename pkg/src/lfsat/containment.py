"""Containment of paths and linear forests ``P_k + tP_2``.

A copy of ``P_k + tP_2`` is a ``k``-vertex path together with ``t`` edges
disjoint from it and from each other, so the decision reduces to enumerating
``k``-paths and asking the matching module for ``alpha'(G - V(path)) >= t``.
Partial paths are memoised by (vertex set, end vertex): two partial paths that
agree on both have the same completions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .graph import Graph, bits
from .matching import max_matching, matching_number

BRUTEFORCE_MAX_N = 12


class NoPathError(ValueError):
    """Raised by :func:`alpha_k` when the graph has no ``P_k`` at all."""


@dataclass(frozen=True)
class LinearForestSpec:
    k: int
    t: int

    def __post_init__(self):
        if self.k < 2 or self.t < 0:
            raise ValueError(f"need k >= 2 and t >= 0, got k={self.k}, t={self.t}")

    @property
    def order(self) -> int:
        return self.k + 2 * self.t

    @classmethod
    def parse(cls, text: str) -> "LinearForestSpec":
        try:
            k, t = (int(x) for x in text.split(","))
        except ValueError:
            raise ValueError(f"spec must look like 'k,t', got {text!r}") from None
        return cls(k, t)

    def __str__(self) -> str:
        if self.t == 0:
            return f"P{self.k}"
        return f"P{self.k}+{self.t}P2"

    def to_json(self) -> dict:
        return {"k": self.k, "t": self.t}


@dataclass(frozen=True)
class ForestEmbedding:
    path: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> list[int]:
        return list(self.path) + [v for p in self.pairs for v in p]

    def problem(self, g: Graph, spec: LinearForestSpec | None = None) -> str | None:
        """First violated invariant against host ``g``, or ``None`` if valid."""
        if spec is not None and (len(self.path) != spec.k or len(self.pairs) != spec.t):
            return f"shape {len(self.path)},{len(self.pairs)} does not match spec {spec.k},{spec.t}"
        vs = self.vertices
        if any(not 0 <= v < g.n for v in vs):
            return "vertex out of range"
        if len(set(vs)) != len(vs):
            return "vertices not distinct"
        for a, b in zip(self.path, self.path[1:]):
            if not g.has_edge(a, b):
                return f"path step {a}-{b} is not an edge"
        for a, b in self.pairs:
            if not g.has_edge(a, b):
                return f"pair {a}-{b} is not an edge"
        return None

    def is_valid(self, g: Graph, spec: LinearForestSpec | None = None) -> bool:
        return self.problem(g, spec) is None

    def relabel(self, perm) -> "ForestEmbedding":
        pairs = tuple(tuple(sorted((perm[a], perm[b]))) for a, b in self.pairs)
        return ForestEmbedding(tuple(perm[v] for v in self.path), tuple(sorted(pairs)))

    def to_json(self) -> dict:
        return {"path": list(self.path), "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json(cls, doc: dict) -> "ForestEmbedding":
        return cls(tuple(doc["path"]), tuple(tuple(p) for p in doc["pairs"]))


def _find_path(g: Graph, k: int, accept=None, within: int | None = None) -> list[int] | None:
    """First ``k``-path (start ascending, neighbours ascending, ``first < last``)
    whose vertex mask satisfies ``accept``."""
    adj = g.adj
    allowed = g.vertex_mask if within is None else within
    if k == 1:
        for v in bits(allowed):
            if accept is None or accept(1 << v):
                return [v]
        return None
    path: list[int] = []

    for start in bits(allowed):
        dead: set = set()
        path[:] = [start]

        def dfs(mask, end, length):
            if length == k:
                return end > start and (accept is None or accept(mask))
            key = (mask, end)
            if key in dead:
                return False
            for u in bits(adj[end] & allowed & ~mask):
                path.append(u)
                if dfs(mask | 1 << u, u, length + 1):
                    return True
                path.pop()
            dead.add(key)
            return False

        if dfs(1 << start, start, 1):
            return list(path)
    return None


def path_vertex_sets(g: Graph, k: int) -> set[int]:
    """Vertex masks of all ``k``-vertex paths in ``g``."""
    adj = g.adj
    found: set[int] = set()
    seen: set = set()

    def dfs(mask, end, length):
        if length == k:
            found.add(mask)
            return
        key = (mask, end)
        if key in seen:
            return
        seen.add(key)
        for u in bits(adj[end] & ~mask):
            dfs(mask | 1 << u, u, length + 1)

    for v in range(g.n):
        dfs(1 << v, v, 1)
    return found


def contains_path(g: Graph, k: int) -> list[int] | None:
    """Some ``k``-vertex path as a vertex sequence, or ``None``."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > g.n:
        return None
    return _find_path(g, k)


def longest_path_order(g: Graph) -> int:
    k = 0
    while k < g.n and contains_path(g, k + 1) is not None:
        k += 1
    return k


def contains_linear_forest(g: Graph, spec: LinearForestSpec) -> ForestEmbedding | None:
    """An embedding of ``P_k + tP_2`` in ``g``, or ``None`` if there is none."""
    k, t = spec.k, spec.t
    if spec.order > g.n:
        return None
    if t == 0:
        p = contains_path(g, k)
        return None if p is None else ForestEmbedding(tuple(p), ())
    full = max_matching(g)
    if full.size < t + k // 2:
        return None
    if k == 2:
        edges = sorted(full.edges)
        return ForestEmbedding(edges[0], tuple(edges[1:t + 1]))
    vmask = g.vertex_mask
    cache: dict[int, bool] = {}

    def accept(mask):
        hit = cache.get(mask)
        if hit is None:
            rest = vmask & ~mask
            hit = rest.bit_count() >= 2 * t and matching_number(g, rest) >= t
            cache[mask] = hit
        return hit

    p = _find_path(g, k, accept)
    if p is None:
        return None
    rest = vmask
    for v in p:
        rest &= ~(1 << v)
    pairs = sorted(max_matching(g, rest).edges)[:t]
    return ForestEmbedding(tuple(p), tuple(pairs))


def alpha_k(g: Graph, k: int) -> int:
    """Largest ``m`` with ``P_k + mP_2`` in ``g``; :class:`NoPathError` if no ``P_k``."""
    sets = path_vertex_sets(g, k) if k <= g.n else set()
    if not sets:
        raise NoPathError(f"graph has no P_{k}")
    bound = min((g.n - k) // 2, matching_number(g))
    best = 0
    vmask = g.vertex_mask
    for mask in sorted(sets):
        best = max(best, matching_number(g, vmask & ~mask))
        if best >= bound:
            break
    return best


def brute_force_contains(g: Graph, spec: LinearForestSpec) -> bool:
    """Oracle: try every injection of the pattern vertices, path first then pairs."""
    k, t = spec.k, spec.t
    if g.n > BRUTEFORCE_MAX_N:
        raise ValueError(f"brute-force containment is limited to n <= {BRUTEFORCE_MAX_N}")
    if spec.order > g.n:
        return False
    adj = g.adj
    n = g.n

    def place_pairs(used, remaining, lo):
        if remaining == 0:
            return True
        # pairs are unordered and interchangeable: take them in increasing first vertex
        for a in range(lo, n):
            if used >> a & 1:
                continue
            for b in range(a + 1, n):
                if not used >> b & 1 and adj[a] >> b & 1:
                    if place_pairs(used | 1 << a | 1 << b, remaining - 1, a + 1):
                        return True
        return False

    def place_path(seq, used):
        if len(seq) == k:
            return place_pairs(used, t, 0)
        for v in range(n):
            if used >> v & 1:
                continue
            if seq and not adj[seq[-1]] >> v & 1:
                continue
            seq.append(v)
            if place_path(seq, used | 1 << v):
                return True
            seq.pop()
        return False

    return place_path([], 0)


def copy_vertex_sets(g: Graph, spec: LinearForestSpec) -> set[int]:
    """Vertex masks of every copy of ``P_k + tP_2`` in ``g`` (small graphs only)."""
    out: set[int] = set()
    vmask = g.vertex_mask
    adj = g.adj
    for pmask in path_vertex_sets(g, spec.k):
        rest = vmask & ~pmask
        edges = [(a, b) for a in bits(rest) for b in bits(adj[a] & rest) if a < b]
        for combo in combinations(edges, spec.t):
            m = 0
            ok = True
            for a, b in combo:
                if m >> a & 1 or m >> b & 1:
                    ok = False
                    break
                m |= 1 << a | 1 << b
            if ok:
                out.add(pmask | m)
    return out


def iter_specs(n: int, max_k: int, max_t: int | None = None) -> Iterator[LinearForestSpec]:
    """All specs with ``2 <= k <= max_k`` and ``k + 2t <= n``."""
    for k in range(2, max_k + 1):
        t = 0
        while k + 2 * t <= n and (max_t is None or t <= max_t):
            yield LinearForestSpec(k, t)
            t += 1
