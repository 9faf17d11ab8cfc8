"""Maximum matchings and Tutte-Berge witness sets.

The main routine is Edmonds' blossom algorithm on bitset adjacency, restricted
to an optional vertex mask so callers can ask for the matching number of
``G - S`` without building a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .graph import Graph, bits, component_masks, mask_of

BRUTEFORCE_MAX_N = 16
EXHAUSTIVE_WITNESS_MAX_N = 20


@dataclass(frozen=True)
class MatchingResult:
    size: int
    edges: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"size": self.size, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class TutteBergeCertificate:
    witness_set: tuple[int, ...]
    odd_components: int
    alpha_prime: int
    matching: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "alpha_prime": self.alpha_prime,
            "witness_set": list(self.witness_set),
            "odd_components": self.odd_components,
            "matching": [list(e) for e in self.matching],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "TutteBergeCertificate":
        return cls(
            tuple(doc["witness_set"]),
            doc["odd_components"],
            doc["alpha_prime"],
            tuple(tuple(e) for e in doc["matching"]),
        )


def _blossom(adj, within: int, n: int) -> list[int]:
    mate = [-1] * n
    verts = list(bits(within))
    # greedy start
    for v in verts:
        if mate[v] == -1:
            for u in bits(adj[v] & within):
                if mate[u] == -1:
                    mate[v], mate[u] = u, v
                    break

    def find_augmenting(root):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in bits(adj[v] & within):
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in verts:
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to, parent
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1, parent

    for root in verts:
        if mate[root] != -1 or not adj[root] & within:
            continue
        end, parent = find_augmenting(root)
        while end != -1:
            pv = parent[end]
            nxt = mate[pv]
            mate[end], mate[pv] = pv, end
            end = nxt
    return mate


def max_matching(g: Graph, within: int | None = None) -> MatchingResult:
    """Maximum matching of ``g`` (or of ``g[within]``)."""
    mask = g.vertex_mask if within is None else within
    mate = _blossom(g.adj, mask, g.n)
    edges = tuple((v, u) for v, u in enumerate(mate) if v < u)
    return MatchingResult(len(edges), edges)


def matching_number(g: Graph, within: int | None = None) -> int:
    mask = g.vertex_mask if within is None else within
    if not mask:
        return 0
    mate = _blossom(g.adj, mask, g.n)
    return sum(1 for m in mate if m != -1) // 2


def max_matching_bruteforce(g: Graph) -> MatchingResult:
    """Exhaustive maximum matching: branch on the least unmatched vertex."""
    if g.n > BRUTEFORCE_MAX_N:
        raise ValueError(f"brute-force matching is limited to n <= {BRUTEFORCE_MAX_N}")
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(rest: int) -> tuple:
        # rest: vertices still free to be matched
        while rest and not adj[(rest & -rest).bit_length() - 1] & rest:
            rest &= rest - 1
        if not rest:
            return ()
        v = (rest & -rest).bit_length() - 1
        others = rest & ~(1 << v)
        top = best(others)
        for u in bits(adj[v] & others):
            if len(top) >= rest.bit_count() // 2:
                break
            cand = ((v, u),) + best(others & ~(1 << u))
            if len(cand) > len(top):
                top = cand
        return top

    edges = tuple(sorted(best(g.vertex_mask)))
    return MatchingResult(len(edges), edges)


def odd_components(g: Graph, removed: int) -> int:
    """Number of odd-order components of ``G - removed``."""
    return sum(1 for c in component_masks(g, g.vertex_mask & ~removed) if c.bit_count() & 1)


def tutte_berge_value(g: Graph, removed: int) -> int:
    """``|G| + |S| - o(G - S)``, i.e. twice the Tutte-Berge bound for ``S``."""
    return g.n + removed.bit_count() - odd_components(g, removed)


def tutte_berge_min_exhaustive(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Minimum of ``|G|+|S|-o(G-S)`` over all ``S``; first minimiser by size then lex order."""
    if g.n > EXHAUSTIVE_WITNESS_MAX_N:
        raise ValueError(f"exhaustive Tutte-Berge search is limited to n <= {EXHAUSTIVE_WITNESS_MAX_N}")
    n = g.n
    best = None
    best_set: tuple[int, ...] = ()
    for size in range(n + 1):
        # o(G-S) <= n - |S|, so every S of this size scores >= 2|S|
        if best is not None and 2 * size >= best:
            break
        for s in combinations(range(n), size):
            val = tutte_berge_value(g, mask_of(s))
            if best is None or val < best:
                best, best_set = val, s
    return best, best_set


def _gallai_edmonds_witness(g: Graph, size: int) -> int:
    # D: vertices missed by some maximum matching; A = N(D) - D attains the minimum
    d_mask = 0
    for v in range(g.n):
        if matching_number(g, g.vertex_mask & ~(1 << v)) == size:
            d_mask |= 1 << v
    a_mask = 0
    for v in bits(d_mask):
        a_mask |= g.adj[v]
    return a_mask & ~d_mask


def tutte_berge_certificate(g: Graph) -> TutteBergeCertificate:
    """A witness set ``S`` with ``alpha'(G) = (|G| + |S| - o(G-S)) / 2``.

    For ``n <= 20`` the witness is the first minimiser in (size, lexicographic)
    order; larger graphs use the Gallai-Edmonds set ``A(G)``.  Either way the
    returned certificate has been checked against the blossom matching.
    """
    m = max_matching(g)
    target = 2 * m.size
    witness = None
    if g.n <= EXHAUSTIVE_WITNESS_MAX_N:
        for size in range(g.n + 1):
            for s in combinations(range(g.n), size):
                if tutte_berge_value(g, mask_of(s)) == target:
                    witness = mask_of(s)
                    break
            if witness is not None:
                break
    else:
        witness = _gallai_edmonds_witness(g, m.size)
    if witness is None or tutte_berge_value(g, witness) != 2 * m.size:
        raise AssertionError("no witness set attains the matching number")
    return TutteBergeCertificate(tuple(bits(witness)), odd_components(g, witness), m.size, m.edges)


def check_tutte_berge(g: Graph, cert: TutteBergeCertificate) -> bool:
    """Recompute every field of ``cert`` from scratch."""
    s = mask_of(cert.witness_set)
    if odd_components(g, s) != cert.odd_components:
        return False
    if g.n + len(cert.witness_set) - cert.odd_components != 2 * cert.alpha_prime:
        return False
    used = 0
    for u, v in cert.matching:
        if not g.has_edge(u, v) or used >> u & 1 or used >> v & 1:
            return False
        used |= 1 << u | 1 << v
    # a matching of that size plus a witness set bound: both sides meet
    return len(cert.matching) == cert.alpha_prime


def alpha_prime_monotone_check(g: Graph, u: int, v: int) -> bool:
    """True iff adding the non-edge ``uv`` strictly increases the matching number."""
    if u == v or g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not a non-edge")
    return matching_number(g.add_edge(u, v)) > matching_number(g)
