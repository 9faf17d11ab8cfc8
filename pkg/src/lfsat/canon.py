"""Canonical labelling and automorphism generators.

Individualisation-refinement search: the coarsest equitable refinement of the
current ordered partition, then branching on the first non-singleton cell.
Leaves are compared by their relabelled adjacency rows and the largest one is
canonical.  Equal leaves yield automorphisms, which prune sibling branches
(orbit pruning) and let the search jump back to the common ancestor of the
two leaves.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations
from typing import NamedTuple, Sequence

from .graph import Graph, bits, mask_of
from .graph6 import graph6_encode

Perm = tuple[int, ...]


class Labeling(NamedTuple):
    order: tuple[int, ...]
    """``order[i]`` is the vertex receiving canonical label ``i``."""
    generators: tuple[Perm, ...]
    """Automorphisms found during the search; they generate ``Aut(G)``."""

    @property
    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos


def _refine(adj: Sequence[int], cells: list[list[int]], queue: deque) -> list[list[int]]:
    n_cells = len(cells)
    n = sum(len(c) for c in cells)
    while queue and n_cells < n:
        w = queue.popleft()
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            for c in sorted(groups):
                frag = groups[c]
                out.append(frag)
                queue.append(mask_of(frag))
            n_cells += len(groups) - 1
        cells = out
    return cells


def _certificate(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = []
    for v in order:
        m = 0
        for u in bits(adj[v]):
            m |= 1 << pos[u]
        cert.append(m)
    return tuple(cert)


def _orbit_hits(v: int, tried: list[int], gens: list[Perm]) -> bool:
    seen = {v}
    stack = [v]
    targets = set(tried)
    while stack:
        x = stack.pop()
        if x in targets:
            return True
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def canonical_labeling(g: Graph, partition: Sequence[Sequence[int]] | None = None) -> Labeling:
    """Canonical order of the vertices of ``g``.

    ``partition`` is an optional ordered vertex colouring that isomorphisms
    must respect; by default all vertices share one colour.
    """
    n = g.n
    adj = g.adj
    if n == 0:
        return Labeling((), ())
    if partition is None:
        cells = [list(range(n))]
    else:
        cells = [sorted(c) for c in partition if c]
        if sorted(v for c in cells for v in c) != list(range(n)):
            raise ValueError("partition must cover every vertex exactly once")
    cells = _refine(adj, cells, deque(mask_of(c) for c in cells))

    gens: list[Perm] = []
    first: list = []  # [cert, order, path]
    best: list = []

    def at_leaf(cells, path):
        order = [c[0] for c in cells]
        cert = _certificate(adj, order)
        if not first:
            first[:] = [cert, order, path]
            best[:] = [cert, order, path]
            return None
        for ref in (first, best):
            if cert == ref[0]:
                perm = [0] * n
                for a, b in zip(order, ref[1]):
                    perm[a] = b
                perm = tuple(perm)
                if any(i != p for i, p in enumerate(perm)) and perm not in gens:
                    gens.append(perm)
                common = 0
                for a, b in zip(path, ref[2]):
                    if a != b:
                        break
                    common += 1
                return common
        if cert > best[0]:
            best[:] = [cert, order, path]
        return None

    def search(cells, path):
        d = len(path)
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            return at_leaf(cells, path)
        target = sorted(cells[idx])
        tried: list[int] = []
        for v in target:
            if tried:
                fixing = [p for p in gens if all(p[x] == x for x in path)]
                if fixing and _orbit_hits(v, tried, fixing):
                    continue
            tried.append(v)
            child = cells[:idx] + [[v], [u for u in cells[idx] if u != v]] + cells[idx + 1:]
            child = _refine(adj, child, deque([1 << v]))
            j = search(child, path + [v])
            if j is not None and j < d:
                return j
        return None

    search(cells, [])
    return Labeling(tuple(best[1]), tuple(gens))


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant key: graph6 of the canonically relabelled graph."""
    lab = canonical_labeling(g)
    return graph6_encode(g.relabel(lab.position))


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g).position)


def canonical_form_bruteforce(g: Graph) -> bytes:
    """Test oracle: lexicographically largest graph6 over all relabellings (n <= 8)."""
    if g.n > 8:
        raise ValueError("brute-force canonical form is limited to n <= 8")
    return max(graph6_encode(g.relabel(p)) for p in permutations(range(g.n)))


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    return g.relabel(perm) == g


def vertex_orbits(n: int, generators: Sequence[Perm]) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in generators:
        for x in range(n):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def pair_orbits(pairs: Sequence[tuple[int, int]], generators: Sequence[Perm], n: int):
    """Partition ``pairs`` (u < v) into orbits under the group generated by ``generators``.

    Returns a list of ``(representative, {member: perm})`` where ``perm`` maps the
    representative onto the member.  Representatives are the least pair of each
    orbit and orbits come in the order of their representatives.
    """
    identity = tuple(range(n))
    pending = set(pairs)
    out = []
    for rep in sorted(pairs):
        if rep not in pending:
            continue
        members = {rep: identity}
        queue = deque([rep])
        while queue:
            cur = queue.popleft()
            elem = members[cur]
            for gen in generators:
                a, b = gen[cur[0]], gen[cur[1]]
                img = (a, b) if a < b else (b, a)
                if img not in members:
                    members[img] = compose(gen, elem)
                    queue.append(img)
        stray = set(members) - pending
        if stray:
            raise ValueError(f"generators map {rep} outside the given pair set: {sorted(stray)[:3]}")
        pending -= set(members)
        out.append((rep, members))
    return out
