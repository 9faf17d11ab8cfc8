"""Named graph families: fans and their relatives, the extremal graphs
``K_8 + cK_3 + F + K̄`` for ``P_7 + tP_2``, and the tree forest ``(q-1)T + T*``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .canon import canonical_form
from .containment import LinearForestSpec, contains_path
from .graph import (
    Graph,
    bfs_distances,
    bits,
    complete_graph,
    disjoint_union,
    empty_graph,
    is_connected,
    is_forest,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Family:
    """A family descriptor such as ``Fan(3)`` or ``FFan(2, 4)``."""

    kind: str
    params: tuple = ()

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}({', '.join(str(p) for p in self.params)})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": [list(p) if isinstance(p, tuple) else p for p in self.params]}

    @classmethod
    def from_json(cls, doc: dict) -> "Family":
        return cls(doc["kind"], tuple(tuple(p) if isinstance(p, list) else p for p in doc["params"]))


def Fan(i: int) -> Family:
    return Family("Fan", (i,))


def FFan(i: int, j: int) -> Family:
    return Family("FFan", (min(i, j), max(i, j)))


def DeltaFan(i: int) -> Family:
    return Family("DeltaFan", (i,))


def DeltaPlusFan(i: int) -> Family:
    return Family("DeltaPlusFan", (i,))


def Clique(n: int) -> Family:
    return Family("Clique", (n,))


BookStructural = Family("BookStructural")


# -- constructors --------------------------------------------------------


def _fan_edges(center: int, first: int, triangles: int) -> list[tuple[int, int]]:
    edges = []
    for k in range(triangles):
        a, b = first + 2 * k, first + 2 * k + 1
        edges += [(center, a), (center, b), (a, b)]
    return edges


def make_fan(i: int) -> Graph:
    """``i`` triangles sharing the center vertex 0."""
    if i < 1:
        raise ValueError("a fan needs at least one triangle (i >= 1)")
    return Graph.from_edges(2 * i + 1, _fan_edges(0, 1, i))


def make_ffan(i: int, j: int) -> Graph:
    """``F_i + F_j`` plus an edge joining the centers 0 and ``2i + 1``."""
    if i < 1 or j < 1:
        raise ValueError("both fans of an ffan need i, j >= 1")
    y = 2 * i + 1
    edges = _fan_edges(0, 1, i) + _fan_edges(y, y + 1, j) + [(0, y)]
    return Graph.from_edges(2 * i + 2 * j + 2, edges)


def make_delta_plus_fan(i: int) -> Graph:
    """``i - 1`` triangles and a ``K_4`` sharing vertex 0."""
    if i < 2:
        raise ValueError("a delta-plus fan needs i >= 2")
    k = 2 * (i - 1) + 1
    edges = _fan_edges(0, 1, i - 1)
    quad = [0, k, k + 1, k + 2]
    edges += [(a, b) for idx, a in enumerate(quad) for b in quad[idx + 1:]]
    return Graph.from_edges(2 * i + 2, edges)


def make_delta_fan(i: int) -> Graph:
    """:func:`make_delta_plus_fan` minus one ``K_4`` edge at the center."""
    g = make_delta_plus_fan(i)
    return g.remove_edge(0, 2 * (i - 1) + 1)


def make_book(pages: int = 2) -> Graph:
    """``pages`` triangles sharing the edge 0-1 (``K_4 - e`` for two pages)."""
    edges = [(0, 1)]
    for p in range(pages):
        edges += [(0, 2 + p), (1, 2 + p)]
    return Graph.from_edges(pages + 2, edges)


# -- recognition -----------------------------------------------------------


def is_book_structural(g: Graph) -> tuple[int, int] | None:
    """A pair ``u < v`` of degree-2 vertices with ``N(u) == N(v)`` (least ``v``), if any."""
    seen: dict[int, int] = {}
    for v, a in enumerate(g.adj):
        if a.bit_count() == 2:
            if a in seen:
                return seen[a], v
            seen[a] = v
    return None


def _candidates(n: int, m: int) -> Iterator[tuple[Family, Graph]]:
    if n % 2 == 1 and m == 3 * (n - 1) // 2 and n >= 3:
        i = (n - 1) // 2
        yield Fan(i), make_fan(i)
    if m == n * (n - 1) // 2:
        yield Clique(n), complete_graph(n)
    if n % 2 == 0 and n >= 6:
        half = (n - 2) // 2  # i + j
        if m == 3 * half + 1:
            for i in range(1, half // 2 + 1):
                yield FFan(i, half - i), make_ffan(i, half - i)
        i = (n - 2) // 2
        if i >= 2 and m == 3 * i + 2:
            yield DeltaFan(i), make_delta_fan(i)
        if i >= 2 and m == 3 * i + 3:
            yield DeltaPlusFan(i), make_delta_plus_fan(i)


def recognize(g: Graph) -> Family | None:
    """Whole-graph family by canonical-form comparison; book-structural last."""
    key = None
    for fam, cand in _candidates(g.n, g.num_edges()):
        if key is None:
            key = canonical_form(g)
        if canonical_form(cand) == key:
            return fam
    if is_book_structural(g):
        return BookStructural
    return None


def construct(fam: Family) -> Graph:
    makers = {
        "Fan": make_fan,
        "FFan": make_ffan,
        "DeltaFan": make_delta_fan,
        "DeltaPlusFan": make_delta_plus_fan,
        "Clique": complete_graph,
    }
    if fam.kind in makers:
        return makers[fam.kind](*fam.params)
    if fam.kind == "ExtremalP7":
        c, fan_orders, n, t = fam.params
        return make_extremal_p7(n, c, list(fan_orders), t)
    if fam.kind == "SaturationForest":
        return realize(plan_saturation_forest(fam.params[0]))
    raise ValueError(f"cannot construct {fam}")


# -- extremal graphs for P_7 + tP_2 ---------------------------------------


def extremal_edge_count(t: int) -> int:
    return 3 * t + 25


def make_extremal_p7(n: int, c: int, fan_orders: Sequence[int], t: int) -> Graph:
    """``K_8 + cK_3 + F + K̄`` on ``n`` vertices, ``F`` the fans ``F_i`` for ``i`` in ``fan_orders``.

    ``alpha'(cK_3 + F) = c + sum(fan_orders)`` must equal ``t - 1``.
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    if c < 0:
        raise ValueError(f"c must be non-negative, got {c}")
    for i in fan_orders:
        if i < 3:
            raise ValueError(f"fan F_{i} has order {2 * i + 1} < 7 (need fan_orders entries >= 3)")
    if c + sum(fan_orders) != t - 1:
        raise ValueError(f"c + sum(fan_orders) = {c + sum(fan_orders)} must equal t - 1 = {t - 1}")
    used = 8 + 3 * c + sum(2 * i + 1 for i in fan_orders)
    if n < used:
        raise ValueError(f"n = {n} < 8 + 3c + |F| = {used}")
    parts = [complete_graph(8)] + [complete_graph(3)] * c + [make_fan(i) for i in fan_orders]
    parts.append(empty_graph(n - used))
    g = disjoint_union(*parts)
    assert g.num_edges() == extremal_edge_count(t)
    return g


def extremal_partitions(t: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """All ``(c, fan_orders)`` with ``c + sum(fan_orders) = t - 1``, fans
    non-increasing with every entry >= 3."""

    def parts(total, largest):
        if total == 0:
            yield ()
            return
        for i in range(min(total, largest), 2, -1):
            for rest in parts(total - i, i):
                yield (i,) + rest

    for fans_total in range(t):
        for fans in parts(fans_total, fans_total):
            yield t - 1 - fans_total, fans


def theorem_threshold(t: int) -> int:
    """Least ``n`` with ``5n >= 14t + 135``."""
    return -(-(14 * t + 135) // 5)


def sat_formula(n: int, t: int) -> int:
    return min(3 * t + 25, n - n // 14)


# -- the tree forest (q - 1)T + T* ------------------------------------------


@dataclass
class SaturationForestPlan:
    n: int
    q: int
    r: int
    tree_T: Graph
    tree_Tstar: Graph
    x: int
    y: int
    source: str = "binary-tree"
    verified: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def max_t(self) -> int:
        return 5 * self.q - 5

    def to_json(self) -> dict:
        from .graph6 import graph6_encode

        return {
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "T": graph6_encode(self.tree_T).decode(),
            "Tstar": graph6_encode(self.tree_Tstar).decode(),
            "x": self.x,
            "y": self.y,
            "source": self.source,
            "verified": self.verified,
        }


def binary_tree_pair() -> Graph:
    """Two 7-vertex complete binary trees with their roots 0 and 7 joined."""
    edges = [(0, 7)]
    for root in (0, 7):
        c1, c2 = root + 1, root + 2
        edges += [(root, c1), (root, c2), (c1, root + 3), (c1, root + 4), (c2, root + 5), (c2, root + 6)]
    return Graph.from_edges(14, edges)


def attach_leaves(tree: Graph, hosts: Sequence[int], count: int) -> Graph:
    """Add ``count`` new leaves, the ``k``-th hanging off ``hosts[k % len(hosts)]``."""
    edges = list(tree.edges())
    for k in range(count):
        edges.append((hosts[k % len(hosts)], tree.n + k))
    return Graph.from_edges(tree.n + count, edges)


def deepest_leaf(tree: Graph, root: int = 0) -> int:
    dist = bfs_distances(tree, root)
    far = max(d for v, d in enumerate(dist) if tree.degree(v) == 1)
    return next(v for v, d in enumerate(dist) if d == far and tree.degree(v) == 1)


def tree_ok(tree: Graph) -> bool:
    """Connected, acyclic, no degree-2 vertex and no ``P_7``."""
    return (
        is_connected(tree)
        and is_forest(tree)
        and 2 not in tree.degrees()
        and contains_path(tree, 7) is None
    )


def realize(plan: SaturationForestPlan) -> Graph:
    return disjoint_union(*([plan.tree_T] * (plan.q - 1)), plan.tree_Tstar)


def _support_vertices(tree: Graph) -> list[int]:
    return [v for v in range(tree.n) if any(tree.degree(u) == 1 for u in bits(tree.adj[v]))]


def _plan_from(n: int, tree: Graph, hosts: Sequence[int], source: str) -> SaturationForestPlan:
    q, r = divmod(n, 14)
    tstar = attach_leaves(tree, hosts, r)
    return SaturationForestPlan(n, q, r, tree, tstar, deepest_leaf(tree), deepest_leaf(tstar), source)


def verify_plan(plan: SaturationForestPlan, threads: int = 1) -> bool:
    """Check the plan's full contract, certifying saturation for ``P_7 + (5q-5)P_2``.

    Saturation for the largest ``t`` implies it for every smaller positive ``t``:
    the forest is ``P_7``-free, and a larger linear forest contains the smaller one.
    """
    from .saturation import check_saturated

    if not (tree_ok(plan.tree_T) and tree_ok(plan.tree_Tstar)):
        return False
    if plan.tree_T.n != 14 or plan.tree_Tstar.n != 14 + plan.r:
        return False
    g = realize(plan)
    if g.n != plan.n or g.num_edges() != plan.n - plan.n // 14:
        return False
    verdict = check_saturated(g, LinearForestSpec(7, plan.max_t), threads=threads)
    return verdict.saturated


def candidate_trees() -> Iterator[Graph]:
    """14-vertex trees without degree-2 vertices or ``P_7``, canonical order."""
    import networkx as nx

    found = []
    for t in nx.nonisomorphic_trees(14):
        g = Graph.from_edges(14, t.edges())
        if tree_ok(g):
            found.append((canonical_form(g), g))
    for _, g in sorted(found, key=lambda p: p[0]):
        yield g


def plan_saturation_forest(n: int, verify: bool = True, threads: int = 1) -> SaturationForestPlan:
    """Plan ``H = (q-1)T + T*`` with ``q = n // 14``.

    The default ``T`` is :func:`binary_tree_pair`; ``T*`` adds the ``r = n mod 14``
    extra vertices as leaves on the four middle vertices.  With ``verify`` the
    contract is checked and, on failure, other 14-vertex trees are tried.
    """
    if n < 28:
        raise ValueError(f"need n >= 28 (q >= 2), got {n}")
    plan = _plan_from(n, binary_tree_pair(), [1, 8, 2, 9], "binary-tree")
    if not verify:
        return plan
    if verify_plan(plan, threads):
        plan.verified = True
        return plan
    log.warning("binary-tree candidate failed for n=%d; searching other trees", n)
    for tree in candidate_trees():
        cand = _plan_from(n, tree, _support_vertices(tree), "search")
        if verify_plan(cand, threads):
            cand.verified = True
            return cand
    raise RuntimeError(f"no valid plan found for n={n}")
