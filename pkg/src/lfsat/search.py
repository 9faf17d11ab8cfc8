"""Isomorphism-free enumeration and exact saturation numbers at small order.

Graphs on a fixed vertex set are generated by canonical augmentation over
edges: a child ``G + e`` is kept only when ``e`` lies in the automorphism orbit
of the child's canonical deletion edge (the edge between its two highest
canonical labels), and each parent extends by one non-edge per orbit.  Every
isomorphism class then has exactly one generation path, so levels (edge
counts) come out duplicate-free without any global lookup table.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from math import comb
from typing import Callable, Iterator

from .canon import Labeling, canonical_form, canonical_form_bruteforce, canonical_labeling, pair_orbits
from .containment import LinearForestSpec, brute_force_contains, contains_linear_forest
from .graph import Graph, complement_nonedges, complete_graph, empty_graph
from .graph6 import graph6_decode, graph6_encode
from .parallel import pmap
from .saturation import check_saturated

ENUM_MAX_N = 10
ORACLE_MAX_N = 7


def _canonical_deletion_accepts(child: Graph, lab: Labeling, e: tuple[int, int]) -> bool:
    pos = lab.position
    ce = max(child.edges(), key=lambda uv: (max(pos[uv[0]], pos[uv[1]]), min(pos[uv[0]], pos[uv[1]])))
    if ce == e:
        return True
    seen = {e}
    stack = [e]
    while stack:
        a, b = stack.pop()
        for g in lab.generators:
            x, y = g[a], g[b]
            img = (x, y) if x < y else (y, x)
            if img == ce:
                return True
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return False


def _children(item, keep=None):
    g, lab = item
    nonedges = list(complement_nonedges(g))
    out = []
    for rep, _ in pair_orbits(nonedges, lab.generators, g.n):
        child = g.add_edge(*rep)
        clab = canonical_labeling(child)
        if not _canonical_deletion_accepts(child, clab, rep):
            continue
        if keep is not None and not keep(child):
            continue
        out.append((child, clab))
    return out


def graph_levels(
    n: int,
    max_edges: int | None = None,
    keep: Callable[[Graph], bool] | None = None,
    threads: int = 1,
    start: tuple[int, list[Graph]] | None = None,
) -> Iterator[list[tuple[Graph, Labeling]]]:
    """Yield, by ascending edge count, one ``(graph, labeling)`` per isomorphism class.

    ``keep`` must be closed under edge deletion (a hereditary property); classes
    failing it are dropped together with everything generated from them.
    ``start=(m, graphs)`` resumes from a previously yielded level ``m``.
    """
    if n > ENUM_MAX_N:
        raise ValueError(f"exhaustive enumeration is limited to n <= {ENUM_MAX_N}")
    top = comb(n, 2) if max_edges is None else min(max_edges, comb(n, 2))
    if start is None:
        root = empty_graph(n)
        if keep is not None and not keep(root):
            return
        m, level = 0, [(root, canonical_labeling(root))]
    else:
        m, graphs = start
        level = [(g, canonical_labeling(g)) for g in graphs]
    while level:
        yield level
        if m == top:
            return
        expand = partial(_children, keep=keep)
        level = [c for chunk in pmap(expand, level, threads) for c in chunk]
        m += 1


def enumerate_graphs(n: int, max_edges: int | None = None, keep=None, threads: int = 1) -> Iterator[Graph]:
    """One representative per isomorphism class with at most ``max_edges`` edges."""
    for level in graph_levels(n, max_edges, keep, threads):
        for g, _ in level:
            yield g


def free_of(spec: LinearForestSpec, g: Graph) -> bool:
    return contains_linear_forest(g, spec) is None


def saturated_quick(item, spec) -> bool:
    """Saturation of an already ``H``-free ``(graph, labeling)`` pair: one witness
    per orbit of non-edges is enough."""
    g, lab = item
    for rep, _ in pair_orbits(list(complement_nonedges(g)), lab.generators, g.n):
        if contains_linear_forest(g.add_edge(*rep), spec) is None:
            return False
    return True


def saturated_graphs(n: int, spec: LinearForestSpec, threads: int = 1) -> Iterator[Graph]:
    """Every ``spec``-saturated graph on ``n`` vertices, one per isomorphism class."""
    if n < spec.order:
        yield complete_graph(n)
        return
    for level in graph_levels(n, keep=partial(free_of, spec), threads=threads):
        flags = pmap(partial(saturated_quick, spec=spec), level, threads)
        for (g, _), ok in zip(level, flags):
            if ok:
                yield g


@dataclass
class SearchResult:
    n: int
    spec: LinearForestSpec
    sat_value: int | None
    extremal_graphs: list[str]
    graphs_examined: int
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def graphs(self) -> list[Graph]:
        return [graph6_decode(s) for s in self.extremal_graphs]

    def to_json(self, include_timing: bool = False) -> dict:
        doc = {
            "n": self.n,
            "spec": self.spec.to_json(),
            "sat_value": self.sat_value,
            "extremal_graphs": self.extremal_graphs,
            "graphs_examined": self.graphs_examined,
            "notes": self.notes,
        }
        if include_timing:
            doc["elapsed"] = self.elapsed
        return doc

    def dumps(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json(include_timing), sort_keys=True, indent=2)


def _load_checkpoint(path, n, spec):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        return None, 0
    if doc.get("n") != n or doc.get("spec") != spec.to_json():
        raise ValueError(f"checkpoint {path} belongs to a different search")
    graphs = [graph6_decode(s) for s in doc["graphs"]]
    return (doc["level"], graphs), doc["examined"]


def _save_checkpoint(path, n, spec, m, level, examined):
    doc = {
        "n": n,
        "spec": spec.to_json(),
        "level": m,
        "examined": examined,
        "graphs": [graph6_encode(g).decode() for g, _ in level],
    }
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)


def sat_exact(
    n: int,
    spec: LinearForestSpec,
    edge_budget: int | None = None,
    threads: int = 1,
    checkpoint: str | None = None,
) -> SearchResult:
    """``sat(n, H)`` and ``Sat(n, H)`` by ascending edge levels of ``H``-free graphs.

    The first level holding a saturated graph is completed and returned.  With
    ``edge_budget`` the search gives up (``sat_value=None``) past that many edges.
    With ``checkpoint`` every completed level without a saturated graph is saved
    there, and an existing checkpoint is resumed from the level after it.
    """
    start = time.perf_counter()
    if n < spec.order:
        kn = complete_graph(n)
        res = SearchResult(
            n, spec, comb(n, 2), [canonical_form(kn).decode()], 1,
            notes=["n < k + 2t: every graph is H-free, so only K_n is saturated"],
        )
        res.elapsed = time.perf_counter() - start
        return res
    resume, examined = (None, 0) if checkpoint is None else _load_checkpoint(checkpoint, n, spec)
    m = 0 if resume is None else resume[0]
    sat_value = None
    found: list[str] = []
    levels = graph_levels(n, edge_budget, partial(free_of, spec), threads, resume)
    if resume is not None:
        next(levels, None)  # the saved level was fully examined before the checkpoint
        m += 1
    for level in levels:
        examined += len(level)
        flags = pmap(partial(saturated_quick, spec=spec), level, threads)
        hits = [g for (g, _), ok in zip(level, flags) if ok]
        if hits:
            sat_value = m
            found = sorted(canonical_form(g).decode() for g in hits)
            break
        if checkpoint is not None:
            _save_checkpoint(checkpoint, n, spec, m, level, examined)
        m += 1
    res = SearchResult(n, spec, sat_value, found, examined)
    if sat_value is None:
        res.notes.append(f"no saturated graph within {edge_budget} edges")
    res.elapsed = time.perf_counter() - start
    return res


def _oracle_saturated(g: Graph, spec: LinearForestSpec) -> bool:
    if brute_force_contains(g, spec):
        return False
    return all(brute_force_contains(g.add_edge(u, v), spec) for u, v in complement_nonedges(g))


def sat_bruteforce_oracle(n: int, spec: LinearForestSpec) -> SearchResult:
    """Independent check of :func:`sat_exact`: every labelled graph, level by level,
    brute-force containment, deduplication only at the end."""
    if n > ORACLE_MAX_N:
        raise ValueError(f"the brute-force oracle is limited to n <= {ORACLE_MAX_N}")
    start = time.perf_counter()
    pairs = list(combinations(range(n), 2))
    examined = 0
    # below k + 2t vertices nothing contains H, so only the top level can be saturated
    first = 0 if n >= spec.order else len(pairs)
    for m in range(first, len(pairs) + 1):
        hits = []
        for chosen in combinations(pairs, m):
            g = Graph.from_edges(n, chosen)
            examined += 1
            if _oracle_saturated(g, spec):
                hits.append(g)
        if hits:
            forms = sorted({canonical_form_bruteforce(g) for g in hits})
            # report keys in the same canonical encoding as sat_exact
            keys = sorted(canonical_form(graph6_decode(f)).decode() for f in forms)
            res = SearchResult(n, spec, m, keys, examined)
            res.elapsed = time.perf_counter() - start
            return res
    raise AssertionError("K_n is always saturated; unreachable")


def verify_result(res: SearchResult) -> bool:
    """Every listed graph is saturated with ``sat_value`` edges and keys are distinct."""
    if len(set(res.extremal_graphs)) != len(res.extremal_graphs):
        return False
    for g in res.graphs():
        if g.num_edges() != res.sat_value or not check_saturated(g, res.spec).saturated:
            return False
    return True
