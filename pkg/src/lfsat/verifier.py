"""Statement-level checks of the structural lemmas over exhaustive universes.

Each check returns a :class:`LemmaReport`.  A report with no instances is
*vacuous*, which is kept distinct from a pass: nothing was checked.
Counterexamples are stored as graph6 strings so they can be replayed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations

from . import families
from .containment import (
    LinearForestSpec,
    NoPathError,
    alpha_k,
    contains_linear_forest,
    contains_path,
    copy_vertex_sets,
)
from .graph import Graph, bits, component_masks, complement_nonedges, is_connected, vertices_of_degree
from .graph6 import graph6_encode
from .matching import matching_number
from .saturation import check_saturated, validate_certificate
from .parallel import pmap
from .search import graph_levels, saturated_graphs, saturated_quick

ALL_COPIES_MAX_N = 8


@dataclass
class LemmaReport:
    lemma: str
    universe: str
    instances_checked: int = 0
    counterexamples: list[str] = field(default_factory=list)
    mode: str = "exhaustive"
    notes: list[str] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.instances_checked == 0

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    @property
    def status(self) -> str:
        if self.counterexamples:
            return "FAILED"
        return "vacuous" if self.vacuous else "verified"

    def add_counterexample(self, g: Graph) -> None:
        key = graph6_encode(g).decode()
        if key not in self.counterexamples:
            self.counterexamples.append(key)

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "universe": self.universe,
            "instances_checked": self.instances_checked,
            "counterexamples": self.counterexamples,
            "vacuous": self.vacuous,
            "mode": self.mode,
            "status": self.status,
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def summary(self) -> str:
        line = f"{self.lemma}: {self.status} ({self.instances_checked} instances; {self.universe}; mode={self.mode})"
        if self.counterexamples:
            line += "\n  counterexamples: " + " ".join(self.counterexamples)
        for note in self.notes:
            line += f"\n  note: {note}"
        return line


# -- universes --------------------------------------------------------------


@dataclass(frozen=True)
class SaturatedInstance:
    graph: Graph
    spec: LinearForestSpec


def saturated_universe(max_n: int = 7, max_k: int = 5, max_t: int = 2, min_t: int = 0,
                       min_k: int = 2, threads: int = 1) -> list[SaturatedInstance]:
    """All saturated graphs with ``k + 2t <= n <= max_n`` (one per isomorphism class)."""
    out = []
    for k in range(min_k, max_k + 1):
        for t in range(min_t, max_t + 1):
            spec = LinearForestSpec(k, t)
            for n in range(spec.order, max_n + 1):
                out.extend(SaturatedInstance(g, spec) for g in saturated_graphs(n, spec, threads))
    return out


def _describe(max_n, max_k, max_t, min_t=0, min_k=2) -> str:
    return f"saturated graphs, {min_k} <= k <= {max_k}, {min_t} <= t <= {max_t}, k + 2t <= n <= {max_n}"


# -- Lemma 5 ----------------------------------------------------------------


def p7_free(g: Graph) -> bool:
    return contains_path(g, 7) is None


def verify_lemma5(max_n: int = 9, min_n: int = 7, threads: int = 1) -> LemmaReport:
    """Connected, ``delta >= 2``, ``P_7``-free graphs containing ``P_5`` are classified."""
    if not 7 <= min_n <= max_n <= 10:
        raise ValueError("need 7 <= min_n <= max_n <= 10")
    rep = LemmaReport(
        "lemma5",
        f"connected graphs, {min_n} <= n <= {max_n}, min degree >= 2, P7-free, containing P5",
    )
    tally: dict[str, int] = {}
    for n in range(min_n, max_n + 1):
        for level in graph_levels(n, keep=p7_free, threads=threads):
            for g, _ in level:
                if g.min_degree() < 2 or not is_connected(g) or contains_path(g, 5) is None:
                    continue
                rep.instances_checked += 1
                fam = families.recognize(g)
                if fam is None:
                    rep.add_counterexample(g)
                    continue
                tally[fam.kind] = tally.get(fam.kind, 0) + 1
    rep.notes.append("classes: " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items())))
    return rep


# -- Lemma 2 ----------------------------------------------------------------


def lemma2_holds(g: Graph) -> bool:
    for x in vertices_of_degree(g, 2):
        u, v = bits(g.adj[x])
        if not g.has_edge(u, v):
            return False
    return True


def verify_lemma2(universe: list[SaturatedInstance], universe_desc: str = "") -> LemmaReport:
    rep = LemmaReport("lemma2", universe_desc or "given saturated graphs")
    for inst in universe:
        if not vertices_of_degree(inst.graph, 2):
            continue
        rep.instances_checked += 1
        if not lemma2_holds(inst.graph):
            rep.add_counterexample(inst.graph)
    rep.notes.append(f"{len(universe)} saturated graphs scanned; only those with a degree-2 vertex count as instances")
    return rep


# -- Lemma 4 ----------------------------------------------------------------


def lemma4_violation(g: Graph, spec: LinearForestSpec, all_copies: bool) -> str | None:
    """Describe the first violation of the isolated-vertex lemma, or ``None``."""
    iso = vertices_of_degree(g, 0)
    if not iso:
        return None
    if vertices_of_degree(g, 1):
        return "V0 and V1 both non-empty"
    for x in range(g.n):
        if g.degree(x) == 0:
            continue
        need = g.closed_neighborhood(x)
        for w in iso:
            h = g.add_edge(x, w)
            want = need | 1 << w
            if all_copies:
                for mask in copy_vertex_sets(h, spec):
                    if want & ~mask:
                        return f"a copy in G+{x}{w} misses part of N[{x}] + {w}"
            else:
                emb = contains_linear_forest(h, spec)
                if emb is None:
                    return f"G+{x}{w} has no copy"
                mask = sum(1 << v for v in emb.vertices)
                if want & ~mask:
                    return f"witness in G+{x}{w} misses part of N[{x}] + {w}"
    return None


def verify_lemma4(universe: list[SaturatedInstance], universe_desc: str = "") -> LemmaReport:
    rep = LemmaReport("lemma4", universe_desc or "given saturated graphs")
    modes = set()
    for inst in universe:
        g, spec = inst.graph, inst.spec
        if spec.t < 1 or not vertices_of_degree(g, 0):
            continue
        rep.instances_checked += 1
        all_copies = g.n <= ALL_COPIES_MAX_N
        modes.add("all-copies" if all_copies else "sampled")
        why = lemma4_violation(g, spec, all_copies)
        if why is not None:
            rep.add_counterexample(g)
            rep.notes.append(f"{graph6_encode(g).decode()} {spec}: {why}")
    rep.mode = "+".join(sorted(modes)) or "all-copies"
    return rep


# -- Lemma 10 ---------------------------------------------------------------


def has_isolated_vertex(g: Graph) -> bool:
    return g.min_degree() == 0


def _free_with_isolated(spec: LinearForestSpec, g: Graph) -> bool:
    return has_isolated_vertex(g) and contains_linear_forest(g, spec) is None


def _saturated_with_isolated(n: int, spec: LinearForestSpec, threads: int = 1):
    if n < spec.order:
        return
    for level in graph_levels(n, keep=partial(_free_with_isolated, spec), threads=threads):
        flags = pmap(partial(saturated_quick, spec=spec), level, threads)
        for (g, _), ok in zip(level, flags):
            if ok:
                yield g


def verify_lemma10(max_n: int = 10, ks=(6, 7), max_t: int = 2, threads: int = 1) -> LemmaReport:
    """Saturated graphs with ``k >= 6`` and an isolated vertex are not book-structural."""
    rep = LemmaReport("lemma10", f"saturated graphs with an isolated vertex, k in {list(ks)}, 1 <= t <= {max_t}, n <= {max_n}")
    for k in ks:
        if k < 6:
            raise ValueError("the lemma concerns k >= 6")
        for t in range(1, max_t + 1):
            spec = LinearForestSpec(k, t)
            for n in range(spec.order, max_n + 1):
                for g in _saturated_with_isolated(n, spec, threads):
                    rep.instances_checked += 1
                    rep.notes.append(f"instance {graph6_encode(g).decode()} for {spec}")
                    if families.is_book_structural(g) is not None:
                        rep.add_counterexample(g)
    return rep


# -- lem15: small components ----------------------------------------------


def small_component_violation(g: Graph, spec: LinearForestSpec) -> str | None:
    k = spec.k
    for comp in component_masks(g):
        size = comp.bit_count()
        if size > k - 1:
            continue
        members = list(bits(comp))
        if any(not g.has_edge(u, v) for u, v in combinations(members, 2)):
            return f"component {members} is not a clique"
        if size % 2 == 0 and not (size == k - 1 and k % 2 == 1):
            return f"component {members} has even order {size}"
    return None


def verify_lemma15(universe: list[SaturatedInstance], universe_desc: str = "") -> LemmaReport:
    rep = LemmaReport("lem15", universe_desc or "given saturated graphs")
    for inst in universe:
        g, spec = inst.graph, inst.spec
        if spec.t < 1 or len(vertices_of_degree(g, 0)) < 2:
            continue
        rep.instances_checked += 1
        why = small_component_violation(g, spec)
        if why is not None:
            rep.add_counterexample(g)
            rep.notes.append(f"{graph6_encode(g).decode()} {spec}: {why}")
    return rep


# -- Observation on components --------------------------------------------


def _alpha_or_none(g: Graph, k: int):
    try:
        return alpha_k(g, k)
    except NoPathError:
        return None


def observation_holds(sub: Graph, u: int, v: int, k: int) -> bool:
    """The three-way disjunction for the non-edge ``uv`` of ``sub``."""
    plus = sub.add_edge(u, v)
    if matching_number(sub) < matching_number(plus):
        return True
    before = _alpha_or_none(sub, k)
    after = _alpha_or_none(plus, k)
    if before is not None:
        return after is not None and before < after
    return after is not None


def observation_violation(g: Graph, spec: LinearForestSpec) -> str | None:
    comps = component_masks(g)
    for q in comps:
        sub = g.induced(list(bits(q)))
        for u, v in complement_nonedges(sub):
            if not observation_holds(sub, u, v, spec.k):
                return f"part (1) fails inside component {list(bits(q))}"
    for q, q1 in combinations(comps, 2):
        verts = list(bits(q | q1))
        sub = g.induced(verts)
        index = {w: i for i, w in enumerate(verts)}
        for a in bits(q):
            for b in bits(q1):
                if not observation_holds(sub, index[a], index[b], spec.k):
                    return f"part (2) fails between {list(bits(q))} and {list(bits(q1))}"
    return None


def verify_observation(universe: list[SaturatedInstance], universe_desc: str = "") -> LemmaReport:
    rep = LemmaReport("observation", universe_desc or "given saturated graphs")
    for inst in universe:
        g, spec = inst.graph, inst.spec
        if spec.t < 1 or not any(True for _ in complement_nonedges(g)):
            continue
        rep.instances_checked += 1
        why = observation_violation(g, spec)
        if why is not None:
            rep.add_counterexample(g)
            rep.notes.append(f"{graph6_encode(g).decode()} {spec}: {why}")
    return rep


# -- Lemma 8: tree components ----------------------------------------------


def tree_components(g: Graph) -> list[int]:
    out = []
    for comp in component_masks(g):
        m = sum((g.adj[v] & comp).bit_count() for v in bits(comp)) // 2
        if m == comp.bit_count() - 1:
            out.append(comp)
    return out


def verify_lemma8(max_n: int = 10, max_t: int = 2, threads: int = 1) -> LemmaReport:
    """Saturated ``P_7 + tP_2`` graphs without isolated vertices and with two or
    more tree components have every tree component of order >= 14."""
    rep = LemmaReport("lemma8", f"P7+tP2-saturated graphs, 1 <= t <= {max_t}, n <= {max_n}, no isolated vertex, >= 2 tree components")
    scanned = 0
    for t in range(1, max_t + 1):
        spec = LinearForestSpec(7, t)
        for n in range(spec.order, max_n + 1):
            for g in saturated_graphs(n, spec, threads):
                scanned += 1
                if has_isolated_vertex(g):
                    continue
                trees = tree_components(g)
                if len(trees) < 2:
                    continue
                rep.instances_checked += 1
                if any(c.bit_count() < 14 for c in trees):
                    rep.add_counterexample(g)
    rep.notes.append(f"{scanned} saturated graphs scanned")
    return rep


# -- constructions -----------------------------------------------------------


def forest_alpha_profile(h: Graph, reps, sample: int = 50, seed: int = 0) -> dict[int, int]:
    """Histogram of ``alpha_7(h + e)`` over ``sample`` seeded non-edges plus ``reps``."""
    nonedges = list(complement_nonedges(h))
    rng = random.Random(seed)
    chosen = rng.sample(nonedges, min(sample, len(nonedges))) + list(reps)
    hist: dict[int, int] = {}
    for e in chosen:
        a = alpha_k(h.add_edge(*e), 7)
        hist[a] = hist.get(a, 0) + 1
    return dict(sorted(hist.items()))


def verify_theorem_constructions(t_values=(1, 2, 3), forest_ns=(41,), max_parts: int = 4,
                                 threads: int = 1, seed: int = 0) -> LemmaReport:
    """Certify the extremal graphs and the tree forests, re-validating every certificate.

    For each forest the values of ``alpha_7`` after adding a non-edge are
    recorded in the notes (a seeded sample plus every orbit representative).
    """
    rep = LemmaReport(
        "theorem",
        f"extremal graphs for t in {list(t_values)} (up to {max_parts} partitions each), forests for n in {list(forest_ns)}",
        mode="certificate",
    )
    for t in t_values:
        spec = LinearForestSpec(7, t)
        for c, fans in list(families.extremal_partitions(t))[:max_parts]:
            need = 8 + 3 * c + sum(2 * i + 1 for i in fans)
            n = max(families.theorem_threshold(t), need)
            g = families.make_extremal_p7(n, c, fans, t)
            rep.instances_checked += 1
            verdict = check_saturated(g, spec, threads=threads)
            ok = (
                verdict.saturated
                and g.num_edges() == families.extremal_edge_count(t)
                and validate_certificate(g, verdict.certificate).ok
            )
            rep.notes.append(f"t={t} c={c} fans={list(fans)} n={n}: {g.num_edges()} edges, {verdict.describe()}")
            if not ok:
                rep.add_counterexample(g)
    for n in forest_ns:
        plan = families.plan_saturation_forest(n, verify=False)
        h = families.realize(plan)
        for t in sorted({min(t, plan.max_t) for t in t_values} | {plan.max_t}):
            if t < 1:
                continue
            rep.instances_checked += 1
            verdict = check_saturated(h, LinearForestSpec(7, t), threads=threads)
            ok = (
                verdict.saturated
                and h.num_edges() == n - n // 14
                and validate_certificate(h, verdict.certificate).ok
            )
            rep.notes.append(f"forest n={n} t={t}: {h.num_edges()} edges, {verdict.describe()}")
            if not ok:
                rep.add_counterexample(h)
            reps = [o.rep for o in verdict.certificate.orbits]
        hist = forest_alpha_profile(h, reps, seed=seed)
        rep.notes.append(f"forest n={n}: alpha_7(H + e) histogram {hist} (seed {seed})")
        xy = h.add_edge(plan.x, (plan.q - 1) * 14 + plan.y)
        rep.notes.append(
            f"forest n={n}: alpha_7(H + xy) = {alpha_k(xy, 7)} at x={plan.x}, y={(plan.q - 1) * 14 + plan.y}; 5q-5 = {plan.max_t}"
        )
    return rep


# -- driver ---------------------------------------------------------------------


LEMMAS = ("2", "4", "5", "8", "10", "15", "observation", "theorem")


def run(lemmas=LEMMAS, max_n: int = 7, lemma5_max_n: int = 9, lemma10_max_n: int = 10,
        t_values=(1, 2, 3), threads: int = 1, seed: int = 0) -> list[LemmaReport]:
    """Run the selected checks; the saturated universe is built once and shared."""
    reports = []
    universe = None
    desc = _describe(max_n, 5, 2, min_t=0)
    for lem in lemmas:
        if lem in ("2", "4", "15", "observation") and universe is None:
            universe = saturated_universe(max_n, 5, 2, threads=threads)
        if lem == "2":
            reports.append(verify_lemma2(universe, desc))
        elif lem == "4":
            reports.append(verify_lemma4(universe, desc))
        elif lem == "5":
            reports.append(verify_lemma5(lemma5_max_n, threads=threads))
        elif lem == "8":
            reports.append(verify_lemma8(lemma10_max_n, threads=threads))
        elif lem == "10":
            reports.append(verify_lemma10(lemma10_max_n, threads=threads))
        elif lem == "15":
            reports.append(verify_lemma15(universe, desc))
        elif lem == "observation":
            reports.append(verify_observation(universe, desc))
        elif lem == "theorem":
            reports.append(verify_theorem_constructions(t_values, threads=threads, seed=seed))
        else:
            raise ValueError(f"unknown lemma {lem!r}; choose from {', '.join(LEMMAS)}")
    return reports
