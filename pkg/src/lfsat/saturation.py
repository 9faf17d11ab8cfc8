"""H-freeness and H-saturation for ``H = P_k + tP_2``, with replayable certificates.

A certificate lists one witness embedding per orbit of non-edges under a set
of automorphisms of ``G``.  The generators are stored with the certificate so
that :func:`validate_certificate` can recompute the orbits, check that every
non-edge is covered and replay each witness without running any search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .canon import canonical_labeling, is_automorphism, pair_orbits
from .containment import ForestEmbedding, LinearForestSpec, contains_linear_forest
from .graph import Graph, complement_nonedges
from .parallel import pmap


@dataclass
class Orbit:
    rep: tuple[int, int]
    size: int
    witness: ForestEmbedding | None
    members: dict = field(default_factory=dict, repr=False)  # member -> perm mapping rep onto it

    def to_json(self) -> dict:
        doc = {"rep": list(self.rep), "size": self.size}
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
        return doc


@dataclass
class SaturationCertificate:
    spec: LinearForestSpec
    n: int
    h_free: bool
    generators: list[tuple[int, ...]]
    orbits: list[Orbit]
    failure: dict | None = None

    def witness_for(self, u: int, v: int) -> ForestEmbedding:
        """Witness for the non-edge ``uv``, mapped from its orbit representative."""
        pair = (min(u, v), max(u, v))
        for orb in self.orbits:
            if pair in orb.members and orb.witness is not None:
                return orb.witness.relabel(orb.members[pair])
        raise KeyError(f"no witness covers {pair}")

    def to_json(self) -> dict:
        doc = {
            "spec": self.spec.to_json(),
            "n": self.n,
            "h_free": self.h_free,
            "generators": [list(p) for p in self.generators],
            "orbits": [o.to_json() for o in self.orbits],
        }
        if self.failure is not None:
            doc["failure"] = self.failure
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, doc: dict) -> "SaturationCertificate":
        orbits = [
            Orbit(tuple(o["rep"]), o["size"], ForestEmbedding.from_json(o["witness"]) if "witness" in o else None)
            for o in doc["orbits"]
        ]
        return cls(
            LinearForestSpec(doc["spec"]["k"], doc["spec"]["t"]),
            doc["n"],
            doc["h_free"],
            [tuple(p) for p in doc["generators"]],
            orbits,
            doc.get("failure"),
        )


@dataclass
class SaturationVerdict:
    saturated: bool
    certificate: SaturationCertificate
    edge_count: int

    @property
    def h_free(self) -> bool:
        return self.certificate.h_free

    def describe(self) -> str:
        if self.saturated:
            return "saturated"
        fail = self.certificate.failure or {}
        if fail.get("kind") == "contains":
            return "contains H"
        return "H-free, not saturated"


def is_h_free(g: Graph, spec: LinearForestSpec) -> bool:
    return contains_linear_forest(g, spec) is None


def _witness(job):
    g, spec, (u, v) = job
    return contains_linear_forest(g.add_edge(u, v), spec)


def check_saturated(
    g: Graph, spec: LinearForestSpec, threads: int = 1, compress: bool = True
) -> SaturationVerdict:
    """Decide whether ``g`` is ``spec``-saturated.

    On failure the certificate records either an embedding of ``H`` in ``g`` or
    the lexicographically least non-edge whose addition creates no copy.
    """
    m = g.num_edges()
    emb = contains_linear_forest(g, spec)
    if emb is not None:
        cert = SaturationCertificate(spec, g.n, False, [], [], {"kind": "contains", "embedding": emb.to_json()})
        return SaturationVerdict(False, cert, m)

    nonedges = list(complement_nonedges(g))
    gens: list[tuple[int, ...]] = []
    if compress and nonedges:
        gens = list(canonical_labeling(g).generators)
    grouped = pair_orbits(nonedges, gens, g.n)
    reps = [rep for rep, _ in grouped]
    witnesses = pmap(_witness, [(g, spec, rep) for rep in reps], threads)

    orbits = []
    failure = None
    for (rep, members), wit in zip(grouped, witnesses):
        if wit is None:
            failure = {"kind": "unsaturated", "nonedge": list(rep)}
            break
        # g is H-free, so every copy in g + rep must use the new edge
        assert _uses_edge(wit, rep), "witness avoids the added edge although g is H-free"
        orbits.append(Orbit(rep, len(members), wit, members))
    cert = SaturationCertificate(spec, g.n, True, gens, orbits, failure)
    return SaturationVerdict(failure is None, cert, m)


def _uses_edge(emb: ForestEmbedding, e: tuple[int, int]) -> bool:
    a, b = e
    steps = set(zip(emb.path, emb.path[1:])) | set(emb.pairs)
    return (a, b) in steps or (b, a) in steps


@dataclass
class Validation:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_certificate(
    g: Graph, cert: SaturationCertificate, expand: bool = True, check_h_free: bool = False
) -> Validation:
    """Replay ``cert`` against ``g`` and report the first violated clause.

    No search is run unless ``check_h_free`` asks for the H-freeness claim to be
    re-decided.  With ``expand`` every orbit member's witness is derived from the
    representative's and checked as well.
    """
    spec = cert.spec
    if cert.n != g.n:
        return Validation(False, "vertex count mismatch")
    if cert.failure is not None:
        if cert.failure.get("kind") == "contains":
            emb = ForestEmbedding.from_json(cert.failure["embedding"])
            if cert.h_free or not emb.is_valid(g, spec):
                return Validation(False, "embedding invalid")
            return Validation(True)
        if not cert.h_free:
            return Validation(False, "failure kind inconsistent with h_free")
    if not cert.h_free:
        return Validation(False, "h_free is false but no embedding of H is given")
    if check_h_free and contains_linear_forest(g, spec) is not None:
        return Validation(False, "graph contains H")
    for p in cert.generators:
        if len(p) != g.n or not is_automorphism(g, p):
            return Validation(False, "generator is not an automorphism")
    nonedges = list(complement_nonedges(g))
    grouped = {rep: members for rep, members in pair_orbits(nonedges, cert.generators, g.n)}
    listed = {o.rep: o for o in cert.orbits}
    if cert.failure is not None:
        bad = tuple(cert.failure.get("nonedge", ()))
        if bad not in grouped or bad in listed:
            return Validation(False, "failing non-edge is not an uncovered non-edge")
        return Validation(True)
    for rep, members in grouped.items():
        orb = listed.get(rep)
        if orb is None:
            return Validation(False, f"non-edge uncovered: {list(rep)}")
        if orb.size != len(members):
            return Validation(False, f"orbit size mismatch at {list(rep)}")
        if orb.witness is None:
            return Validation(False, f"non-edge uncovered: {list(rep)}")
        h = g.add_edge(*rep)
        if not orb.witness.is_valid(h, spec) or not _uses_edge(orb.witness, rep):
            return Validation(False, f"embedding invalid at {list(rep)}")
        if expand:
            for pair, perm in members.items():
                w = orb.witness.relabel(perm)
                if not w.is_valid(g.add_edge(*pair), spec):
                    return Validation(False, f"embedding invalid at {list(pair)}")
    extra = set(listed) - set(grouped)
    if extra:
        return Validation(False, f"orbit representative is not a non-edge: {list(min(extra))}")
    return Validation(True)
