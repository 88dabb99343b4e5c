"""Two-pointed verified gadgets and bounded checks of their defining property.

A gadget is a slice object (H, f) over a base G together with two
non-adjacent carrier vertices a, b that f identifies.  The property that
makes a gadget useful is that, for every digraph D without isolated points,
the only slice morphisms from (H, f) into the glued product over D are the
per-arc copy maps.  That statement quantifies over all digraphs; the
verifiers here check it exhaustively up to a vertex cap and report the cap,
they never claim the unbounded statement.

Four classic gadgets are built in, one per minimal universal base: a path of
length 3 over the triangle, length 4 over the 4-cycle, length 12 over the
path of length 4, and length 6 over the 3-leaf star.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Sequence

from . import arrow
from .core import Digraph, Graph, Morphism, SliceObject, Vertex, build_cycle
from .homsearch import (
    DIGRAPH_ENUMERATION_CAP,
    enumerate_digraphs,
    enumerate_homs,
    enumerate_slice_homs,
)

BUILTIN_GADGET_NAMES = ("C3", "C4", "P4", "Y")


@dataclass(frozen=True, init=False)
class Gadget:
    """A slice object with two distinguished, identified, non-adjacent vertices."""

    slice: SliceObject
    a: Vertex
    b: Vertex

    def __init__(self, slice: SliceObject, a: Vertex, b: Vertex):
        if a == b:
            raise ValueError("the distinguished vertices must be distinct")
        for x in (a, b):
            if not slice.carrier.has_vertex(x):
                raise ValueError(f"distinguished vertex {x!r} is not a carrier vertex")
        if slice.color(a) != slice.color(b):
            raise ValueError(
                f"structure map must identify the distinguished vertices: "
                f"f({a!r})={slice.color(a)!r} but f({b!r})={slice.color(b)!r}"
            )
        if slice.carrier.has_edge(a, b):
            raise ValueError("the distinguished vertices must not be adjacent")
        object.__setattr__(self, "slice", slice)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def carrier(self) -> Graph:
        return self.slice.carrier

    @property
    def base(self) -> Graph:
        return self.slice.base

    def to_dict(self) -> dict:
        data = self.slice.to_dict()
        data["a"] = self.a
        data["b"] = self.b
        return data

    @classmethod
    def from_dict(cls, data) -> "Gadget":
        if "a" not in data or "b" not in data:
            raise ValueError("gadget document requires 'a' and 'b'")
        return cls(SliceObject.from_dict(data), str(data["a"]), str(data["b"]))


def _path_on(letters: Sequence[str]) -> Graph:
    return Graph(letters, [(letters[i], letters[i + 1]) for i in range(len(letters) - 1)])


def builtin_gadget(base_name: str) -> Gadget:
    """One of the four verified gadgets, keyed by its base graph."""
    name = base_name.upper()
    if name == "C3":
        base = Graph(list("012"), [("0", "1"), ("1", "2"), ("0", "2")])
        letters = list("abcd")
        colors = list("0120")
    elif name == "C4":
        base = Graph(list("0123"), [("0", "1"), ("1", "2"), ("2", "3"), ("0", "3")])
        letters = list("abcde")
        colors = list("01230")
    elif name == "P4":
        base = Graph(list("01234"), [("0", "1"), ("1", "2"), ("2", "3"), ("3", "4")])
        letters = list("abcdefghijklm")
        colors = list("0121234323210")
    elif name == "Y":
        base = Graph(list("0123"), [("0", "1"), ("1", "2"), ("1", "3")])
        letters = list("abcdefg")
        colors = list("0121310")
    else:
        raise ValueError(f"unknown built-in gadget {base_name!r}; have {BUILTIN_GADGET_NAMES}")
    carrier = _path_on(letters)
    f = dict(zip(letters, colors))
    return Gadget(SliceObject(carrier, base, f), letters[0], letters[-1])


@dataclass(frozen=True)
class ReplacementGadget:
    """The odd-cycle replacement graph family member for one k."""

    graph: Graph
    a: Vertex
    b: Vertex
    to_odd_cycle: Morphism


# The 13 anchor vertices of the replacement graph, their images in the odd
# cycle C_{2k-1} (written as residues; "k" marks the two distinguished
# vertices), the single edges, and the pairs joined by paths of length k.
_GK_LABELS = {
    "A": 0, "B": None, "C": 1, "D": 1, "E": 1, "F": 0, "H": 0,
    "I": 1, "K": None, "L": 0, "M": None, "N": 1, "P": 0,
}
_GK_SOLID = [
    ("A", "E"), ("E", "F"), ("F", "D"), ("H", "D"), ("C", "H"),
    ("A", "I"), ("L", "D"), ("N", "P"), ("P", "C"),
]
_GK_DOTTED = [("A", "B"), ("B", "C"), ("I", "K"), ("K", "L"), ("L", "M"), ("M", "N")]


def build_gk(k: int) -> ReplacementGadget:
    """The rigid replacement graph with a homomorphism onto C_{2k-1}.

    Thirteen anchor vertices carry the single edges; six anchor pairs are
    joined by paths of length k instead of an edge.  The returned morphism
    maps the graph onto the odd cycle with both distinguished vertices (K and
    M, exposed as a and b) landing on residue k.
    """
    if k < 2:
        raise ValueError(f"the replacement family starts at k = 2, got {k}")
    m = 2 * k - 1
    cycle = build_cycle(m)
    labels = {v: (k if lab is None else lab) for v, lab in _GK_LABELS.items()}
    vertices = list(_GK_LABELS)
    edges = list(_GK_SOLID)
    for x, y in _GK_DOTTED:
        lx, ly = labels[x], labels[y]
        if (lx + k) % m == ly:
            direction = 1
        elif (lx - k) % m == ly:
            direction = -1
        else:
            raise ValueError(
                f"no walk of length {k} from residue {lx} to {ly} in a {m}-cycle"
            )
        chain = [x]
        for step in range(1, k):
            w = f"{x}-{y}-{step}"
            vertices.append(w)
            labels[w] = (lx + direction * step) % m
            chain.append(w)
        chain.append(y)
        edges.extend((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    graph = Graph(vertices, edges)
    hom = Morphism(graph, cycle, {v: f"v{lab}" for v, lab in labels.items()})
    return ReplacementGadget(graph=graph, a="K", b="M", to_odd_cycle=hom)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class GadgetCounterexample:
    """What broke: a digraph plus either a stray/missing morphism or a reason."""

    digraph: Optional[Digraph]
    kind: str  # "extra-hom" | "missing-copy-map" | "invalid-gadget"
    mapping: Optional[dict[Vertex, Vertex]] = None
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "digraph": self.digraph.to_dict() if self.digraph else None,
            "map": dict(sorted(self.mapping.items())) if self.mapping else None,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class GadgetReport:
    digraphs_checked: int
    max_size: int
    verdict: bool
    counterexample: Optional[GadgetCounterexample] = None
    hom_count: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "digraphs_checked": self.digraphs_checked,
            "max_size": self.max_size,
            "verdict": "pass" if self.verdict else "fail",
            "hom_count": self.hom_count,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }


def verify_gadget(gadget: Gadget, D: Digraph) -> GadgetReport:
    """Check one digraph: the slice morphisms into the product are exactly
    the per-arc copy maps."""
    isolated = D.isolated_vertices()
    if isolated:
        raise ValueError(f"digraph has isolated vertices: {list(isolated)}")
    res = arrow.arrow_graph(D, gadget.carrier, gadget.a, gadget.b)
    product = SliceObject(res.product, gadget.base, arrow.product_structure_map(res, gadget))
    expected = {arc: arrow.phi(res, arc).mapping for arc in D.arcs}
    expected_set = set(expected.values())
    found = {sm.map.mapping for sm in enumerate_slice_homs(gadget.slice, product)}
    size = D.vertex_count
    extra = sorted(found - expected_set)
    if extra:
        ce = GadgetCounterexample(digraph=D, kind="extra-hom", mapping=dict(extra[0]))
        return GadgetReport(1, size, False, ce, hom_count=len(found))
    missing = sorted(expected_set - found)
    if missing:
        ce = GadgetCounterexample(digraph=D, kind="missing-copy-map", mapping=dict(missing[0]))
        return GadgetReport(1, size, False, ce, hom_count=len(found))
    return GadgetReport(1, size, True, hom_count=len(found))


def _verify_one(args: tuple[Gadget, Digraph]) -> GadgetReport:
    gadget, D = args
    return verify_gadget(gadget, D)


def verify_gadget_exhaustive(
    gadget: Gadget,
    max_n: int,
    *,
    cap: int = DIGRAPH_ENUMERATION_CAP,
    jobs: int = 1,
    progress=None,
) -> GadgetReport:
    """Sweep every labeled digraph without isolated points on 1..max_n vertices.

    Stops at the first counterexample; ``digraphs_checked`` counts the
    digraphs examined up to and including it.
    """
    if max_n > cap:
        raise ValueError(f"digraph enumeration is capped at {cap} vertices (requested {max_n})")
    checked = 0
    total_homs = 0
    digraphs: Iterator[Digraph] = (
        D for n in range(1, max_n + 1) for D in enumerate_digraphs(n, True, cap=cap)
    )
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = pool.map(
                _verify_one, ((gadget, D) for D in digraphs), chunksize=16
            )
            for report in reports:
                checked += 1
                total_homs += report.hom_count or 0
                if progress and checked % 100 == 0:
                    progress(checked)
                if not report.verdict:
                    return replace(report, digraphs_checked=checked, max_size=max_n)
    else:
        for D in digraphs:
            report = verify_gadget(gadget, D)
            checked += 1
            total_homs += report.hom_count or 0
            if progress and checked % 100 == 0:
                progress(checked)
            if not report.verdict:
                return replace(report, digraphs_checked=checked, max_size=max_n)
    return GadgetReport(checked, max_n, True, hom_count=total_homs)


# ---------------------------------------------------------------------------
# mutation testing: the verifiers must be able to fail


def structure_map_mutations(gadget: Gadget) -> Iterator[tuple[Vertex, Vertex]]:
    """All single-point structure-map rewrites (vertex, new base image)."""
    f = gadget.slice.structure_map
    for v in gadget.carrier.vertices:
        for t in gadget.base.vertices:
            if t != f(v):
                yield v, t


def verify_mutated_gadget(
    gadget: Gadget, vertex: Vertex, new_target: Vertex, max_n: int = 2
) -> GadgetReport:
    """Apply one structure-map rewrite, then validate and sweep.

    A rewrite that breaks the homomorphism property or the distinguished-pair
    invariants fails immediately with an "invalid-gadget" counterexample; a
    rewrite that still builds a gadget is swept like any other.
    """
    mutated = {k: v for k, v in gadget.slice.structure_map.mapping}
    mutated[vertex] = new_target
    try:
        slice_obj = SliceObject(gadget.carrier, gadget.base, mutated)
        candidate = Gadget(slice_obj, gadget.a, gadget.b)
    except ValueError as exc:
        ce = GadgetCounterexample(digraph=None, kind="invalid-gadget", reason=str(exc))
        return GadgetReport(0, max_n, False, ce)
    return verify_gadget_exhaustive(candidate, max_n)


# ---------------------------------------------------------------------------
# strong replacement


@dataclass(frozen=True)
class ReplacementReport:
    """Whether every self-map into a product lands inside one gadget copy."""

    holds: bool
    homs_checked: int
    witness: Optional[Morphism] = None  # a crossing homomorphism on failure

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "homs_checked": self.homs_checked,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def check_strong_replacement(
    H: Graph,
    a: Vertex,
    b: Vertex,
    D: Digraph,
    *,
    regime: str = "irreflexive",
) -> ReplacementReport:
    """Check, for one digraph D, that every plain homomorphism H -> product
    has its image inside a single copy of H.

    The default regime rejects digraphs with loops; pass
    ``regime="no-isolated"`` to allow loops but reject isolated vertices
    instead (the alternative quantifier used by the embedding results).
    """
    if regime == "irreflexive":
        if D.has_loop():
            raise ValueError("strong replacement is quantified over loop-free digraphs")
    elif regime == "no-isolated":
        isolated = D.isolated_vertices()
        if isolated:
            raise ValueError(f"digraph has isolated vertices: {list(isolated)}")
    else:
        raise ValueError(f"unknown regime {regime!r}")
    res = arrow.arrow_graph(D, H, a, b)
    copies = [frozenset(arrow.phi(res, arc).image()) for arc in D.arcs]
    order = "mrv" if H.vertex_count > 12 else "degree"
    checked = 0
    for hom in enumerate_homs(H, res.product, order=order):
        checked += 1
        image = set(hom.image())
        if not any(image <= copy for copy in copies):
            return ReplacementReport(False, checked, witness=hom)
    return ReplacementReport(True, checked)
