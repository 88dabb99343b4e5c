"""Backtracking search for graph, slice, and digraph homomorphisms.

The engine assigns pattern vertices one at a time and forward-prunes the
candidate sets of unassigned neighbors.  The default variable order is fixed
(descending degree, ties lexicographic) and candidates are tried in
lexicographic order, so enumeration output is deterministic.  An "mrv" order
(most-constrained vertex first) is available for large instances where the
static order backtracks too much; it is equally deterministic but yields
solutions in a different sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Mapping, Optional

from .core import Digraph, Graph, Morphism, SliceMorphism, SliceObject, Vertex

DIGRAPH_ENUMERATION_CAP = 4


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for an enumeration run.

    ``max_solutions = None`` with mode ``enumerate`` streams every solution.
    ``exists`` stops after the first solution regardless of ``max_solutions``.
    """

    max_solutions: Optional[int] = None
    mode: str = "enumerate"

    def __post_init__(self) -> None:
        if self.mode not in ("exists", "count", "enumerate"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be positive")

    def limit(self) -> Optional[int]:
        if self.mode == "exists":
            return 1
        return self.max_solutions


def _variable_order(graph: Graph, order: str) -> list[Vertex]:
    if order not in ("degree", "mrv"):
        raise ValueError(f"unknown variable order {order!r}")
    return sorted(graph.vertices, key=lambda v: (-graph.degree(v), v))


def _search(
    pattern: Graph,
    host: Graph,
    base_candidates: dict[Vertex, tuple[Vertex, ...]],
    *,
    injective: bool = False,
    order: str = "degree",
    limit: Optional[int] = None,
) -> Iterator[dict[Vertex, Vertex]]:
    """Yield total maps pattern -> host respecting adjacency and candidates."""
    variables = _variable_order(pattern, order)
    if not variables:
        yield {}
        return
    if any(not base_candidates[v] for v in variables):
        return

    host_adj = {v: frozenset(host.neighbors(v)) for v in host.vertices}
    candidates = {v: tuple(base_candidates[v]) for v in variables}
    assignment: dict[Vertex, Vertex] = {}
    used: set[Vertex] = set()
    dynamic = order == "mrv"
    emitted = 0

    def pick_next() -> Vertex:
        if not dynamic:
            return variables[len(assignment)]
        return min(
            (v for v in variables if v not in assignment),
            key=lambda v: (len(candidates[v]), v),
        )

    def prune(var: Vertex, value: Vertex) -> Optional[list[tuple[Vertex, tuple[Vertex, ...]]]]:
        """Narrow neighbor candidates after var := value; None on a dead end."""
        saved: list[tuple[Vertex, tuple[Vertex, ...]]] = []
        allowed = host_adj[value]
        targets = pattern.neighbors(var) if not injective else variables
        for other in targets:
            if other in assignment or other == var:
                continue
            old = candidates[other]
            adjacent = pattern.has_edge(var, other)
            new = tuple(
                c
                for c in old
                if (not adjacent or c in allowed) and not (injective and c == value)
            )
            if len(new) != len(old):
                saved.append((other, old))
                candidates[other] = new
                if not new:
                    for v, o in saved:
                        candidates[v] = o
                    return None
        return saved

    def rec() -> Iterator[dict[Vertex, Vertex]]:
        nonlocal emitted
        if len(assignment) == len(variables):
            yield dict(assignment)
            emitted += 1
            return
        var = pick_next()
        for value in candidates[var]:
            # candidate lists are pruned eagerly, but a pinned vertex assigned
            # next to an already-fixed neighbor still needs the direct check
            if any(
                nb in assignment and assignment[nb] not in host_adj[value]
                for nb in pattern.neighbors(var)
            ):
                continue
            if injective and value in used:
                continue
            saved = prune(var, value)
            if saved is None:
                continue
            assignment[var] = value
            used.add(value)
            yield from rec()
            del assignment[var]
            used.discard(value)
            for v, old in saved:
                candidates[v] = old
            if limit is not None and emitted >= limit:
                return

    yield from rec()


def _full_candidates(
    pattern: Graph,
    host: Graph,
    pins: Optional[Mapping[Vertex, Vertex]],
    colors: Optional[tuple[Mapping[Vertex, Vertex], Mapping[Vertex, Vertex]]],
) -> dict[Vertex, tuple[Vertex, ...]]:
    if pins:
        for k, v in pins.items():
            if not pattern.has_vertex(k):
                raise ValueError(f"pin {k!r} is not a pattern vertex")
            if not host.has_vertex(v):
                raise ValueError(f"pin image {v!r} is not a host vertex")
    out: dict[Vertex, tuple[Vertex, ...]] = {}
    for v in pattern.vertices:
        if pins and v in pins:
            opts: tuple[Vertex, ...] = (pins[v],)
        else:
            opts = host.vertices
        if colors is not None:
            cp, ch = colors
            opts = tuple(w for w in opts if ch[w] == cp[v])
        out[v] = opts
    return out


def enumerate_homs(
    A: Graph,
    B: Graph,
    pins: Optional[Mapping[Vertex, Vertex]] = None,
    budget: Optional[SearchBudget] = None,
    *,
    order: str = "degree",
) -> Iterator[Morphism]:
    """Stream every homomorphism A -> B extending ``pins``."""
    limit = budget.limit() if budget else None
    cands = _full_candidates(A, B, pins, None)
    for mapping in _search(A, B, cands, order=order, limit=limit):
        yield Morphism(A, B, mapping)


def hom_count(A: Graph, B: Graph, pins: Optional[Mapping[Vertex, Vertex]] = None) -> int:
    return sum(1 for _ in enumerate_homs(A, B, pins))


def hom_exists(A: Graph, B: Graph, pins: Optional[Mapping[Vertex, Vertex]] = None) -> bool:
    return next(iter(enumerate_homs(A, B, pins, SearchBudget(mode="exists"))), None) is not None


def enumerate_slice_homs(
    X: SliceObject,
    Y: SliceObject,
    budget: Optional[SearchBudget] = None,
    *,
    order: str = "degree",
) -> Iterator[SliceMorphism]:
    """Stream the slice morphisms X -> Y.

    Structure-map fibers act as vertex colors: a carrier vertex of X may only
    land on Y-vertices over the same base vertex, which is exactly the
    commuting-triangle condition.
    """
    if X.base != Y.base:
        raise ValueError("slice objects live over different bases")
    limit = budget.limit() if budget else None
    colors = (
        {v: X.color(v) for v in X.carrier.vertices},
        {w: Y.color(w) for w in Y.carrier.vertices},
    )
    cands = _full_candidates(X.carrier, Y.carrier, None, colors)
    for mapping in _search(X.carrier, Y.carrier, cands, order=order, limit=limit):
        yield SliceMorphism(X, Y, mapping)


def slice_hom_count(X: SliceObject, Y: SliceObject) -> int:
    return sum(1 for _ in enumerate_slice_homs(X, Y))


class EndoVerdict(enum.Enum):
    RIGID = "rigid"
    AUTOMORPHISMS_ONLY = "automorphisms-only"
    HAS_PROPER_ENDOMORPHISM = "proper-endomorphism"


@dataclass(frozen=True)
class EndoReport:
    """Outcome of classifying the endomorphism monoid of one object."""

    verdict: EndoVerdict
    witness: Optional[Morphism]
    endo_count: int
    auto_count: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "endo_count": self.endo_count,
            "auto_count": self.auto_count,
            "witness": self.witness.to_dict() if self.witness else None,
        }


# beyond this size the static variable order backtracks too much on
# uncolored self-maps; switch to most-constrained-first
_MRV_THRESHOLD = 12


def classify_endomorphisms(X: SliceObject | Graph) -> EndoReport:
    """Count endomorphisms and automorphisms; exhibit a proper endomorphism.

    Accepts a slice object (endomorphisms in the slice, i.e. color-preserving)
    or a plain graph (ordinary graph endomorphisms).  For finite objects an
    endomorphism is proper exactly when its vertex map is non-bijective.
    """
    carrier = X if isinstance(X, Graph) else X.carrier
    order = "mrv" if carrier.vertex_count > _MRV_THRESHOLD else "degree"
    if isinstance(X, Graph):
        stream: Iterator[Morphism] = enumerate_homs(X, X, order=order)
    else:
        stream = (sm.map for sm in enumerate_slice_homs(X, X, order=order))
    n = carrier.vertex_count
    endo_count = 0
    auto_count = 0
    witness: Optional[Morphism] = None
    for m in stream:
        endo_count += 1
        if len({w for _, w in m.mapping}) == n:
            auto_count += 1
        elif witness is None:
            witness = m
    if endo_count == 1:
        verdict = EndoVerdict.RIGID
    elif endo_count > auto_count:
        verdict = EndoVerdict.HAS_PROPER_ENDOMORPHISM
    else:
        verdict = EndoVerdict.AUTOMORPHISMS_ONLY
    return EndoReport(verdict=verdict, witness=witness, endo_count=endo_count, auto_count=auto_count)


def contains_subgraph(pattern: Graph, host: Graph) -> Optional[Morphism]:
    """First injective edge-preserving map pattern -> host, or None.

    Ordinary (non-induced) subgraph containment: host edges between image
    vertices that are not pattern edges are fine.
    """
    cands = _full_candidates(pattern, host, None, None)
    for mapping in _search(pattern, host, cands, injective=True, limit=1):
        return Morphism(pattern, host, mapping)
    return None


# ---------------------------------------------------------------------------
# digraphs


def enumerate_digraphs(
    n: int,
    require_no_isolated: bool,
    *,
    cap: int = DIGRAPH_ENUMERATION_CAP,
    canonical: bool = False,
) -> Iterator[Digraph]:
    """All labeled digraphs on vertices v0..v(n-1), in ascending arc-mask order.

    With ``require_no_isolated`` only relations where every vertex occurs in
    some arc are produced.  ``canonical`` keeps one representative per
    isomorphism class (the least arc mask under vertex permutations).
    """
    if n < 1:
        raise ValueError(f"need at least one vertex, got {n}")
    if n > cap:
        raise ValueError(f"digraph enumeration is capped at {cap} vertices (requested {n})")
    vs = [f"v{i}" for i in range(n)]
    all_arcs = [(vs[i], vs[j]) for i in range(n) for j in range(n)]
    arc_pos = {(i, j): n * i + j for i in range(n) for j in range(n)}
    perms = list(permutations(range(n))) if canonical else []
    for mask in range(1 << (n * n)):
        if canonical:
            least = mask
            for perm in perms:
                relabeled = 0
                m = mask
                while m:
                    bit = m & (-m)
                    k = bit.bit_length() - 1
                    i, j = divmod(k, n)
                    relabeled |= 1 << arc_pos[(perm[i], perm[j])]
                    m ^= bit
                if relabeled < least:
                    least = relabeled
                    break
            if least != mask:
                continue
        arcs = [all_arcs[k] for k in range(n * n) if mask >> k & 1]
        if require_no_isolated:
            touched = {v for a in arcs for v in a}
            if len(touched) != n:
                continue
        yield Digraph(vs, arcs)


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All labeled simple graphs on vertices v0..v(n-1), ascending edge mask."""
    if n < 0:
        raise ValueError(f"need a non-negative vertex count, got {n}")
    vs = [f"v{i}" for i in range(n)]
    pairs = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        yield Graph(vs, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])


def digraph_is_homomorphism(
    mapping: Mapping[Vertex, Vertex], D1: Digraph, D2: Digraph
) -> tuple[bool, Optional[tuple[Vertex, Vertex]]]:
    """Arc-preservation check; returns the first violating arc on failure."""
    for v in D1.vertices:
        if v not in mapping:
            raise ValueError(f"map is not total: no image for vertex {v!r}")
        if mapping[v] not in D2.vertices:
            raise ValueError(f"image {mapping[v]!r} of {v!r} is not a codomain vertex")
    for u, v in D1.arcs:
        if not D2.has_arc(mapping[u], mapping[v]):
            return False, (u, v)
    return True, None


def enumerate_digraph_homs(
    D1: Digraph,
    D2: Digraph,
    budget: Optional[SearchBudget] = None,
) -> Iterator[dict[Vertex, Vertex]]:
    """Stream all arc-preserving vertex maps D1 -> D2 as plain dicts."""
    limit = budget.limit() if budget else None
    variables = sorted(
        D1.vertices,
        key=lambda v: (-(len(D1.out_neighbors(v)) + len(D1.in_neighbors(v))), v),
    )
    if not variables:
        yield {}
        return

    emitted = 0
    assignment: dict[Vertex, Vertex] = {}

    def consistent(var: Vertex, value: Vertex) -> bool:
        if D1.has_arc(var, var) and not D2.has_arc(value, value):
            return False
        for w in D1.out_neighbors(var):
            if w in assignment and not D2.has_arc(value, assignment[w]):
                return False
        for w in D1.in_neighbors(var):
            if w in assignment and not D2.has_arc(assignment[w], value):
                return False
        return True

    def rec(depth: int) -> Iterator[dict[Vertex, Vertex]]:
        nonlocal emitted
        if depth == len(variables):
            yield dict(assignment)
            emitted += 1
            return
        var = variables[depth]
        for value in D2.vertices:
            if consistent(var, value):
                assignment[var] = value
                yield from rec(depth + 1)
                del assignment[var]
                if limit is not None and emitted >= limit:
                    return

    yield from rec(0)
