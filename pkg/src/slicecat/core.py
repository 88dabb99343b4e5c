"""Finite graphs, digraphs, slice objects, and validated homomorphisms.

Conventions used throughout the package:

* Vertex identifiers are opaque strings; all iteration orders are
  lexicographic so that enumeration output is reproducible.
* ``P_n`` denotes the path with ``n`` edges and ``n + 1`` vertices
  (so ``build_path(3)`` has four vertices).  "Length" always counts edges.
* Undirected graphs are simple and loopless.  Digraphs are arbitrary binary
  relations: loops and antiparallel arc pairs are allowed.

All types are immutable after construction; no operation mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence


Vertex = str
Edge = tuple[Vertex, Vertex]
Arc = tuple[Vertex, Vertex]


def _canonical_edge(u: Vertex, v: Vertex) -> Edge:
    if u == v:
        raise ValueError(f"loops are not allowed in an undirected graph: ({u!r}, {u!r})")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, init=False)
class Graph:
    """A finite simple undirected graph.

    ``vertices`` is a lexicographically sorted tuple of ids and ``edges`` a
    sorted tuple of ``(min, max)`` pairs of distinct vertices.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Sequence[Vertex]] = ()):
        vs = tuple(sorted({str(v) for v in vertices}))
        vset = frozenset(vs)
        es = sorted({_canonical_edge(str(u), str(v)) for u, v in edges})
        for u, v in es:
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u!r}, {v!r}) has an endpoint outside the vertex set")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(es))
        adj: dict[Vertex, set[Vertex]] = {v: set() for v in vs}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in adj.items()})
        object.__setattr__(self, "_edge_set", frozenset(es))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._adj  # type: ignore[attr-defined]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        if u == v:
            return False
        e = (u, v) if u < v else (v, u)
        return e in self._edge_set  # type: ignore[attr-defined]

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self._adj[v]  # type: ignore[attr-defined]

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def components(self) -> tuple[tuple[Vertex, ...], ...]:
        """Connected components, each sorted, ordered by least vertex."""
        seen: set[Vertex] = set()
        out = []
        for start in self.vertices:
            if start in seen:
                continue
            stack = [start]
            comp = {start}
            seen.add(start)
            while stack:
                x = stack.pop()
                for y in self.neighbors(x):
                    if y not in comp:
                        comp.add(y)
                        seen.add(y)
                        stack.append(y)
            out.append(tuple(sorted(comp)))
        return tuple(out)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "Graph":
        """Rename vertices through an injective mapping."""
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("relabeling map is not injective")
        return Graph(
            (mapping[v] for v in self.vertices),
            ((mapping[u], mapping[v]) for u, v in self.edges),
        )

    def induced(self, keep: Iterable[Vertex]) -> "Graph":
        ks = set(keep)
        return Graph(ks, (e for e in self.edges if e[0] in ks and e[1] in ks))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Graph":
        if "vertices" not in data or "edges" not in data:
            raise ValueError("graph document requires 'vertices' and 'edges'")
        return cls(data["vertices"], data["edges"])

    def to_edgelist(self) -> str:
        """Text form: one edge per line, isolated vertices on their own line."""
        used = {v for e in self.edges for v in e}
        lines = [v for v in self.vertices if v not in used]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        vertices: list[Vertex] = []
        edges: list[tuple[Vertex, Vertex]] = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 1:
                vertices.append(parts[0])
            elif len(parts) == 2:
                vertices.extend(parts)
                edges.append((parts[0], parts[1]))
            else:
                raise ValueError(f"edge-list line has {len(parts)} tokens: {raw!r}")
        return cls(vertices, edges)


@dataclass(frozen=True, init=False)
class Digraph:
    """A finite binary relation: ordered arcs, loops permitted."""

    vertices: tuple[Vertex, ...]
    arcs: tuple[Arc, ...]

    def __init__(self, vertices: Iterable[Vertex], arcs: Iterable[Sequence[Vertex]] = ()):
        vs = tuple(sorted({str(v) for v in vertices}))
        vset = frozenset(vs)
        ars = sorted({(str(u), str(v)) for u, v in arcs})
        for u, v in ars:
            if u not in vset or v not in vset:
                raise ValueError(f"arc ({u!r}, {v!r}) has an endpoint outside the vertex set")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arcs", tuple(ars))
        out: dict[Vertex, set[Vertex]] = {v: set() for v in vs}
        inn: dict[Vertex, set[Vertex]] = {v: set() for v in vs}
        for u, v in ars:
            out[u].add(v)
            inn[v].add(u)
        object.__setattr__(self, "_out", {v: tuple(sorted(ns)) for v, ns in out.items()})
        object.__setattr__(self, "_in", {v: tuple(sorted(ns)) for v, ns in inn.items()})
        object.__setattr__(self, "_arc_set", frozenset(ars))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) in self._arc_set  # type: ignore[attr-defined]

    def out_neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self._out[v]  # type: ignore[attr-defined]

    def in_neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self._in[v]  # type: ignore[attr-defined]

    def is_isolated(self, v: Vertex) -> bool:
        """True iff ``v`` occurs in no arc (not even a loop)."""
        return not self.out_neighbors(v) and not self.in_neighbors(v)

    def isolated_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if self.is_isolated(v))

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.arcs)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arcs": [list(a) for a in self.arcs],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Digraph":
        if "vertices" not in data or "arcs" not in data:
            raise ValueError("digraph document requires 'vertices' and 'arcs'")
        return cls(data["vertices"], data["arcs"])

    def to_edgelist(self) -> str:
        used = {v for a in self.arcs for v in a}
        lines = [v for v in self.vertices if v not in used]
        lines += [f"{u} {v}" for u, v in self.arcs]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_edgelist(cls, text: str) -> "Digraph":
        vertices: list[Vertex] = []
        arcs: list[tuple[Vertex, Vertex]] = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 1:
                vertices.append(parts[0])
            elif len(parts) == 2:
                vertices.extend(parts)
                arcs.append((parts[0], parts[1]))
            else:
                raise ValueError(f"arc-list line has {len(parts)} tokens: {raw!r}")
        return cls(vertices, arcs)


def is_homomorphism(
    mapping: Mapping[Vertex, Vertex], domain: Graph, codomain: Graph
) -> tuple[bool, Optional[Edge]]:
    """Check edge preservation of a total vertex map.

    Returns ``(True, None)`` when every domain edge lands on a codomain edge,
    and ``(False, witness_edge)`` with the first violating edge otherwise.
    A non-total map or an image outside the codomain raises ``ValueError``
    (a malformed map is an error, not a negative answer).
    """
    for v in domain.vertices:
        if v not in mapping:
            raise ValueError(f"map is not total: no image for vertex {v!r}")
        if not codomain.has_vertex(mapping[v]):
            raise ValueError(f"image {mapping[v]!r} of {v!r} is not a codomain vertex")
    for u, v in domain.edges:
        if not codomain.has_edge(mapping[u], mapping[v]):
            return False, (u, v)
    return True, None


@dataclass(frozen=True, init=False)
class Morphism:
    """A validated graph homomorphism: a total, edge-preserving vertex map."""

    domain: Graph
    codomain: Graph
    mapping: tuple[tuple[Vertex, Vertex], ...]

    def __init__(self, domain: Graph, codomain: Graph, mapping: Mapping[Vertex, Vertex]):
        extra = set(mapping) - set(domain.vertices)
        if extra:
            raise ValueError(f"map assigns vertices outside the domain: {sorted(extra)}")
        ok, witness = is_homomorphism(mapping, domain, codomain)
        if not ok:
            u, v = witness  # type: ignore[misc]
            raise ValueError(
                f"map does not preserve edge ({u!r}, {v!r}): "
                f"({mapping[u]!r}, {mapping[v]!r}) is not a codomain edge"
            )
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "mapping", tuple(sorted((str(k), str(v)) for k, v in mapping.items())))
        object.__setattr__(self, "_map", dict(self.mapping))

    def __call__(self, v: Vertex) -> Vertex:
        return self._map[v]  # type: ignore[attr-defined]

    def as_dict(self) -> dict[Vertex, Vertex]:
        return dict(self.mapping)

    def is_injective(self) -> bool:
        return len({w for _, w in self.mapping}) == len(self.mapping)

    def is_surjective(self) -> bool:
        return {w for _, w in self.mapping} == set(self.codomain.vertices)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def image(self) -> tuple[Vertex, ...]:
        return tuple(sorted({w for _, w in self.mapping}))

    def compose(self, inner: "Morphism") -> "Morphism":
        """Return ``self after inner`` (apply ``inner`` first)."""
        if inner.codomain != self.domain:
            raise ValueError("morphisms are not composable: codomain/domain mismatch")
        return Morphism(inner.domain, self.codomain, {v: self(inner(v)) for v in inner.domain.vertices})

    @classmethod
    def identity(cls, graph: Graph) -> "Morphism":
        return cls(graph, graph, {v: v for v in graph.vertices})

    def to_dict(self) -> dict:
        return {"map": {k: v for k, v in self.mapping}}


@dataclass(frozen=True, init=False)
class SliceObject:
    """A graph together with a homomorphism to a fixed base graph."""

    carrier: Graph
    base: Graph
    structure_map: Morphism

    def __init__(self, carrier: Graph, base: Graph, structure_map: Mapping[Vertex, Vertex] | Morphism):
        if isinstance(structure_map, Morphism):
            if structure_map.domain != carrier or structure_map.codomain != base:
                raise ValueError("structure map endpoints do not match carrier/base")
            m = structure_map
        else:
            m = Morphism(carrier, base, structure_map)
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "structure_map", m)

    def color(self, v: Vertex) -> Vertex:
        return self.structure_map(v)

    def fiber(self, base_vertex: Vertex) -> tuple[Vertex, ...]:
        """All carrier vertices mapped onto ``base_vertex``."""
        return tuple(v for v in self.carrier.vertices if self.color(v) == base_vertex)

    def image(self) -> tuple[Vertex, ...]:
        return self.structure_map.image()

    def to_dict(self) -> dict:
        return {
            "carrier": self.carrier.to_dict(),
            "base": self.base.to_dict(),
            "map": {k: v for k, v in self.structure_map.mapping},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SliceObject":
        for key in ("carrier", "base", "map"):
            if key not in data:
                raise ValueError(f"slice document requires {key!r}")
        carrier = Graph.from_dict(data["carrier"])
        base = Graph.from_dict(data["base"])
        return cls(carrier, base, dict(data["map"]))


@dataclass(frozen=True, init=False)
class SliceMorphism:
    """A carrier homomorphism commuting with the structure maps."""

    source: SliceObject
    target: SliceObject
    map: Morphism

    def __init__(self, source: SliceObject, target: SliceObject, map: Mapping[Vertex, Vertex] | Morphism):
        if source.base != target.base:
            raise ValueError("slice morphism endpoints live over different bases")
        m = map if isinstance(map, Morphism) else Morphism(source.carrier, target.carrier, map)
        if m.domain != source.carrier or m.codomain != target.carrier:
            raise ValueError("carrier map endpoints do not match the slice objects")
        for v in source.carrier.vertices:
            if target.color(m(v)) != source.color(v):
                raise ValueError(
                    f"triangle does not commute at {v!r}: "
                    f"{target.color(m(v))!r} != {source.color(v)!r}"
                )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "map", m)

    def __call__(self, v: Vertex) -> Vertex:
        return self.map(v)

    def compose(self, inner: "SliceMorphism") -> "SliceMorphism":
        if inner.target != self.source:
            raise ValueError("slice morphisms are not composable")
        return SliceMorphism(inner.source, self.target, self.map.compose(inner.map))

    @classmethod
    def identity(cls, obj: SliceObject) -> "SliceMorphism":
        return cls(obj, obj, Morphism.identity(obj.carrier))

    def to_dict(self) -> dict:
        return {"map": {k: v for k, v in self.map.mapping}}


# ---------------------------------------------------------------------------
# standard families


def build_path(n: int) -> Graph:
    """The path P_n with n edges and n + 1 vertices v0..vn."""
    if n < 0:
        raise ValueError(f"path length must be non-negative, got {n}")
    vs = [f"v{i}" for i in range(n + 1)]
    return Graph(vs, [(vs[i], vs[i + 1]) for i in range(n)])


def build_cycle(n: int) -> Graph:
    """The cycle C_n on n vertices v0..v(n-1)."""
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    vs = [f"v{i}" for i in range(n)]
    return Graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def build_star(k: int) -> Graph:
    """The star K_{1,k}: center v0 with k leaves; build_star(3) is the 3-leaf Y."""
    if k < 0:
        raise ValueError(f"leaf count must be non-negative, got {k}")
    vs = ["v0"] + [f"v{i}" for i in range(1, k + 1)]
    return Graph(vs, [("v0", f"v{i}") for i in range(1, k + 1)])


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    """Disjoint union with vertex ids namespaced "<part index>:<id>"."""
    vertices: list[Vertex] = []
    edges: list[tuple[Vertex, Vertex]] = []
    for i, part in enumerate(parts):
        vertices.extend(f"{i}:{v}" for v in part.vertices)
        edges.extend((f"{i}:{u}", f"{i}:{v}") for u, v in part.edges)
    return Graph(vertices, edges)


def path_order(graph: Graph, component: Sequence[Vertex]) -> tuple[Vertex, ...]:
    """Order the vertices of a path-shaped component end to end.

    The walk starts from the lexicographically least endpoint (for a single
    vertex, itself).  Raises if the component is not a path.
    """
    comp = sorted(component)
    if len(comp) == 1:
        v = comp[0]
        if graph.degree(v) != 0:
            raise ValueError(f"component {comp} is not a path")
        return (v,)
    inside = set(comp)
    degs = {v: sum(1 for w in graph.neighbors(v) if w in inside) for v in comp}
    ends = [v for v in comp if degs[v] == 1]
    if len(ends) != 2 or any(degs[v] > 2 for v in comp):
        raise ValueError(f"component {comp} is not a path")
    order = [ends[0]]
    prev = None
    while True:
        nxt = [w for w in graph.neighbors(order[-1]) if w in inside and w != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    if len(order) != len(comp):
        raise ValueError(f"component {comp} is not a path")
    return tuple(order)


def iter_subgraph_edges(graph: Graph, vertices: Iterable[Vertex]) -> Iterator[Edge]:
    ks = set(vertices)
    for u, v in graph.edges:
        if u in ks and v in ks:
            yield (u, v)
