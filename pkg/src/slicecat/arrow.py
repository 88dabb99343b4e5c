"""Gluing a two-pointed gadget along every arc of a digraph.

Given a gadget graph H with distinguished vertices a, b and a digraph D, the
product graph has one vertex per D-vertex plus, for every arc (u, v), a fresh
copy of the gadget interior H minus {a, b}.  The copy map of arc (u, v) sends
a to u, b to v, and every interior vertex w to the tagged vertex "(u,v)::w".
The product's edges are exactly the copy-map images of H's edges.

When the gadget carries a structure map f with f(a) = f(b), the product
inherits one: D-vertices go to f(a) and interior vertices to f(w).  Both the
inherited map and every copy map are re-validated on construction, so the
commuting identities hold by checked construction rather than by trust.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Optional

from .core import Digraph, Graph, Morphism, SliceMorphism, SliceObject, Vertex
from .homsearch import digraph_is_homomorphism

if TYPE_CHECKING:  # circular only at type-check time
    from .gadgets import Gadget

Arc = tuple[Vertex, Vertex]


def interior_id(u: Vertex, v: Vertex, w: Vertex) -> Vertex:
    """Stable product id of gadget vertex w in the copy glued to arc (u, v)."""
    return f"({u},{v})::{w}"


@dataclass(frozen=True, init=False)
class ArrowResult:
    """The glued product together with its vertex bookkeeping."""

    digraph: Digraph
    gadget_graph: Graph
    a: Vertex
    b: Vertex
    product: Graph

    def __init__(self, digraph: Digraph, gadget_graph: Graph, a: Vertex, b: Vertex):
        if a == b:
            raise ValueError("the two distinguished gadget vertices must differ")
        for x in (a, b):
            if not gadget_graph.has_vertex(x):
                raise ValueError(f"distinguished vertex {x!r} is not in the gadget graph")
        interior = [w for w in gadget_graph.vertices if w not in (a, b)]
        base_ids = set(digraph.vertices)
        index: dict[tuple[Arc, Vertex], Vertex] = {}
        vertices = list(digraph.vertices)
        for arc in digraph.arcs:
            u, v = arc
            for w in interior:
                pid = interior_id(u, v, w)
                if pid in base_ids:
                    raise ValueError(f"digraph vertex id {pid!r} collides with an interior id")
                index[(arc, w)] = pid
                vertices.append(pid)
        edges = set()
        for arc in digraph.arcs:
            copy = _copy_map(arc, gadget_graph, a, b, index)
            for s, t in gadget_graph.edges:
                ps, pt = copy[s], copy[t]
                if ps == pt:
                    raise ValueError(
                        f"loop arc {arc!r} with gadget edge ({s!r}, {t!r}) between the "
                        "distinguished vertices would create a loop; the product leaves "
                        "simple graphs"
                    )
                edges.add((ps, pt))
        object.__setattr__(self, "digraph", digraph)
        object.__setattr__(self, "gadget_graph", gadget_graph)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "product", Graph(vertices, edges))
        object.__setattr__(self, "_interior_index", index)

    def base_vertex(self, u: Vertex) -> Vertex:
        """Product id of the digraph vertex u (the identity embedding)."""
        if u not in self.digraph.vertices:
            raise ValueError(f"{u!r} is not a digraph vertex")
        return u

    @property
    def base_embedding(self) -> dict[Vertex, Vertex]:
        return {u: u for u in self.digraph.vertices}

    def interior(self, arc: Arc, w: Vertex) -> Vertex:
        return self._interior_index[(tuple(arc), w)]  # type: ignore[attr-defined]

    @property
    def interior_index(self) -> dict[tuple[Arc, Vertex], Vertex]:
        return dict(self._interior_index)  # type: ignore[attr-defined]


def _copy_map(
    arc: Arc,
    gadget_graph: Graph,
    a: Vertex,
    b: Vertex,
    index: Mapping[tuple[Arc, Vertex], Vertex],
) -> dict[Vertex, Vertex]:
    u, v = arc
    out = {}
    for x in gadget_graph.vertices:
        if x == a:
            out[x] = u
        elif x == b:
            out[x] = v
        else:
            out[x] = index[(arc, x)]
    return out


def arrow_graph(D: Digraph, H: Graph, a: Vertex, b: Vertex) -> ArrowResult:
    """Build the product of gluing (H, a, b) along every arc of D."""
    return ArrowResult(D, H, a, b)


def phi(res: ArrowResult, arc: Arc) -> Morphism:
    """The copy map of one arc, as a validated morphism H -> product.

    For a loop arc (u, u) the map identifies a and b at u; on every other arc
    it is injective.
    """
    arc = (arc[0], arc[1])
    if not res.digraph.has_arc(*arc):
        raise ValueError(f"{arc!r} is not an arc of the digraph")
    mapping = _copy_map(arc, res.gadget_graph, res.a, res.b, res._interior_index)  # type: ignore[attr-defined]
    return Morphism(res.gadget_graph, res.product, mapping)


def product_structure_map(res: ArrowResult, gadget: "Gadget") -> Morphism:
    """The inherited structure map: base vertices to f(a), interiors to f(w)."""
    if res.gadget_graph != gadget.carrier or (res.a, res.b) != (gadget.a, gadget.b):
        raise ValueError("arrow result was built from a different gadget")
    f = gadget.slice.structure_map
    mapping: dict[Vertex, Vertex] = {u: f(gadget.a) for u in res.digraph.vertices}
    for (arc, w), pid in res._interior_index.items():  # type: ignore[attr-defined]
        mapping[pid] = f(w)
    return Morphism(res.product, gadget.base, mapping)


def arrow_slice(D: Digraph, gadget: "Gadget") -> SliceObject:
    """The product as a slice object over the gadget's base."""
    res = arrow_graph(D, gadget.carrier, gadget.a, gadget.b)
    return SliceObject(res.product, gadget.base, product_structure_map(res, gadget))


def slice_phi(res: ArrowResult, gadget: "Gadget", arc: Arc) -> SliceMorphism:
    """The copy map of one arc as a slice morphism into the product object."""
    product = SliceObject(res.product, gadget.base, product_structure_map(res, gadget))
    return SliceMorphism(gadget.slice, product, phi(res, arc))


def arrow_morphism(
    D1: Digraph,
    D2: Digraph,
    h: Mapping[Vertex, Vertex],
    gadget: "Gadget",
) -> SliceMorphism:
    """Extend a digraph homomorphism h: D1 -> D2 to the glued products.

    Base vertices follow h and the interior of arc (u, v) is carried onto the
    interior of (h(u), h(v)).  The result is validated as a slice morphism
    from arrow_slice(D1) to arrow_slice(D2).
    """
    ok, witness = digraph_is_homomorphism(h, D1, D2)
    if not ok:
        u, v = witness  # type: ignore[misc]
        raise ValueError(
            f"map is not a digraph homomorphism: arc ({u!r}, {v!r}) lands on "
            f"({h[u]!r}, {h[v]!r}), which is not an arc"
        )
    res1 = arrow_graph(D1, gadget.carrier, gadget.a, gadget.b)
    res2 = arrow_graph(D2, gadget.carrier, gadget.a, gadget.b)
    source = SliceObject(res1.product, gadget.base, product_structure_map(res1, gadget))
    target = SliceObject(res2.product, gadget.base, product_structure_map(res2, gadget))
    mapping: dict[Vertex, Vertex] = {u: h[u] for u in D1.vertices}
    for ((u, v), w), pid in res1._interior_index.items():  # type: ignore[attr-defined]
        mapping[pid] = res2.interior((h[u], h[v]), w)
    return SliceMorphism(source, target, mapping)


def phi_is_strong(res: ArrowResult, arc: Arc) -> tuple[bool, Optional[tuple[Vertex, Vertex]]]:
    """Edge reflection check for one copy map.

    On a non-loop arc the copy map must reflect edges exactly: the images of
    s, t are adjacent in the product iff {s, t} is a gadget edge.  On a loop
    arc a and b share an image, so the check is performed on vertex pairs with
    distinct images and treats edges at a and b as interchangeable.
    """
    arc = (arc[0], arc[1])
    copy = _copy_map(arc, res.gadget_graph, res.a, res.b, res._interior_index)  # type: ignore[attr-defined]
    g = res.gadget_graph
    is_loop = arc[0] == arc[1]
    swap = {res.a: res.b, res.b: res.a}
    for i, s in enumerate(g.vertices):
        for t in g.vertices[i + 1 :]:
            if copy[s] == copy[t]:
                continue
            product_edge = res.product.has_edge(copy[s], copy[t])
            gadget_edge = g.has_edge(s, t)
            if is_loop:
                gadget_edge = (
                    gadget_edge
                    or g.has_edge(swap.get(s, s), t)
                    or g.has_edge(s, swap.get(t, t))
                )
            if product_edge != gadget_edge:
                return False, (s, t)
    return True, None
