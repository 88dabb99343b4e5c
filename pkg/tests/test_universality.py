import random

import pytest

from slicecat.core import (
    Digraph,
    Graph,
    Morphism,
    SliceObject,
    build_cycle,
    build_path,
    build_star,
    disjoint_union,
)
from slicecat.gadgets import builtin_gadget
from slicecat.homsearch import (
    EndoVerdict,
    classify_endomorphisms,
    enumerate_digraph_homs,
    enumerate_graphs,
    slice_hom_count,
)
from slicecat.universality import (
    BaseVerdict,
    RetractionPlan,
    RigidPathCertificate,
    classify_cone_base,
    classify_slice_base,
    classify_slice_base_by_subgraph,
    classify_slice_object,
    compare_components,
    dichotomy_sweep,
    full_embedding_check,
    full_embedding_spot_check,
    random_connected_surjective_slice,
    random_slice_object,
    retract_slice_to_path,
)

from conftest import random_graph

P3 = build_path(3)


def identity_slice(graph):
    return SliceObject(graph, graph, {v: v for v in graph.vertices})


def slice_over_p3(edges, colors):
    vertices = list(colors)
    carrier = Graph(vertices, edges)
    return SliceObject(carrier, P3, {v: f"v{c}" for v, c in colors.items()})


class TestClassifySliceBase:
    @pytest.mark.parametrize(
        "graph,verdict,pattern",
        [
            (build_cycle(3), BaseVerdict.UNIVERSAL, "C3"),
            (build_cycle(4), BaseVerdict.UNIVERSAL, "C4"),
            (build_cycle(7), BaseVerdict.UNIVERSAL, "P4"),
            (build_path(4), BaseVerdict.UNIVERSAL, "P4"),
            (build_star(3), BaseVerdict.UNIVERSAL, "Y"),
            (build_path(3), BaseVerdict.NOT_UNIVERSAL, None),
            (Graph([]), BaseVerdict.NOT_UNIVERSAL, None),
        ],
    )
    def test_verdicts(self, graph, verdict, pattern):
        result = classify_slice_base(graph)
        assert result.verdict is verdict
        assert result.pattern == pattern

    def test_universal_witness_revalidates(self):
        for graph in (build_cycle(3), build_cycle(6), build_star(5), build_path(9)):
            result = classify_slice_base(graph)
            emb = result.embedding
            assert emb is not None and emb.is_injective()
            assert emb.codomain == graph

    def test_decomposition_covers_everything(self):
        g = disjoint_union([build_path(3), build_path(1), build_path(0)])
        result = classify_slice_base(g)
        parts = result.decomposition
        assert sorted(v for p in parts for v in p) == sorted(g.vertices)
        covered = {
            tuple(sorted((p[i], p[i + 1]))) for p in parts for i in range(len(p) - 1)
        }
        assert covered == set(g.edges)
        assert all(len(p) <= 4 for p in parts)

    def test_matches_subgraph_oracle_exhaustively(self):
        for n in range(5):
            for g in enumerate_graphs(n):
                assert (
                    classify_slice_base(g).verdict
                    == classify_slice_base_by_subgraph(g).verdict
                )

    def test_matches_subgraph_oracle_random(self):
        rng = random.Random(71)
        for _ in range(150):
            g = random_graph(rng, 8, edge_probability=rng.choice([0.15, 0.3, 0.5]))
            assert (
                classify_slice_base(g).verdict
                == classify_slice_base_by_subgraph(g).verdict
            )


class TestClassifyConeBase:
    def test_odd_cycle_found(self):
        result = classify_cone_base(build_cycle(5))
        assert result.verdict is BaseVerdict.UNIVERSAL
        cycle = result.odd_cycle
        assert len(cycle) == 5 and len(cycle) % 2 == 1

    def test_path_is_bipartite(self):
        result = classify_cone_base(build_path(3))
        assert result.verdict is BaseVerdict.NOT_UNIVERSAL
        left, right = result.bipartition
        sides = {v: 0 for v in left} | {v: 1 for v in right}
        assert all(sides[u] != sides[v] for u, v in build_path(3).edges)

    def test_witness_found_in_odd_component(self):
        g = disjoint_union([build_cycle(6), build_cycle(3)])
        result = classify_cone_base(g)
        assert result.verdict is BaseVerdict.UNIVERSAL
        assert all(v.startswith("1:") for v in result.odd_cycle)

    def test_odd_cycle_witness_is_a_real_cycle(self):
        rng = random.Random(73)
        for _ in range(120):
            g = random_graph(rng, 8, edge_probability=0.3)
            result = classify_cone_base(g)
            if result.verdict is BaseVerdict.UNIVERSAL:
                cycle = list(result.odd_cycle)
                assert len(cycle) % 2 == 1 and len(set(cycle)) == len(cycle)
                for i, v in enumerate(cycle):
                    assert g.has_edge(v, cycle[(i + 1) % len(cycle)])
            else:
                left, right = result.bipartition
                sides = {v: 0 for v in left} | {v: 1 for v in right}
                assert all(sides[u] != sides[v] for u, v in g.edges)


class TestRetraction:
    def test_identity_path_certifies_rigid(self):
        outcome = retract_slice_to_path(identity_slice(P3))
        assert isinstance(outcome, RigidPathCertificate)

    def test_minimal_zigzag_path_certifies_rigid(self):
        x = slice_over_p3(
            [(f"u{i}", f"u{i+1}") for i in range(5)],
            {f"u{i}": c for i, c in enumerate([0, 1, 2, 1, 2, 3])},
        )
        outcome = retract_slice_to_path(x)
        assert isinstance(outcome, RigidPathCertificate)
        assert len(outcome.path_vertices) == 6  # k = 5 = 2*1 + 3
        report = classify_endomorphisms(x)
        assert report.verdict is EndoVerdict.RIGID

    def test_pendant_vertex_retracts_properly(self):
        x = slice_over_p3(
            [("a", "b"), ("b", "c"), ("c", "d"), ("b", "p")],
            {"a": 0, "b": 1, "c": 2, "d": 3, "p": 0},
        )
        outcome = retract_slice_to_path(x)
        assert isinstance(outcome, RetractionPlan)
        assert outcome.retraction("p") == "a"
        assert not outcome.retraction.is_bijective()
        outcome.validate(x)
        report = classify_endomorphisms(x)
        assert report.verdict is EndoVerdict.HAS_PROPER_ENDOMORPHISM

    def test_disconnected_carrier_rejected(self):
        x = SliceObject(
            disjoint_union([P3, P3]),
            P3,
            {f"{i}:v{j}": f"v{j}" for i in range(2) for j in range(4)},
        )
        with pytest.raises(ValueError, match="connected"):
            retract_slice_to_path(x)

    def test_non_surjective_rejected(self):
        x = SliceObject(build_path(1), P3, {"v0": "v0", "v1": "v1"})
        with pytest.raises(ValueError, match="surjective"):
            retract_slice_to_path(x)

    def test_short_base_section_retraction(self):
        p1 = build_path(1)
        x = SliceObject(
            Graph(["a", "b", "c"], [("a", "b"), ("b", "c")]),
            p1,
            {"a": "v0", "b": "v1", "c": "v0"},
        )
        outcome = retract_slice_to_path(x)
        assert isinstance(outcome, RetractionPlan)
        outcome.validate(x)

    def test_plan_contract_on_random_instances(self):
        rng = random.Random(79)
        rigid_seen = 0
        for _ in range(120):
            x = random_connected_surjective_slice(P3, rng, max_vertices=7)
            outcome = retract_slice_to_path(x)
            if isinstance(outcome, RigidPathCertificate):
                rigid_seen += 1
                assert classify_endomorphisms(x).verdict is EndoVerdict.RIGID
            else:
                outcome.validate(x)
        assert rigid_seen > 0


class TestCompareComponents:
    def test_segment_lifts_into_full_image(self):
        x = slice_over_p3(
            [("x0", "x1"), ("x1", "x2")], {"x0": 0, "x1": 1, "x2": 2}
        )
        y = identity_slice(P3)
        y = SliceObject(P3, P3, {v: v for v in P3.vertices})
        sm = compare_components(x, y)
        assert sm.source is x and sm.target is y

    def test_equal_objects_identity_direction(self):
        y = identity_slice(P3)
        sm = compare_components(y, y)
        assert sm.map == Morphism.identity(P3)

    def test_longer_zigzag_folds_onto_shorter(self):
        # brute force: no morphism exists from the length-3 object into the
        # length-5 one, and exactly one exists the other way
        x = identity_slice(P3)
        y = slice_over_p3(
            [(f"w{i}", f"w{i+1}") for i in range(5)],
            {f"w{i}": c for i, c in enumerate([0, 1, 2, 1, 2, 3])},
        )
        assert slice_hom_count(x, y) == 0
        assert slice_hom_count(y, x) == 1
        sm = compare_components(x, y)
        assert sm.source is y and sm.target is x

    def test_containment_precondition_enforced(self):
        x = slice_over_p3([("x0", "x1")], {"x0": 0, "x1": 1})
        y = slice_over_p3([("y0", "y1")], {"y0": 2, "y1": 3})
        with pytest.raises(ValueError, match="containment"):
            compare_components(x, y)


class TestClassifySliceObject:
    def test_identity_rigid(self):
        assert classify_slice_object(identity_slice(P3)).verdict is EndoVerdict.RIGID

    def test_two_copies_fold(self):
        x = SliceObject(
            disjoint_union([P3, P3]),
            P3,
            {f"{i}:v{j}": f"v{j}" for i in range(2) for j in range(4)},
        )
        result = classify_slice_object(x)
        assert result.verdict is EndoVerdict.HAS_PROPER_ENDOMORPHISM
        assert result.witness is not None and not result.witness.map.is_bijective()

    def test_incomparable_rigid_components_stay_rigid(self):
        x = slice_over_p3(
            [("a0", "a1"), ("b0", "b1")],
            {"a0": 0, "a1": 1, "b0": 2, "b1": 3},
        )
        assert classify_slice_object(x).verdict is EndoVerdict.RIGID

    def test_universal_base_rejected(self):
        c3 = build_cycle(3)
        with pytest.raises(ValueError, match="universal"):
            classify_slice_object(identity_slice(c3))

    def test_empty_carrier_rigid(self):
        x = SliceObject(Graph([]), P3, {})
        assert classify_slice_object(x).verdict is EndoVerdict.RIGID

    def test_agrees_with_enumeration_on_random_instances(self):
        rng = random.Random(83)
        for _ in range(150):
            x = random_slice_object(P3, rng, max_vertices=5)
            result = classify_slice_object(x, cross_check_limit=0)
            report = classify_endomorphisms(x)
            assert report.verdict is not EndoVerdict.AUTOMORPHISMS_ONLY
            assert result.verdict == report.verdict

    def test_multi_component_base(self):
        base = disjoint_union([build_path(3), build_path(2)])
        carrier = Graph(["x", "y", "z", "w"], [("x", "y"), ("z", "w")])
        x = SliceObject(
            carrier, base, {"x": "0:v0", "y": "0:v1", "z": "1:v0", "w": "1:v1"}
        )
        result = classify_slice_object(x)
        report = classify_endomorphisms(x)
        assert result.verdict == report.verdict


class TestDichotomySweep:
    def test_exhaustive_small_plus_samples(self):
        report = dichotomy_sweep(P3, 3, samples=60, seed=5)
        assert report.verdict
        assert report.instances == 40 + 60

    def test_non_path_base_still_covered(self):
        base = disjoint_union([build_path(1), build_path(3)])
        report = dichotomy_sweep(base, 2, samples=40, seed=6)
        assert report.verdict


class TestFullEmbedding:
    def test_single_arc_pair(self):
        report = full_embedding_check(builtin_gadget("C3"), 1)
        assert report.verdict and report.pairs_checked == 1
        assert report.digraph_homs == report.slice_homs == 1

    def test_loop_to_arc_zero_both_sides(self):
        loop = Digraph(["u"], [("u", "u")])
        arc = Digraph(["x", "y"], [("x", "y")])
        assert list(enumerate_digraph_homs(loop, arc)) == []
        g = builtin_gadget("C3")
        from slicecat.arrow import arrow_slice
        from slicecat.homsearch import enumerate_slice_homs

        assert list(enumerate_slice_homs(arrow_slice(loop, g), arrow_slice(arc, g))) == []

    def test_two_vertex_sweep(self):
        report = full_embedding_check(builtin_gadget("C3"), 2)
        assert report.verdict and report.pairs_checked == 14 * 14
        assert report.digraph_homs == report.slice_homs

    def test_spot_check_three_vertices(self):
        report = full_embedding_spot_check(builtin_gadget("C3"), 3, 25, seed=11)
        assert report.verdict and report.pairs_checked >= 20

    def test_unverified_gadget_fails_embedding(self):
        # a foldable slice admits non-copy morphisms, breaking fullness
        g = builtin_gadget("C4")
        mutated = {k: v for k, v in g.slice.structure_map.mapping}
        mutated["c"] = "0"
        from slicecat.gadgets import Gadget

        bad = Gadget(SliceObject(g.carrier, g.base, mutated), g.a, g.b)
        report = full_embedding_check(bad, 1)
        assert not report.verdict
        assert report.violation is not None
