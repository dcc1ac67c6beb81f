import pytest
from hypothesis import given, settings, strategies as st

from framex.biased import bicircular_bias, graphic_bias
from framex.bitset import ids_of, mask_of, popcount
from framex.errors import NotCompatible, NotVReduced, PreconditionViolated
from framex.exchange import compatible, replay
from framex.graph import MultiGraph
from framex.matroid import FrameMatroid
from framex.reduction import (
    Matching,
    align_matchings,
    build_expansion,
    difference_shape,
    explore_component,
    is_v_reduced,
    matching_c2,
    matching_graph,
    matching_overlap,
    min_degree_vertex,
    pair_switch_search,
    v_reduce,
)


def test_expansion_disjoint_bases_identity(graphic_k4):
    bases = graphic_k4.bases()
    b1 = mask_of([0, 3, 5])  # path tree; its complement is also a tree
    b2 = next(b for b in bases if b & b1 == 0)
    m_k, l1, l2, exp = build_expansion(graphic_k4, (b1, b2), (b2, b1))
    assert m_k.size == 6  # every multiplicity is one
    assert exp.project_sequence(l1) == (b1, b2)


def test_expansion_duplicated_base():
    g = MultiGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    m = FrameMatroid(graphic_bias(g), "frame")
    b = mask_of([0, 1, 3])
    m_k, l1, l2, exp = build_expansion(m, (b, b), (b, b))
    assert m_k.size == 2 * 3  # every edge of the base doubled, others dropped
    assert all(len(exp.parallel_classes[e]) == 2 for e in ids_of(b))
    assert compatible(l1, l2, m_k.size)


def test_expansion_shared_edge_doubled(graphic_k4):
    star, path = mask_of([0, 1, 2]), mask_of([0, 3, 5])
    m_k, l1, l2, exp = build_expansion(graphic_k4, (star, path), (path, star))
    assert len(exp.parallel_classes[0]) == 2
    assert all(len(exp.parallel_classes[e]) == 1 for e in (1, 2, 3, 5))
    assert exp.parallel_classes[4] == ()  # unused edge dropped
    assert m_k.size == 6
    # parallel copies are interchangeable: the duplicated pair is dependent
    copies = exp.parallel_classes[0]
    assert not m_k.is_independent(mask_of(copies))


def test_expansion_requires_compatibility(graphic_k4):
    bases = graphic_k4.bases()
    with pytest.raises(NotCompatible):
        build_expansion(graphic_k4, (bases[0], bases[1]), (bases[0], bases[0]))


def test_expansion_preserves_bias():
    # copies of one edge form a balanced 2-cycle even under a bias with no
    # balanced cycles at all
    g = MultiGraph(2, [(0, 1), (0, 1)])
    m = FrameMatroid(bicircular_bias(g), "frame")
    base = 0b11
    assert m.is_base(base)
    m_k, l1, l2, exp = build_expansion(m, (base, base), (base, base))
    assert m_k.size == 4
    for copies in exp.parallel_classes.values():
        assert not m_k.is_independent(mask_of(copies))  # copies are parallel


def test_min_degree_vertex_ties():
    g = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert min_degree_vertex(g) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15))
def test_min_degree_bounded_by_average(i, j):
    g = MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    m = FrameMatroid(graphic_bias(g), "frame")
    bases = m.bases()
    s1 = (bases[i], bases[j])
    s2 = (bases[j], bases[i])
    m_k, l1, l2, exp = build_expansion(m, s1, s2)
    v = min_degree_vertex(m_k.graph)
    assert m_k.graph.degree(v) <= 2 * len(s1)


def loaded_instance():
    """A hub base with three hub edges and an anchored partner."""
    g = MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)])
    m = FrameMatroid(graphic_bias(g), "frame")
    star, other = mask_of([0, 1, 2]), mask_of([2, 3, 4])
    assert m.is_base(star) and m.is_base(other)
    m_k, l1, l2, exp = build_expansion(m, (star, other), (other, star))
    return m_k, l1, l2


def test_v_reduce_three_at_vertex():
    m_k, l1, l2 = loaded_instance()
    counts = [popcount(b & mask_of(m_k.graph.incident_edges(0))) for b in l1]
    assert max(counts) == 3
    out = v_reduce(m_k, 0, l1)
    assert is_v_reduced(m_k.graph, 0, out.sequence)
    assert not out.lemma_scan_failed
    assert len(out.certificate.moves) == 1  # one exchange moves one hub edge
    replay(m_k, out.certificate)


def test_v_reduce_identity():
    m_k, l1, l2 = loaded_instance()
    out = v_reduce(m_k, 0, l2)
    reduced = out.sequence
    again = v_reduce(m_k, 0, reduced)
    assert again.sequence == reduced
    assert again.certificate.moves == ()


def test_v_reduce_preconditions(graphic_k4):
    bases = graphic_k4.bases()
    with pytest.raises(PreconditionViolated):
        v_reduce(graphic_k4, 0, (bases[0], bases[1]))  # not a partition


def test_matching_graph_shapes():
    m_k, l1, l2 = loaded_instance()
    out = v_reduce(m_k, 0, l1)
    mt = matching_graph(m_k.graph, 0, out.sequence)
    assert mt.size == len(m_k.graph.incident_edges(0))
    for pair in mt.pairs:
        assert len(pair) == 2
    assert all(0 <= x < mt.size for p in mt.pairs for x in p)


def test_matching_graph_rejects_unreduced():
    m_k, l1, l2 = loaded_instance()
    with pytest.raises(NotVReduced):
        matching_graph(m_k.graph, 0, l1)


def test_matching_difference_components_even():
    m1 = Matching(4, frozenset({frozenset((0, 1)), frozenset((2, 3))}))
    m2 = Matching(4, frozenset({frozenset((0, 2)), frozenset((1, 3))}))
    assert difference_shape(m1, m2) == "four-cycle"
    assert matching_overlap(m1, m2) == 0
    assert matching_c2(m1, m2) == 16
    assert difference_shape(m1, m1) == "equal"


def test_pair_switch_identity_target():
    m_k, l1, l2 = loaded_instance()
    out = v_reduce(m_k, 0, l1)
    mt = matching_graph(m_k.graph, 0, out.sequence)
    if len(mt.pairs) < 2:
        pytest.skip("not enough matching edges")
    pairs = sorted(tuple(sorted(p)) for p in mt.pairs)
    res = pair_switch_search(m_k, 0, out.sequence, pairs[0], pairs[1])
    assert res.status in ("found", "not-found")
    if res.status == "found":
        replay(m_k, res.certificate)
        got = matching_graph(m_k.graph, 0, res.sequence)
        assert got.key() == res.target.key()


def test_align_matchings_outcomes():
    m_k, l1, l2 = loaded_instance()
    r1 = v_reduce(m_k, 0, l1)
    r2 = v_reduce(m_k, 0, l2)
    res = align_matchings(m_k, 0, r1.sequence, r2.sequence)
    assert res.status in ("equal", "four-cycle")
    assert res.criteria_max_shape in ("equal", "four-cycle", "four-path")
    final1, _ = replay(m_k, res.cert1)
    final2, _ = replay(m_k, res.cert2)
    assert final1 == res.s1 and final2 == res.s2
    mt1 = matching_graph(m_k.graph, 0, res.s1)
    mt2 = matching_graph(m_k.graph, 0, res.s2)
    assert difference_shape(mt1, mt2) == ("equal" if res.status == "equal" else "four-cycle")


def test_explore_component_certificates():
    m_k, l1, l2 = loaded_instance()
    r1 = v_reduce(m_k, 0, l1)
    comp = explore_component(m_k, 0, r1.sequence)
    assert not comp.limited
    some = comp.reduced_members[: 5]
    for target in some:
        cert = comp.certificate_between(m_k, r1.sequence, target)
        final, _ = replay(m_k, cert)
        assert final == target
