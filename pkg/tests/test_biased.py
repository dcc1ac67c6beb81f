import pytest

from framex.biased import (
    BiasedGraph,
    bicircular_bias,
    check_linearity,
    check_theta_property,
    check_theta_property_list,
    cycle_lemma_harness,
    from_group_labelling,
    graphic_bias,
    linear_completion,
)
from framex.bitset import ids_of, mask_of, popcount
from framex.errors import LabelCountMismatch, NotACycle
from framex.graph import MultiGraph
from framex.oracle import oracle_span_member


def test_empty_generators_give_bicircular(k4):
    bg = BiasedGraph(k4, linear_completion(k4, []))
    assert all(not bg.balance.contains(c) for c in k4.simple_cycles())


def test_full_basis_gives_graphic(k4):
    bg = BiasedGraph(k4, linear_completion(k4, k4.cycle_space_basis()))
    assert all(bg.balance.contains(c) for c in k4.simple_cycles())


def test_two_triangles_sharing_edge(k4):
    # triangles 0-1-2 (edges 0,1,3) and 0-1-3 (edges 0,2,4) share edge 0
    t1, t2 = mask_of([0, 1, 3]), mask_of([0, 2, 4])
    bg = BiasedGraph(k4, linear_completion(k4, [t1, t2]))
    four_cycle = t1 ^ t2
    assert bg.is_balanced(four_cycle)
    other_triangles = [c for c in k4.simple_cycles() if popcount(c) == 3 and c not in (t1, t2)]
    assert len(other_triangles) == 2
    assert all(not bg.is_balanced(c) for c in other_triangles)
    # agreement with the from-scratch span oracle on every cycle
    gens = [ids_of(t1), ids_of(t2)]
    for c in k4.simple_cycles():
        assert bg.balance.contains(c) == oracle_span_member(gens, ids_of(c))


def test_is_balanced_rejects_non_cycles(k4):
    bg = graphic_bias(k4)
    with pytest.raises(NotACycle):
        bg.is_balanced(0b11)


def test_signed_triangle_one_negative(triangle):
    bg = from_group_labelling(triangle, 1, [[1], [0], [0]])
    assert not bg.is_balanced(0b111)


def test_group_labelling_all_zero_is_graphic(k4):
    bg = from_group_labelling(k4, 2, [[0, 0]] * 6)
    assert all(bg.is_balanced(c) for c in k4.simple_cycles())


def test_group_labelling_triangle_all_ones(triangle):
    bg = from_group_labelling(triangle, 1, [[1]] * 3)
    assert not bg.is_balanced(0b111)
    assert bg.balanced_cycles() == []


def test_group_labelling_k4_all_ones(k4):
    bg = from_group_labelling(k4, 1, [[1]] * 6)
    balanced = bg.balanced_cycles()
    assert all(popcount(c) == 4 for c in balanced)
    assert len(balanced) == 3


def test_group_labelling_count_mismatch(triangle):
    with pytest.raises(LabelCountMismatch):
        from_group_labelling(triangle, 1, [[1], [0]])


def test_balanced_loop_flagging():
    g = MultiGraph(1, [(0, 0)])
    balanced = BiasedGraph(g, linear_completion(g, [0b1]))
    assert balanced.balanced_loops == (0,)
    unbalanced = bicircular_bias(g)
    assert unbalanced.balanced_loops == ()


def test_theta_property_for_constructed_classes(k4):
    for bg in (graphic_bias(k4), bicircular_bias(k4)):
        ok, witness = check_theta_property(bg)
        assert ok and witness is None


def test_theta_property_explicit_violation(k4):
    # one triangle plus the 4-cycle sharing two of its edges: their symmetric
    # difference is another triangle which the class misses
    t1 = mask_of([0, 1, 3])
    square = next(
        c for c in k4.simple_cycles() if popcount(c) == 4 and popcount(c & t1) == 2
    )
    ok, witness = check_theta_property_list(k4, [t1, square])
    assert not ok
    assert witness is not None


def test_linearity_trivial_cases(k4):
    assert check_linearity(k4, k4.simple_cycles())[0]
    assert check_linearity(k4, [])[0]


def test_linearity_violation_witness(k4):
    t1, t2 = mask_of([0, 1, 3]), mask_of([0, 2, 4])
    ok, witness = check_linearity(k4, [t1, t2])
    assert not ok
    assert witness == t1 ^ t2


def test_group_labelling_passes_linearity(k4):
    bg = from_group_labelling(k4, 1, [[1]] * 6)
    ok, _ = check_linearity(k4, bg.balanced_cycles())
    assert ok


def test_cycle_lemma_harness_graphic_and_bicircular(k4):
    for bg in (graphic_bias(k4), bicircular_bias(k4)):
        report = cycle_lemma_harness(bg)
        assert report.ok, report.failures
    graphic = cycle_lemma_harness(graphic_bias(k4))
    assert graphic.checked["balanced_patch"] > 0
    assert graphic.checked["transfer"] > 0


def test_cycle_lemma_harness_unbalanced_escape_fires(k4):
    report = cycle_lemma_harness(bicircular_bias(k4))
    assert report.ok
    assert report.checked["unbalanced_escape"] > 0


def test_cycle_lemma_harness_theta_graph():
    # two vertices joined by three internally disjoint 2-paths, all balanced
    g = MultiGraph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    report = cycle_lemma_harness(graphic_bias(g))
    assert report.ok
    assert report.checked["balanced_patch"] > 0
