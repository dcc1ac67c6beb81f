import pytest

from framex.biased import bicircular_bias, from_group_labelling
from framex.bitset import mask_of, popcount
from framex.errors import NotAmenable, NotSwitchable, PreconditionViolated
from framex.graph import MultiGraph
from framex.structure import (
    amenable,
    check_exchange_replacement_stability,
    classify_refined,
    classify_trace,
    cluster_trace,
    crossed_traces,
    curved_reach,
    e_switch,
    extended_pair_amenable,
    is_viable,
    perturb,
    replay_curved,
    select,
    split_or_fused,
    switchable,
    trace_replacements,
    two_handcuff_shape,
)
from framex.vdeletion import hat_matroid, v_delete


def quad_bundle():
    """Four parallel edges; the derived graph is one vertex with six loops."""
    g = MultiGraph(2, [(0, 1)] * 4)
    vd = v_delete(bicircular_bias(g), 0)
    return vd, hat_matroid(vd, "frame")


def non_switchable_witness():
    """Signed gadget realizing the non-switchable two-handcuff structure:
    four anchor edges off the deleted vertex and three doubled rungs, with
    signs tuned so one base's crossed replacements are balanced and the
    other's straight ones are."""
    g = MultiGraph(
        5,
        [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 2), (2, 3), (2, 3), (3, 4), (3, 4)],
    )
    signs = [[1], [0], [1], [0], [0], [0], [0], [1], [0], [0]]
    bg = from_group_labelling(g, 1, signs)
    vd = v_delete(bg, 0)
    mh = hat_matroid(vd, "frame")
    sel = select(vd, (0, 1, 2, 3))
    o2n = vd.old_to_new
    b1 = mask_of([o2n[4], o2n[6], o2n[8], sel.edge(0, 1)])
    b2 = mask_of([o2n[5], o2n[7], o2n[9], sel.edge(2, 3)])
    return vd, mh, sel, b1, b2


def test_replacement_set_empty_without_single_trace():
    vd, mh = quad_bundle()
    sel = select(vd, (0, 1, 2, 3))
    base_off = 0  # no base avoids the cluster here, so build one artificially
    # a base meeting the cluster twice cannot happen at rank 1; check the
    # defining property instead: replacements nonempty iff trace is single
    for b in mh.bases():
        repl = trace_replacements(mh, sel, b)
        assert (popcount(b & sel.mask) == 1) == (repl != 0)


def test_replacement_contains_trace():
    vd, mh = quad_bundle()
    sel = select(vd, (0, 1, 2, 3))
    for b in mh.bases():
        if popcount(b & sel.mask) == 1:
            assert trace_replacements(mh, sel, b) & (b & sel.mask)


def test_three_parallel_loops_full_replacement():
    g = MultiGraph(2, [(0, 1)] * 3)
    vd = v_delete(bicircular_bias(g), 0)
    mh = hat_matroid(vd, "frame")
    sel = select(vd, (0, 1, 2))
    b = 1 << sel.edge(0, 1)
    assert trace_replacements(mh, sel, b) == sel.mask


def test_classification_quad_bundle():
    vd, mh = quad_bundle()
    sel = select(vd, (0, 1, 2, 3))
    for b in mh.bases():
        tc = classify_trace(mh, sel, b)
        assert tc.label != "none"
        assert classify_refined(mh, sel, b)


def test_classification_requires_single_trace():
    vd, mh = quad_bundle()
    sel = select(vd, (0, 1, 2, 3))
    with pytest.raises(PreconditionViolated):
        classify_trace(mh, sel, (1 << sel.edge(0, 1)) | (1 << sel.edge(2, 3)))


def test_viability_cases():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    e12, e34 = sel.edge(0, 1), sel.edge(2, 3)
    e23 = sel.edge(1, 2)
    # disjoint position pairs in different bases: viable
    assert is_viable(mh, sel, b1, b2)
    # same base carrying both: viable
    both = (b1 ^ (1 << e12)) | (1 << e12) | (1 << e34)
    stripped = b2 & ~sel.mask
    if mh.is_base(both):
        assert is_viable(mh, sel, both, stripped)
    # sharing a position: not viable when split across the bases
    b1_alt = (b1 & ~sel.mask) | (1 << e12)
    b2_alt = (b2 & ~sel.mask) | (1 << e23)
    if mh.is_base(b2_alt) and not (b1_alt & b2_alt):
        assert not is_viable(mh, sel, b1_alt, b2_alt)


def test_amenable_identity_target():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    e12, e34 = sel.edge(0, 1), sel.edge(2, 3)
    witness = amenable(mh, sel, (b1, b2), e12, e34)
    assert witness is not None
    assert cluster_trace(sel, *witness) == (1 << e12) | (1 << e34)


def test_witness_matches_dichotomy_case_two():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    e12, e34 = sel.edge(0, 1), sel.edge(2, 3)
    f1 = trace_replacements(mh, sel, b1)
    f2 = trace_replacements(mh, sel, b2)
    straight = (1 << e12) | (1 << e34)
    quad_a = straight | (1 << sel.edge(0, 3)) | (1 << sel.edge(1, 2))
    quad_b = straight | (1 << sel.edge(0, 2)) | (1 << sel.edge(1, 3))
    assert {f1, f2} == {quad_a, quad_b}
    assert classify_trace(mh, sel, b1).label == "strictly-cyclic"
    assert classify_trace(mh, sel, b2).label == "strictly-cyclic"
    crossed = [
        (sel.edge(0, 2), sel.edge(1, 3)),
        (sel.edge(0, 3), sel.edge(1, 2)),
    ]
    for e, f in crossed:
        assert amenable(mh, sel, (b1, b2), e, f) is None


def test_witness_not_switchable_and_shape():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    e12, e34 = sel.edge(0, 1), sel.edge(2, 3)
    search = switchable(mh, sel, (b1, b2), e12, e34)
    assert search.status == "not-found"
    for base, extra in ((b1, e34), (b2, e12)):
        circ = mh.fundamental_circuit(base, extra).mask
        assert two_handcuff_shape(mh, circ, e12, e34)


def test_witness_exchange_preserves_replacement_sets():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    report = check_exchange_replacement_stability(mh, sel, (b1, b2))
    assert report.ok
    assert report.checked > 0


def switch_gadget():
    """The rung gadget without signs: every straight pair is switchable."""
    g = MultiGraph(
        5,
        [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 2), (2, 3), (2, 3), (3, 4), (3, 4)],
    )
    return v_delete(bicircular_bias(g), 0)


def test_switchable_pair_found_with_certificate():
    vd = switch_gadget()
    mh = hat_matroid(vd, "frame")
    sel = select(vd, (0, 1, 2, 3))
    e12, e34 = sel.edge(0, 1), sel.edge(2, 3)
    pair = None
    for b1 in mh.bases():
        if (b1 & sel.mask) != 1 << e12:
            continue
        for b2 in mh.bases():
            if b1 & b2 or (b2 & sel.mask) != 1 << e34:
                continue
            f1 = trace_replacements(mh, sel, b1)
            f2 = trace_replacements(mh, sel, b2)
            if (f1 >> e12) & 1 and (f2 >> e34) & 1:
                pair = (b1, b2)
                break
        if pair:
            break
    assert pair is not None, "gadget lost its switchable pair"
    search = switchable(mh, sel, pair, e12, e34)
    assert search.found
    final = replay_curved(mh, sel, pair, search.chain)
    assert amenable(mh, sel, final, *search.witness_target) is not None


def test_curved_reach_contains_start():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    reach = curved_reach(mh, sel, (b1, b2), budget=10**4)
    assert (b1, b2) in reach.visited
    assert reach.exhausted


def test_split_or_fused():
    assert split_or_fused((0b011, 0b100), 0, 1) == "fused"
    assert split_or_fused((0b011, 0b100), 0, 2) == "split"
    assert split_or_fused((0b011, 0b100), 0, 5) == "absent"


def test_perturb_identity_and_retarget():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    e12, e34 = sel.edge(0, 1), sel.edge(2, 3)
    filler = [b for b in mh.bases() if not (b & (b1 | b2))]
    seq = (b1, b2)
    same = perturb(mh, sel, seq, e12, e34)
    assert cluster_trace(sel, same[0], same[1]) == (1 << e12) | (1 << e34)
    # the dichotomy guarantees the straight target is reachable, crossed is not
    with pytest.raises(NotAmenable):
        perturb(mh, sel, seq, sel.edge(0, 2), sel.edge(1, 3))


def test_e_switch_not_switchable_raises():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    with pytest.raises(NotSwitchable):
        e_switch(mh, sel, (b1, b2))


def test_e_switch_success():
    vd = switch_gadget()
    mh = hat_matroid(vd, "frame")
    sel = select(vd, (0, 1, 2, 3))
    e12, e34 = sel.edge(0, 1), sel.edge(2, 3)
    for b1 in mh.bases():
        if (b1 & sel.mask) != 1 << e12:
            continue
        for b2 in mh.bases():
            if b1 & b2 or (b2 & sel.mask) != 1 << e34:
                continue
            try:
                out, chain = e_switch(mh, sel, (b1, b2))
            except NotSwitchable:
                continue
            assert cluster_trace(sel, out[0], out[1]) in crossed_traces(sel)
            return
    pytest.skip("no switchable pair in this gadget")


def test_extended_pair_amenability():
    vd, mh, sel, b1, b2 = non_switchable_witness()
    u_hat = 0  # derived label of source vertex 1
    h = sel.edge(0, 1)
    stripped = b1 & ~sel.mask
    # leftover a merged edge at the anchor contributes the anchor's cluster
    # edges; a plain leftover contributes nothing
    e34 = sel.edge(2, 3)
    assert extended_pair_amenable(mh, sel, vd, b2, h, u_hat, h, e34) == (
        (trace_replacements(mh, sel, b2) >> e34) & 1 == 1
    )
    plain = vd.old_to_new[4]
    assert not extended_pair_amenable(mh, sel, vd, b2, plain, u_hat, h, e34)
