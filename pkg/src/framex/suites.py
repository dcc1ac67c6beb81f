"""Verification suites: each runs one lemma/theorem family exhaustively over
an instance and reports pass/fail plus what was checked.

The derived-matroid suites (pull-backs, replacement sets, reductions) run on
frame instances, the flavor the underlying theory addresses; lift instances
exercise the axiom, exchange and connectivity suites.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .biased import check_linearity, check_theta_property, cycle_lemma_harness
from .bitset import bits, ids_of, mask_of, popcount
from .errors import FramexError, NoWitness, PreconditionViolated, SearchLimit, SizeExceeded
from .exchange import (
    binomial_certificate,
    exchange_path,
    extended_verify,
    multiset_counts,
    replay,
    white_verify,
)
from .instances import Instance
from .oracle import (
    OracleReport,
    oracle_bases,
    oracle_circuits,
    oracle_connectivity,
    oracle_simple_cycles,
    oracle_span_member,
    oracle_spanning_tree_count,
)
from .reduction import (
    align_matchings,
    build_expansion,
    explore_component,
    is_v_reduced,
    matching_graph,
    min_degree_vertex,
    v_reduce,
)
from .structure import (
    check_exchange_replacement_stability,
    classify_refined,
    classify_trace,
    replay_curved,
    select,
    switchable,
    trace_replacements,
    two_handcuff_shape,
)
from .vdeletion import (
    base_set_pullback,
    check_unbalanced_preservation,
    cover_certificate,
    hat_matroid,
    petals,
    v_delete,
)

ORACLE_EDGE_GUARD = 10
WHITE_CLASS_ORACLE_GUARD = 1500
FSET_PAIR_GUARD = 30000
SWITCH_BUDGET = 10**5


@dataclass
class SuiteResult:
    instance: str
    suite: str
    status: str  # "pass" | "fail" | "skip"
    checked: int = 0
    failures: list = field(default_factory=list)
    skip_reason: str = ""
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "instance": self.instance,
            "suite": self.suite,
            "status": self.status,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:10]],
            "skip_reason": self.skip_reason,
            "elapsed": round(self.elapsed, 4),
            "notes": self.notes,
        }


def _finish(res: SuiteResult, t0: float) -> SuiteResult:
    res.elapsed = time.time() - t0
    if res.status != "skip":
        res.status = "fail" if res.failures else "pass"
    return res


# -- axioms and oracle agreement -------------------------------------------------


def suite_axioms(inst: Instance) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "axioms", "pass")
    m = inst.build_matroid()
    g = m.graph
    if m.size > ORACLE_EDGE_GUARD:
        res.status = "skip"
        res.skip_reason = f"{m.size} edges beyond the oracle guard"
        return _finish(res, t0)
    rep = m.check_base_axioms()
    res.checked += rep.exchange_checked + rep.elimination_checked
    res.failures.extend(rep.failures)

    gens = [ids_of(c) for c in m.biased.balance.generators]
    agreements = [
        OracleReport(
            "bases",
            list(m.bases()),
            sorted(mask_of(s) for s in oracle_bases(g.n, g.edges, gens, m.kind)),
        ),
        OracleReport(
            "circuits",
            [c.mask for c in m.circuits()],
            sorted(mask_of(s) for s in oracle_circuits(g.n, g.edges, gens, m.kind)),
        ),
    ]
    for rep_item in agreements:
        res.checked += 1
        if not rep_item.agree:
            res.failures.append(f"{rep_item.quantity} lists disagree with the oracle")
    for cyc in g.simple_cycles():
        engine = m.biased.balance.contains(cyc)
        want = oracle_span_member(gens, ids_of(cyc))
        res.checked += 1
        if engine != want:
            res.failures.append(f"balance disagreement on cycle {cyc:#x}")
    cycles = sorted(mask_of(s) for s in oracle_simple_cycles(g.n, g.edges))
    if cycles != g.simple_cycles():
        res.failures.append("cycle enumeration disagrees with the 2-regular scan")
    res.checked += 1
    if inst.bias.get("kind") == "all":
        trees = oracle_spanning_tree_count(g.n, g.edges)
        if g.is_connected() and len(m.bases()) != trees:
            res.failures.append(f"spanning-tree count {trees} != base count {len(m.bases())}")
        res.checked += 1
    return _finish(res, t0)


def suite_biased(inst: Instance) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "biased", "pass")
    bg = inst.build_biased()
    ok, witness = check_theta_property(bg)
    res.checked += 1
    if not ok:
        res.failures.append(f"theta property violated: {witness}")
    balanced = bg.balanced_cycles()
    ok, missing = check_linearity(bg.graph, balanced)
    res.checked += 1
    if not ok:
        res.failures.append(f"explicit balanced list not linear, missing {missing:#x}")
    for c1, c2 in combinations(balanced, 2):
        c3 = c1 ^ c2
        if bg.graph.is_simple_cycle(c3):
            res.checked += 1
            if not bg.balance.contains(c3):
                res.failures.append(f"difference cycle {c3:#x} not balanced")
    return _finish(res, t0)


def suite_cycle_lemmas(inst: Instance) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "cycle-lemmas", "pass")
    bg = inst.build_biased()
    if bg.graph.m > 10 or not bg.graph.is_connected():
        res.status = "skip"
        res.skip_reason = "harness guard"
        return _finish(res, t0)
    rep = cycle_lemma_harness(bg)
    res.checked = sum(rep.checked.values())
    res.notes = dict(rep.checked)
    for name, witness in rep.failures.items():
        res.failures.append(f"{name}: {witness}")
    return _finish(res, t0)


# -- exchange-graph connectivity ----------------------------------------------------


def suite_white(inst: Instance, ks=(2, 3)) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "white", "pass")
    m = inst.build_matroid()
    try:
        bases = m.bases()
    except SizeExceeded as exc:
        res.status = "skip"
        res.skip_reason = str(exc)
        return _finish(res, t0)
    oracle_checked = 0
    oracle_skipped = 0
    for k in ks:
        if len(bases) ** k > 200_000:
            res.status = "skip"
            res.skip_reason = f"{len(bases)}^{k} sequences beyond the state guard"
            return _finish(res, t0)
        try:
            rep = white_verify(m, k)
        except SearchLimit as exc:
            res.status = "skip"
            res.skip_reason = str(exc)
            return _finish(res, t0)
        res.checked += rep.state_count
        for fp, sizes in rep.counterexamples:
            res.failures.append(f"k={k} class {fp} splits into components {sizes}")
        # cross-check component structure against the quadratic-scan oracle:
        # every class at k=2, a deterministic sample at k=3
        sample = len(rep.classes) if k == 2 else 10
        size_cap = WHITE_CLASS_ORACLE_GUARD if k == 2 else 400
        for cls in rep.classes[:sample]:
            if cls.size > size_cap:
                oracle_skipped += 1
                continue
            members = sorted(
                seq
                for seq in _class_members(bases, m.size, cls.fingerprint, k)
            )
            labels = oracle_connectivity(members)
            oracle_checked += 1
            if len(set(labels)) != len(cls.component_sizes):
                res.failures.append(f"oracle component count disagrees on class {cls.fingerprint}")
    res.notes = {"oracle_classes": oracle_checked, "oracle_skipped": oracle_skipped}
    return _finish(res, t0)


def _class_members(bases, size, fingerprint, k):
    from itertools import product

    for seq in product(bases, repeat=k):
        if multiset_counts(size, seq) == fingerprint:
            yield seq


def suite_two_exchange(inst: Instance) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "two-exchange", "pass")
    m = inst.build_matroid()
    if m.rank < 2:
        res.status = "skip"
        res.skip_reason = "rank below two"
        return _finish(res, t0)
    bases = m.bases()
    if len(bases) ** 2 * m.rank**2 > 300_000:
        res.status = "skip"
        res.skip_reason = "pair scan beyond guard"
        return _finish(res, t0)
    for b1 in bases:
        subsets = list(combinations(ids_of(b1), 2))
        for b2 in bases:
            for pair in subsets:
                res.checked += 1
                try:
                    m.two_exchange_witness(b1, b2, mask_of(pair))
                except NoWitness:
                    res.failures.append(f"no 2-exchange for {b1:#x},{b2:#x},{pair}")
    return _finish(res, t0)


def suite_extended(inst: Instance, ks=(1, 2)) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "extended", "pass")
    if inst.kind != "frame":
        res.status = "skip"
        res.skip_reason = "extended sequences treated for frame flavor only"
        return _finish(res, t0)
    m = inst.build_matroid()
    g = m.graph
    ran = 0
    for k in ks:
        if m.size != k * m.rank + 1:
            continue
        for u in range(g.n):
            if g.degree(u) != 2 * k + 2:
                continue
            try:
                rep = extended_verify(m, u, k)
            except SizeExceeded:
                res.notes["guarded"] = res.notes.get("guarded", 0) + 1
                continue
            except PreconditionViolated as exc:
                res.failures.append(f"k={k} u={u}: {exc}")
                continue
            ran += 1
            res.checked += rep.state_count
            if not rep.connected and rep.state_count > 0:
                res.failures.append(
                    f"k={k} u={u}: {len(rep.component_sizes)} components {rep.component_sizes}"
                )
    if ran == 0:
        res.status = "skip"
        res.skip_reason = "no vertex meets the degree/size preconditions"
    res.notes = {"instances": ran}
    return _finish(res, t0)


# -- derived-graph suites -------------------------------------------------------------


def _eligible_vertices(g, min_incident=1, max_incident=6, max_hat_edges=14):
    for v in range(g.n):
        inc = len(g.incident_edges(v))
        if not (min_incident <= inc <= max_incident):
            continue
        off = sum(1 for a, b in g.edges if a != v and b != v)
        if off + inc * (inc - 1) // 2 > max_hat_edges:
            continue
        yield v


def suite_vdeletion(inst: Instance) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "vdeletion", "pass")
    if inst.kind != "frame":
        res.status = "skip"
        res.skip_reason = "derived-matroid theory is for the frame flavor"
        return _finish(res, t0)
    bg = inst.build_biased()
    if bg.balanced_loops:
        res.status = "skip"
        res.skip_reason = "balanced loops in input"
        return _finish(res, t0)
    m = inst.build_matroid()
    g = bg.graph
    ran = 0
    for v in _eligible_vertices(g):
        rep = check_unbalanced_preservation(bg, v)
        res.checked += rep.checked
        if not rep.ok:
            res.failures.append(f"v={v}: unbalanced preservation violated {rep.violations[:2]}")
        vd = v_delete(bg, v)
        ran += 1
        if vd.completion_balanced_loops:
            res.failures.append(f"v={v}: completion created balanced loops {vd.completion_balanced_loops}")
        # linearity of the pull-back on the stem-free cycle space (a stem
        # loop's pull-back is an odd subgraph by construction)
        stem_mask = mask_of(vd.stem_loops)
        for c_hat in vd.target.graph.cycle_space_basis():
            if c_hat & stem_mask:
                continue
            pb = vd.pull_back(c_hat)
            res.checked += 1
            if pb and any((g.degree(w, pb) % 2) for w in g.touched_vertices(pb)):
                res.failures.append(f"v={v}: pull-back of {c_hat:#x} is not a cycle-space member")
        # petal decompositions partition and meet pairwise at v only
        for c_hat in vd.target.graph.simple_cycles():
            if c_hat & vd.merged_mask == 0 or vd.pull_back(c_hat) == 0:
                continue
            if popcount(c_hat) == 1 and next(bits(c_hat)) in vd.stem_loops:
                continue
            pts = petals(vd, c_hat)
            res.checked += 1
            union = 0
            for p in pts:
                if not g.is_simple_cycle(p):
                    res.failures.append(f"v={v}: petal {p:#x} not a cycle")
                if union & p:
                    res.failures.append(f"v={v}: petals overlap on edges")
                union |= p
            if union != vd.pull_back(c_hat):
                res.failures.append(f"v={v}: petals do not partition the pull-back")
            for p1, p2 in combinations(pts, 2):
                shared = g.touched_vertices(p1) & g.touched_vertices(p2)
                if shared != {vd.v}:
                    res.failures.append(f"v={v}: petals share vertices {shared}")
        # pull-back existence and covering
        try:
            m_hat = hat_matroid(vd, m.kind)
            hat_bases = m_hat.bases()
        except SizeExceeded:
            continue
        if len(hat_bases) > 600:
            continue
        for b_hat in hat_bases:
            pulls = base_set_pullback(vd, m, b_hat)
            res.checked += 1
            if not pulls:
                res.failures.append(f"v={v}: empty pull-back family for {b_hat:#x}")
            for b in pulls:
                if popcount(b) != m.rank or not m.is_base(b):
                    res.failures.append(f"v={v}: pull-back member {b:#x} is not a base")
        for b in m.bases():
            res.checked += 1
            try:
                cc = cover_certificate(vd, m, b)
            except FramexError as exc:
                res.failures.append(f"v={v}: cover failed for {b:#x}: {exc}")
                continue
            if cc.preferred_pair is not None and not cc.honored:
                res.failures.append(f"v={v}: cover of {b:#x} ignored the merged-edge refinement")
    if ran == 0:
        res.status = "skip"
        res.skip_reason = "no vertex within the derived-graph guards"
    return _finish(res, t0)


def suite_fsets(inst: Instance) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "fsets", "pass")
    if inst.kind != "frame":
        res.status = "skip"
        res.skip_reason = "derived-matroid theory is for the frame flavor"
        return _finish(res, t0)
    bg = inst.build_biased()
    if bg.balanced_loops:
        res.status = "skip"
        res.skip_reason = "balanced loops in input"
        return _finish(res, t0)
    g = bg.graph
    ran = 0
    inconclusive = 0
    for v in _eligible_vertices(g, min_incident=3):
        vd = v_delete(bg, v)
        try:
            m_hat = hat_matroid(vd, "frame")
            hat_bases = m_hat.bases()
        except SizeExceeded:
            continue
        mpos = len(vd.v_edges)
        # nonempty replacement beyond the trace, |I| = 3
        for idx in combinations(range(mpos), 3):
            sel = select(vd, idx)
            if len(sel.edge_ids) < 3:
                continue
            for b_hat in hat_bases:
                if popcount(b_hat & sel.mask) != 1:
                    continue
                ran += 1
                res.checked += 1
                repl = trace_replacements(m_hat, sel, b_hat)
                trace = b_hat & sel.mask
                if repl & ~trace == 0:
                    res.failures.append(f"v={v} I={idx}: replacement set stuck at the trace")
        if mpos < 4:
            continue
        for idx in combinations(range(mpos), 4):
            sel = select(vd, idx)
            if len(sel.edge_ids) < 6:
                continue  # absent merged edges make the dichotomy inapplicable
            by_trace: dict[int, list[int]] = {}
            modification_budget = 400
            for b_hat in hat_bases:
                t = b_hat & sel.mask
                if popcount(t) == 1:
                    by_trace.setdefault(t, []).append(b_hat)
                    res.checked += 1
                    tc = classify_trace(m_hat, sel, b_hat)
                    if tc.label == "none":
                        res.failures.append(f"v={v} I={idx}: base {b_hat:#x} neither cyclic nor singular")
                    elif not classify_refined(m_hat, sel, b_hat):
                        res.failures.append(f"v={v} I={idx}: refined dichotomy fails for {b_hat:#x}")
                    if modification_budget > 0:
                        modification_budget -= 1
                        _check_modification_lemma(res, m_hat, sel, b_hat, v, idx)
            pair_work = 0
            for b1 in hat_bases:
                if popcount(b1 & sel.mask) != 1:
                    continue
                for b2 in hat_bases:
                    if b1 & b2 or popcount(b2 & sel.mask) != 1:
                        continue
                    pair_work += 1
                    if pair_work > FSET_PAIR_GUARD:
                        break
                    _check_pair(res, vd, m_hat, sel, b1, b2, idx, v)
                if pair_work > FSET_PAIR_GUARD:
                    inconclusive += 1
                    break
    if ran == 0:
        res.status = "skip"
        res.skip_reason = "no selection met the hypotheses"
    res.notes["inconclusive"] = inconclusive
    return _finish(res, t0)


def _check_pair(res, vd, m_hat, sel, b1, b2, idx, v):
    """Lemma-level checks for one disjoint base pair with singleton traces."""
    from .structure import amenable, star_triples

    f1 = trace_replacements(m_hat, sel, b1)
    f2 = trace_replacements(m_hat, sel, b2)
    i1, i2, i3, i4 = sel.indices
    crossed = [
        (sel.edge(i1, i3), sel.edge(i2, i4)),
        (sel.edge(i1, i4), sel.edge(i2, i3)),
    ]
    # amenability dichotomy: not amenable at both crossed pairings forces
    # matching replacement-set shapes
    if all(amenable(m_hat, sel, (b1, b2), e, f) is None for e, f in crossed):
        res.checked += 1
        stars = [s for s in star_triples(sel)]
        straight = (1 << sel.edge(i1, i2)) | (1 << sel.edge(i3, i4))
        quad1 = straight | (1 << sel.edge(i1, i3)) | (1 << sel.edge(i2, i4))
        quad2 = straight | (1 << sel.edge(i1, i4)) | (1 << sel.edge(i2, i3))
        singular_case = f1 == f2 and any(f1 == s for s in stars)
        cyclic_case = {f1, f2} == {quad1, quad2}
        if not (singular_case or cyclic_case):
            res.failures.append(
                f"v={v} I={idx}: non-amenable pair with replacement sets {f1:#x},{f2:#x}"
            )
    # switchability: exhausted non-switchable pairs obey the exchange and
    # circuit-shape theorems
    e12, e34 = sel.edge(i1, i2), sel.edge(i3, i4)
    if e12 is None or e34 is None:
        return
    if not ((f1 >> e12) & 1 and (f2 >> e34) & 1):
        return
    if not sel.non_incident(e12, e34):
        return
    if (b1 & sel.mask) != (1 << e12) or (b2 & sel.mask) != (1 << e34):
        return
    search = switchable(m_hat, sel, (b1, b2), e12, e34, budget=SWITCH_BUDGET)
    if search.status == "limit":
        res.notes["inconclusive"] = res.notes.get("inconclusive", 0) + 1
        return
    if search.found:
        replay_curved(m_hat, sel, (b1, b2), search.chain)
        res.checked += 1
        return
    # exchange invariance of the replacement sets (non-switchable pairs)
    stability = check_exchange_replacement_stability(m_hat, sel, (b1, b2))
    res.checked += 1 + stability.checked
    for e, f, nf1, nf2 in stability.failures:
        res.failures.append(
            f"v={v} I={idx}: exchange ({e},{f}) broke the replacement-set dichotomy"
        )
    # two-handcuff shape of the distinguished circuits
    for base, other_edge in ((b1, e34), (b2, e12)):
        circ = m_hat.fundamental_circuit(base, other_edge).mask
        if not two_handcuff_shape(m_hat, circ, e12, e34):
            res.failures.append(
                f"v={v} I={idx}: non-switchable circuit {circ:#x} lacks the two-handcuff shape"
            )


def _check_modification_lemma(res, m_hat, sel, b_hat, v, idx):
    """Both implications relating replacement sets before and after a swap."""
    if popcount(b_hat & sel.mask) != 1:
        return
    eij = b_hat & sel.mask
    f_before = trace_replacements(m_hat, sel, b_hat)
    for e in ids_of(b_hat):
        for e2 in range(m_hat.size):
            if (b_hat >> e2) & 1:
                continue
            nb = (b_hat ^ (1 << e)) | (1 << e2)
            if not m_hat.is_base(nb):
                continue
            f_after = trace_replacements(m_hat, sel, nb)
            if f_after == 0:
                continue
            gone = f_before & ~f_after
            if gone == 0:
                continue
            res.checked += 1
            if not m_hat.is_base((b_hat ^ eij) | (1 << e2)):
                res.failures.append(f"v={v} I={idx}: first modification implication fails")
            for lost in bits(gone & sel.mask):
                if not m_hat.is_base((b_hat ^ (1 << e)) | (1 << lost)):
                    res.failures.append(f"v={v} I={idx}: second modification implication fails")


def suite_reduction(inst: Instance) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "reduction", "pass")
    if inst.kind != "frame":
        res.status = "skip"
        res.skip_reason = "reduction pipeline is for the frame flavor"
        return _finish(res, t0)
    m = inst.build_matroid()
    try:
        bases = m.bases()
    except SizeExceeded:
        res.status = "skip"
        res.skip_reason = "base enumeration guard"
        return _finish(res, t0)
    if len(bases) < 2:
        res.status = "skip"
        res.skip_reason = "needs at least two bases"
        return _finish(res, t0)
    pairs = [(bases[0], bases[-1])]
    overlap_pair = max(
        (p for p in combinations(bases, 2)),
        key=lambda p: (popcount(p[0] & p[1]), -bases.index(p[0])),
        default=None,
    )
    if overlap_pair and overlap_pair not in pairs:
        pairs.append(overlap_pair)
    for idx, (ba, bb) in enumerate(pairs):
        s1, s2 = (ba, bb), (bb, ba)
        m_k, l1, l2, exp = build_expansion(m, s1, s2)
        if m_k.size > 14:
            continue
        v = min_degree_vertex(m_k.graph)
        r1 = v_reduce(m_k, v, l1)
        r2 = v_reduce(m_k, v, l2)
        res.checked += 2
        for r in (r1, r2):
            if not is_v_reduced(m_k.graph, v, r.sequence):
                res.failures.append(f"pair {idx}: reduction output not v-reduced")
            replay(m_k, r.certificate)
            if r.lemma_scan_failed:
                res.notes["lemma_scan_failed"] = res.notes.get("lemma_scan_failed", 0) + 1
        # at most one non-switchable partner per matching edge
        comp = explore_component(m_k, v, r1.sequence)
        if comp.limited:
            res.notes["component_limited"] = res.notes.get("component_limited", 0) + 1
            continue
        achievable = set(comp.by_matching)
        mt = matching_graph(m_k.graph, v, r1.sequence)
        for e_pair in mt.pairs:
            bad_partners = 0
            for f_pair in mt.pairs:
                if f_pair == e_pair:
                    continue
                from .reduction import _switch_targets

                if not any(t.key() in achievable for t in _switch_targets(mt, tuple(e_pair), tuple(f_pair))):
                    bad_partners += 1
            res.checked += 1
            if bad_partners > 1:
                res.failures.append(
                    f"pair {idx}: matching edge {sorted(e_pair)} has {bad_partners} non-switchable partners"
                )
        # symmetric differences of achievable matchings are paths/even cycles
        from .reduction import matching_difference_components

        mt2 = matching_graph(m_k.graph, v, r2.sequence)
        for vs, edge_count in matching_difference_components(mt, mt2):
            res.checked += 1
            if edge_count == len(vs):  # a cycle component must be even
                if edge_count % 2:
                    res.failures.append(f"pair {idx}: odd cycle in the matching difference")
            elif edge_count != len(vs) - 1:
                res.failures.append(f"pair {idx}: matching difference component not a path")
        ar = align_matchings(m_k, v, r1.sequence, r2.sequence)
        res.checked += 1
        if ar.status not in ("equal", "four-cycle"):
            res.failures.append(f"pair {idx}: alignment status {ar.status}")
        if ar.criteria_max_shape not in ("equal", "four-cycle", "four-path"):
            res.failures.append(f"pair {idx}: criteria-max shape {ar.criteria_max_shape}")
        replay(m_k, ar.cert1)
        replay(m_k, ar.cert2)
    if res.checked == 0:
        res.status = "skip"
        res.skip_reason = "expanded instances beyond guards"
    return _finish(res, t0)


def suite_certificates(inst: Instance, sample_paths: int = 2) -> SuiteResult:
    t0 = time.time()
    res = SuiteResult(inst.name, "certificates", "pass")
    m = inst.build_matroid()
    try:
        bases = m.bases()
    except SizeExceeded:
        res.status = "skip"
        res.skip_reason = "base enumeration guard"
        return _finish(res, t0)
    if len(bases) < 2:
        res.status = "skip"
        res.skip_reason = "needs at least two bases"
        return _finish(res, t0)
    from . import certificates as certio

    done = 0
    for ba, bb in combinations(bases, 2):
        if done >= sample_paths:
            break
        s1, s2 = (ba, bb), (bb, ba)
        out = exchange_path(m, s1, s2)
        if not out.found:
            res.failures.append(f"compatible pair not connected: {ba:#x},{bb:#x}")
            break
        cert = out.certificate
        parsed = certio.parse(certio.serialize(cert))
        replay(m, parsed)
        rels = binomial_certificate(parsed)
        res.checked += 1 + len(rels)
        if len(rels) != len(cert.moves):
            res.failures.append("relation count differs from path length")
        done += 1
    return _finish(res, t0)


SUITES = {
    "axioms": suite_axioms,
    "biased": suite_biased,
    "cycle-lemmas": suite_cycle_lemmas,
    "white": suite_white,
    "two-exchange": suite_two_exchange,
    "extended": suite_extended,
    "vdeletion": suite_vdeletion,
    "fsets": suite_fsets,
    "reduction": suite_reduction,
    "certificates": suite_certificates,
}


def run_suites(inst: Instance, names=None) -> list[SuiteResult]:
    out = []
    for name in names or SUITES:
        out.append(SUITES[name](inst))
    return out
