"""Classification layer over the derived matroid: replacement sets of a base's
trace in a merged-edge cluster, cyclic/singular classification, viability,
amenability, and the chained-retarget search behind switchability.

A selection picks |I| positions among the v-edges; its cluster is the derived
subgraph on the merged edges within those positions.  For a base meeting the
cluster in one edge, the replacement set collects every cluster edge that can
stand in for it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .bitset import bits, ids_of, mask_of, popcount
from .errors import (
    BudgetExceeded,
    NotAmenable,
    NotSwitchable,
    PreconditionViolated,
)
from .matroid import FrameMatroid
from .vdeletion import VertexDeletion

CURVED_BUDGET = 10**5


@dataclass(frozen=True)
class Selection:
    """|I| positions among the v-edges plus the induced merged-edge cluster."""

    indices: tuple[int, ...]
    edge_ids: tuple[int, ...]
    mask: int
    endpoints: dict
    pair_edge: dict

    @classmethod
    def make(cls, vd: VertexDeletion, indices: Iterable[int]) -> "Selection":
        idx = tuple(sorted(indices))
        ids = []
        endpoints = {}
        pair_edge = {}
        g_hat = vd.target.graph
        for a, b in combinations(idx, 2):
            eid = vd.merged_edge(a, b)
            if eid is None:
                continue
            ids.append(eid)
            endpoints[eid] = frozenset((a, b))
            pair_edge[(a, b)] = eid
        return cls(idx, tuple(sorted(ids)), mask_of(ids), endpoints, pair_edge)

    def edge(self, a: int, b: int):
        return self.pair_edge.get((a, b) if a < b else (b, a))

    def non_incident(self, e: int, f: int) -> bool:
        """Cluster edges are incident when their merged position pairs meet,
        i.e. exactly when their pull-backs share a source edge."""
        return not (self.endpoints[e] & self.endpoints[f])


def select(vd: VertexDeletion, indices: Iterable[int]) -> Selection:
    return Selection.make(vd, indices)


# -- replacement sets ---------------------------------------------------------


def trace_replacements(m_hat: FrameMatroid, sel: Selection, b_hat: int) -> int:
    """Cluster edges that can replace the base's whole cluster trace; nonempty
    exactly when the trace has one element."""
    stripped = b_hat & ~sel.mask
    out = 0
    for e in sel.edge_ids:
        if m_hat.is_base(stripped | (1 << e)):
            out |= 1 << e
    return out


@dataclass(frozen=True)
class TraceClass:
    cyclic: bool
    singular: bool

    @property
    def label(self) -> str:
        if self.cyclic and self.singular:
            return "cyclic"  # both properties hold, neither strictly
        if self.cyclic:
            return "strictly-cyclic"
        if self.singular:
            return "strictly-singular"
        return "none"


def four_cycle_quadruples(sel: Selection):
    a, b, c, d = sel.indices
    for quad in (
        ((a, b), (b, c), (c, d), (a, d)),
        ((a, b), (b, d), (c, d), (a, c)),
        ((a, c), (b, c), (b, d), (a, d)),
    ):
        ids = [sel.edge(x, y) for x, y in quad]
        if all(i is not None for i in ids):
            yield mask_of(ids)


def star_triples(sel: Selection):
    for center in sel.indices:
        ids = [sel.edge(center, other) for other in sel.indices if other != center]
        if all(i is not None for i in ids):
            yield mask_of(ids)


def classify_trace(m_hat: FrameMatroid, sel: Selection, b_hat: int) -> TraceClass:
    """Cyclic: a full 4-cycle of cluster edges fits the replacement set;
    singular: all edges at one position fit."""
    if len(sel.indices) != 4:
        raise PreconditionViolated("classification needs a 4-element selection")
    if popcount(b_hat & sel.mask) != 1:
        raise PreconditionViolated("base must meet the cluster in exactly one edge")
    repl = trace_replacements(m_hat, sel, b_hat)
    cyclic = any(q & repl == q for q in four_cycle_quadruples(sel))
    singular = any(s & repl == s for s in star_triples(sel))
    return TraceClass(cyclic, singular)


def classify_refined(m_hat: FrameMatroid, sel: Selection, b_hat: int) -> bool:
    """The stronger dichotomy: the trace edge itself sits inside a witnessing
    4-cycle quadruple or star triple within the replacement set."""
    trace = b_hat & sel.mask
    repl = trace_replacements(m_hat, sel, b_hat)
    for q in four_cycle_quadruples(sel):
        if q & repl == q and q & trace:
            return True
    for s in star_triples(sel):
        if s & repl == s and s & trace:
            return True
    return False


# -- viability, amenability ------------------------------------------------------


def cluster_trace(sel: Selection, b1: int, b2: int) -> int:
    return (b1 | b2) & sel.mask


def is_viable(m_hat: FrameMatroid, sel: Selection, b1: int, b2: int) -> bool:
    trace = cluster_trace(sel, b1, b2)
    if popcount(trace) != 2:
        raise PreconditionViolated("viability needs exactly two cluster edges in the pair")
    e, f = ids_of(trace)
    if (b1 & trace) == trace or (b2 & trace) == trace:
        return True
    return sel.non_incident(e, f)


def _retargets(m_hat: FrameMatroid, sel: Selection, b1: int, b2: int, e_t: int, f_t: int):
    """Base pairs agreeing with (b1, b2) off the cluster whose combined trace
    is exactly {e_t, f_t}; deterministic split order."""
    s1, s2 = b1 & ~sel.mask, b2 & ~sel.mask
    le, lf = 1 << e_t, 1 << f_t
    out = []
    for t1, t2 in ((le | lf, 0), (le, lf), (lf, le), (0, le | lf)):
        nb1, nb2 = s1 | t1, s2 | t2
        if m_hat.is_base(nb1) and m_hat.is_base(nb2):
            out.append((nb1, nb2))
    return out


def amenable(m_hat: FrameMatroid, sel: Selection, pair, e_t: int, f_t: int):
    """First retarget witness of the pair at the two cluster edges, or None."""
    if e_t == f_t:
        raise PreconditionViolated("amenability targets must be distinct")
    for cand in _retargets(m_hat, sel, pair[0], pair[1], e_t, f_t):
        return cand
    return None


# -- the chained-retarget relation -------------------------------------------------


@dataclass(frozen=True)
class CurvedStep:
    target: tuple[int, int]
    a_primed: tuple[int, int]
    exchange: tuple[int, int]
    b_primed: tuple[int, int]
    final: tuple[int, int]


@dataclass
class ReachResult:
    status: str  # "exhausted" | "limit"
    visited: dict  # pair -> CurvedStep chain parent info
    order: list

    @property
    def exhausted(self) -> bool:
        return self.status == "exhausted"


def _curved_successors(m_hat: FrameMatroid, sel: Selection, pair):
    """All single chained-retarget moves from a viable pair: retarget, one
    symmetric exchange preserving the new trace and viability, retarget again."""
    out = []
    seen = set()
    edge_list = sel.edge_ids
    for c1, c2 in combinations(edge_list, 2):
        for a_primed in _retargets(m_hat, sel, pair[0], pair[1], c1, c2):
            if not is_viable(m_hat, sel, *a_primed):
                continue
            target_trace = (1 << c1) | (1 << c2)
            for e, f in m_hat.exchange_pairs(a_primed[0], a_primed[1]):
                nb1 = (a_primed[0] ^ (1 << e)) | (1 << f)
                nb2 = (a_primed[1] ^ (1 << f)) | (1 << e)
                if cluster_trace(sel, nb1, nb2) != target_trace:
                    continue
                if not is_viable(m_hat, sel, nb1, nb2):
                    continue
                b_primed = (nb1, nb2)
                for d1, d2 in combinations(edge_list, 2):
                    for final in _retargets(m_hat, sel, nb1, nb2, d1, d2):
                        if final in seen:
                            continue
                        if not is_viable(m_hat, sel, *final):
                            continue
                        seen.add(final)
                        out.append(
                            (final, CurvedStep((c1, c2), a_primed, (e, f), b_primed, final))
                        )
    return out


def curved_reach(m_hat: FrameMatroid, sel: Selection, pair, budget: int = CURVED_BUDGET) -> ReachResult:
    """BFS closure of the chained-retarget relation from a viable pair."""
    pair = tuple(pair)
    if not is_viable(m_hat, sel, *pair):
        raise PreconditionViolated("chained retargeting starts from a viable pair")
    visited = {pair: None}
    order = [pair]
    queue = deque([pair])
    expanded = 0
    while queue:
        state = queue.popleft()
        expanded += 1
        if expanded > budget:
            return ReachResult("limit", visited, order)
        for nxt, step in _curved_successors(m_hat, sel, state):
            if nxt not in visited:
                visited[nxt] = (state, step)
                order.append(nxt)
                queue.append(nxt)
    return ReachResult("exhausted", visited, order)


@dataclass
class SwitchSearch:
    status: str  # "found" | "not-found" | "limit"
    witness_pair: tuple | None = None
    witness_target: tuple | None = None
    chain: tuple | None = None
    explored: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def _chain_to(reach: ReachResult, pair) -> tuple:
    steps = []
    cur = pair
    while reach.visited[cur] is not None:
        prev, step = reach.visited[cur]
        steps.append(step)
        cur = prev
    return tuple(reversed(steps))


def switchable(
    m_hat: FrameMatroid,
    sel: Selection,
    pair,
    e: int,
    f: int,
    budget: int = CURVED_BUDGET,
) -> SwitchSearch:
    """Search the chained-retarget closure for a pair amenable at some
    non-incident cluster targets other than {e, f}.

    A "not-found" verdict is only issued on an exhausted frontier; hitting the
    budget is reported as inconclusive."""
    pair = tuple(pair)
    if not (trace_replacements(m_hat, sel, pair[0]) >> e) & 1:
        raise PreconditionViolated("first edge must lie in the first base's replacement set")
    if not (trace_replacements(m_hat, sel, pair[1]) >> f) & 1:
        raise PreconditionViolated("second edge must lie in the second base's replacement set")
    if not sel.non_incident(e, f):
        raise PreconditionViolated("switchability targets must be non-incident")
    excluded = {e, f}
    targets = [
        (a, b)
        for a, b in combinations(sel.edge_ids, 2)
        if not ({a, b} & excluded) and sel.non_incident(a, b)
    ]
    visited = {pair: None}
    order = [pair]
    queue = deque([pair])
    expanded = 0
    reach = ReachResult("running", visited, order)
    while queue:
        state = queue.popleft()
        expanded += 1
        for a, b in targets:
            if amenable(m_hat, sel, state, a, b) is not None:
                reach.status = "partial"
                return SwitchSearch("found", state, (a, b), _chain_to(reach, state), expanded)
        if expanded > budget:
            return SwitchSearch("limit", explored=expanded)
        for nxt, step in _curved_successors(m_hat, sel, state):
            if nxt not in visited:
                visited[nxt] = (state, step)
                order.append(nxt)
                queue.append(nxt)
    return SwitchSearch("not-found", explored=expanded)


def replay_curved(m_hat: FrameMatroid, sel: Selection, start, chain: Sequence[CurvedStep]):
    """Validate a chained-retarget certificate step by step."""
    cur = tuple(start)
    if not is_viable(m_hat, sel, *cur):
        raise PreconditionViolated("start pair not viable")
    for step in chain:
        c1, c2 = step.target
        if step.a_primed not in _retargets(m_hat, sel, cur[0], cur[1], c1, c2):
            raise AssertionError("invalid retarget of the current pair")
        nb1, nb2 = step.b_primed
        e, f = step.exchange
        a1, a2 = step.a_primed
        if nb1 != (a1 ^ (1 << e)) | (1 << f) or nb2 != (a2 ^ (1 << f)) | (1 << e):
            raise AssertionError("invalid exchange step")
        if not (m_hat.is_base(nb1) and m_hat.is_base(nb2)):
            raise AssertionError("exchange step left the base set")
        d_trace = cluster_trace(sel, *step.final)
        d1, d2 = ids_of(d_trace)
        if step.final not in _retargets(m_hat, sel, nb1, nb2, d1, d2):
            raise AssertionError("invalid final retarget")
        for p in (step.a_primed, step.b_primed, step.final):
            if not is_viable(m_hat, sel, *p):
                raise AssertionError("intermediate pair not viable")
        cur = step.final
    return cur


# -- structure of non-switchable pairs ----------------------------------------------


@dataclass
class StabilityReport:
    """Outcome of checking that single exchanges either preserve the pair of
    replacement sets or empty both (the non-switchable invariant)."""

    checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def check_exchange_replacement_stability(
    m_hat: FrameMatroid, sel: Selection, pair
) -> StabilityReport:
    """For a (verified) non-switchable pair, every single symmetric exchange
    must keep {F1, F2} fixed as a set or annihilate both replacement sets."""
    b1, b2 = pair
    f1 = trace_replacements(m_hat, sel, b1)
    f2 = trace_replacements(m_hat, sel, b2)
    checked = 0
    failures = []
    for e, f in m_hat.exchange_pairs(b1, b2):
        nb1 = (b1 ^ (1 << e)) | (1 << f)
        nb2 = (b2 ^ (1 << f)) | (1 << e)
        nf1 = trace_replacements(m_hat, sel, nb1)
        nf2 = trace_replacements(m_hat, sel, nb2)
        checked += 1
        if {nf1, nf2} != {f1, f2} and not (nf1 == 0 and nf2 == 0):
            failures.append((e, f, nf1, nf2))
    return StabilityReport(checked, tuple(failures))


def two_handcuff_shape(m_hat: FrameMatroid, circuit_mask: int, marked_a: int, marked_b: int) -> bool:
    """Does the circuit induce two vertex-disjoint cycles joined by a
    non-trivial path, each cycle holding exactly one marked edge?"""
    g = m_hat.graph
    comps = g.components(circuit_mask)
    if len(comps) != 1:
        return False
    bridges = [
        e for e in bits(circuit_mask)
        if not g.is_loop(e) and len(g.components(circuit_mask ^ (1 << e))) > 1
    ]
    if not bridges:
        return False
    cycles_part = circuit_mask & ~mask_of(bridges)
    parts = g.components(cycles_part)
    if len(parts) != 2:
        return False
    for _, emask in parts:
        marked = sum(1 for e in (marked_a, marked_b) if (emask >> e) & 1)
        if marked != 1:
            return False
    return True


# -- split / fused sequences, perturbations, switches ----------------------------------


def split_or_fused(seq_hat: Sequence[int], e_a: int, e_b: int) -> str:
    pos_a = next((i for i, b in enumerate(seq_hat) if (b >> e_a) & 1), None)
    pos_b = next((i for i, b in enumerate(seq_hat) if (b >> e_b) & 1), None)
    if pos_a is None or pos_b is None:
        return "absent"
    return "split" if pos_a != pos_b else "fused"


def _designated_positions(sel: Selection, seq_hat: Sequence[int]) -> tuple[int, int]:
    touching = [i for i, b in enumerate(seq_hat) if b & sel.mask]
    if len(touching) != 2:
        raise PreconditionViolated(
            f"expected exactly two bases meeting the cluster, found {len(touching)}"
        )
    return touching[0], touching[1]


def perturb(m_hat: FrameMatroid, sel: Selection, seq_hat: Sequence[int], e_t: int, f_t: int):
    """Replace the two cluster-touching positions by a viable retarget of
    their pair at the requested cluster edges."""
    j1, j2 = _designated_positions(sel, seq_hat)
    pair = (seq_hat[j1], seq_hat[j2])
    if popcount(cluster_trace(sel, *pair)) != 2:
        raise PreconditionViolated("designated pair must carry two cluster edges")
    for cand in _retargets(m_hat, sel, pair[0], pair[1], e_t, f_t):
        if is_viable(m_hat, sel, *cand):
            out = list(seq_hat)
            out[j1], out[j2] = cand
            return tuple(out)
    raise NotAmenable(f"pair not amenable at cluster edges ({e_t}, {f_t})")


def crossed_traces(sel: Selection) -> list[int]:
    """The two crossed pairings of a 4-element selection, as trace masks."""
    a, b, c, d = sel.indices
    out = []
    for (x1, y1), (x2, y2) in (((a, c), (b, d)), ((a, d), (b, c))):
        e1, e2 = sel.edge(x1, y1), sel.edge(x2, y2)
        if e1 is not None and e2 is not None:
            out.append((1 << e1) | (1 << e2))
    return out


def e_switch(
    m_hat: FrameMatroid,
    sel: Selection,
    seq_hat: Sequence[int],
    budget: int = CURVED_BUDGET,
):
    """Move the designated pair through chained retargets until its cluster
    trace becomes one of the two crossed pairings of the selection."""
    if len(sel.indices) != 4:
        raise PreconditionViolated("switching needs a 4-element selection")
    j1, j2 = _designated_positions(sel, seq_hat)
    pair = (seq_hat[j1], seq_hat[j2])
    goals = crossed_traces(sel)
    if not goals:
        raise PreconditionViolated("selection admits no crossed pairings")
    visited = {tuple(pair): None}
    order = [tuple(pair)]
    queue = deque([tuple(pair)])
    reach = ReachResult("running", visited, order)
    expanded = 0
    while queue:
        state = queue.popleft()
        expanded += 1
        if cluster_trace(sel, *state) in goals:
            out = list(seq_hat)
            out[j1], out[j2] = state
            return tuple(out), _chain_to(reach, state)
        if expanded > budget:
            raise BudgetExceeded(f"switch search exceeded {budget} pair states")
        for nxt, step in _curved_successors(m_hat, sel, state):
            if nxt not in visited:
                visited[nxt] = (state, step)
                order.append(nxt)
                queue.append(nxt)
    raise NotSwitchable("no chained retarget reaches a crossed pairing")


def extended_pair_amenable(
    m_hat: FrameMatroid,
    sel: Selection,
    vd: VertexDeletion,
    b_hat: int,
    h_hat: int,
    u_hat: int,
    e: int,
    f: int,
) -> bool:
    """Amenability of a (base, leftover) pair: the leftover contributes the
    cluster edges at its anchor when it is a merged edge, nothing otherwise."""
    if h_hat in vd.merged_ids:
        h_repl = mask_of(
            eid for eid in sel.edge_ids if u_hat in m_hat.graph.edges[eid]
        )
    else:
        h_repl = 0
    b_repl = trace_replacements(m_hat, sel, b_hat)
    return bool(
        ((h_repl >> e) & 1 and (b_repl >> f) & 1)
        or ((h_repl >> f) & 1 and (b_repl >> e) & 1)
    )
