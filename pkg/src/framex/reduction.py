"""Reduction toolkit: multiplicity expansion of compatible sequences, minimum
degree vertex selection, v-reduction with replayable certificates, matching
graphs of v-reduced sequences, and matching alignment.

Expansion gives each edge one parallel copy per base using it, so the lifted
sequences partition the expanded edge set; non-loop copies are glued by
balanced 2-cycles (parallel loops are matroid-parallel already).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .biased import BiasedGraph, linear_completion
from .bitset import bits, ids_of, mask_of, popcount
from .errors import (
    BudgetExceeded,
    NotCompatible,
    NotVReduced,
    PreconditionViolated,
)
from .exchange import (
    ExchangeCertificate,
    Move,
    graph_fingerprint,
    multiset_counts,
    neighbor_moves,
    sequence_fingerprint,
)
from .graph import MultiGraph
from .matroid import FrameMatroid

ALIGN_COMPONENT_GUARD = 200_000


@dataclass
class Expansion:
    """Expanded instance plus the bookkeeping to move sequences both ways."""

    source: FrameMatroid
    matroid: FrameMatroid
    kappa: int
    parallel_classes: dict  # original edge id -> tuple of expanded ids
    origin: dict  # expanded id -> original id

    @property
    def graph(self) -> MultiGraph:
        return self.matroid.graph

    def lift_sequence(self, seq: Sequence[int]) -> tuple[int, ...]:
        """The i-th base containing an edge takes the i-th parallel copy."""
        taken = {e: 0 for e in self.parallel_classes}
        out = []
        for b in seq:
            nb = 0
            for e in bits(b):
                nb |= 1 << self.parallel_classes[e][taken[e]]
                taken[e] += 1
            out.append(nb)
        return tuple(out)

    def project_sequence(self, seq: Sequence[int]) -> tuple[int, ...]:
        out = []
        for b in seq:
            nb = 0
            for e in bits(b):
                nb |= 1 << self.origin[e]
            out.append(nb)
        return tuple(out)


def _restrict_span(rows, kept_mask: int):
    """Basis of the subspace of span(rows) supported inside kept_mask."""
    work = list(rows)
    dropped = ~kept_mask
    out = []
    pivots = []
    for vec in work:
        for pv, prow in pivots:
            if vec & pv:
                vec ^= prow
        bad = vec & dropped
        if bad:
            pivots.append((bad & -bad, vec))
        elif vec:
            out.append(vec)
    return out


def build_expansion(m: FrameMatroid, s1: Sequence[int], s2: Sequence[int]):
    """Expanded matroid plus lifted copies of two compatible sequences."""
    counts1 = multiset_counts(m.size, s1)
    counts2 = multiset_counts(m.size, s2)
    if len(s1) != len(s2) or counts1 != counts2:
        raise NotCompatible("multiplicity expansion needs compatible sequences")
    g = m.graph
    new_edges = []
    parallel_classes = {}
    origin = {}
    for e in range(m.size):
        ids = []
        for _ in range(counts1[e]):
            origin[len(new_edges)] = e
            ids.append(len(new_edges))
            new_edges.append(g.edges[e])
        parallel_classes[e] = tuple(ids)
    kept_mask = mask_of(e for e in range(m.size) if counts1[e])
    graph_k = MultiGraph(g.n, new_edges)

    def to_new(mask: int) -> int:
        out = 0
        for e in bits(mask):
            out |= 1 << parallel_classes[e][0]
        return out

    gens = [to_new(row) for row in _restrict_span(m.biased.balance.basis, kept_mask)]
    for e, ids in parallel_classes.items():
        if g.is_loop(e):
            continue  # parallel loops are matroid-parallel without any gluing
        for a, b in zip(ids, ids[1:]):
            gens.append((1 << a) | (1 << b))
    bg_k = BiasedGraph(graph_k, linear_completion(graph_k, gens))
    m_k = FrameMatroid(bg_k, m.kind, backend=None)
    exp = Expansion(m, m_k, len(s1), parallel_classes, origin)
    return m_k, exp.lift_sequence(s1), exp.lift_sequence(s2), exp


def min_degree_vertex(g: MultiGraph) -> int:
    """Smallest-index vertex of minimum degree (loops count twice)."""
    degs = [g.degree(v) for v in range(g.n)]
    return degs.index(min(degs))


# -- v-reduction ----------------------------------------------------------------


def _v_counts(g: MultiGraph, v: int, seq) -> list[int]:
    at_v = mask_of(g.incident_edges(v))
    return [popcount(b & at_v) for b in seq]


def is_v_reduced(g: MultiGraph, v: int, seq) -> bool:
    return all(c <= 2 for c in _v_counts(g, v, seq))


@dataclass
class VReduceResult:
    sequence: tuple[int, ...]
    certificate: ExchangeCertificate
    lemma_scan_failed: bool  # a fallback BFS stepped in (surfaces engine bugs)


def v_reduce(m_k: FrameMatroid, v: int, seq: Sequence[int]) -> VReduceResult:
    """Exchange edges away from v until every base holds at most two of its
    edges.  Preconditions: the bases partition the edge set and the degree of
    v is at most twice the sequence length."""
    g = m_k.graph
    seq = tuple(seq)
    union = 0
    for b in seq:
        if union & b:
            raise PreconditionViolated("bases must be disjoint")
        union |= b
    if union != m_k.ground_mask:
        raise PreconditionViolated("bases must partition the edge set")
    if g.degree(v) > 2 * len(seq):
        raise PreconditionViolated("vertex degree exceeds twice the sequence length")
    at_v = mask_of(g.incident_edges(v))
    moves: list[Move] = []
    cur = list(seq)
    lemma_scan_failed = False
    while True:
        counts = [popcount(b & at_v) for b in cur]
        if all(c <= 2 for c in counts):
            break
        a = max(range(len(cur)), key=lambda i: (counts[i], -i))
        b_idx = next((i for i, c in enumerate(counts) if c == 1), None)
        move = None
        if b_idx is not None:
            move = _reduction_exchange(m_k, at_v, cur, a, b_idx)
        if move is None:
            lemma_scan_failed = True
            move = _reduction_fallback(m_k, at_v, cur)
            if move is None:
                raise PreconditionViolated("no exchange reduces the vertex load")
        moves.append(move)
        nxt, _ = _apply_bb(cur, move)
        cur = nxt
    cert = ExchangeCertificate(
        graph_fingerprint(m_k), seq, tuple(moves), sequence_fingerprint(tuple(cur))
    )
    return VReduceResult(tuple(cur), cert, lemma_scan_failed)


def _apply_bb(seq, move: Move):
    out = list(seq)
    out[move.i] = (out[move.i] ^ (1 << move.e)) | (1 << move.f)
    out[move.j] = (out[move.j] ^ (1 << move.f)) | (1 << move.e)
    return out, None


def _reduction_exchange(m_k: FrameMatroid, at_v: int, seq, a: int, b_idx: int):
    """One exchange sending a v-edge from the loaded base to the anchored one
    in return for a non-v edge; the reduction lemma guarantees one exists."""
    ba, bb = seq[a], seq[b_idx]
    for e in bits(ba & at_v):
        for f in bits(bb & ~at_v):
            nb_a = (ba ^ (1 << e)) | (1 << f)
            nb_b = (bb ^ (1 << f)) | (1 << e)
            if m_k.is_base(nb_a) and m_k.is_base(nb_b):
                if a < b_idx:
                    return Move("BB", a, b_idx, e, f)
                return Move("BB", b_idx, a, f, e)
    return None


def _reduction_fallback(m_k: FrameMatroid, at_v: int, seq):
    """Any single exchange strictly lowering the vertex-load potential."""

    def potential(s):
        return sum(max(0, popcount(b & at_v) - 2) for b in s)

    base_pot = potential(seq)
    for move, nxt in neighbor_moves(m_k, tuple(seq)):
        if potential(nxt) < base_pot:
            return move
    return None


# -- matching graphs ----------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    """Degree <= 1 graph on the positions of the v-edges."""

    size: int
    pairs: frozenset  # of 2-element frozensets of positions

    @property
    def isolated(self) -> frozenset:
        used = set()
        for p in self.pairs:
            used |= p
        return frozenset(set(range(self.size)) - used)

    def key(self):
        return (self.size, tuple(sorted(tuple(sorted(p)) for p in self.pairs)))


def matching_graph(g: MultiGraph, v: int, seq) -> Matching:
    v_edges = tuple(sorted(g.incident_edges(v)))
    pos = {e: i for i, e in enumerate(v_edges)}
    at_v = mask_of(v_edges)
    pairs = []
    for b in seq:
        trace = ids_of(b & at_v)
        if len(trace) > 2:
            raise NotVReduced(f"base holds {len(trace)} edges at vertex {v}")
        if len(trace) == 2:
            pairs.append(frozenset((pos[trace[0]], pos[trace[1]])))
    return Matching(len(v_edges), frozenset(pairs))


def matching_overlap(m1: Matching, m2: Matching) -> int:
    return len(m1.pairs & m2.pairs)


def matching_difference_components(m1: Matching, m2: Matching):
    """Components of the symmetric difference graph, as vertex tuples with
    edge counts; non-trivial ones are alternating paths or even cycles."""
    edges = m1.pairs ^ m2.pairs
    adj: dict[int, set] = {}
    for p in edges:
        a, b = tuple(p)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        group = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y not in group:
                    group.add(y)
                    frontier.append(y)
        seen |= group
        edge_count = sum(1 for p in edges if p <= group)
        comps.append((tuple(sorted(group)), edge_count))
    return comps


def matching_c2(m1: Matching, m2: Matching) -> int:
    return sum(len(vs) ** 2 for vs, _ in matching_difference_components(m1, m2))


def difference_shape(m1: Matching, m2: Matching) -> str:
    comps = matching_difference_components(m1, m2)
    if not comps:
        return "equal"
    if len(comps) == 1:
        vs, ec = comps[0]
        if len(vs) == 4 and ec == 4:
            return "four-cycle"
        if len(vs) == 5 and ec == 4:
            return "four-path"
    return "other"


# -- component exploration shared by the alignment and switch searches ---------------


@dataclass
class ComponentIndex:
    """BFS closure of a sequence under exchanges, with certificates, grouped
    by matching graph."""

    start: tuple[int, ...]
    parents: dict
    by_matching: dict  # matching key -> first sequence reaching it
    reduced_members: list
    limited: bool

    def certificate_to(self, m_k: FrameMatroid, target) -> ExchangeCertificate:
        return self.certificate_between(m_k, self.start, target)

    def certificate_between(self, m_k: FrameMatroid, source, target) -> ExchangeCertificate:
        """Certificate from any explored sequence to any other, routed through
        the BFS root (exchanges are involutive, so uphill moves invert)."""
        up = []
        cur = source
        while self.parents[cur][0] is not None:
            prev, move = self.parents[cur]
            up.append(Move("BB", move.i, move.j, move.f, move.e))
            cur = prev
        down = []
        cur = target
        while self.parents[cur][0] is not None:
            prev, move = self.parents[cur]
            down.append(move)
            cur = prev
        down.reverse()
        return ExchangeCertificate(
            graph_fingerprint(m_k),
            source,
            tuple(up + down),
            sequence_fingerprint(target),
        )


def explore_component(
    m_k: FrameMatroid, v: int, seq, guard: int = ALIGN_COMPONENT_GUARD
) -> ComponentIndex:
    g = m_k.graph
    seq = tuple(seq)
    parents = {seq: (None, None)}
    queue = deque([seq])
    by_matching = {}
    reduced = []
    limited = False
    explored = 0
    while queue:
        state = queue.popleft()
        explored += 1
        if explored > guard:
            limited = True
            break
        if is_v_reduced(g, v, state):
            reduced.append(state)
            key = matching_graph(g, v, state).key()
            by_matching.setdefault(key, state)
        for move, nxt in neighbor_moves(m_k, state):
            if nxt not in parents:
                parents[nxt] = (state, move)
                queue.append(nxt)
    return ComponentIndex(seq, parents, by_matching, reduced, limited)


# -- pair switches and singleton moves -------------------------------------------------


@dataclass
class SwitchOutcome:
    status: str  # "found" | "not-found" | "limit"
    sequence: tuple | None = None
    certificate: ExchangeCertificate | None = None
    target: Matching | None = None


def _switch_targets(mt: Matching, e_pair, f_pair):
    (a, b), (c, d) = tuple(sorted(e_pair)), tuple(sorted(f_pair))
    kept = mt.pairs - {frozenset(e_pair), frozenset(f_pair)}
    for new in (
        (frozenset((a, c)), frozenset((b, d))),
        (frozenset((a, d)), frozenset((b, c))),
    ):
        yield Matching(mt.size, kept | set(new))


def pair_switch_search(
    m_k: FrameMatroid,
    v: int,
    seq,
    e_pair,
    f_pair,
    budget: int = ALIGN_COMPONENT_GUARD,
    restrict_reduced: bool = True,
) -> SwitchOutcome:
    """Hunt a reachable v-reduced sequence whose matching graph replaces the
    two given matching edges by one of the crossed pairings."""
    g = m_k.graph
    seq = tuple(seq)
    mt = matching_graph(g, v, seq)
    if frozenset(e_pair) not in mt.pairs or frozenset(f_pair) not in mt.pairs:
        raise PreconditionViolated("both pairs must be matching edges of the sequence")
    goals = {t.key(): t for t in _switch_targets(mt, e_pair, f_pair)}
    parents = {seq: (None, None)}
    queue = deque([seq])
    explored = 0
    while queue:
        state = queue.popleft()
        explored += 1
        if explored > budget:
            return SwitchOutcome("limit")
        if is_v_reduced(g, v, state):
            key = matching_graph(g, v, state).key()
            if key in goals:
                idx = ComponentIndex(seq, parents, {}, [], False)
                return SwitchOutcome(
                    "found", state, idx.certificate_to(m_k, state), goals[key]
                )
        for move, nxt in neighbor_moves(m_k, state):
            if restrict_reduced and not is_v_reduced(g, v, nxt):
                continue
            if nxt not in parents:
                parents[nxt] = (state, move)
                queue.append(nxt)
    return SwitchOutcome("not-found")


# -- alignment ---------------------------------------------------------------------


@dataclass
class AlignResult:
    status: str  # "equal" | "four-cycle"
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    cert1: ExchangeCertificate
    cert2: ExchangeCertificate
    epsilon: int
    c2: int
    criteria_max_shape: str  # shape at the (overlap, c2) maximum: equal/four-cycle/four-path


def align_matchings(m_k: FrameMatroid, v: int, s1, s2, guard: int = ALIGN_COMPONENT_GUARD) -> AlignResult:
    """Pick reachable v-reduced replacements whose matching graphs agree, or
    failing that differ in a single 4-cycle.

    The (overlap, c2)-maximal pair can also be a 4-path; its shape is reported
    separately, and the returned pair is then a maximal-overlap 4-cycle pair,
    which the alignment theorem guarantees to exist."""
    g = m_k.graph
    s1, s2 = tuple(s1), tuple(s2)
    if not (is_v_reduced(g, v, s1) and is_v_reduced(g, v, s2)):
        raise PreconditionViolated("alignment expects v-reduced inputs")
    idx1 = explore_component(m_k, v, s1, guard)
    same_component = s2 in idx1.parents
    idx2 = idx1 if same_component else explore_component(m_k, v, s2, guard)
    if idx1.limited or idx2.limited:
        raise BudgetExceeded("component exploration hit the alignment guard")
    scored = []
    for key1, t1 in sorted(idx1.by_matching.items()):
        mt1 = matching_graph(g, v, t1)
        for key2, t2 in sorted(idx2.by_matching.items()):
            mt2 = matching_graph(g, v, t2)
            eps = matching_overlap(mt1, mt2)
            scored.append((eps, matching_c2(mt1, mt2), t1, t2, difference_shape(mt1, mt2)))
    criteria_max = max(scored, key=lambda r: (r[0], r[1]))
    eps_max = criteria_max[0]
    pick = None
    for shape_wanted in ("equal", "four-cycle"):
        at_max = [r for r in scored if r[0] == eps_max and r[4] == shape_wanted]
        if at_max:
            pick = min(at_max, key=lambda r: (r[2], r[3]))
            break
    if pick is None:
        raise AssertionError(
            "no aligned pair with empty or 4-cycle difference exists; "
            "contradicts the matching alignment theorem"
        )
    eps, c2, t1, t2, shape = pick
    return AlignResult(
        "equal" if shape == "equal" else "four-cycle",
        t1,
        t2,
        idx1.certificate_between(m_k, s1, t1),
        idx2.certificate_between(m_k, s2, t2),
        eps,
        c2,
        criteria_max[4],
    )
