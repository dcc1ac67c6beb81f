"""Vertex deletion for biased graphs: the derived graph on V minus v whose
new edges merge pairs of v-edges, the pull-back map, petal decompositions,
and base-set pull-backs with existence certificates.

The derived balance class admits a cycle when it was already balanced off v,
when its pull-back cancels away, or when every petal of the pull-back is
balanced; would-be balanced loops are deleted from the generating family and
reported rather than silently kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .biased import BiasedGraph, linear_completion
from .bitset import bits, ids_of, mask_of, popcount
from .errors import (
    BalancedLoopPresent,
    EmptyPullback,
    FramexError,
    NoInducedChoice,
    NotABase,
    SizeExceeded,
    StemLoop,
)
from .graph import MultiGraph
from .matroid import FrameMatroid

V_EDGE_GUARD = 10
PULLBACK_GUARD = 4096


@dataclass
class VertexDeletion:
    source: BiasedGraph
    v: int
    target: BiasedGraph
    v_edges: tuple[int, ...]  # original ids of edges at v, ascending
    old_to_new: dict  # original edge id -> derived edge id (off-v edges)
    new_to_old: dict
    pair_of: dict  # derived merged-edge id -> (a, b) positions into v_edges
    merged_ids: tuple[int, ...]  # derived ids of merged edges, ascending
    stem_loops: frozenset  # derived ids
    dropped_pairs: tuple  # position pairs whose merged loop would be balanced
    completion_balanced_loops: tuple[int, ...]  # should always be empty

    @property
    def merged_mask(self) -> int:
        return mask_of(self.merged_ids)

    def merged_edge(self, a: int, b: int):
        """Derived id merging v-edge positions a and b (None if absent)."""
        key = (a, b) if a < b else (b, a)
        return self._pair_index.get(key)

    def __post_init__(self):
        self._pair_index = {pair: eid for eid, pair in self.pair_of.items()}
        self._hat_cache: dict[tuple, FrameMatroid] = {}

    def pull_back_edge(self, e_hat: int) -> int:
        """Original-edge mask of one derived edge."""
        if e_hat in self.pair_of:
            a, b = self.pair_of[e_hat]
            return (1 << self.v_edges[a]) | (1 << self.v_edges[b])
        return 1 << self.new_to_old[e_hat]

    def pull_back(self, mask_hat: int) -> int:
        """GF(2)-linear pull-back: symmetric difference of edge pull-backs."""
        out = 0
        for e in bits(mask_hat):
            out ^= self.pull_back_edge(e)
        return out

    def incidental(self, e_hat: int, f_hat: int) -> bool:
        return bool(self.pull_back_edge(e_hat) & self.pull_back_edge(f_hat))

    def set_incidental(self, mask_hat: int) -> bool:
        """Does the derived edge set contain two edges with meeting pull-backs?"""
        seen = 0
        for e in bits(mask_hat & self.merged_mask):
            pb = self.pull_back_edge(e)
            if seen & pb:
                return True
            seen |= pb
        return False


def v_delete(bg: BiasedGraph, v: int, v_edge_guard: int = V_EDGE_GUARD) -> VertexDeletion:
    g = bg.graph
    if bg.balanced_loops:
        raise BalancedLoopPresent(f"input has balanced loops {bg.balanced_loops}")
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    v_edges = tuple(sorted(g.incident_edges(v)))
    if len(v_edges) > v_edge_guard:
        raise SizeExceeded(f"vertex degree guard: {len(v_edges)} incident edges > {v_edge_guard}")

    def new_vertex(w: int) -> int:
        return w if w < v else w - 1

    new_edges = []
    old_to_new, new_to_old = {}, {}
    for e, (a, b) in enumerate(g.edges):
        if a == v or b == v:
            continue
        old_to_new[e] = len(new_edges)
        new_to_old[len(new_edges)] = e
        new_edges.append((new_vertex(a), new_vertex(b)))

    def other_end(e: int) -> int:
        a, b = g.edges[e]
        return b if a == v else a

    pair_of, merged_ids, stems, dropped = {}, [], [], []
    for a, b in combinations(range(len(v_edges)), 2):
        ea, eb = v_edges[a], v_edges[b]
        loop_a, loop_b = g.is_loop(ea), g.is_loop(eb)
        if loop_a and loop_b:
            continue
        if not loop_a and not loop_b and other_end(ea) == other_end(eb):
            # a merged loop from a parallel pair would be a balanced loop
            # whenever the pair's 2-cycle is balanced; it is removed from the
            # derived graph (keeping it breaks the pull-back lemmas)
            if bg.balance.contains((1 << ea) | (1 << eb)):
                dropped.append((a, b))
                continue
        eid = len(new_edges)
        if loop_a or loop_b:
            anchor = other_end(eb if loop_a else ea)
            new_edges.append((new_vertex(anchor), new_vertex(anchor)))
            stems.append(eid)
        else:
            new_edges.append((new_vertex(other_end(ea)), new_vertex(other_end(eb))))
        pair_of[eid] = (a, b)
        merged_ids.append(eid)

    target_graph = MultiGraph(g.n - 1, new_edges)
    shell = VertexDeletion(
        source=bg,
        v=v,
        target=None,  # filled below once the class is known
        v_edges=v_edges,
        old_to_new=old_to_new,
        new_to_old=new_to_old,
        pair_of=pair_of,
        merged_ids=tuple(merged_ids),
        stem_loops=frozenset(stems),
        dropped_pairs=tuple(dropped),
        completion_balanced_loops=(),
    )

    admitted = []
    merged_mask = mask_of(merged_ids)
    for c_hat in target_graph.simple_cycles():
        if popcount(c_hat) == 1 and next(bits(c_hat)) in shell.stem_loops:
            continue
        pb = shell.pull_back(c_hat)
        if c_hat & merged_mask == 0:
            ok = bg.balance.contains(pb)
        elif pb == 0:
            ok = True
        else:
            pts = _petal_split(g, v, pb)
            ok = pts is not None and all(bg.balance.contains(p) for p in pts)
        if ok:
            admitted.append(c_hat)

    balance = linear_completion(target_graph, admitted)
    completion_loops = tuple(
        e for e in range(target_graph.m)
        if target_graph.is_loop(e) and balance.contains(1 << e)
    )
    shell.target = BiasedGraph(target_graph, balance)
    shell.completion_balanced_loops = completion_loops
    return shell


def _petal_split(g: MultiGraph, v: int, mask: int):
    """Split an even subgraph into cycles pairwise meeting only at v;
    None when no such decomposition exists."""
    petals = []
    remaining = mask
    for e in bits(mask):
        if g.is_loop(e) and g.edges[e][0] == v:
            petals.append(1 << e)
            remaining ^= 1 << e
    incid = {}
    for e in bits(remaining):
        a, b = g.edges[e]
        incid.setdefault(a, []).append(e)
        incid.setdefault(b, []).append(e)
    if any(w != v and len(es) != 2 for w, es in incid.items()):
        return None
    used = 0
    for start in bits(remaining):
        if (used >> start) & 1 or v not in g.edges[start]:
            continue
        petal = 1 << start
        used |= 1 << start
        a, b = g.edges[start]
        cur = b if a == v else a
        while cur != v:
            nxts = [e for e in incid[cur] if not (used >> e) & 1]
            if len(nxts) != 1:
                return None
            e = nxts[0]
            petal |= 1 << e
            used |= 1 << e
            x, y = g.edges[e]
            cur = y if x == cur else x
        petals.append(petal)
    if used != remaining:
        return None  # leftover edges not reachable through v
    return petals


def petals(vd: VertexDeletion, c_hat: int) -> list[int]:
    """Petal decomposition of a derived cycle's pull-back."""
    g_hat = vd.target.graph
    if not g_hat.is_simple_cycle(c_hat):
        raise FramexError(f"{c_hat:#x} is not a simple cycle of the derived graph")
    if popcount(c_hat) == 1 and next(bits(c_hat)) in vd.stem_loops:
        raise StemLoop("stem loops have no petal decomposition")
    if c_hat & vd.merged_mask == 0:
        raise FramexError("cycle does not meet the merged edges")
    pb = vd.pull_back(c_hat)
    if pb == 0:
        raise EmptyPullback("pull-back cancels to the empty set")
    pts = _petal_split(vd.source.graph, vd.v, pb)
    if pts is None:
        raise FramexError("pull-back does not decompose at the deleted vertex")
    return sorted(pts)


@dataclass
class PreservationReport:
    vertex: int
    checked: int
    violations: tuple[tuple[int, int], ...]  # (derived cycle, pulled-back cycle)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_unbalanced_preservation(bg: BiasedGraph, v: int) -> PreservationReport:
    """Derived cycles whose pull-back is an unbalanced cycle of the source
    must be unbalanced in the derived graph."""
    vd = v_delete(bg, v)
    g = bg.graph
    checked = 0
    violations = []
    for c_hat in vd.target.graph.simple_cycles():
        pb = vd.pull_back(c_hat)
        if pb == 0 or not g.is_simple_cycle(pb):
            continue
        if bg.balance.contains(pb):
            continue
        checked += 1
        if vd.target.balance.contains(c_hat):
            violations.append((c_hat, pb))
    return PreservationReport(v, checked, tuple(violations))


# -- base-set pull-backs -------------------------------------------------------


def hat_matroid(vd: VertexDeletion, kind: str = "frame", backend: str | None = None) -> FrameMatroid:
    key = (kind, backend)
    if key not in vd._hat_cache:
        vd._hat_cache[key] = FrameMatroid(vd.target, kind, backend)
    return vd._hat_cache[key]


def _as_source_mask(vd: VertexDeletion, hat_mask_off_merged: int) -> int:
    out = 0
    for e in bits(hat_mask_off_merged):
        out |= 1 << vd.new_to_old[e]
    return out


def _as_hat_mask(vd: VertexDeletion, source_mask_off_v: int) -> int:
    out = 0
    for e in bits(source_mask_off_v):
        out |= 1 << vd.old_to_new[e]
    return out


def base_set_pullback(vd: VertexDeletion, m: FrameMatroid, b_hat: int) -> list[int]:
    """All bases of the source matroid associated with a derived base: anchor
    an extra v-edge when the base avoids merged edges, otherwise re-expand the
    merged edges into subsets of their pulled-back v-edges."""
    m_hat = hat_matroid(vd, m.kind, backend=m.backend)
    if not m_hat.is_base(b_hat):
        raise NotABase(f"{b_hat:#x} is not a base of the derived matroid")
    merged_part = b_hat & vd.merged_mask
    plain_part = _as_source_mask(vd, b_hat & ~vd.merged_mask)
    out = []
    if merged_part == 0:
        for e in vd.v_edges:
            cand = plain_part | (1 << e)
            if m.is_base(cand):
                out.append(cand)
        return sorted(out)
    pool = 0
    for e in bits(merged_part):
        pool |= vd.pull_back_edge(e)
    pool_ids = ids_of(pool)
    need = m.rank - popcount(plain_part)
    if need < 0:
        return []
    if len(pool_ids) > 16:
        raise SizeExceeded("pull-back pool too large to materialize")
    for combo in combinations(pool_ids, need):
        cand = plain_part | mask_of(combo)
        if m.is_base(cand):
            out.append(cand)
    return sorted(out)


@dataclass
class CoverCertificate:
    base: int
    hat_base: int
    preferred_pair: tuple[int, int] | None  # positions whose merged edge was required
    honored: bool


def cover_certificate(vd: VertexDeletion, m: FrameMatroid, b: int) -> CoverCertificate:
    """A derived base whose pull-back family contains b; when b has a cycle
    through the deleted vertex via two v-edges, prefer a derived base holding
    their merged edge."""
    if not m.is_base(b):
        raise NotABase(f"{b:#x} is not a base")
    g = m.graph
    v = vd.v
    pos = {e: i for i, e in enumerate(vd.v_edges)}
    preferred = None
    # a base's unique cycle through v picks out the preferred merged pair
    core = _unique_cycle_through(g, b, v)
    if core is not None:
        touch = sorted(pos[e] for e in bits(core) if e in pos)
        if len(touch) == 2:
            preferred = (touch[0], touch[1])
        elif len(touch) == 1 and g.is_loop(vd.v_edges[touch[0]]):
            preferred = None  # a loop at v pulls back to a stem pair, no refinement
    m_hat = hat_matroid(vd, m.kind, backend=m.backend)
    plain = _as_hat_mask(vd, b & ~mask_of(vd.v_edges))
    need = m_hat.rank - popcount(plain)
    candidates = []
    if need == 0:
        candidates.append(0)
    elif need > 0:
        pref_id = vd.merged_edge(*preferred) if preferred else None
        ordered = sorted(vd.merged_ids, key=lambda e: (e != pref_id, e))
        candidates.extend(mask_of(c) for c in combinations(ordered, need))
    for extra in candidates:
        b_hat = plain | extra
        if not m_hat.is_base(b_hat):
            continue
        if b in base_set_pullback(vd, m, b_hat):
            honored = preferred is None or (
                vd.merged_edge(*preferred) is not None and bool(extra >> vd.merged_edge(*preferred) & 1)
            )
            return CoverCertificate(b, b_hat, preferred, honored)
    raise FramexError(f"no covering derived base for {b:#x}; contradicts the cover lemma")


def _unique_cycle_through(g: MultiGraph, b: int, v: int):
    """Edge mask of the unique cycle of G[b] passing through v, if any."""
    for vs, emask in g.components(b):
        if v not in vs:
            continue
        if popcount(emask) < len(vs):
            return None  # tree component
        core = emask
        changed = True
        while changed:
            changed = False
            for e in bits(core):
                a, bb = g.edges[e]
                if a != bb and (g.degree(a, core) == 1 or g.degree(bb, core) == 1):
                    core ^= 1 << e
                    changed = True
        if core and v in g.touched_vertices(core):
            return core
        return None
    return None


def sequence_pullback(vd: VertexDeletion, m: FrameMatroid, seq_hat) -> list[tuple[int, ...]]:
    """All tuples of pairwise disjoint pull-backs of a disjoint derived
    sequence; possibly empty for incidental sequences."""
    per_position = [base_set_pullback(vd, m, b) for b in seq_hat]
    out: list[tuple[int, ...]] = []

    def extend(prefix, used):
        if len(prefix) == len(per_position):
            out.append(tuple(prefix))
            return
        for cand in per_position[len(prefix)]:
            if cand & used == 0:
                extend(prefix + [cand], used | cand)

    total = 1
    for options in per_position:
        total *= max(1, len(options))
        if total > PULLBACK_GUARD:
            raise SizeExceeded("sequence pull-back expansion too large")
    extend([], 0)
    return out


def sequence_incidental(vd: VertexDeletion, seq_hat) -> bool:
    for i, bi in enumerate(seq_hat):
        for bj in seq_hat[i + 1 :]:
            pbi = 0
            for e in bits(bi & vd.merged_mask):
                pbi |= vd.pull_back_edge(e)
            for e in bits(bj & vd.merged_mask):
                if pbi & vd.pull_back_edge(e):
                    return True
    return False


def induced_pullback(vd: VertexDeletion, m: FrameMatroid, seq_hat, seq_hat2, s):
    """The pull-back of the second derived sequence that keeps position i
    unchanged whenever the derived bases agree there and touch merged edges."""
    options = []
    for i, b_hat2 in enumerate(seq_hat2):
        if b_hat2 == seq_hat[i] and b_hat2 & vd.merged_mask:
            options.append([s[i]])
        else:
            options.append(base_set_pullback(vd, m, b_hat2))

    result: list[tuple[int, ...]] = []

    def extend(prefix, used):
        if result:
            return
        if len(prefix) == len(options):
            result.append(tuple(prefix))
            return
        for cand in options[len(prefix)]:
            if cand & used == 0:
                extend(prefix + [cand], used | cand)

    extend([], 0)
    if not result:
        raise NoInducedChoice("no induced pull-back exists for the sequence pair")
    return result[0]
