"""Base sequences and the symmetric-exchange graph.

Sequences are ordered tuples of base masks; compatibility is multiset union
equality counted per edge id.  BFS states are the tuples themselves with
deterministic expansion by (i, j, e, f) so that certificates replay exactly.
"""

from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .bitset import bits, ids_of
from .errors import (
    ContainsEBMove,
    LengthMismatch,
    NotCompatible,
    PreconditionViolated,
    SearchLimit,
    SizeExceeded,
)
from .matroid import FrameMatroid

DEFAULT_NODE_LIMIT = 10**6
WHITE_K_GUARD = 3
WHITE_STATE_GUARD = 2 * 10**6


# -- fingerprints -------------------------------------------------------------


def sequence_text(seq: Sequence[int], leftover: int | None = None) -> str:
    body = "|".join("-".join(map(str, ids_of(b))) for b in seq)
    if leftover is not None:
        body += f"!h{leftover}"
    return body


def sequence_fingerprint(seq: Sequence[int], leftover: int | None = None) -> str:
    return hashlib.sha256(sequence_text(seq, leftover).encode()).hexdigest()[:16]


def graph_fingerprint(m: FrameMatroid) -> str:
    g = m.graph
    payload = repr((g.n, g.edges, m.biased.balance.basis, m.kind))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# -- moves and certificates ----------------------------------------------------


@dataclass(frozen=True)
class Move:
    kind: str  # "BB" or "EB"
    i: int
    j: int = -1
    e: int = -1
    f: int = -1

    def line(self) -> str:
        if self.kind == "BB":
            return f"BB {self.i} {self.j} {self.e} {self.f}"
        return f"EB {self.i} {self.e}"


@dataclass
class ExchangeCertificate:
    graph_hash: str
    start: tuple[int, ...]
    moves: tuple[Move, ...]
    end_fingerprint: str
    leftover_start: int | None = None
    anchor: int | None = None

    @property
    def start_fingerprint(self) -> str:
        return sequence_fingerprint(self.start, self.leftover_start)


def apply_move(seq: tuple[int, ...], move: Move, leftover: int | None = None):
    """Apply one move, returning (sequence, leftover); raises on malformed moves."""
    bases = list(seq)
    if move.kind == "BB":
        bi, bj = bases[move.i], bases[move.j]
        if not (bi >> move.e) & 1 or not (bj >> move.f) & 1:
            raise ValueError(f"move {move.line()} does not match the sequence")
        bases[move.i] = (bi ^ (1 << move.e)) | (1 << move.f)
        bases[move.j] = (bj ^ (1 << move.f)) | (1 << move.e)
        return tuple(bases), leftover
    if leftover is None:
        raise ValueError("EB move outside an extended sequence")
    bi = bases[move.i]
    if not (bi >> move.e) & 1:
        raise ValueError(f"move {move.line()} does not match the sequence")
    bases[move.i] = (bi ^ (1 << move.e)) | (1 << leftover)
    return tuple(bases), move.e


# -- compatibility --------------------------------------------------------------


def multiset_counts(size: int, seq: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum((b >> e) & 1 for b in seq) for e in range(size))


def compatible(s1: Sequence[int], s2: Sequence[int], size: int) -> bool:
    if len(s1) != len(s2):
        raise LengthMismatch(f"sequence lengths differ: {len(s1)} vs {len(s2)}")
    return multiset_counts(size, s1) == multiset_counts(size, s2)


# -- neighbors -------------------------------------------------------------------


def neighbor_moves(m: FrameMatroid, seq: tuple[int, ...]):
    """(move, sequence) pairs for one symmetric exchange between positions
    i < j, deduplicated, in deterministic (i, j, e, f) order."""
    out = []
    seen = set()
    k = len(seq)
    for i in range(k):
        for j in range(i + 1, k):
            for e, f in m.exchange_pairs(seq[i], seq[j]):
                nxt = list(seq)
                nxt[i] = (seq[i] ^ (1 << e)) | (1 << f)
                nxt[j] = (seq[j] ^ (1 << f)) | (1 << e)
                t = tuple(nxt)
                if t not in seen and t != seq:
                    seen.add(t)
                    out.append((Move("BB", i, j, e, f), t))
    return out


def neighbors_symmetric(m: FrameMatroid, seq: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(t for _, t in neighbor_moves(m, tuple(seq)))


# -- BFS path search ---------------------------------------------------------------


@dataclass
class PathResult:
    status: str  # "found" | "not-connected" | "limit"
    certificate: ExchangeCertificate | None = None
    explored: int = 0
    frontier: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def _assemble(m, start, parents, state) -> ExchangeCertificate:
    moves: list[Move] = []
    cur = state
    while parents[cur][0] is not None:
        prev, move = parents[cur]
        moves.append(move)
        cur = prev
    moves.reverse()
    return ExchangeCertificate(graph_fingerprint(m), start, tuple(moves), sequence_fingerprint(state))


def exchange_path(
    m: FrameMatroid,
    s1: Sequence[int],
    s2: Sequence[int],
    modulo_permutation: bool = False,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> PathResult:
    s1, s2 = tuple(s1), tuple(s2)
    if not compatible(s1, s2, m.size):
        raise NotCompatible("sequences are not compatible")
    goal_sorted = tuple(sorted(s2))

    def is_goal(state):
        if state == s2:
            return True
        return modulo_permutation and tuple(sorted(state)) == goal_sorted

    parents: dict[tuple[int, ...], tuple] = {s1: (None, None)}
    queue = deque([s1])
    explored = 0
    while queue:
        state = queue.popleft()
        explored += 1
        if is_goal(state):
            return PathResult("found", _assemble(m, s1, parents, state), explored)
        if explored > node_limit:
            return PathResult("limit", None, explored, len(queue))
        for move, nxt in neighbor_moves(m, state):
            if nxt not in parents:
                parents[nxt] = (state, move)
                queue.append(nxt)
    return PathResult("not-connected", None, explored)


def replay(m: FrameMatroid, cert: ExchangeCertificate) -> tuple[tuple[int, ...], int | None]:
    """Re-run a certificate, validating every intermediate; returns the final
    state.  Raises on any invalid step or fingerprint mismatch."""
    from .errors import CertificateError

    if cert.graph_hash != graph_fingerprint(m):
        raise CertificateError("certificate was issued for a different instance")
    seq = cert.start
    leftover = cert.leftover_start
    for b in seq:
        if not m.is_base(b):
            raise CertificateError("start sequence contains a non-base")
    for move in cert.moves:
        if move.kind == "EB" and leftover is None:
            raise CertificateError("EB move in a plain base sequence")
        seq, leftover = apply_move(seq, move, leftover)
        for b in seq:
            if not m.is_base(b):
                raise CertificateError(f"move {move.line()} produced a non-base")
    if sequence_fingerprint(seq, leftover) != cert.end_fingerprint:
        raise CertificateError("replay did not reach the declared end state")
    return seq, leftover


# -- exhaustive connectivity verification -------------------------------------------


@dataclass
class ClassReport:
    fingerprint: tuple[int, ...]
    size: int
    component_sizes: tuple[int, ...]
    diameter: int

    @property
    def connected(self) -> bool:
        return len(self.component_sizes) == 1


@dataclass
class WhiteReport:
    k: int
    state_count: int
    class_count: int
    max_diameter: int
    counterexamples: tuple[tuple, ...]
    classes: list[ClassReport] = field(default_factory=list)
    modulo_permutation: bool = False

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def white_verify(
    m: FrameMatroid,
    k: int,
    node_limit: int = DEFAULT_NODE_LIMIT,
    modulo_permutation: bool = False,
) -> WhiteReport:
    """Partition all ordered k-tuples of bases into compatibility classes and
    check each class is a single component of the exchange graph.

    With modulo_permutation, components that contain permutations of a common
    multiset of bases count as connected to each other."""
    if k > WHITE_K_GUARD:
        raise SizeExceeded(f"white verification capped at k={WHITE_K_GUARD}")
    bases = m.bases()
    total = len(bases) ** k
    if total > node_limit:
        raise SearchLimit(f"{total} sequences exceed the node limit {node_limit}")
    classes: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for seq in product(bases, repeat=k):
        classes.setdefault(multiset_counts(m.size, seq), []).append(seq)
    counterexamples = []
    reports = []
    max_diameter = 0
    for fp in sorted(classes):
        members = classes[fp]
        member_set = set(members)
        remaining = set(member_set)
        comp_sizes = []
        comp_label = {}
        diameter = 0
        while remaining:
            root = min(remaining)
            seen = {root}
            queue = deque([(root, 0)])
            while queue:
                state, depth = queue.popleft()
                diameter = max(diameter, depth)
                for _, nxt in neighbor_moves(m, state):
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append((nxt, depth + 1))
            for s in seen:
                comp_label[s] = len(comp_sizes)
            comp_sizes.append(len(seen))
            remaining -= seen
        effective = len(comp_sizes)
        if modulo_permutation and effective > 1:
            effective = _quotient_components(members, comp_label, len(comp_sizes))
        if effective > 1:
            counterexamples.append((fp, tuple(sorted(comp_sizes))))
        max_diameter = max(max_diameter, diameter)
        reports.append(ClassReport(fp, len(members), tuple(sorted(comp_sizes)), diameter))
    return WhiteReport(
        k=k,
        state_count=total,
        class_count=len(classes),
        max_diameter=max_diameter,
        counterexamples=tuple(counterexamples),
        classes=reports,
        modulo_permutation=modulo_permutation,
    )


def _quotient_components(members, comp_label, count) -> int:
    """Number of components after merging those holding permutations of a
    common base multiset."""
    parent = list(range(count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    anchor: dict[tuple, int] = {}
    for s in members:
        canon = tuple(sorted(s))
        c = comp_label[s]
        if canon in anchor:
            ra, rc = find(anchor[canon]), find(c)
            if ra != rc:
                parent[ra] = rc
        else:
            anchor[canon] = c
    return len({find(i) for i in range(count)})


# -- extended base sequences ----------------------------------------------------------


@dataclass(frozen=True)
class ExtendedSequence:
    bases: tuple[int, ...]
    leftover: int
    anchor: int


def validate_extended(m: FrameMatroid, ext: ExtendedSequence) -> None:
    g = m.graph
    union = 0
    for b in ext.bases:
        if not m.is_base(b):
            raise PreconditionViolated("extended sequence contains a non-base")
        if union & b:
            raise PreconditionViolated("extended sequence bases are not disjoint")
        union |= b
    if union | (1 << ext.leftover) != m.ground_mask or (union >> ext.leftover) & 1:
        raise PreconditionViolated("bases plus leftover must partition the edge set")
    if ext.leftover not in g.incident_edges(ext.anchor):
        raise PreconditionViolated("leftover edge must touch the anchor vertex")


def neighbors_extended(m: FrameMatroid, u: int, ext: ExtendedSequence):
    """One BB exchange or one EB swap of the leftover with an anchored edge."""
    out = []
    seen = set()
    for move, bases in neighbor_moves(m, ext.bases):
        state = ExtendedSequence(bases, ext.leftover, u)
        if state not in seen:
            seen.add(state)
            out.append((move, state))
    anchored = set(m.graph.incident_edges(u))
    for i, b in enumerate(ext.bases):
        for e in bits(b):
            if e not in anchored:
                continue
            nb = (b ^ (1 << e)) | (1 << ext.leftover)
            if m.is_base(nb):
                bases = list(ext.bases)
                bases[i] = nb
                state = ExtendedSequence(tuple(bases), e, u)
                if state not in seen:
                    seen.add(state)
                    out.append((Move("EB", i, e=e), state))
    return out


def enumerate_extended(m: FrameMatroid, u: int, k: int) -> list[ExtendedSequence]:
    """All u-extended sequences: ordered disjoint k-tuples of bases covering
    everything except one leftover edge at u."""
    bases = m.bases()
    out = []
    ground = m.ground_mask
    for h in m.graph.incident_edges(u):
        target = ground ^ (1 << h)

        def extend(prefix, remaining):
            if len(prefix) == k:
                if remaining == 0:
                    out.append(ExtendedSequence(tuple(prefix), h, u))
                return
            for b in bases:
                if b & remaining == b:
                    extend(prefix + [b], remaining & ~b)

        extend([], target)
    return out


@dataclass
class ExtendedReport:
    k: int
    anchor: int
    state_count: int
    component_sizes: tuple[int, ...]
    max_depth: int
    incident_count: int
    degree: int
    loops_at_anchor: bool

    @property
    def connected(self) -> bool:
        return len(self.component_sizes) <= 1


def extended_verify(
    m: FrameMatroid,
    u: int,
    k: int,
    enforce_degree: bool = True,
    state_guard: int = WHITE_STATE_GUARD,
) -> ExtendedReport:
    g = m.graph
    if m.size != k * m.rank + 1:
        raise PreconditionViolated(f"need |E| = k*r + 1, have {m.size} != {k}*{m.rank}+1")
    deg = g.degree(u)
    if enforce_degree and deg != 2 * k + 2:
        raise PreconditionViolated(f"need degree(u) = 2k+2 = {2 * k + 2}, have {deg}")
    states = enumerate_extended(m, u, k)
    if len(states) > state_guard:
        raise SizeExceeded(f"{len(states)} extended sequences exceed the guard")
    state_set = set(states)
    remaining = set(state_set)
    comp_sizes = []
    max_depth = 0
    while remaining:
        root = min(remaining, key=lambda s: (s.bases, s.leftover))
        seen = {root}
        queue = deque([(root, 0)])
        while queue:
            state, depth = queue.popleft()
            max_depth = max(max_depth, depth)
            for _, nxt in neighbors_extended(m, u, state):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, depth + 1))
        if not seen <= state_set:
            raise AssertionError("extended BFS left the enumerated state space")
        comp_sizes.append(len(seen))
        remaining -= seen
    return ExtendedReport(
        k=k,
        anchor=u,
        state_count=len(states),
        component_sizes=tuple(sorted(comp_sizes)),
        max_depth=max_depth,
        incident_count=len(g.incident_edges(u)),
        degree=deg,
        loops_at_anchor=any(g.is_loop(e) for e in g.incident_edges(u)),
    )


def extended_path(
    m: FrameMatroid,
    u: int,
    s1: ExtendedSequence,
    s2: ExtendedSequence,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> PathResult:
    validate_extended(m, s1)
    validate_extended(m, s2)
    parents = {s1: (None, None)}
    queue = deque([s1])
    explored = 0
    while queue:
        state = queue.popleft()
        explored += 1
        if state == s2:
            moves: list[Move] = []
            cur = state
            while parents[cur][0] is not None:
                prev, move = parents[cur]
                moves.append(move)
                cur = prev
            moves.reverse()
            cert = ExchangeCertificate(
                graph_fingerprint(m),
                s1.bases,
                tuple(moves),
                sequence_fingerprint(state.bases, state.leftover),
                leftover_start=s1.leftover,
                anchor=u,
            )
            return PathResult("found", cert, explored)
        if explored > node_limit:
            return PathResult("limit", None, explored, len(queue))
        for move, nxt in neighbors_extended(m, u, state):
            if nxt not in parents:
                parents[nxt] = (state, move)
                queue.append(nxt)
    return PathResult("not-connected", None, explored)


# -- binomial certificates ---------------------------------------------------------


@dataclass(frozen=True)
class BinomialRelation:
    left: tuple[str, str]
    right: tuple[str, str]

    def text(self) -> str:
        return f"y[{self.left[0]}]*y[{self.left[1]}] - y[{self.right[0]}]*y[{self.right[1]}]"


def base_label(mask: int) -> str:
    return "-".join(map(str, ids_of(mask)))


def binomial_certificate(cert: ExchangeCertificate) -> list[BinomialRelation]:
    """Translate a BB-only certificate into quadratic relations and verify the
    telescoped product identity by multiset rewriting."""
    if any(mv.kind != "BB" for mv in cert.moves):
        raise ContainsEBMove("binomial translation requires a BB-only certificate")
    seq = cert.start
    monomial = Counter(base_label(b) for b in seq)
    relations = []
    for mv in cert.moves:
        before_i, before_j = seq[mv.i], seq[mv.j]
        seq, _ = apply_move(seq, mv)
        after_i, after_j = seq[mv.i], seq[mv.j]
        rel = BinomialRelation(
            (base_label(before_i), base_label(before_j)),
            (base_label(after_i), base_label(after_j)),
        )
        relations.append(rel)
        for lbl in rel.left:
            if monomial[lbl] <= 0:
                raise AssertionError("telescoping failed: factor missing")
            monomial[lbl] -= 1
        for lbl in rel.right:
            monomial[lbl] += 1
    final = Counter(base_label(b) for b in seq)
    if +monomial != +final:
        raise AssertionError("telescoped monomial does not match the end sequence")
    return relations
