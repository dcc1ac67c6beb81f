"""Frame and lift matroids over a biased graph.

Independence is decided by component cyclomatic counting plus a balance test
of the unique cycle (polynomial); circuit lists exist only for desk-scale
cross-checks.  All witness searches scan in ascending id order so that
certificates are reproducible.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Literal

from .biased import BiasedGraph
from .bitset import bits, ids_of, mask_of, popcount
from .errors import (
    ElementInBase,
    ElementNotInBase,
    NotABase,
    NoWitness,
    SizeExceeded,
)
from .kernel import make_kernel

CIRCUIT_GUARD = 12
BASES_GUARD = 16

Kind = Literal["frame", "lift"]

CIRCUIT_SHAPES = (
    "balanced-cycle",
    "tight-handcuff",
    "loose-handcuff",
    "unbalanced-theta",
    "disjoint-cycles",
)


@dataclass(frozen=True)
class Circuit:
    mask: int
    shape: str


class FrameMatroid:
    def __init__(self, biased: BiasedGraph, kind: Kind = "frame", backend: str | None = None):
        if kind not in ("frame", "lift"):
            raise ValueError(f"kind must be 'frame' or 'lift', got {kind!r}")
        self.biased = biased
        self.kind = kind
        g = biased.graph
        us = [g.edges[e][0] for e in range(g.m)]
        vs = [g.edges[e][1] for e in range(g.m)]
        self._kernel = make_kernel(g.n, us, vs, biased.balance.basis, kind == "lift", backend)
        self._bases_cache: tuple[int, ...] | None = None
        self._cache_lock = threading.Lock()

    # -- basic oracle --------------------------------------------------------

    @property
    def graph(self):
        return self.biased.graph

    @property
    def ground_mask(self) -> int:
        return self.graph.all_edges_mask

    @property
    def size(self) -> int:
        return self.graph.m

    @property
    def rank(self) -> int:
        return self._kernel.rank

    @property
    def backend(self) -> str:
        return self._kernel.backend

    def is_independent(self, mask: int) -> bool:
        return self._kernel.is_independent(mask)

    def is_base(self, mask: int) -> bool:
        return self._kernel.is_base(mask)

    def rank_of(self, mask: int) -> int:
        acc = 0
        for e in bits(mask):
            cand = acc | (1 << e)
            if self._kernel.is_independent(cand):
                acc = cand
        return popcount(acc)

    # -- enumeration ---------------------------------------------------------

    def bases(self, force: bool = False) -> tuple[int, ...]:
        if self._bases_cache is not None:
            return self._bases_cache
        if self.size > BASES_GUARD and not force:
            raise SizeExceeded(f"base enumeration capped at {BASES_GUARD} edges (force to override)")
        out = []
        for combo in combinations(range(self.size), self.rank):
            mask = mask_of(combo)
            if self._kernel.is_independent(mask):
                out.append(mask)
        result = tuple(sorted(out))
        with self._cache_lock:
            if self._bases_cache is None:
                self._bases_cache = result
        return result

    def circuits(self) -> tuple[Circuit, ...]:
        if self.size > CIRCUIT_GUARD:
            raise SizeExceeded(f"circuit enumeration capped at {CIRCUIT_GUARD} edges")
        found: list[int] = []
        for size in range(1, self.size + 1):
            for combo in combinations(range(self.size), size):
                mask = mask_of(combo)
                if self._kernel.is_independent(mask):
                    continue
                if any(found_c & mask == found_c for found_c in found):
                    continue  # contains a smaller circuit
                found.append(mask)
        return tuple(Circuit(mask, self._classify_circuit(mask)) for mask in sorted(found))

    def _classify_circuit(self, mask: int) -> str:
        g = self.graph
        balanced = self.biased.balance.contains
        if g.is_simple_cycle(mask):
            return "balanced-cycle"
        comps = g.components(mask)
        if len(comps) == 2:
            return "disjoint-cycles"
        bridges = [e for e in bits(mask) if not g.is_loop(e) and len(g.components(mask ^ (1 << e))) > 1]
        if bridges:
            return "loose-handcuff"
        verts = comps[0][0]
        degs = {v: g.degree(v, mask) for v in verts}
        four = [v for v, d in degs.items() if d == 4]
        if len(four) == 1 and all(d == 2 for v, d in degs.items() if v not in four):
            return "tight-handcuff"
        cycles = [c for c in g.simple_cycles() if c & mask == c]
        if len(cycles) == 3 and all(not balanced(c) for c in cycles):
            return "unbalanced-theta"
        raise AssertionError(f"unclassifiable circuit {mask:#x}")

    # -- fundamental objects ---------------------------------------------------

    def fundamental_circuit(self, b: int, e: int) -> Circuit:
        """The unique circuit in b+e: e together with every f in b whose
        swap b-f+e is again a base."""
        if not self.is_base(b):
            raise NotABase(f"{b:#x} is not a base")
        if (b >> e) & 1:
            raise ElementInBase(f"edge {e} already lies in the base")
        mask = 1 << e
        for f in bits(b):
            if self.is_base((b ^ (1 << f)) | (1 << e)):
                mask |= 1 << f
        return Circuit(mask, self._classify_circuit(mask))

    def fundamental_cocircuit(self, b: int, e: int) -> int:
        """e together with every non-base f whose swap b-e+f is a base."""
        if not self.is_base(b):
            raise NotABase(f"{b:#x} is not a base")
        if not (b >> e) & 1:
            raise ElementNotInBase(f"edge {e} is not in the base")
        mask = 1 << e
        b_less = b ^ (1 << e)
        for f in range(self.size):
            if (b >> f) & 1:
                continue
            if self.is_base(b_less | (1 << f)):
                mask |= 1 << f
        return mask

    def closure(self, mask: int) -> int:
        r = self.rank_of(mask)
        out = mask
        for e in range(self.size):
            if (mask >> e) & 1:
                continue
            if self.rank_of(mask | (1 << e)) == r:
                out |= 1 << e
        return out

    # -- exchange witnesses ------------------------------------------------------

    def symmetric_exchange_witness(self, b1: int, b2: int, e: int) -> int:
        """Smallest f in b2 such that b1-e+f and b2-f+e are both bases."""
        if not self.is_base(b1) or not self.is_base(b2):
            raise NotABase("symmetric exchange requires two bases")
        if not (b1 >> e) & 1:
            raise ElementNotInBase(f"edge {e} is not in the first base")
        for f in bits(b2):
            nb1 = (b1 ^ (1 << e)) | (1 << f)
            nb2 = (b2 ^ (1 << f)) | (1 << e)
            if popcount(nb1) == self.rank == popcount(nb2) and self.is_base(nb1) and self.is_base(nb2):
                return f
        raise NoWitness(
            f"no symmetric exchange partner for edge {e}; this falsifies the matroid axioms"
        )

    def two_exchange_witness(self, b1: int, b2: int, a1: int):
        """First (a2, orderings) such that a1 serially exchanges with a2:
        both the one-step and two-step swapped sets are bases on both sides."""
        if self.rank < 2:
            raise SizeExceeded("2-exchange needs rank >= 2")
        if not self.is_base(b1) or not self.is_base(b2):
            raise NotABase("2-exchange requires two bases")
        if popcount(a1) != 2 or a1 & b1 != a1:
            raise ElementNotInBase("a1 must be a 2-subset of the first base")
        x, y = ids_of(a1)
        r = self.rank

        def step(base, out, inn):
            nxt = (base ^ (1 << out)) | (1 << inn)
            if popcount(nxt) != r:
                return None
            return nxt if self.is_base(nxt) else None

        for x1, x2 in ((x, y), (y, x)):
            for y1 in bits(b2):
                m1 = step(b1, x1, y1)
                if m1 is None:
                    continue
                m2 = step(b2, y1, x1)
                if m2 is None:
                    continue
                for y2 in bits(b2):
                    if y2 == y1:
                        continue
                    f1 = step(m1, x2, y2)
                    if f1 is None:
                        continue
                    f2 = step(m2, y2, x2)
                    if f2 is None:
                        continue
                    return mask_of((y1, y2)), (x1, x2), (y1, y2)
        raise NoWitness("no serial 2-exchange found; this falsifies the 2-exchange theorem")

    def k_serial_witness(self, b1: int, b2: int, a1: int):
        """Experimental search for a serial exchange of an arbitrary subset;
        no completeness claim is made beyond |a1| = 2."""
        if not self.is_base(b1) or not self.is_base(b2):
            raise NotABase("serial exchange requires two bases")
        if a1 & b1 != a1:
            raise ElementNotInBase("a1 must be a subset of the first base")
        from itertools import permutations

        k = popcount(a1)
        r = self.rank
        for order1 in permutations(ids_of(a1)):
            for order2 in permutations(range(self.size), k):
                if any(not (b2 >> f) & 1 for f in order2):
                    continue
                cur1, cur2 = b1, b2
                ok = True
                for x, yv in zip(order1, order2):
                    cur1 = (cur1 ^ (1 << x)) | (1 << yv)
                    cur2 = (cur2 ^ (1 << yv)) | (1 << x)
                    if popcount(cur1) != r or popcount(cur2) != r:
                        ok = False
                        break
                    if not (self.is_base(cur1) and self.is_base(cur2)):
                        ok = False
                        break
                if ok:
                    return order1, order2
        return None

    def exchange_pairs(self, b1: int, b2: int):
        return self._kernel.exchange_pairs(b1, b2)

    # -- axiom self-checks ----------------------------------------------------

    def check_base_axioms(self) -> "AxiomReport":
        if self.size > CIRCUIT_GUARD:
            raise SizeExceeded(f"axiom suite capped at {CIRCUIT_GUARD} edges")
        bases = self.bases()
        exchange_checked = 0
        failures: list[str] = []
        for b1 in bases:
            for b2 in bases:
                for e in bits(b1 & ~b2):
                    exchange_checked += 1
                    try:
                        self.symmetric_exchange_witness(b1, b2, e)
                    except NoWitness:
                        failures.append(f"exchange {b1:#x},{b2:#x},{e}")
        circuits = self.circuits()
        elimination_checked = 0
        circuit_masks = [c.mask for c in circuits]
        for i, c1 in enumerate(circuit_masks):
            for c2 in circuit_masks[i + 1 :]:
                for e in bits(c1 & c2):
                    elimination_checked += 1
                    union_less = (c1 | c2) ^ (1 << e)
                    if not any(c3 & union_less == c3 for c3 in circuit_masks):
                        failures.append(f"elimination {c1:#x},{c2:#x},{e}")
        # minimality: every circuit dependent, all proper subsets independent
        for c in circuit_masks:
            if self.is_independent(c):
                failures.append(f"circuit independent {c:#x}")
            for e in bits(c):
                if not self.is_independent(c ^ (1 << e)):
                    failures.append(f"circuit not minimal {c:#x}")
        if bases and any(popcount(b) != self.rank for b in bases):
            failures.append("bases of unequal size")
        return AxiomReport(
            base_count=len(bases),
            circuit_count=len(circuits),
            exchange_checked=exchange_checked,
            elimination_checked=elimination_checked,
            failures=tuple(failures),
        )


@dataclass(frozen=True)
class AxiomReport:
    base_count: int
    circuit_count: int
    exchange_checked: int
    elimination_checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def frame_matroid(biased: BiasedGraph, backend: str | None = None) -> FrameMatroid:
    return FrameMatroid(biased, "frame", backend)


def lift_matroid(biased: BiasedGraph, backend: str | None = None) -> FrameMatroid:
    return FrameMatroid(biased, "lift", backend)
