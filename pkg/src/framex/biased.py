"""Biased graphs: a multigraph plus a linear class of balanced cycles.

The class is stored as a GF(2) subspace of the cycle space; a simple cycle
is balanced iff its incidence vector lies in the subspace.  Storing the span
(never an explicit cycle list) keeps classes of exponential size polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bitset import bits, echelon, in_span, mask_of
from .errors import LabelCountMismatch, NotACycle, SizeExceeded
from .graph import MultiGraph

THETA_GUARD = 14
LINEARITY_GUARD = 14
HARNESS_GUARD = 12


@dataclass(frozen=True)
class LinearClass:
    """GF(2) subspace of a graph's cycle space, kept in reduced echelon form."""

    generators: tuple[int, ...]
    basis: tuple[int, ...]

    @classmethod
    def from_generators(cls, generators: Iterable[int]) -> "LinearClass":
        gens = tuple(generators)
        return cls(generators=gens, basis=tuple(echelon(gens)))

    def contains(self, mask: int) -> bool:
        return in_span(mask, self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def key(self) -> tuple[int, ...]:
        """Canonical subspace key (reduced echelon rows)."""
        return self.basis


@dataclass(frozen=True)
class BiasedGraph:
    graph: MultiGraph
    balance: LinearClass
    _balanced_loops: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        loops = tuple(
            e for e in range(self.graph.m)
            if self.graph.is_loop(e) and self.balance.contains(1 << e)
        )
        object.__setattr__(self, "_balanced_loops", loops)

    def is_balanced(self, cycle_mask: int) -> bool:
        if not self.graph.is_simple_cycle(cycle_mask):
            raise NotACycle(f"edge set {cycle_mask:#x} is not a simple cycle")
        return self.balance.contains(cycle_mask)

    @property
    def balanced_loops(self) -> tuple[int, ...]:
        """Loops whose singleton cycle is balanced; flagged, not removed.
        Constructions that require none of these reject such inputs."""
        return self._balanced_loops

    def balanced_cycles(self) -> list[int]:
        return [c for c in self.graph.simple_cycles() if self.balance.contains(c)]

    def unbalanced_cycles(self) -> list[int]:
        return [c for c in self.graph.simple_cycles() if not self.balance.contains(c)]


def linear_completion(g: MultiGraph, generators: Sequence[int]) -> LinearClass:
    """Class whose balanced cycles are the simple cycles in the GF(2) span."""
    for c in generators:
        if not g.is_simple_cycle(c):
            raise NotACycle(f"generator {c:#x} is not a simple cycle")
    return LinearClass.from_generators(generators)


def graphic_bias(g: MultiGraph) -> BiasedGraph:
    """Every simple cycle balanced; the frame matroid is the graphic matroid."""
    return BiasedGraph(g, LinearClass.from_generators(g.cycle_space_basis()))


def bicircular_bias(g: MultiGraph) -> BiasedGraph:
    """No balanced cycles; the frame matroid is the bicircular matroid."""
    return BiasedGraph(g, LinearClass.from_generators(()))


def from_group_labelling(g: MultiGraph, t: int, labels: Sequence[Sequence[int]]) -> BiasedGraph:
    """Bias from edge labels in (Z/2)^t: balanced cycles are those whose
    label sum is zero.  The class is the kernel of the induced linear map on
    the cycle space, so linearity holds by construction."""
    if len(labels) != g.m:
        raise LabelCountMismatch(f"expected {g.m} labels, got {len(labels)}")
    label_vec = []
    for lab in labels:
        if len(lab) != t:
            raise LabelCountMismatch(f"label {lab} does not have {t} components")
        label_vec.append(mask_of(i for i, b in enumerate(lab) if b & 1))
    cyc_basis = g.cycle_space_basis()
    # image of each basis cycle under the label map
    images = []
    for c in cyc_basis:
        img = 0
        for e in bits(c):
            img ^= label_vec[e]
        images.append(img)
    # kernel of the d x t system via elimination on (image, coefficient) pairs
    rows = [(images[k], 1 << k) for k in range(len(cyc_basis))]
    reduced: list[tuple[int, int]] = []
    kernel_coeffs: list[int] = []
    for img, coeff in rows:
        for rimg, rcoeff in reduced:
            if img & (rimg & -rimg):
                img ^= rimg
                coeff ^= rcoeff
        if img:
            reduced.append((img, coeff))
            reduced.sort(key=lambda r: r[0] & -r[0])
        else:
            kernel_coeffs.append(coeff)
    gens = []
    for coeff in kernel_coeffs:
        vec = 0
        for k in bits(coeff):
            vec ^= cyc_basis[k]
        gens.append(vec)
    return BiasedGraph(g, LinearClass.from_generators(gens))


@dataclass
class ThetaViolation:
    cycles: tuple[int, int, int]  # the two members and the missing third


def _theta_triples(g: MultiGraph):
    """Pairs of simple cycles whose symmetric difference is again a simple
    cycle; such a pair together with the difference forms a theta subgraph."""
    cycles = g.simple_cycles()
    index = set(cycles)
    for i, c1 in enumerate(cycles):
        for c2 in cycles[i + 1 :]:
            c3 = c1 ^ c2
            if c3 in index:
                yield c1, c2, c3


def check_theta_property(bg: BiasedGraph) -> tuple[bool, ThetaViolation | None]:
    """True iff every theta with two balanced constituents has the third
    balanced.  Always true for span-backed classes; kept as a harness."""
    if bg.graph.m > THETA_GUARD:
        raise SizeExceeded(f"theta check capped at {THETA_GUARD} edges")
    member = bg.balance.contains
    return _theta_scan(bg.graph, member)


def check_theta_property_list(g: MultiGraph, explicit_class: Sequence[int]) -> tuple[bool, ThetaViolation | None]:
    """Standalone variant for an explicit cycle list (no span backing)."""
    if g.m > THETA_GUARD:
        raise SizeExceeded(f"theta check capped at {THETA_GUARD} edges")
    members = set(explicit_class)
    return _theta_scan(g, members.__contains__)


def _theta_scan(g, member) -> tuple[bool, ThetaViolation | None]:
    for c1, c2, c3 in _theta_triples(g):
        for a, b, c in ((c1, c2, c3), (c1, c3, c2), (c2, c3, c1)):
            if member(a) and member(b) and not member(c):
                return False, ThetaViolation((a, b, c))
    return True, None


def check_linearity(g: MultiGraph, explicit_class: Sequence[int]) -> tuple[bool, int | None]:
    """True iff every simple cycle in the span of the class lies in the class;
    otherwise returns a missing cycle as witness."""
    if g.m > LINEARITY_GUARD:
        raise SizeExceeded(f"linearity check capped at {LINEARITY_GUARD} edges")
    for c in explicit_class:
        if not g.is_simple_cycle(c):
            raise NotACycle(f"class member {c:#x} is not a simple cycle")
    rows = echelon(explicit_class)
    members = set(explicit_class)
    for c in g.simple_cycles():
        if in_span(c, rows) and c not in members:
            return False, c
    return True, None


@dataclass
class HarnessReport:
    """Outcome of exhaustively instantiating the three tree/cycle lemmas."""

    checked: dict[str, int]
    failures: dict[str, tuple]

    @property
    def ok(self) -> bool:
        return not self.failures


def cycle_lemma_harness(bg: BiasedGraph) -> HarnessReport:
    """Exhaustively instantiates, over all spanning trees of the graph:

    * balanced-patch lemma: a tree path plus a tree-disjoint path whose
      fundamental cycles are all balanced closes into a balanced cycle;
    * unbalanced-escape lemma: a tree-disjoint unbalanced cycle has an edge
      with unbalanced fundamental cycle;
    * transfer lemma: two cycles sharing a path, with the first inside
      tree+e1 and the second's free path tree-disjoint and balanced-patched,
      are balanced or unbalanced together.
    """
    g = bg.graph
    if g.m > HARNESS_GUARD:
        raise SizeExceeded(f"cycle-lemma harness capped at {HARNESS_GUARD} edges")
    if not g.is_connected():
        raise SizeExceeded("harness expects a connected graph")
    checked = {"balanced_patch": 0, "unbalanced_escape": 0, "transfer": 0}
    failures: dict[str, tuple] = {}
    cycles = g.simple_cycles()
    trees = list(g.spanning_trees())
    for tree in trees:
        non_tree = [e for e in range(g.m) if not (tree >> e) & 1]
        fundamental = {e: g.fundamental_cycle(tree, e) for e in non_tree}

        # balanced-patch: enumerate tree-disjoint paths P2 via simple cycles
        # whose intersection with the tree is exactly a path P1.
        for c in cycles:
            p2 = c & ~tree
            p1 = c & tree
            if p2 == 0 or p1 == 0:
                continue
            # p1 must be the tree path between the endpoints of p2's span;
            # both are paths exactly when c splits into two arcs, which holds
            # iff p1 and p2 are each connected and internally disjoint.
            if not _is_path(g, p1) or not _is_path(g, p2):
                continue
            if all(bg.balance.contains(fundamental[e]) for e in bits(p2)):
                checked["balanced_patch"] += 1
                if not bg.balance.contains(c):
                    failures.setdefault("balanced_patch", (tree, c))

        # unbalanced-escape: unbalanced cycles edge-disjoint from the tree
        for c in cycles:
            if c & tree or bg.balance.contains(c):
                continue
            checked["unbalanced_escape"] += 1
            if not any(not bg.balance.contains(fundamental[e]) for e in bits(c)):
                failures.setdefault("unbalanced_escape", (tree, c))

        # transfer: cycle pairs sharing a path
        for c1 in cycles:
            for c2 in cycles:
                if c1 == c2:
                    continue
                shared = c1 & c2
                if shared == 0 or not _is_path(g, shared):
                    continue
                p2 = c2 & ~shared
                if p2 & tree:
                    continue
                for e1 in bits(shared):
                    if (c1 & ~(1 << e1)) & ~tree:
                        continue  # rest of the first cycle must sit inside the tree
                    if not all(bg.balance.contains(fundamental[e]) for e in bits(p2)):
                        continue
                    checked["transfer"] += 1
                    if bg.balance.contains(c1) != bg.balance.contains(c2):
                        failures.setdefault("transfer", (tree, c1, c2, e1))
    return HarnessReport(checked=checked, failures=failures)


def _is_path(g: MultiGraph, mask: int) -> bool:
    """Connected, loop-free, exactly two vertices of degree 1, rest degree 2."""
    if mask == 0:
        return False
    for e in bits(mask):
        if g.is_loop(e):
            return False
    comps = g.components(mask)
    if len(comps) != 1:
        return False
    degs = sorted(g.degree(v, mask) for v in comps[0][0])
    return degs[:2] == [1, 1] and all(d == 2 for d in degs[2:])
