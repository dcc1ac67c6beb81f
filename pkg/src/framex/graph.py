"""Multigraphs with loops and parallel edges, their GF(2) cycle space,
simple-cycle enumeration, spanning trees and fundamental cycles.

Degree conventions: a loop contributes 2 to ``degree(v)`` but appears once
in ``incident_edges(v)``.  Operations state which measure they use.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .bitset import bits, echelon, ids_of, mask_of, popcount
from .errors import DisconnectedEndpoints, EdgeInTree, SizeExceeded

CYCLE_ENUM_GUARD = 20
TREE_ENUM_GUARD = 16


class MultiGraph:
    """Immutable multigraph; edge ids are dense 0..m-1, u == v encodes a loop."""

    __slots__ = ("n", "edges", "_incidence")

    def __init__(self, vertex_count: int, edges):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge endpoint out of range: {(u, v)}")
        self.n = vertex_count
        self.edges = edges
        incidence: list[list[int]] = [[] for _ in range(vertex_count)]
        for e, (u, v) in enumerate(edges):
            incidence[u].append(e)
            if v != u:
                incidence[v].append(e)
        self._incidence = tuple(tuple(lst) for lst in incidence)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_edges_mask(self) -> int:
        return (1 << self.m) - 1

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Edges touching v; a loop at v appears once."""
        return self._incidence[v]

    def degree(self, v: int, mask: int | None = None) -> int:
        """Graph-theoretic degree; loops count twice.  Restricted to mask if given."""
        d = 0
        for e in self._incidence[v]:
            if mask is not None and not (mask >> e) & 1:
                continue
            d += 2 if self.is_loop(e) else 1
        return d

    def touched_vertices(self, mask: int) -> set[int]:
        verts: set[int] = set()
        for e in bits(mask):
            u, v = self.edges[e]
            verts.add(u)
            verts.add(v)
        return verts

    def components(self, mask: int) -> list[tuple[frozenset[int], int]]:
        """Connected components of the subgraph induced by the edge mask.

        Returns (vertex set, edge mask) pairs; isolated vertices of the host
        graph are not reported.
        """
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in bits(mask):
            u, v = self.edges[e]
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, list[int]] = {}
        for x in parent:
            groups.setdefault(find(x), []).append(x)
        out = []
        for root, verts in groups.items():
            vset = frozenset(verts)
            emask = 0
            for e in bits(mask):
                if self.edges[e][0] in vset:
                    emask |= 1 << e
            out.append((vset, emask))
        out.sort(key=lambda p: min(p[0]))
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        comps = self.components(self.all_edges_mask)
        return len(comps) == 1 and len(comps[0][0]) == self.n

    def component_count(self) -> int:
        """Number of components counting isolated vertices."""
        comps = self.components(self.all_edges_mask)
        covered = sum(len(vs) for vs, _ in comps)
        return len(comps) + (self.n - covered)

    def is_forest(self, mask: int) -> bool:
        for e in bits(mask):
            if self.is_loop(e):
                return False
        for vs, emask in self.components(mask):
            if popcount(emask) != len(vs) - 1:
                return False
        return True

    def spanning_forest(self) -> int:
        """Greedy forest over ascending edge ids (deterministic)."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        forest = 0
        for e, (u, v) in enumerate(self.edges):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                forest |= 1 << e
        return forest

    def tree_path(self, forest_mask: int, a: int, b: int) -> int | None:
        """Edge mask of the a..b path inside the forest, None if disconnected."""
        if a == b:
            return 0
        adj: dict[int, list[tuple[int, int]]] = {}
        for e in bits(forest_mask):
            u, v = self.edges[e]
            adj.setdefault(u, []).append((v, e))
            adj.setdefault(v, []).append((u, e))
        prev: dict[int, tuple[int, int]] = {a: (-1, -1)}
        queue = [a]
        while queue:
            nxt: list[int] = []
            for x in queue:
                for y, e in adj.get(x, ()):
                    if y not in prev:
                        prev[y] = (x, e)
                        nxt.append(y)
            queue = nxt
        if b not in prev:
            return None
        mask = 0
        x = b
        while x != a:
            x, e = prev[x]
            mask |= 1 << e
        return mask

    def fundamental_cycle(self, tree_mask: int, e: int) -> int:
        """The unique cycle of tree+e (a loop is its own fundamental cycle)."""
        if (tree_mask >> e) & 1:
            raise EdgeInTree(f"edge {e} lies in the tree")
        u, v = self.edges[e]
        if u == v:
            return 1 << e
        path = self.tree_path(tree_mask, u, v)
        if path is None:
            raise DisconnectedEndpoints(f"tree does not connect endpoints of edge {e}")
        return path | (1 << e)

    def cycle_space_basis(self) -> list[int]:
        """Fundamental cycles of the greedy spanning forest, by edge id."""
        forest = self.spanning_forest()
        return [self.fundamental_cycle(forest, e) for e in range(self.m) if not (forest >> e) & 1]

    def cyclomatic_dimension(self) -> int:
        return self.m - self.n + self.component_count()

    def is_simple_cycle(self, mask: int) -> bool:
        """Connected and every touched vertex has degree exactly 2
        (a loop contributes 2, so a single loop qualifies)."""
        if mask == 0:
            return False
        comps = self.components(mask)
        if len(comps) != 1:
            return False
        verts = comps[0][0]
        return all(self.degree(v, mask) == 2 for v in verts)

    def simple_cycles(self) -> list[int]:
        """Every simple cycle exactly once, in canonical edge-set order."""
        if self.m > CYCLE_ENUM_GUARD:
            raise SizeExceeded(f"simple-cycle enumeration capped at {CYCLE_ENUM_GUARD} edges")
        found: list[int] = []
        for anchor, (au, av) in enumerate(self.edges):
            if au == av:
                found.append(1 << anchor)
                continue
            # paths from av back to au using edge ids > anchor, distinct vertices
            stack = [(av, 1 << anchor, frozenset((av,)))]
            while stack:
                x, used, seen = stack.pop()
                for e in self._incidence[x]:
                    if e <= anchor or (used >> e) & 1:
                        continue
                    u, v = self.edges[e]
                    if u == v:
                        continue
                    y = v if u == x else u
                    if y == au:
                        found.append(used | (1 << e))
                    elif y not in seen and y != au:
                        stack.append((y, used | (1 << e), seen | {y}))
        return sorted(found)

    def spanning_trees(self) -> Iterator[int]:
        """All spanning trees of a connected graph, ascending mask order."""
        if self.m > TREE_ENUM_GUARD:
            raise SizeExceeded(f"spanning-tree enumeration capped at {TREE_ENUM_GUARD} edges")
        if not self.is_connected():
            return
        non_loops = [e for e in range(self.m) if not self.is_loop(e)]
        for combo in combinations(non_loops, self.n - 1):
            mask = mask_of(combo)
            if self.is_forest(mask):
                yield mask

    def relabel_key(self) -> tuple:
        """Canonical key up to vertex and edge relabeling (small n only)."""
        from itertools import permutations

        best = None
        for perm in permutations(range(self.n)):
            key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in self.edges))
            if best is None or key < best:
                best = key
        return (self.n, best)


def enumerate_simple_cycles(g: MultiGraph) -> list[int]:
    return g.simple_cycles()


def cycle_space_basis(g: MultiGraph) -> list[int]:
    return g.cycle_space_basis()


def fundamental_cycle(g: MultiGraph, tree_mask: int, e: int) -> int:
    return g.fundamental_cycle(tree_mask, e)


def cycle_space_echelon(g: MultiGraph) -> list[int]:
    return echelon(g.cycle_space_basis())


def edge_ids(mask: int) -> tuple[int, ...]:
    return ids_of(mask)
