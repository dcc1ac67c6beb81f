"""Brute-force oracles used to certify derived values.

These are intentionally separate code paths from the engine: they work on
frozensets and explicit enumeration instead of bitmask cyclomatic counting,
and reimplement span membership, base descriptions, spanning-tree counts and
exchange-graph connectivity from scratch.  Performance is a non-goal.

Only raw data may be read from engine objects (vertex count, endpoint list,
generator vectors); none of the engine's algorithms are called.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import SizeExceeded

ORACLE_GUARD = 12
CONNECTIVITY_GUARD = 10**5


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    engine_value: object
    oracle_value: object

    @property
    def agree(self) -> bool:
        return self.engine_value == self.oracle_value


# -- GF(2) span membership, set-based elimination ---------------------------


def oracle_span_member(generator_sets, vector_set) -> bool:
    """Is the vector in the GF(2) span of the generators?  Sets of edge ids."""
    rows = [set(g) for g in generator_sets]
    target = set(vector_set)
    pivot_rows: list[set] = []
    for row in rows:
        row = set(row)
        for p in pivot_rows:
            if min(p) in row:
                row ^= p
        if row:
            pivot_rows.append(row)
            pivot_rows.sort(key=min)
    for p in pivot_rows:
        if min(p) in target:
            target ^= p
    return not target


# -- structure helpers (own implementations) ---------------------------------


def _components(n, edges, subset):
    """Vertex groups of the subgraph with the given edge ids (BFS, adjacency)."""
    adj = {}
    for e in subset:
        u, v = edges[e]
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    seen = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        group = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in adj.get(x, ()):
                if y not in group:
                    group.add(y)
                    frontier.append(y)
        seen |= group
        comps.append(frozenset(group))
    return comps


def _cycles_inside(n, edges, subset):
    """All simple cycles using only the given edges: nonempty edge subsets
    that are connected with every touched vertex of degree exactly two."""
    subset = sorted(subset)
    out = []
    for size in range(1, len(subset) + 1):
        for combo in combinations(subset, size):
            deg = {}
            for e in combo:
                u, v = edges[e]
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            if len(_components(n, edges, combo)) != 1:
                continue
            out.append(frozenset(combo))
    return out


def oracle_simple_cycles(n, edges):
    if len(edges) > ORACLE_GUARD:
        raise SizeExceeded("cycle oracle capped at 12 edges")
    return _cycles_inside(n, edges, range(len(edges)))


def oracle_is_independent(n, edges, balanced_generators, kind, subset) -> bool:
    """From-scratch reading of the base description: count the simple cycles
    inside each component (frame) or in total (lift); any present cycle must
    be unbalanced."""
    subset = frozenset(subset)
    comps = _components(n, edges, subset)
    gen_sets = [frozenset(g) for g in balanced_generators]
    if kind == "frame":
        for group in comps:
            comp_edges = [e for e in subset if edges[e][0] in group]
            cycles = _cycles_inside(n, edges, comp_edges)
            if len(cycles) > 1:
                return False
            if cycles and oracle_span_member(gen_sets, cycles[0]):
                return False
        return True
    cycles = _cycles_inside(n, edges, subset)
    if len(cycles) > 1:
        return False
    if cycles and oracle_span_member(gen_sets, cycles[0]):
        return False
    return True


def oracle_bases(n, edges, balanced_generators, kind):
    """Maximal independent sets by scanning every subset (<= 12 edges)."""
    m = len(edges)
    if m > ORACLE_GUARD:
        raise SizeExceeded("base oracle capped at 12 edges")
    independent = []
    for size in range(m + 1):
        for combo in combinations(range(m), size):
            if oracle_is_independent(n, edges, balanced_generators, kind, combo):
                independent.append(frozenset(combo))
    indep_set = set(independent)
    bases = []
    for s in independent:
        if any(s | {e} in indep_set for e in range(m) if e not in s):
            continue
        bases.append(s)
    return sorted(bases, key=sorted)


def oracle_circuits(n, edges, balanced_generators, kind):
    """Minimal dependent sets by scanning every subset (<= 12 edges)."""
    m = len(edges)
    if m > ORACLE_GUARD:
        raise SizeExceeded("circuit oracle capped at 12 edges")
    dependent = []
    for size in range(1, m + 1):
        for combo in combinations(range(m), size):
            if not oracle_is_independent(n, edges, balanced_generators, kind, combo):
                dependent.append(frozenset(combo))
    dep_set = set(dependent)
    circuits = []
    for s in dependent:
        if any(s - {e} in dep_set for e in s):
            continue
        circuits.append(s)
    return sorted(circuits, key=sorted)


# -- spanning-tree count (matrix-tree, Bareiss integer determinant) ----------


def oracle_spanning_tree_count(n, edges) -> int:
    if n <= 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    # determinant of the (n-1)x(n-1) minor, fraction-free elimination
    a = [row[1:] for row in lap[1:]]
    size = n - 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            a[k] = [-x for x in a[k]]  # row swap flips the sign; compensate
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return a[size - 1][size - 1]


# -- exchange-graph connectivity ---------------------------------------------


def _single_exchange_adjacent(s, t) -> bool:
    diff = [i for i in range(len(s)) if s[i] != t[i]]
    if len(diff) != 2:
        return False
    i, j = diff
    gone_i = s[i] & ~t[i]
    new_i = t[i] & ~s[i]
    gone_j = s[j] & ~t[j]
    new_j = t[j] & ~s[j]
    if gone_i.bit_count() != 1 or new_i.bit_count() != 1:
        return False
    if gone_j.bit_count() != 1 or new_j.bit_count() != 1:
        return False
    return gone_i == new_j and gone_j == new_i


def oracle_connectivity(states) -> list[int]:
    """Component labels of the single-exchange graph on the given sequences,
    via quadratic pairwise scan and union-find."""
    states = list(states)
    if len(states) > CONNECTIVITY_GUARD:
        raise SizeExceeded("connectivity oracle capped at 1e5 states")
    parent = list(range(len(states)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            if _single_exchange_adjacent(states[i], states[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    return [find(i) for i in range(len(states))]


def oracle_is_connected(states) -> bool:
    labels = oracle_connectivity(states)
    return len(set(labels)) <= 1
