"""Pure-Python independence kernel; semantics mirrored by the compiled twin.

The kernel answers the two hot queries of every search: is an edge set
independent, and which symmetric exchanges between two bases are valid.
Everything else in the package is built on these.
"""

from __future__ import annotations


class PyKernel:
    backend = "pure"

    def __init__(self, n, us, vs, balance_rows, lift):
        self.n = n
        self.us = tuple(us)
        self.vs = tuple(vs)
        self.m = len(self.us)
        self.rows = tuple(balance_rows)  # reduced echelon, lowest-bit pivots
        self.lift = bool(lift)
        self.rank = self._greedy_rank()

    # -- core queries ------------------------------------------------------

    def is_independent(self, mask: int) -> bool:
        us, vs = self.us, self.vs
        # union-find over touched vertices
        parent: dict[int, int] = {}

        def find(x):
            r = x
            while parent[r] != r:
                r = parent[r]
            while parent[x] != r:
                parent[x], x = r, parent[x]
            return r

        edge_count: dict[int, int] = {}
        rest = mask
        while rest:
            low = rest & -rest
            e = low.bit_length() - 1
            rest ^= low
            a, b = us[e], vs[e]
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        vert_count: dict[int, int] = {}
        for x in parent:
            r = find(x)
            vert_count[r] = vert_count.get(r, 0) + 1
        rest = mask
        while rest:
            low = rest & -rest
            e = low.bit_length() - 1
            rest ^= low
            r = find(us[e])
            edge_count[r] = edge_count.get(r, 0) + 1
        total_excess = 0
        cyclic_roots = []
        for r, ec in edge_count.items():
            excess = ec - vert_count[r] + 1
            if excess < 0:
                excess = 0
            if not self.lift and excess > 1:
                return False
            total_excess += excess
            if excess == 1:
                cyclic_roots.append(r)
        if total_excess == 0:
            return True
        if self.lift and total_excess > 1:
            return False
        # strip leaves; what remains per cyclic component is its unique cycle
        core = self._two_core(mask)
        for r in cyclic_roots:
            cyc = 0
            rest = core
            while rest:
                low = rest & -rest
                e = low.bit_length() - 1
                rest ^= low
                if find(us[e]) == r:
                    cyc |= low
            if self._balanced(cyc):
                return False
        return True

    def is_base(self, mask: int) -> bool:
        return mask.bit_count() == self.rank and self.is_independent(mask)

    def exchange_pairs(self, b1: int, b2: int):
        """All (e, f) with e in b1, f in b2, e != f, such that swapping them
        leaves two bases.  Ascending (e, f) order."""
        out = []
        r1 = b1
        while r1:
            lo1 = r1 & -r1
            e = lo1.bit_length() - 1
            r1 ^= lo1
            b1_less = b1 ^ lo1
            r2 = b2
            while r2:
                lo2 = r2 & -r2
                f = lo2.bit_length() - 1
                r2 ^= lo2
                if f == e or (b1_less >> f) & 1 or ((b2 ^ lo2) >> e) & 1:
                    continue
                if self.is_base(b1_less | lo2) and self.is_base((b2 ^ lo2) | lo1):
                    out.append((e, f))
        return out

    # -- helpers -----------------------------------------------------------

    def _two_core(self, mask: int) -> int:
        us, vs = self.us, self.vs
        deg: dict[int, int] = {}
        rest = mask
        while rest:
            low = rest & -rest
            e = low.bit_length() - 1
            rest ^= low
            deg[us[e]] = deg.get(us[e], 0) + 1
            deg[vs[e]] = deg.get(vs[e], 0) + 1  # loop counts twice
        core = mask
        changed = True
        while changed:
            changed = False
            rest = core
            while rest:
                low = rest & -rest
                e = low.bit_length() - 1
                rest ^= low
                a, b = us[e], vs[e]
                if a != b and (deg[a] == 1 or deg[b] == 1):
                    core ^= low
                    deg[a] -= 1
                    deg[b] -= 1
                    changed = True
        return core

    def _balanced(self, cyc: int) -> bool:
        for row in self.rows:
            if cyc & (row & -row):
                cyc ^= row
        return cyc == 0

    def _greedy_rank(self) -> int:
        acc = 0
        for e in range(self.m):
            cand = acc | (1 << e)
            if self.is_independent(cand):
                acc = cand
        return acc.bit_count()
