# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled independence kernel; see _kernel_py for the reference semantics.

Masks are uint64, so graphs are capped at 64 edges / 64 vertices here; the
dispatcher falls back to the pure kernel beyond that.
"""

from libc.stdint cimport uint64_t, int32_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef class FastKernel:
    cdef int32_t us[64]
    cdef int32_t vs[64]
    cdef uint64_t rows[64]
    cdef public int n, m, nrows, rank
    cdef public bint lift

    property backend:
        def __get__(self):
            return "compiled"

    def __init__(self, n, us, vs, balance_rows, lift):
        cdef int i
        if n > 64 or len(us) > 64 or len(balance_rows) > 64:
            raise ValueError("compiled kernel capped at 64 vertices/edges")
        self.n = n
        self.m = len(us)
        for i in range(self.m):
            self.us[i] = us[i]
            self.vs[i] = vs[i]
        self.nrows = len(balance_rows)
        for i in range(self.nrows):
            self.rows[i] = balance_rows[i]
        self.lift = bool(lift)
        self.rank = 0
        self.rank = self._greedy_rank()

    cdef int _find(self, int32_t* parent, int x) nogil:
        cdef int r = x
        while parent[r] != r:
            r = parent[r]
        cdef int nxt
        while parent[x] != r:
            nxt = parent[x]
            parent[x] = r
            x = nxt
        return r

    cdef bint _balanced(self, uint64_t cyc) nogil:
        cdef int i
        for i in range(self.nrows):
            if cyc & (self.rows[i] & (~self.rows[i] + 1)):
                cyc ^= self.rows[i]
        return cyc == 0

    cdef uint64_t _two_core(self, uint64_t mask) nogil:
        cdef int deg[64]
        cdef int i, e, a, b
        cdef uint64_t rest, low, core
        for i in range(self.n):
            deg[i] = 0
        rest = mask
        while rest:
            e = __builtin_ctzll(rest)
            rest &= rest - 1
            deg[self.us[e]] += 1
            deg[self.vs[e]] += 1
        core = mask
        cdef bint changed = True
        while changed:
            changed = False
            rest = core
            while rest:
                e = __builtin_ctzll(rest)
                low = (<uint64_t>1) << e
                rest &= rest - 1
                a = self.us[e]
                b = self.vs[e]
                if a != b and (deg[a] == 1 or deg[b] == 1):
                    core ^= low
                    deg[a] -= 1
                    deg[b] -= 1
                    changed = True
        return core

    cpdef bint is_independent(self, uint64_t mask):
        cdef int32_t parent[64]
        cdef int edge_cnt[64]
        cdef int vert_cnt[64]
        cdef uint64_t touched = 0
        cdef uint64_t rest, low, core, cyc
        cdef int e, a, b, ra, rb, r
        cdef int total_excess = 0, excess
        if mask == 0:
            return True
        rest = mask
        while rest:
            e = __builtin_ctzll(rest)
            rest &= rest - 1
            a = self.us[e]
            b = self.vs[e]
            if not (touched >> a) & 1:
                parent[a] = a
                touched |= (<uint64_t>1) << a
            if not (touched >> b) & 1:
                parent[b] = b
                touched |= (<uint64_t>1) << b
            ra = self._find(parent, a)
            rb = self._find(parent, b)
            if ra != rb:
                parent[ra] = rb
        for e in range(self.n):
            edge_cnt[e] = 0
            vert_cnt[e] = 0
        rest = touched
        while rest:
            a = __builtin_ctzll(rest)
            rest &= rest - 1
            vert_cnt[self._find(parent, a)] += 1
        rest = mask
        while rest:
            e = __builtin_ctzll(rest)
            rest &= rest - 1
            edge_cnt[self._find(parent, self.us[e])] += 1
        rest = touched
        while rest:
            r = __builtin_ctzll(rest)
            rest &= rest - 1
            if self._find(parent, r) != r:
                continue
            excess = edge_cnt[r] - vert_cnt[r] + 1
            if excess < 0:
                excess = 0
            if (not self.lift) and excess > 1:
                return False
            total_excess += excess
        if total_excess == 0:
            return True
        if self.lift and total_excess > 1:
            return False
        core = self._two_core(mask)
        # per cyclic root, collect its core edges and balance-test the cycle
        rest = touched
        while rest:
            r = __builtin_ctzll(rest)
            rest &= rest - 1
            if self._find(parent, r) != r:
                continue
            excess = edge_cnt[r] - vert_cnt[r] + 1
            if excess != 1:
                continue
            cyc = 0
            low = core
            while low:
                e = __builtin_ctzll(low)
                low &= low - 1
                if self._find(parent, self.us[e]) == r:
                    cyc |= (<uint64_t>1) << e
            if self._balanced(cyc):
                return False
        return True

    cpdef bint is_base(self, uint64_t mask):
        return __builtin_popcountll(mask) == self.rank and self.is_independent(mask)

    def exchange_pairs(self, uint64_t b1, uint64_t b2):
        cdef list out = []
        cdef uint64_t r1 = b1, r2, lo1, lo2, b1_less, b2_less
        cdef int e, f
        while r1:
            e = __builtin_ctzll(r1)
            lo1 = (<uint64_t>1) << e
            r1 &= r1 - 1
            b1_less = b1 ^ lo1
            r2 = b2
            while r2:
                f = __builtin_ctzll(r2)
                lo2 = (<uint64_t>1) << f
                r2 &= r2 - 1
                if f == e or (b1_less >> f) & 1 or ((b2 ^ lo2) >> e) & 1:
                    continue
                if self.is_base(b1_less | lo2) and self.is_base((b2 ^ lo2) | lo1):
                    out.append((e, f))
        return out

    cdef int _greedy_rank(self):
        cdef uint64_t acc = 0, cand
        cdef int e
        for e in range(self.m):
            cand = acc | ((<uint64_t>1) << e)
            if self.is_independent(cand):
                acc = cand
        return __builtin_popcountll(acc)
