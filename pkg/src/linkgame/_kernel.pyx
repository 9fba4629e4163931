# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled solver kernels: drop-in twin of linkgame._kernel_py.

States pack into 64-bit keys (mixed radix over per-syllable (net,
unresolved) pairs, or base-3 resolution vectors) and the transposition
table is a C++ unordered_map, which is where the speedup over the pure
backend comes from.
"""

from libcpp.unordered_map cimport unordered_map

BACKEND = "compiled"

DEF MAX_SYLLABLES = 24
DEF MAX_CROSSINGS = 38


cdef long long _frac_pq(long long* nets, int n, bint want_p):
    cdef long long p = 1, q = 0
    cdef int i
    for i in range(n):
        if i % 2 == 0:
            q = nets[i] * p + q
        else:
            p = p + nets[i] * q
    return p if want_p else q


def fraction_nets(nets):
    """Unreduced (p, q) fraction of a fully resolved net word."""
    cdef long long buf[MAX_SYLLABLES]
    cdef int n = len(nets)
    if n > MAX_SYLLABLES:
        raise ValueError("too many syllables for the compiled kernel")
    cdef int i
    for i in range(n):
        buf[i] = nets[i]
    return _frac_pq(buf, n, True), _frac_pq(buf, n, False)


cdef bint _splittable(long long* nets, int n):
    cdef long long p = 1, q = 0
    cdef int i
    for i in range(n):
        if i % 2 == 0:
            q = nets[i] * p + q
        else:
            p = p + nets[i] * q
    return p == 0 or q == 0


def splittable_nets(nets):
    cdef long long buf[MAX_SYLLABLES]
    cdef int n = len(nets)
    if n > MAX_SYLLABLES:
        raise ValueError("too many syllables for the compiled kernel")
    cdef int i
    for i in range(n):
        buf[i] = nets[i]
    return bool(_splittable(buf, n))


def all_terminals_splittable(sizes):
    """Whether every resolution of the all-unresolved word is splittable."""
    cdef long long nets[MAX_SYLLABLES]
    cdef int n = len(sizes)
    if n > MAX_SYLLABLES:
        raise ValueError("too many syllables for the compiled kernel")
    cdef long long sz[MAX_SYLLABLES]
    cdef int i
    for i in range(n):
        sz[i] = sizes[i]
        nets[i] = 0
    return bool(_all_terminals(nets, sz, 0, n))


cdef bint _all_terminals(long long* nets, long long* sizes, int i, int n):
    cdef long long c
    if i == n:
        return _splittable(nets, n)
    c = -sizes[i]
    while c <= sizes[i]:
        nets[i] = c
        if not _all_terminals(nets, sizes, i + 1, n):
            nets[i] = 0
            return False
        c += 2
    nets[i] = 0
    return True


cdef class _SizesSolver:
    cdef long long sizes[MAX_SYLLABLES]
    cdef long long nets[MAX_SYLLABLES]
    cdef long long unres[MAX_SYLLABLES]
    cdef long long radix[MAX_SYLLABLES]
    cdef int n
    cdef bint use_memo, order_moves
    cdef unordered_map[long long, char] memo
    cdef public long long nodes, tt_hits

    def __init__(self, sizes, bint use_memo, bint order_moves):
        cdef int i
        self.n = len(sizes)
        if self.n > MAX_SYLLABLES:
            raise ValueError("too many syllables for the compiled kernel")
        cdef double width = 2.0
        for i in range(self.n):
            self.sizes[i] = sizes[i]
            self.nets[i] = 0
            self.unres[i] = sizes[i]
            self.radix[i] = (2 * self.sizes[i] + 1) * (self.sizes[i] + 1)
            width *= self.radix[i]
        if width >= 9.0e18:
            raise ValueError("state space too wide for 64-bit packing")
        self.use_memo = use_memo
        self.order_moves = order_moves
        self.nodes = 0
        self.tt_hits = 0

    cdef long long _key(self, bint mover_unlinker):
        cdef long long key = 1 if mover_unlinker else 0
        cdef int i
        for i in range(self.n):
            key = key * self.radix[i] + \
                (self.nets[i] + self.sizes[i]) * (self.sizes[i] + 1) + self.unres[i]
        return key

    cdef bint _win(self, bint mover_unlinker, int last_delta):
        cdef long long key = 0
        cdef int i, d
        cdef int first_delta, second_delta
        cdef bint result, child
        cdef bint any_left = False
        if self.use_memo:
            key = self._key(mover_unlinker)
            if self.memo.count(key):
                self.tt_hits += 1
                return <bint>(self.memo[key])
        self.nodes += 1
        for i in range(self.n):
            if self.unres[i] > 0:
                any_left = True
                break
        if not any_left:
            result = _splittable(self.nets, self.n)
        else:
            if self.order_moves and last_delta != 0:
                if mover_unlinker:
                    first_delta, second_delta = -last_delta, last_delta
                else:
                    first_delta, second_delta = last_delta, -last_delta
            else:
                first_delta, second_delta = 1, -1
            result = not mover_unlinker
            for i in range(self.n):
                if self.unres[i] == 0:
                    continue
                self.unres[i] -= 1
                for d in (first_delta, second_delta):
                    self.nets[i] += d
                    child = self._win(not mover_unlinker, d)
                    self.nets[i] -= d
                    if child == mover_unlinker:
                        result = child
                        break
                self.unres[i] += 1
                if result == mover_unlinker:
                    break
        if self.use_memo:
            self.memo[key] = <char>result
        return result

    def solve(self, bint first_is_unlinker):
        return bool(self._win(first_is_unlinker, 0))

    def child_value(self, nets, unres, bint mover_unlinker):
        cdef int i
        for i in range(self.n):
            self.nets[i] = nets[i]
            self.unres[i] = unres[i]
        result = bool(self._win(mover_unlinker, 0))
        for i in range(self.n):
            self.nets[i] = 0
            self.unres[i] = self.sizes[i]
        return result


def solve_sizes(sizes, first_is_unlinker, use_memo=True, order_moves=True):
    """Returns (unlinker_wins, nodes, tt_hits, pv); see the pure twin."""
    solver = _SizesSolver(sizes, use_memo, order_moves)
    win = solver.solve(first_is_unlinker)
    pv = []
    if use_memo:
        n = len(sizes)
        nets = [0] * n
        unres = list(sizes)
        mover = bool(first_is_unlinker)
        target = win
        while any(unres):
            advanced = False
            for i in range(n):
                if unres[i] == 0:
                    continue
                unres[i] -= 1
                for delta in (1, -1):
                    nets[i] += delta
                    if solver.child_value(nets, unres, not mover) == target:
                        pv.append((i, delta))
                        advanced = True
                        break
                    nets[i] -= delta
                if advanced:
                    break
                unres[i] += 1
            if not advanced:
                raise AssertionError("no value-preserving move found")
            mover = not mover
    return win, solver.nodes, solver.tt_hits, tuple(pv)


cdef class _ConcreteSolver:
    cdef int syllable_of[MAX_CROSSINGS]
    cdef char trits[MAX_CROSSINGS]
    cdef long long nets[MAX_SYLLABLES]
    cdef int n_crossings, n_syllables
    cdef bint use_memo
    cdef unordered_map[long long, char] memo
    cdef public long long nodes, tt_hits

    def __init__(self, syllable_of, int n_syllables, bint use_memo):
        cdef int i
        self.n_crossings = len(syllable_of)
        if self.n_crossings > MAX_CROSSINGS:
            raise ValueError("too many crossings for the compiled kernel")
        if n_syllables > MAX_SYLLABLES:
            raise ValueError("too many syllables for the compiled kernel")
        self.n_syllables = n_syllables
        for i in range(self.n_crossings):
            self.syllable_of[i] = syllable_of[i]
        self.use_memo = use_memo
        self.nodes = 0
        self.tt_hits = 0

    cdef long long _key(self, bint mover_unlinker):
        cdef long long key = 1 if mover_unlinker else 0
        cdef int i
        for i in range(self.n_crossings):
            key = key * 3 + self.trits[i]
        return key

    cdef bint _terminal_splittable(self):
        cdef int i
        for i in range(self.n_syllables):
            self.nets[i] = 0
        for i in range(self.n_crossings):
            if self.trits[i] == 1:
                self.nets[self.syllable_of[i]] += 1
            else:
                self.nets[self.syllable_of[i]] -= 1
        return _splittable(self.nets, self.n_syllables)

    cdef bint _win(self, bint mover_unlinker):
        cdef long long key = 0
        cdef int c
        cdef char choice
        cdef bint result, child
        cdef bint any_left = False
        if self.use_memo:
            key = self._key(mover_unlinker)
            if self.memo.count(key):
                self.tt_hits += 1
                return <bint>(self.memo[key])
        self.nodes += 1
        for c in range(self.n_crossings):
            if self.trits[c] == 0:
                any_left = True
                break
        if not any_left:
            result = self._terminal_splittable()
        else:
            result = not mover_unlinker
            for c in range(self.n_crossings):
                if self.trits[c] != 0:
                    continue
                for choice in (1, 2):
                    self.trits[c] = choice
                    child = self._win(not mover_unlinker)
                    self.trits[c] = 0
                    if child == mover_unlinker:
                        result = child
                        break
                if result == mover_unlinker:
                    break
        if self.use_memo:
            self.memo[key] = <char>result
        return result

    def solve(self, initial, bint mover_is_unlinker):
        cdef int i
        for i in range(self.n_crossings):
            self.trits[i] = initial[i]
        return bool(self._win(mover_is_unlinker))

    def value_of(self, trits, bint mover_is_unlinker):
        return self.solve(trits, mover_is_unlinker)


def solve_concrete(syllable_of, n_syllables, initial_trits,
                   mover_is_unlinker, use_memo=True):
    """Returns (unlinker_wins, nodes, tt_hits, pv); see the pure twin."""
    solver = _ConcreteSolver(syllable_of, n_syllables, use_memo)
    trits = tuple(initial_trits)
    win = solver.solve(trits, mover_is_unlinker)
    pv = []
    if use_memo:
        mover = bool(mover_is_unlinker)
        target = win
        current = list(trits)
        while 0 in current:
            advanced = False
            for c, t in enumerate(current):
                if t != 0:
                    continue
                for choice in (1, 2):
                    current[c] = choice
                    if solver.value_of(tuple(current), not mover) == target:
                        pv.append((c, choice))
                        advanced = True
                        break
                    current[c] = 0
                if advanced:
                    break
            if not advanced:
                raise AssertionError("no value-preserving move found")
            mover = not mover
    return win, solver.nodes, solver.tt_hits, tuple(pv)
