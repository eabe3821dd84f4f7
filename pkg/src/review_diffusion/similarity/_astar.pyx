# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: initializedcheck=False
# cython: cdivision=True
"""Compiled twin of _astar_py: exact edit cost via best-first assignment search.

Same state space, same admissible bound, same lexicographic tie-break
(assignment-prefix bytes compared with memcmp); only the frontier
storage differs, using flat C arrays instead of Python tuples. Keep the
two modules in lockstep.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcmp, memcpy, memset

import numpy as np

__all__ = ["ged_search", "MAX_TARGETS"]

# Used-target sets are 64-bit masks; the dispatcher must route wider
# graphs to the pure kernel.
MAX_TARGETS = 64


cdef struct Entry:
    double f
    double g
    int level
    unsigned long long used


cdef class _Frontier:
    """Binary min-heap over (f, assignment-key bytes), keys stored inline."""

    cdef Entry* entries
    cdef char* keys
    cdef char* tmp
    cdef Py_ssize_t size
    cdef Py_ssize_t cap
    cdef Py_ssize_t stride

    def __cinit__(self, Py_ssize_t stride):
        self.stride = stride if stride > 0 else 1
        self.cap = 256
        self.size = 0
        self.entries = <Entry*>malloc(self.cap * sizeof(Entry))
        self.keys = <char*>malloc(self.cap * self.stride)
        self.tmp = <char*>malloc(self.stride)
        if self.entries == NULL or self.keys == NULL or self.tmp == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.entries)
        free(self.keys)
        free(self.tmp)

    cdef bint _less(self, Py_ssize_t a, Py_ssize_t b):
        if self.entries[a].f != self.entries[b].f:
            return self.entries[a].f < self.entries[b].f
        return memcmp(self.keys + a * self.stride, self.keys + b * self.stride, self.stride) < 0

    cdef void _swap(self, Py_ssize_t a, Py_ssize_t b):
        cdef Entry t = self.entries[a]
        self.entries[a] = self.entries[b]
        self.entries[b] = t
        memcpy(self.tmp, self.keys + a * self.stride, self.stride)
        memcpy(self.keys + a * self.stride, self.keys + b * self.stride, self.stride)
        memcpy(self.keys + b * self.stride, self.tmp, self.stride)

    cdef int push(self, double f, double g, int level, unsigned long long used, char* key) except -1:
        cdef Py_ssize_t i, parent
        cdef Entry* grown_entries
        cdef char* grown_keys
        if self.size == self.cap:
            self.cap *= 2
            grown_entries = <Entry*>realloc(self.entries, self.cap * sizeof(Entry))
            grown_keys = <char*>realloc(self.keys, self.cap * self.stride)
            if grown_entries != NULL:
                self.entries = grown_entries
            if grown_keys != NULL:
                self.keys = grown_keys
            if grown_entries == NULL or grown_keys == NULL:
                raise MemoryError()
        i = self.size
        self.size += 1
        self.entries[i].f = f
        self.entries[i].g = g
        self.entries[i].level = level
        self.entries[i].used = used
        memcpy(self.keys + i * self.stride, key, self.stride)
        while i > 0:
            parent = (i - 1) >> 1
            if self._less(i, parent):
                self._swap(i, parent)
                i = parent
            else:
                break
        return 0

    cdef void pop_into(self, Entry* out, char* key_out):
        cdef Py_ssize_t i = 0, left, right, best
        out[0] = self.entries[0]
        memcpy(key_out, self.keys, self.stride)
        self.size -= 1
        if self.size == 0:
            return
        self.entries[0] = self.entries[self.size]
        memcpy(self.keys, self.keys + self.size * self.stride, self.stride)
        while True:
            left = 2 * i + 1
            right = left + 1
            best = i
            if left < self.size and self._less(left, best):
                best = left
            if right < self.size and self._less(right, best):
                best = right
            if best == i:
                return
            self._swap(i, best)
            i = best


cdef double _heuristic(int* p1, int* p2, double* sub, int n1, int n2,
                       int level, unsigned long long used,
                       double c_del, double c_ins, double c_edel, double c_eins):
    cdef int len1 = n1 - level
    cdef int len2 = 0
    cdef int u, v, k, w, pw
    cdef int e1_rem = 0, e2_rem = 0
    cdef double lo1 = 0.0, lo2 = 0.0, best, nodes, edges
    for v in range(n2):
        if not (used >> v) & 1:
            len2 += 1
    if len1 == 0 and len2 == 0:
        return 0.0
    for u in range(level, n1):
        best = c_del
        for v in range(n2):
            if not (used >> v) & 1 and sub[u * n2 + v] < best:
                best = sub[u * n2 + v]
        lo1 += best
    if len2 > len1:
        lo1 += (len2 - len1) * c_ins
    for v in range(n2):
        if (used >> v) & 1:
            continue
        best = c_ins
        for u in range(level, n1):
            if sub[u * n2 + v] < best:
                best = sub[u * n2 + v]
        lo2 += best
    if len1 > len2:
        lo2 += (len1 - len2) * c_del
    nodes = lo1 if lo1 > lo2 else lo2
    for k in range(level, n1):
        if p1[k] >= level:
            e1_rem += 1
    for w in range(n2):
        pw = p2[w]
        if pw != -1 and not (used >> w) & 1 and not (used >> pw) & 1:
            e2_rem += 1
    if e1_rem > e2_rem:
        edges = (e1_rem - e2_rem) * c_edel
    else:
        edges = (e2_rem - e1_rem) * c_eins
    return nodes + edges


cdef double _completion(int* p2, int n2, unsigned long long used,
                        double c_ins, double c_eins):
    cdef int w, pw
    cdef double cost = 0.0
    for w in range(n2):
        if not (used >> w) & 1:
            cost += c_ins
    for w in range(n2):
        pw = p2[w]
        if pw != -1 and (not (used >> w) & 1 or not (used >> pw) & 1):
            cost += c_eins
    return cost


def ged_search(parents1, parents2, sub_costs, double c_del, double c_ins,
               double c_edel, double c_eins):
    """Return the minimum edit cost between two parent-array graphs.

    Same contract as _astar_py.ged_search; graphs with more than
    MAX_TARGETS insertion targets are rejected.
    """
    cdef int[::1] p1_view = np.ascontiguousarray(parents1, dtype=np.intc)
    cdef int[::1] p2_view = np.ascontiguousarray(parents2, dtype=np.intc)
    cdef int n1 = p1_view.shape[0]
    cdef int n2 = p2_view.shape[0]
    cdef double[:, ::1] sub_view = np.ascontiguousarray(
        np.asarray(sub_costs, dtype=np.float64).reshape(n1, n2))
    cdef int* p1 = NULL
    cdef int* p2 = NULL
    cdef double* sub = NULL
    cdef int e2_total = 0
    cdef int i, j, v, w, pi, pv, aj, level, del_code
    cdef unsigned long long used, used2
    cdef double g, g2, dg, h2, result
    cdef Entry cur
    cdef char* key = NULL
    cdef char* key2 = NULL
    cdef bint found = False
    cdef _Frontier frontier

    for w in range(n2):
        if p2_view[w] != -1:
            e2_total += 1
    if n1 == 0:
        return n2 * c_ins + e2_total * c_eins
    if n2 > MAX_TARGETS:
        raise ValueError(f"compiled kernel supports at most {MAX_TARGETS} target nodes")

    del_code = n2
    frontier = _Frontier(n1)
    p1 = <int*>malloc(n1 * sizeof(int))
    p2 = <int*>malloc((n2 if n2 > 0 else 1) * sizeof(int))
    sub = <double*>malloc((n1 * n2 if n2 > 0 else 1) * sizeof(double))
    key = <char*>malloc(n1)
    key2 = <char*>malloc(n1)
    if p1 == NULL or p2 == NULL or sub == NULL or key == NULL or key2 == NULL:
        free(p1); free(p2); free(sub); free(key); free(key2)
        raise MemoryError()
    try:
        for i in range(n1):
            p1[i] = p1_view[i]
        for w in range(n2):
            p2[w] = p2_view[w]
        for i in range(n1):
            for v in range(n2):
                sub[i * n2 + v] = sub_view[i, v]

        memset(key, 0, n1)
        frontier.push(_heuristic(p1, p2, sub, n1, n2, 0, 0, c_del, c_ins, c_edel, c_eins),
                      0.0, 0, 0, key)
        while frontier.size > 0:
            frontier.pop_into(&cur, key)
            level = cur.level
            if level == n1:
                found = True
                result = cur.g
                break
            i = level
            used = cur.used
            g = cur.g
            pi = p1[i]
            memcpy(key2, key, n1)
            for v in range(n2):
                if (used >> v) & 1:
                    continue
                dg = sub[i * n2 + v]
                if pi != -1 and pi < i:
                    aj = key[pi] - 1
                    if aj == del_code or p2[v] != aj:
                        dg += c_edel
                pv = p2[v]
                if pv != -1 and (used >> pv) & 1:
                    if not (pi != -1 and pi < i and key[pi] - 1 == pv):
                        dg += c_eins
                for j in range(i):
                    aj = key[j] - 1
                    if p1[j] == i:
                        if aj == del_code or p2[aj] != v:
                            dg += c_edel
                    elif aj != del_code and p2[aj] == v:
                        dg += c_eins
                used2 = used | (<unsigned long long>1) << v
                g2 = g + dg
                if i + 1 == n1:
                    g2 += _completion(p2, n2, used2, c_ins, c_eins)
                    h2 = 0.0
                else:
                    h2 = _heuristic(p1, p2, sub, n1, n2, i + 1, used2,
                                    c_del, c_ins, c_edel, c_eins)
                key2[i] = <char>(v + 1)
                frontier.push(g2 + h2, g2, i + 1, used2, key2)
            dg = c_del
            if pi != -1 and pi < i:
                dg += c_edel
            for j in range(i):
                if p1[j] == i:
                    dg += c_edel
            g2 = g + dg
            if i + 1 == n1:
                g2 += _completion(p2, n2, used, c_ins, c_eins)
                h2 = 0.0
            else:
                h2 = _heuristic(p1, p2, sub, n1, n2, i + 1, used,
                                c_del, c_ins, c_edel, c_eins)
            key2[i] = <char>(del_code + 1)
            frontier.push(g2 + h2, g2, i + 1, used, key2)
    finally:
        free(p1); free(p2); free(sub); free(key); free(key2)
    if not found:
        raise RuntimeError("assignment frontier exhausted before a complete state")
    return result
