"""Exact minimum edit cost between two parent-array trees, pure Python.

Best-first search over partial node assignments: nodes of graph 1 are
decided in index order, each mapped to an unused graph-2 node or
deleted. The accumulated cost covers node operations plus every edge
whose endpoints are both decided; an admissible lower bound on the
undecided remainder orders the frontier, so the first complete
assignment popped is optimal. Ties on f expand the lexicographically
smallest assignment prefix, which makes the expansion order (not just
the result) deterministic.

This module is the reference kernel; _astar.pyx is the compiled twin
with identical semantics.
"""

from __future__ import annotations

import heapq

__all__ = ["ged_search"]


def _heuristic(p1, p2, sub, n1, n2, level, used, c_del, c_ins, c_edel, c_eins):
    # Admissible: every remaining graph-1 node costs at least
    # min(delete, cheapest substitution), every unused graph-2 node at
    # least min(insert, cheapest substitution), and the larger of the
    # two viewpoints is still a lower bound. Edges fully inside the
    # undecided region can only match each other, so the count surplus
    # must be deleted or inserted.
    len1 = n1 - level
    len2 = n2 - used.bit_count()
    if len1 == 0 and len2 == 0:
        return 0.0
    lo1 = 0.0
    for u in range(level, n1):
        row = sub[u]
        best = c_del
        for v in range(n2):
            if not used >> v & 1 and row[v] < best:
                best = row[v]
        lo1 += best
    if len2 > len1:
        lo1 += (len2 - len1) * c_ins
    lo2 = 0.0
    for v in range(n2):
        if used >> v & 1:
            continue
        best = c_ins
        for u in range(level, n1):
            if sub[u][v] < best:
                best = sub[u][v]
        lo2 += best
    if len1 > len2:
        lo2 += (len1 - len2) * c_del
    nodes = lo1 if lo1 > lo2 else lo2
    e1_rem = 0
    for k in range(level, n1):
        if p1[k] >= level:
            e1_rem += 1
    e2_rem = 0
    for w in range(n2):
        pw = p2[w]
        if pw != -1 and not used >> w & 1 and not used >> pw & 1:
            e2_rem += 1
    if e1_rem > e2_rem:
        edges = (e1_rem - e2_rem) * c_edel
    else:
        edges = (e2_rem - e1_rem) * c_eins
    return nodes + edges


def ged_search(parents1, parents2, sub_costs, c_del, c_ins, c_edel, c_eins):
    """Return the minimum edit cost between two parent-array graphs.

    ``parents1``/``parents2`` give each node's parent index (-1 for a
    root, no self-parents); ``sub_costs[i][j]`` is the cost of
    substituting node i of graph 1 by node j of graph 2. Edges are
    unlabeled: a preserved parent relation costs nothing, every other
    edge is deleted or inserted.
    """
    p1 = [int(x) for x in parents1]
    p2 = [int(x) for x in parents2]
    n1 = len(p1)
    n2 = len(p2)
    sub = [[float(sub_costs[i][j]) for j in range(n2)] for i in range(n1)]
    e2_total = sum(1 for w in p2 if w != -1)
    if n1 == 0:
        return n2 * c_ins + e2_total * c_eins

    # Assignment prefixes live in the heap key: slot j holds a[j]+1
    # (deletion is encoded as n2, so its slot is n2+1) and undecided
    # slots hold 0. Keys are unique per state, so tuple comparison
    # never falls through to later entry fields.
    del_code = n2
    pad = (0,) * n1
    start_h = _heuristic(p1, p2, sub, n1, n2, 0, 0, c_del, c_ins, c_edel, c_eins)
    heap = [(start_h, pad, 0.0, 0, 0)]
    while heap:
        f, key, g, level, used = heapq.heappop(heap)
        if level == n1:
            return g
        i = level
        pi = p1[i]
        for v in range(n2):
            if used >> v & 1:
                continue
            dg = sub[i][v]
            if pi != -1 and pi < i:
                aj = key[pi] - 1
                if aj == del_code or p2[v] != aj:
                    dg += c_edel
            pv = p2[v]
            if pv != -1 and used >> pv & 1:
                if not (pi != -1 and pi < i and key[pi] - 1 == pv):
                    dg += c_eins
            for j in range(i):
                aj = key[j] - 1
                if p1[j] == i:
                    if aj == del_code or p2[aj] != v:
                        dg += c_edel
                elif aj != del_code and p2[aj] == v:
                    dg += c_eins
            used2 = used | 1 << v
            g2 = g + dg
            if i + 1 == n1:
                g2 += _completion(p2, n2, used2, c_ins, c_eins)
                h2 = 0.0
            else:
                h2 = _heuristic(p1, p2, sub, n1, n2, i + 1, used2, c_del, c_ins, c_edel, c_eins)
            key2 = key[:i] + (v + 1,) + key[i + 1:]
            heapq.heappush(heap, (g2 + h2, key2, g2, i + 1, used2))
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
            h2 = _heuristic(p1, p2, sub, n1, n2, i + 1, used, c_del, c_ins, c_edel, c_eins)
        key2 = key[:i] + (del_code + 1,) + key[i + 1:]
        heapq.heappush(heap, (g2 + h2, key2, g2, i + 1, used))
    raise RuntimeError("assignment frontier exhausted before a complete state")


def _completion(p2, n2, used, c_ins, c_eins):
    # All graph-1 nodes are decided: unused graph-2 nodes are inserted,
    # along with every graph-2 edge touching at least one of them.
    cost = (n2 - used.bit_count()) * c_ins
    for w in range(n2):
        pw = p2[w]
        if pw != -1 and (not used >> w & 1 or not used >> pw & 1):
            cost += c_eins
    return cost
