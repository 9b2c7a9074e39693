"""Independent reference implementations used only by the test-suite.

Nothing here imports the code under test's algorithms; the oracles work on
plain ``(text, weight)`` tuples and texts.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations

INF = float("inf")


def _is_subsequence(sub, seq):
    it = iter(seq)
    return all(any(x == y for y in it) for x in sub)


def brute_force_edit_distance(s, a):
    """Minimum over edit scripts, via enumeration of the kept items.

    Any insert/remove script can be reordered into "remove some items of a,
    then insert the missing items of s" without changing its cost; the items
    of ``a`` that survive form a common subsequence.  So enumerating every
    subset of ``a`` (kept in order) and keeping those that are subsequences of
    ``s`` covers every script's cost.  ``s`` and ``a`` are lists of
    ``(text, weight)`` tuples.
    """
    total_s = sum((w for _, w in s), Fraction(0))
    total_a = sum((w for _, w in a), Fraction(0))
    best = None
    s_texts = [t for t, _ in s]
    for k in range(len(a) + 1):
        for keep in combinations(range(len(a)), k):
            kept = [a[i][0] for i in keep]
            if not _is_subsequence(kept, s_texts):
                continue
            kept_w = sum((a[i][1] for i in keep), Fraction(0))
            cost = (total_a - kept_w) + (total_s - kept_w)
            if best is None or cost < best:
                best = cost
    return best


def search_edit_distance(s, a):
    """Dijkstra over the literal state space of sequences.

    Each edge inserts one item (anywhere) or removes one item.  Only feasible
    for very short inputs; used to validate the enumeration oracle itself.
    """
    weights = dict(s)
    weights.update(dict(a))
    alphabet = sorted(weights)
    target = tuple(t for t, _ in s)
    start = tuple(t for t, _ in a)
    limit = len(s) + len(a)
    dist = {start: Fraction(0)}
    heap = [(Fraction(0), start)]
    while heap:
        d, state = heapq.heappop(heap)
        if state == target:
            return d
        if d > dist.get(state, d):
            continue
        succ = []
        for i in range(len(state)):
            succ.append((state[:i] + state[i + 1 :], weights[state[i]]))
        if len(state) < limit:
            for i in range(len(state) + 1):
                for t in alphabet:
                    succ.append((state[:i] + (t,) + state[i:], weights[t]))
        for nxt, cost in succ:
            nd = d + cost
            if nd < dist.get(nxt, INF):
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    raise AssertionError("target unreachable")


def algorithm1_trace(sol_texts, sol_weights, entry_flags, attempt):
    """Step-by-step execution of the entry-point pseudocode.

    A tiny program-counter machine; ``pc`` values are the pseudocode line
    numbers.  Membership and index lookups are read as "in the attempt at or
    after ansIdx".  Returns ``(r, trace)`` with one entry per executed line.
    """
    s, w, a = list(sol_texts), list(sol_weights), list(attempt)
    trace = []
    r = None
    solIdx = ansIdx = None
    # call frame for FINDNEXTSEQUENCESTART
    f_sol = f_ans = None
    ret_pc = None
    pc = 11
    while True:
        trace.append(pc)
        if pc == 1:
            pc = 2
        elif pc == 2:
            pc = 3 if f_sol < len(s) else 8
        elif pc == 3:
            tail = a[f_ans:]
            if entry_flags[f_sol] and s[f_sol] in tail:
                pc = 4
            else:
                pc = 6
        elif pc == 4:
            result = (f_sol, f_ans + a[f_ans:].index(s[f_sol]))
            solIdx, ansIdx = result
            pc = ret_pc
        elif pc == 6:
            f_sol = f_sol + 1
            pc = 2
        elif pc == 8:
            solIdx, ansIdx = INF, INF
            pc = ret_pc
        elif pc == 11:
            r = Fraction(0)
            pc = 12
        elif pc == 12:
            f_sol, f_ans, ret_pc = 0, 0, 13
            pc = 1
        elif pc == 13:
            pc = 14 if (solIdx < len(s) and ansIdx < len(a)) else 21
        elif pc == 14:
            pc = 15 if s[solIdx] == a[ansIdx] else 18
        elif pc == 15:
            r = r + w[solIdx]
            pc = 16
        elif pc == 16:
            solIdx, ansIdx = solIdx + 1, ansIdx + 1
            pc = 13
        elif pc == 18:
            f_sol, f_ans, ret_pc = solIdx, ansIdx, 13
            pc = 1
        elif pc == 21:
            return r, trace
        else:  # pragma: no cover
            raise AssertionError(f"bad pc {pc}")
