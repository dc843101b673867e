"""Knapsack: dense table DP, dominance pair lists, an FPTAS, and branch-and-bound."""

from __future__ import annotations

from fractions import Fraction


def knapsack(items, capacity, mode="pairs", eps=None):
    """Max-value subset of (size, value) items fitting the capacity.

    mode: dense | pairs | fptas | bb. The fptas mode needs eps and returns a
    value of at least (1 - eps) times the optimum; all other modes are exact.
    Returns (value, chosen_indices).
    """
    for (s, v) in items:
        if s > capacity:
            raise ValueError("item size exceeds capacity")
        if s < 0 or v < 0:
            raise ValueError("sizes and values must be nonnegative")
    if mode == "dense":
        return _dense(items, capacity)
    if mode == "pairs":
        return _pairs(items, capacity)
    if mode == "fptas":
        if eps is None or eps <= 0:
            raise ValueError("fptas mode needs eps > 0")
        return _fptas(items, capacity, eps)
    if mode == "bb":
        return _bb(items, capacity)
    raise ValueError("unknown mode %r" % mode)


def _dense(items, capacity):
    n = len(items)
    A = [[0] * (capacity + 1) for _ in range(n + 1)]
    for j in range(1, n + 1):
        s, v = items[j - 1]
        for c in range(capacity + 1):
            if s <= c:
                A[j][c] = max(A[j - 1][c], v + A[j - 1][c - s])
            else:
                A[j][c] = A[j - 1][c]
    chosen = []
    c = capacity
    for j in range(n, 0, -1):
        s, v = items[j - 1]
        if s <= c and A[j][c] == v + A[j - 1][c - s]:
            chosen.append(j - 1)
            c -= s
    chosen.reverse()
    return A[n][capacity], chosen


def merge_pairs(old, new):
    """Merge two pair lists; discard dominated pairs, so the result is strictly
    increasing in both coordinates."""
    merged = sorted(old + new, key=lambda e: (e[0], -e[1]))
    out = []
    best = None
    for (t, w) in merged:
        if best is None or w > best:
            out.append((t, w))
            best = w
    return out


def pair_lists(items, capacity):
    """All intermediate dominance pair lists (size, value) of the list DP."""
    lists = [[(0, 0)]]
    cur = [(0, 0)]
    for (s, v) in items:
        cand = [(t + s, w + v) for (t, w) in cur if t + s <= capacity]
        cur = merge_pairs(cur, cand)
        lists.append(cur)
    return lists


def _pairs(items, capacity):
    # pair lists with parent pointers for set recovery
    cur = [(0, 0, 0, False)]   # (size, value, parent index in previous list, took j)
    history = []
    for j, (s, v) in enumerate(items):
        entries = [(t, w, k, False) for k, (t, w, _, _) in enumerate(cur)]
        entries += [(t + s, w + v, k, True) for k, (t, w, _, _) in enumerate(cur)
                    if t + s <= capacity]
        entries.sort(key=lambda e: (e[0], -e[1]))
        nxt = []
        best = None
        for e in entries:
            if best is None or e[1] > best:
                nxt.append(e)
                best = e[1]
        history.append(cur)
        cur = nxt
    entry = max(cur, key=lambda e: e[1])
    best_w = entry[1]
    chosen = []
    for j in range(len(items) - 1, -1, -1):
        _, _, k, took = entry
        if took:
            chosen.append(j)
        entry = history[j][k]
    chosen.reverse()
    return best_w, chosen


def _fptas(items, capacity, eps):
    n = len(items)
    W = max((v for (_, v) in items), default=0)
    if W == 0:
        return 0, []
    K = Fraction(eps) * W / n
    scaled = [(s, int(Fraction(v) / K)) for (s, v) in items]
    _, chosen = _pairs(scaled, capacity)
    value = sum(items[j][1] for j in chosen)
    return value, chosen


def _lp_bound(order, items, capacity, fixed_in, fixed_out):
    """Fractional relaxation: greedy by ratio with one fractional item."""
    used = sum(items[j][0] for j in fixed_in)
    if used > capacity:
        return None
    value = Fraction(sum(items[j][1] for j in fixed_in))
    room = capacity - used
    for j in order:
        if j in fixed_in or j in fixed_out:
            continue
        s, v = items[j]
        if s <= room:
            room -= s
            value += v
        else:
            if s > 0:
                value += Fraction(v) * room / s
            room = 0
            break
    return value


def _bb(items, capacity):
    n = len(items)
    order = sorted(range(n), key=lambda j: (-Fraction(items[j][1], items[j][0])
                                            if items[j][0] else Fraction(-10**18), j))
    best = [Fraction(0), []]

    def greedy_value(fixed_in, fixed_out):
        used = sum(items[j][0] for j in fixed_in)
        chosen = list(fixed_in)
        value = sum(items[j][1] for j in fixed_in)
        room = capacity - used
        for j in order:
            if j in fixed_in or j in fixed_out:
                continue
            s, v = items[j]
            if s <= room:
                chosen.append(j)
                room -= s
                value += v
        return value, chosen

    def rec(pos, fixed_in, fixed_out):
        bound = _lp_bound(order, items, capacity, fixed_in, fixed_out)
        if bound is None or bound <= best[0]:
            return
        value, chosen = greedy_value(fixed_in, fixed_out)
        if value > best[0]:
            best[0] = Fraction(value)
            best[1] = sorted(chosen)
        # branch on the first undecided item in ratio order
        for j in order[pos:]:
            if j not in fixed_in and j not in fixed_out:
                rec(pos + 1, fixed_in | {j}, fixed_out)
                rec(pos + 1, fixed_in, fixed_out | {j})
                return

    rec(0, frozenset(), frozenset())
    return int(best[0]), best[1]
