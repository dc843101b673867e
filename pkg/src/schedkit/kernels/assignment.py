"""Min-cost perfect assignment (Hungarian, O(n^3)) with dual certificates."""

from __future__ import annotations

from fractions import Fraction


def min_cost_assignment(cost, allow_partial=False):
    """Optimal perfect matching of a square rational cost matrix.

    Returns (match, total, (u, v)) where match[row] = column, total is the
    exact cost, and (u, v) are dual potentials certifying optimality by
    complementary slackness: u[i] + v[j] <= cost[i][j] with equality on
    matched cells.

    Rectangular input is padded to square with a large cost: with
    allow_partial the padding rows/columns absorb the surplus side.
    """
    rows = len(cost)
    cols = len(cost[0]) if rows else 0
    n = max(rows, cols)
    if n == 0:
        return [], Fraction(0), ([], [])
    big = max((abs(Fraction(c)) for row in cost for c in row), default=Fraction(0))
    pad = big * n + 1
    a = [[Fraction(cost[i][j]) if i < rows and j < cols else pad
          for j in range(n)] for i in range(n)]
    if rows != cols and not allow_partial:
        raise ValueError("matrix is not square; pass allow_partial to pad")

    INF = None
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    p = [0] * (n + 1)        # p[j] = row matched to column j (1-based), 0 = none
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = -1
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = a[i0 - 1][j - 1] - u[i0] - v[j]
                if minv[j] is None or cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is None or minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    match_full = [-1] * n
    for j in range(1, n + 1):
        match_full[p[j] - 1] = j - 1
    match = []
    total = Fraction(0)
    for i in range(rows):
        j = match_full[i]
        if j < cols:
            match.append(j)
            total += Fraction(cost[i][j])
        else:
            match.append(None)
    pot_u = [u[i + 1] for i in range(rows)]
    pot_v = [v[j + 1] for j in range(cols)]
    return match, total, (pot_u, pot_v)


def check_duals(cost, match, duals):
    """Complementary-slackness check of a returned assignment."""
    u, v = duals
    rows = len(cost)
    cols = len(cost[0]) if rows else 0
    for i in range(rows):
        for j in range(cols):
            if u[i] + v[j] > Fraction(cost[i][j]):
                return False
    for i, j in enumerate(match):
        if j is not None and u[i] + v[j] != Fraction(cost[i][j]):
            return False
    return True
