"""Dense LP: two-phase simplex with Bland's-rule fallback and dual values.

Two arithmetic modes share one pivoting scheme: float (numpy, tolerance 1e-9,
Dantzig entering rule with a Bland fallback against cycling) and exact
(Fraction arithmetic, Bland's rule throughout). Basic solutions are extreme
points by construction. Every answer carries the dual vector y; on feasible
bounded problems c.x - b.y vanishes within tolerance (exactly in exact mode).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

TOL = 1e-9


class LPError(RuntimeError):
    """Numerical failure (iteration limit, lost feasibility); never silent."""


@dataclass
class DenseLP:
    """Minimize c.x subject to rows (a, sense, b) with senses >=, <=, =
    and x >= 0."""
    c: list
    rows: list = field(default_factory=list)   # (coeff list, sense, rhs)

    def add(self, coeffs, sense, rhs):
        if sense not in (">=", "<=", "="):
            raise ValueError("bad sense %r" % sense)
        self.rows.append((list(coeffs), sense, rhs))

    @property
    def ncols(self):
        return len(self.c)


@dataclass
class LPResult:
    status: str                  # optimal | infeasible | unbounded
    x: list | None = None
    value: object = None
    y: list | None = None        # dual per constraint row


class _Unbounded(Exception):
    pass


def lp_solve(lp, want_extreme=True, exact=False, max_iters=None):
    if exact:
        return _simplex(lp, exact=True, max_iters=max_iters)
    return _simplex(lp, exact=False, max_iters=max_iters)


def _simplex(lp, exact, max_iters=None):
    m = len(lp.rows)
    n = lp.ncols
    if exact:
        zero, one = Fraction(0), Fraction(1)
        num = Fraction
    else:
        zero, one = 0.0, 1.0
        num = float

    # equality standard form with rhs >= 0; every row gets an artificial
    A = []
    b = []
    senses = []
    row_sign = []
    for (coeffs, sense, rhs) in lp.rows:
        coeffs = [num(v) for v in coeffs] + [zero] * (n - len(coeffs))
        rhs = num(rhs)
        if rhs < zero:
            coeffs = [-v for v in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
            row_sign.append(-1)
        else:
            row_sign.append(1)
        A.append(coeffs)
        b.append(rhs)
        senses.append(sense)

    nslack = sum(1 for s in senses if s != "=")
    total = n + nslack + m      # structurals, slacks/surplus, artificials
    slack_col = {}
    art_col = {}
    col = n
    for i, s in enumerate(senses):
        if s != "=":
            slack_col[i] = col
            col += 1
    for i in range(m):
        art_col[i] = col
        col += 1

    if exact:
        T = [[zero] * total for _ in range(m)]
        for i in range(m):
            for j in range(n):
                T[i][j] = A[i][j]
            if i in slack_col:
                T[i][slack_col[i]] = one if senses[i] == "<=" else -one
            T[i][art_col[i]] = one
    else:
        T = np.zeros((m, total))
        for i in range(m):
            T[i, :n] = A[i]
            if i in slack_col:
                T[i, slack_col[i]] = 1.0 if senses[i] == "<=" else -1.0
            T[i, art_col[i]] = 1.0
        b = np.array(b, dtype=float)

    basis = [art_col[i] for i in range(m)]
    limit = max_iters or 200 * (m + total) + 2000

    def pivot(T, b, r, c):
        if exact:
            piv = T[r][c]
            T[r] = [v / piv for v in T[r]]
            b[r] = b[r] / piv
            for i in range(m):
                if i != r and T[i][c] != zero:
                    f = T[i][c]
                    T[i] = [vi - f * vr for vi, vr in zip(T[i], T[r])]
                    b[i] = b[i] - f * b[r]
        else:
            piv = T[r, c]
            T[r] /= piv
            b[r] /= piv
            colv = T[:, c].copy()
            colv[r] = 0.0
            T -= np.outer(colv, T[r])
            b -= colv * b[r]
        basis[r] = c

    def run(costs, allowed, phase1):
        iters = 0
        bland = exact
        stall = 0
        last_obj = None
        while True:
            iters += 1
            if iters > limit:
                raise LPError("simplex iteration limit reached")
            # reduced costs: z_j - c_j relative to basis
            if exact:
                y = [costs[basis[i]] for i in range(m)]
                red = []
                for j in range(total):
                    if not allowed[j]:
                        red.append(zero)
                        continue
                    zj = sum(y[i] * T[i][j] for i in range(m))
                    red.append(costs[j] - zj)
                entering = None
                for j in range(total):
                    if allowed[j] and red[j] < zero:
                        entering = j
                        break
            else:
                cb = np.array([costs[basis[i]] for i in range(m)])
                red = np.asarray(costs) - cb @ T
                red[~allowed] = 0.0
                if bland:
                    neg = np.nonzero(red < -TOL)[0]
                    entering = int(neg[0]) if len(neg) else None
                else:
                    j = int(np.argmin(red))
                    entering = j if red[j] < -TOL else None
            if entering is None:
                return
            # ratio test
            leaving = None
            best = None
            for i in range(m):
                a = T[i][entering] if exact else T[i, entering]
                if (a > zero) if exact else (a > TOL):
                    ratio = b[i] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                        best = ratio
                        leaving = i
            if leaving is None:
                raise _Unbounded()
            pivot(T, b, leaving, entering)
            if not exact and not bland:
                obj = float(np.array([costs[basis[i]] for i in range(m)]) @ b)
                if last_obj is not None and obj >= last_obj - TOL:
                    stall += 1
                    if stall > 3 * (m + 5):
                        bland = True
                else:
                    stall = 0
                last_obj = obj

    # phase 1
    costs1 = [zero] * total
    for i in range(m):
        costs1[art_col[i]] = one
    allowed1 = [True] * total if exact else np.ones(total, dtype=bool)
    try:
        run(costs1, allowed1, True)
    except _Unbounded:
        raise LPError("phase 1 unbounded; malformed input")
    infeas = sum((b[i] for i in range(m) if basis[i] >= n + nslack), zero)
    if (infeas > 0 if exact else infeas > 1e-7):
        return LPResult(status="infeasible", y=None)

    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n + nslack:
            swapped = False
            for j in range(n + nslack):
                a = T[i][j] if exact else T[i, j]
                nonzero = (a != zero) if exact else abs(a) > TOL
                if nonzero:
                    pivot(T, b, i, j)
                    swapped = True
                    break
            # a fully zero row stays basic-artificial at value 0; harmless

    # phase 2
    costs2 = ([num(v) for v in lp.c] + [zero] * (nslack + m))
    allowed2 = [j < n + nslack for j in range(total)]
    if not exact:
        allowed2 = np.array(allowed2)
        costs2 = np.array(costs2, dtype=float)
    try:
        run(costs2, allowed2, False)
    except _Unbounded:
        return LPResult(status="unbounded")

    x = [zero] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = b[i]
    value = sum(num(lp.c[j]) * x[j] for j in range(n))

    # duals read off the artificial block: y = c_B B^{-1}; artificial columns
    # started as the identity, so column art_col[i] of the tableau is B^{-1} e_i
    y = []
    for i in range(m):
        if exact:
            yi = sum(costs2[basis[r]] * T[r][art_col[i]] for r in range(m))
        else:
            yi = float(np.array([costs2[basis[r]] for r in range(m)]) @ T[:, art_col[i]])
        y.append(yi * row_sign[i])
    if exact:
        return LPResult(status="optimal", x=x, value=value, y=y)
    return LPResult(status="optimal", x=[float(v) for v in x],
                    value=float(value), y=[float(v) for v in y])


def duality_gap(lp, res):
    """c.x - b.y for a solved LP; zero within tolerance when optimal."""
    cx = sum(ci * xi for ci, xi in zip(lp.c, res.x))
    by = sum(rhs * yi for (_, _, rhs), yi in zip(lp.rows, res.y))
    return cx - by


def rationalize(xs, max_den=10 ** 6):
    """Snap floats to small-denominator rationals (for vertex certification)."""
    return [Fraction(x).limit_denominator(max_den) for x in xs]
