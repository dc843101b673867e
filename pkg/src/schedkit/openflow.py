"""Open shops and flow shops: the two-machine exact rule, Steinitz vector
balancing with the ring-rotation construction, greedy dispatch, the
three-machine PTAS, Johnson's rule, aggregation, the vector-sum permutation
bound, constructive heuristics, and local search."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core.instance import Instance, Job
from .core.schedule import Schedule
from .oracle import OracleBudget, _shop_active_bb


# ---------------------------------------------------------------------------
# vector rearrangement
# ---------------------------------------------------------------------------


def norm_linf(v):
    return max((abs(x) for x in v), default=Fraction(0))


def norm_bstar(v):
    """Unit ball: |x_k| <= 1 and |x_k - x_l| <= 1."""
    worst = max((abs(x) for x in v), default=Fraction(0))
    for i in range(len(v)):
        for k in range(i + 1, len(v)):
            worst = max(worst, abs(v[i] - v[k]))
    return worst


NORMS = {"linf": norm_linf, "bstar": norm_bstar}


@dataclass
class VectorFamily:
    vectors: list                  # tuples of Fractions
    norm: str = "linf"

    def validate(self):
        d = len(self.vectors[0]) if self.vectors else 0
        if any(len(v) != d for v in self.vectors):
            raise ValueError("vectors must share one dimension")
        total = [sum(v[i] for v in self.vectors) for i in range(d)]
        if any(x != 0 for x in total):
            raise ValueError("vectors must sum to zero")
        fn = NORMS[self.norm]
        for v in self.vectors:
            if fn(v) > 1:
                raise ValueError("every vector must have norm at most 1")
        return self


def _null_direction(cols, rows):
    """A nonzero rational null vector of the (rows x cols) matrix, or None."""
    m = [list(r) for r in rows]
    ncols = cols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, len(m)):
            if m[rr][c] != 0:
                pr = rr
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for rr in range(len(m)):
            if rr != r and m[rr][c] != 0:
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    z = [Fraction(0)] * ncols
    z[fc] = Fraction(1)
    for ri, pc in enumerate(pivots):
        z[pc] = -m[ri][fc]
    return z


def steinitz(vf):
    """Permutation with every prefix-sum norm at most d (the dimension).

    Nested support sets are pinned by extreme points of the system
    sum x = |V| - 1 - d, sum x v = 0, 0 <= x <= 1: the previous coefficients
    are rescaled and purified to a vertex by null-space moves, and a vector
    with coefficient zero is dropped. The construction never reads the norm,
    so the output permutation is identical for every norm selector.

    Large families run the same loop in floats first; the exact prefix check
    accepts or falls back to rational arithmetic."""
    vf.validate()
    vectors = [tuple(Fraction(x) for x in v) for v in vf.vectors]
    n = len(vectors)
    d = len(vectors[0]) if vectors else 0
    if n <= d:
        return list(range(n))
    if n > 40:
        perm = _steinitz_float(vectors, d)
        if perm is not None and all(x <= d for x in prefix_norms(vf, perm)):
            return perm
    return _steinitz_exact(vectors, n, d)


def _steinitz_float(vectors, d):
    import numpy as np
    V = np.array([[float(x) for x in v] for v in vectors])
    n = len(vectors)
    alive = list(range(n))
    x = np.full(n, (n - 1 - d) / n)
    dropped = []
    tol = 1e-10
    while len(alive) > d:
        for _ in range(4 * n + 16):
            interior = [v for v in alive if tol < x[v] < 1 - tol]
            if not interior:
                break
            window = interior[:d + 2]
            rows = np.vstack([np.ones(len(window)), V[window].T])
            _, s, vt = np.linalg.svd(rows)
            if len(window) <= rows.shape[0] and (len(s) == len(window) and s[-1] > 1e-9):
                break
            z = vt[-1]
            tpos = tneg = None
            for xi, zi in zip(x[window], z):
                if zi > tol:
                    tpos = min(tpos, (1 - xi) / zi) if tpos is not None else (1 - xi) / zi
                    tneg = min(tneg, xi / zi) if tneg is not None else xi / zi
                elif zi < -tol:
                    tpos = min(tpos, xi / (-zi)) if tpos is not None else xi / (-zi)
                    tneg = min(tneg, (1 - xi) / (-zi)) if tneg is not None else (1 - xi) / (-zi)
            if tpos is None and tneg is None:
                break
            t = tpos if (tpos is not None and (tneg is None or tpos <= tneg)) else -tneg
            for v, zi in zip(window, z):
                x[v] = min(1.0, max(0.0, x[v] + t * zi))
        drop = min(alive, key=lambda v: x[v])
        alive.remove(drop)
        dropped.append(drop)
        A = len(alive)
        if A <= d:
            break
        cur = float(sum(x[v] for v in alive))
        if cur <= 0:
            return None
        factor = (A - 1 - d) / cur
        for v in alive:
            x[v] = min(1.0, x[v] * factor)
    return alive + list(reversed(dropped))


def _steinitz_exact(vectors, n, d):
    alive = list(range(n))
    x = {v: Fraction(n - 1 - d, n) for v in alive}
    dropped = []

    def move(window):
        rows = [[Fraction(1)] * len(window)]
        for dim in range(d):
            rows.append([vectors[v][dim] for v in window])
        z = _null_direction(len(window), rows)
        if z is None:
            return False
        tpos = None
        tneg = None
        for xi, zi in zip((x[v] for v in window), z):
            if zi > 0:
                tpos = min(tpos, (1 - xi) / zi) if tpos is not None else (1 - xi) / zi
                tneg = min(tneg, xi / zi) if tneg is not None else xi / zi
            elif zi < 0:
                tpos = min(tpos, xi / (-zi)) if tpos is not None else xi / (-zi)
                tneg = min(tneg, (1 - xi) / (-zi)) if tneg is not None else (1 - xi) / (-zi)
        t = tpos if (tpos is not None and (tneg is None or tpos <= tneg)) else -tneg
        for v, zi in zip(window, z):
            x[v] = x[v] + t * zi
        return True

    while len(alive) > d:
        # purify x to a vertex: a null direction always exists inside any
        # window of d+2 interior coordinates, so each move costs O(d^3)
        while True:
            interior = [v for v in alive if 0 < x[v] < 1]
            if len(interior) >= d + 2:
                move(interior[:d + 2])
                continue
            if not interior or not move(interior):
                break
        zero = [v for v in alive if x[v] == 0]
        if not zero:
            raise RuntimeError("no vanishing coefficient at the extreme point")
        drop = zero[0]
        alive.remove(drop)
        dropped.append(drop)
        del x[drop]
        A = len(alive)
        if A <= d:
            break
        # rescale onto the next level: the sum drops to A - 1 - d, bounds hold
        cur = sum(x.values())
        if cur > 0:
            factor = Fraction(A - 1 - d) / cur
            for v in alive:
                x[v] *= factor
    return alive + list(reversed(dropped))


def prefix_norms(vf, perm):
    fn = NORMS[vf.norm]
    d = len(vf.vectors[0]) if vf.vectors else 0
    acc = [Fraction(0)] * d
    out = []
    for idx in perm:
        acc = [a + b for a, b in zip(acc, vf.vectors[idx])]
        out.append(fn(acc))
    return out


# ---------------------------------------------------------------------------
# open shops
# ---------------------------------------------------------------------------


def _op_lengths(inst):
    """(job, machine) -> length for shop instances."""
    out = {}
    for j in inst.jobs:
        for (i, p) in inst.routing(j.id):
            out[(j.id, i)] = out.get((j.id, i), 0) + p
    return out


def o2_exact(inst):
    """O2||Cmax at the beta bound by the longest-alternate-processing-time
    dispatch: a freed machine starts the available job with the most work left
    on the other machine."""
    if inst.env != "openO" or inst.m != 2:
        raise ValueError("o2_exact needs a two-machine open shop")
    ops = _op_lengths(inst)
    remaining = {key: Fraction(v) for key, v in ops.items() if v > 0}
    busy_until = {1: Fraction(0), 2: Fraction(0)}
    busy_job = {1: None, 2: None}
    sch = Schedule()
    t = Fraction(0)
    while remaining:
        for i in (1, 2):
            if busy_until[i] > t:
                continue
            busy_job[i] = None
        progress = []
        for i in (1, 2):
            if busy_until[i] > t:
                continue
            other = 3 - i
            cands = [jid for (jid, mach) in remaining if mach == i
                     and busy_job[other] != jid]
            if not cands:
                continue
            jid = max(cands, key=lambda j: (remaining.get((j, other), Fraction(0)), -j))
            dur = remaining.pop((jid, i))
            h = [x for x, (mm, pp) in enumerate(inst.routing(jid)) if mm == i]
            sch.add(jid, i, t, t + dur, op=h[0] if h else None)
            busy_until[i] = t + dur
            busy_job[i] = jid
            progress.append(i)
        future = [busy_until[i] for i in (1, 2) if busy_until[i] > t]
        if not future:
            if remaining and not progress:
                raise RuntimeError("dispatch deadlock")
            continue
        t = min(future)
    return sch, sch.makespan()


def o_greedy(inst, order=None):
    """Greedy open-shop dispatch: whenever a machine idles and a job with an
    unprocessed operation on it is not busy elsewhere, start it (ties by the
    given order, default smallest id). Cmax <= L_max + p_max <= 2 beta."""
    if inst.env != "openO":
        raise ValueError("o_greedy needs an open shop")
    prio = {jid: k for k, jid in enumerate(order or inst.job_ids())}
    ops = _op_lengths(inst)
    remaining = {key: Fraction(v) for key, v in ops.items() if v > 0}
    m = inst.m
    busy_until = {i: Fraction(0) for i in range(1, m + 1)}
    job_busy = {j.id: Fraction(0) for j in inst.jobs}
    sch = Schedule()
    t = Fraction(0)
    while remaining:
        progressed = False
        for i in range(1, m + 1):
            if busy_until[i] > t:
                continue
            cands = [jid for (jid, mach) in remaining
                     if mach == i and job_busy[jid] <= t]
            if not cands:
                continue
            jid = min(cands, key=lambda j: prio[j])
            dur = remaining.pop((jid, i))
            h = [x for x, (mm, pp) in enumerate(inst.routing(jid)) if mm == i]
            sch.add(jid, i, t, t + dur, op=h[0] if h else None)
            busy_until[i] = t + dur
            job_busy[jid] = t + dur
            progressed = True
        events = [v for v in busy_until.values() if v > t]
        events += [v for v in job_busy.values() if v > t]
        if not events:
            if remaining:
                raise RuntimeError("dispatch deadlock")
            break
        t = min(events)
    return sch, sch.makespan()


class FialaPreconditionError(ValueError):
    pass


def fiala(inst):
    """Om||Cmax at exactly L_max whenever L_max >= (m^2 + m - 1) o_max: balance
    loads with dummy jobs, order by the vector-sum permutation, wrap the
    per-machine rings around a cylinder of circumference L_max, and rotate
    each ring into feasibility."""
    if inst.env != "openO":
        raise ValueError("fiala needs an open shop")
    m = inst.m
    bounds = inst.shop_bounds()
    omax = Fraction(bounds["o_max"])
    lmax = Fraction(bounds["L_max"])
    if omax == 0:
        return Schedule(), Fraction(0)
    if lmax < (m * m + m - 1) * omax:
        raise FialaPreconditionError("L_max below (m^2+m-1) o_max; use o_greedy "
                                     "or the fixed-m scheme")
    ops = {}
    for j in inst.jobs:
        for (i, p) in inst.routing(j.id):
            if p:
                ops[(j.id, i)] = Fraction(p)
    # dummy jobs raise every machine load to L_max without changing o_max
    dummy = 0
    for i in range(1, m + 1):
        deficit = lmax - bounds["loads"][i]
        while deficit > 0:
            dummy -= 1
            chunk = min(omax, deficit)
            ops[(dummy, i)] = chunk
            deficit -= chunk
    jobs = sorted({jid for (jid, _) in ops})
    vecs = []
    for jid in jobs:
        row = [ops.get((jid, i), Fraction(0)) for i in range(1, m + 1)]
        vecs.append(tuple((row[i] - row[m - 1]) / omax for i in range(m - 1)))
    vf = VectorFamily(vecs, norm="bstar")
    perm = steinitz(vf)
    order = [jobs[k] for k in perm]

    starts = {}
    for i in range(1, m + 1):
        t = Fraction(0)
        for jid in order:
            length = ops.get((jid, i), Fraction(0))
            starts[(jid, i)] = t
            t += length

    # per-ring shifts: delta resolves collisions with the previous machine,
    # epsilon aligns an operation start with the cut point
    comp = {}
    for i in range(1, m + 1):
        for jid in order:
            comp[(jid, i)] = starts[(jid, i)] + ops.get((jid, i), Fraction(0))
    rho = {1: Fraction(0)}
    for i in range(2, m + 1):
        delta = Fraction(0)
        for k in range(1, len(order)):
            delta = max(delta, comp[(order[k], i - 1)] + rho[i - 1]
                        - comp[(order[k - 1], i)])
        # epsilon: advance until some operation start sits at the cut
        eps = None
        for jid in order:
            if ops.get((jid, i), Fraction(0)) == 0:
                continue
            pos = (starts[(jid, i)] + delta) % lmax
            gap = (lmax - pos) % lmax
            eps = gap if eps is None else min(eps, gap)
        rho[i] = delta + (eps or Fraction(0))
    sch = Schedule()
    for (jid, i), s in starts.items():
        length = ops.get((jid, i), Fraction(0))
        if length == 0 or jid < 0:
            continue
        pos = (s + rho[i]) % lmax
        h = [x for x, (mm, pp) in enumerate(inst.routing(jid)) if mm == i]
        end = pos + length
        if end > lmax + Fraction(1, 10 ** 12):
            raise RuntimeError("operation straddles the cut; rotation failed")
        sch.add(jid, i, pos, min(end, lmax), op=h[0] if h else None)
    return sch, lmax


def o3_ptas(inst, eps):
    """PTAS for O3||Cmax: drop the nasty middle-size jobs at a good threshold,
    schedule the big jobs exactly, pack small operations greedily into the
    gaps, and append the dropped jobs greedily; the result stays within
    (1 + 3 eps^2 + 6 eps) beta."""
    if inst.env != "openO" or inst.m != 3:
        raise ValueError("o3_ptas needs a three-machine open shop")
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps in (0,1)")
    bounds = inst.shop_bounds()
    beta = Fraction(bounds["beta"])
    if beta == 0:
        return Schedule(), Fraction(0)
    ops = _op_lengths(inst)

    k = 0
    while True:
        delta = eps ** (2 ** k)
        nasty_jobs = set()
        nasty_total = Fraction(0)
        for j in inst.jobs:
            sizes = [Fraction(ops.get((j.id, i), 0)) for i in range(1, 4)]
            if max(sizes) >= delta * beta:
                continue              # delta-big job
            bad = [s for s in sizes if delta * delta * beta < s < delta * beta]
            if bad:
                nasty_jobs.add(j.id)
                nasty_total += sum(bad)
        if nasty_total <= eps * beta:
            break
        k += 1
        if k > int(3 / eps) + 2:
            raise RuntimeError("no admissible threshold found")

    big = [j.id for j in inst.jobs
           if j.id not in nasty_jobs
           and max(Fraction(ops.get((j.id, i), 0)) for i in range(1, 4)) >= delta * beta]
    small = [j.id for j in inst.jobs if j.id not in nasty_jobs and j.id not in big]

    if big:
        sub = Instance(env="openO", m=3,
                       jobs=[Job(id=jid, p=sum(p for (_, p) in inst.routing(jid)))
                             for jid in big],
                       routings={jid: inst.routing(jid) for jid in big},
                       name="big").validate()
        _, big_sched = _shop_active_bb(sub, _counter_for(10 ** 6))
    else:
        big_sched = Schedule()
    sch = Schedule(big_sched.pieces)
    sch = _greedy_fill(inst, sch, small)
    sch = _greedy_fill(inst, sch, sorted(nasty_jobs))
    return sch, sch.makespan()


def _counter_for(nodes):
    from .oracle import _Counter
    return _Counter(OracleBudget(max_nodes=nodes, max_seconds=120))


def _greedy_fill(inst, sch, job_ids):
    """Greedy open-shop dispatch of the given jobs around the fixed pieces."""
    remaining = {}
    for jid in job_ids:
        for (i, p) in inst.routing(jid):
            if p:
                remaining[(jid, i)] = remaining.get((jid, i), Fraction(0)) + p
    fixed_machine = {i: sorted([(p.start, p.end) for p in sch.machine_pieces(i)])
                     for i in range(1, inst.m + 1)}
    fixed_job = {}
    for p in sch.pieces:
        fixed_job.setdefault(p.job, []).append((p.start, p.end))
    busy_machine = {i: Fraction(0) for i in range(1, inst.m + 1)}
    busy_job = {jid: Fraction(0) for jid in job_ids}
    pieces = list(sch.pieces)
    events = sorted({Fraction(0)} |
                    {e for ivs in fixed_machine.values() for (_, e) in ivs})
    tq = list(events)
    t = Fraction(0)
    guard = 0
    while remaining:
        guard += 1
        if guard > 10 ** 6:
            raise RuntimeError("greedy fill did not terminate")
        progressed = False
        for i in range(1, inst.m + 1):
            if busy_machine[i] > t:
                continue
            gap_end = None
            for (s, e) in fixed_machine[i]:
                if s >= t:
                    gap_end = s
                    break
                if s <= t < e:
                    gap_end = t     # inside a fixed piece: no room now
                    break
            if gap_end == t:
                continue
            cands = []
            for (jid, mach) in remaining:
                if mach != i or busy_job[jid] > t:
                    continue
                dur = remaining[(jid, mach)]
                if gap_end is not None and t + dur > gap_end:
                    continue
                if _job_conflict(fixed_job.get(jid, ()), t, t + dur):
                    continue
                cands.append(jid)
            if not cands:
                continue
            jid = min(cands)
            dur = remaining.pop((jid, i))
            h = [x for x, (mm, pp) in enumerate(inst.routing(jid)) if mm == i]
            pieces.append((jid, i, t, t + dur, h[0] if h else None))
            busy_machine[i] = t + dur
            busy_job[jid] = t + dur
            progressed = True
        nxt = []
        nxt += [v for v in busy_machine.values() if v > t]
        nxt += [v for v in busy_job.values() if v > t]
        nxt += [e for e in tq if e > t]
        for ivs in fixed_machine.values():
            nxt += [e for (_, e) in ivs if e > t]
            nxt += [s for (s, _) in ivs if s > t]
        for ivs in fixed_job.values():
            nxt += [e for (_, e) in ivs if e > t]
        if not nxt:
            if remaining:
                raise RuntimeError("greedy fill deadlock")
            break
        t = min(nxt)
    out = Schedule()
    for p in pieces:
        if isinstance(p, tuple):
            out.add(*p[:4], op=p[4])
        else:
            out.pieces.append(p)
    return out


def _job_conflict(intervals, s, e):
    return any(a < e and s < b for (a, b) in intervals)


# ---------------------------------------------------------------------------
# flow shops
# ---------------------------------------------------------------------------


def flow_perm_value(inst, perm):
    """Cmax of a permutation schedule (left-justified recurrence)."""
    m = inst.m
    comp = [Fraction(0)] * (m + 1)
    p = {jid: dict(inst.routing(jid)) for jid in perm}
    for jid in perm:
        for i in range(1, m + 1):
            comp[i] = max(comp[i - 1], comp[i]) + p[jid].get(i, 0)
    return comp[m]


def flow_perm_schedule(inst, perm, machine_offsets=None):
    m = inst.m
    free = [Fraction(0)] * (m + 1)
    if machine_offsets:
        for i in range(1, m + 1):
            free[i] = Fraction(machine_offsets.get(i, 0))
    sch = Schedule()
    p = {jid: dict(inst.routing(jid)) for jid in perm}
    for jid in perm:
        t = Fraction(0)
        for i in range(1, m + 1):
            s = max(free[i], t)
            e = s + p[jid].get(i, 0)
            if p[jid].get(i, 0) > 0:
                sch.add(jid, i, s, e, op=i - 1)
            free[i] = e
            t = e
    return sch


def johnson(inst):
    """F2||Cmax exactly: first the jobs with p1 <= p2 by nondecreasing p1, then
    the rest by nonincreasing p2; optimal over all schedules."""
    if inst.env != "flowF" or inst.m != 2:
        raise ValueError("johnson needs a two-machine flow shop")
    p = {j.id: dict(inst.routing(j.id)) for j in inst.jobs}
    A = sorted((j for j in inst.job_ids() if p[j][1] <= p[j][2]),
               key=lambda j: (p[j][1], j))
    B = sorted((j for j in inst.job_ids() if p[j][1] > p[j][2]),
               key=lambda j: (-p[j][2], j))
    perm = A + B
    return perm, flow_perm_value(inst, perm)


def _johnson_two_virtual(pairs):
    """Johnson order for 2-virtual-machine times {job: (a, b)}."""
    A = sorted((j for j, (a, b) in pairs.items() if a <= b),
               key=lambda j: (pairs[j][0], j))
    B = sorted((j for j, (a, b) in pairs.items() if a > b),
               key=lambda j: (-pairs[j][1], j))
    return A + B


def equalize_loads(inst):
    """Raise operations (never above p_max) until every machine load equals
    the maximum; used by the vector-sum methods."""
    bounds = inst.shop_bounds()
    target = bounds["L_max"]
    pmax = bounds["p_max"]
    routings = {jid: list(inst.routing(jid)) for jid in inst.job_ids()}
    for i in range(1, inst.m + 1):
        deficit = target - bounds["loads"][i]
        for jid in sorted(routings):
            if deficit <= 0:
                break
            route = routings[jid]
            for idx, (mach, p) in enumerate(route):
                if mach == i and p < pmax:
                    bump = min(pmax - p, deficit)
                    route[idx] = (mach, p + bump)
                    deficit -= bump
                    if deficit <= 0:
                        break
        if deficit > 0:
            raise RuntimeError("cannot equalize loads within p_max caps")
    return routings


def sevast_permutation(inst):
    """Vector-sum permutation: load-equalized difference vectors balanced by
    the Steinitz construction (l_inf norm)."""
    routings = equalize_loads(inst)
    bounds = inst.shop_bounds()
    pmax = Fraction(bounds["p_max"])
    if pmax == 0:
        return inst.job_ids()
    m = inst.m
    ids = sorted(routings)
    vecs = []
    for jid in ids:
        p = dict(routings[jid])
        vecs.append(tuple((Fraction(p.get(i, 0)) - Fraction(p.get(i + 1, 0))) / pmax
                          for i in range(1, m)))
    perm = steinitz(VectorFamily(vecs, norm="linf"))
    return [ids[k] for k in perm]


def flow_solve(inst, method="neh", seed=0, eps=Fraction(1, 2), job_list=None,
               sa_params=None, budget=None):
    """Flow-shop heuristics and guaranteed methods; returns (permutation or
    None, schedule, cmax, bound_note)."""
    if inst.env != "flowF":
        raise ValueError("flow_solve needs a flow shop")
    m = inst.m
    ids = inst.job_ids()
    p = {jid: dict(inst.routing(jid)) for jid in ids}
    if method == "ls":
        perm = list(job_list) if job_list is not None else list(ids)
        return perm, flow_perm_schedule(inst, perm), flow_perm_value(inst, perm), \
            "Cmax <= m * OPT"
    if method == "aggregate":
        half = -(-m // 2)
        pairs = {jid: (sum(p[jid].get(i, 0) for i in range(1, half + 1)),
                       sum(p[jid].get(i, 0) for i in range(half + 1, m + 1)))
                 for jid in ids}
        perm = _johnson_two_virtual(pairs)
        return perm, flow_perm_schedule(inst, perm), flow_perm_value(inst, perm), \
            "Cmax <= ceil(m/2) * OPT"
    if method == "sevast":
        perm = sevast_permutation(inst)
        return perm, flow_perm_schedule(inst, perm), flow_perm_value(inst, perm), \
            "Cmax <= OPT + m(m-1) p_max"
    if method == "two_eps":
        return _two_eps(inst, eps, budget)
    if method == "palmer":
        half = Fraction(m + 1, 2)
        perm = sorted(ids, key=lambda j: (-sum((Fraction(i) - half) * p[j].get(i, 0)
                                               for i in range(1, m + 1)), j))
        return perm, flow_perm_schedule(inst, perm), flow_perm_value(inst, perm), ""
    if method == "cds":
        best = None
        for l in range(1, m):
            pairs = {jid: (sum(p[jid].get(i, 0) for i in range(1, l + 1)),
                           sum(p[jid].get(i, 0) for i in range(m - l + 1, m + 1)))
                     for jid in ids}
            perm = _johnson_two_virtual(pairs)
            val = flow_perm_value(inst, perm)
            if best is None or val < best[1]:
                best = (perm, val)
        perm = best[0]
        return perm, flow_perm_schedule(inst, perm), best[1], ""
    if method == "neh":
        order = sorted(ids, key=lambda j: (-sum(p[j].values()), j))
        perm = []
        for jid in order:
            cand = None
            for pos in range(len(perm) + 1):
                trial = perm[:pos] + [jid] + perm[pos:]
                val = flow_perm_value(inst, trial)
                if cand is None or val < cand[1]:
                    cand = (trial, val)
            perm = cand[0]
        return perm, flow_perm_schedule(inst, perm), flow_perm_value(inst, perm), ""
    if method == "sa":
        return _flow_sa(inst, seed, sa_params)
    raise ValueError(method)


def _two_eps(inst, eps, budget):
    """Fixed-m (2+eps)-approximation: vector-sum schedule for the small jobs,
    exact extension (general schedules) for the big ones."""
    eps = Fraction(eps)
    bounds = inst.shop_bounds()
    m = inst.m
    pimax = Fraction(bounds["L_max"])
    if pimax == 0:
        return list(inst.job_ids()), Schedule(), Fraction(0), ""
    threshold = eps * pimax / (m * m)
    big = [j.id for j in inst.jobs
           if max((pp for (_, pp) in inst.routing(j.id)), default=0) > threshold]
    small = [j.id for j in inst.jobs if j.id not in big]
    if small:
        sub_rout = {jid: inst.routing(jid) for jid in small}
        sub = Instance(env="flowF", m=m,
                       jobs=[Job(id=jid, p=sum(pp for (_, pp) in sub_rout[jid]))
                             for jid in small],
                       routings=sub_rout, name="small").validate()
        perm = sevast_permutation(sub)
        sch = flow_perm_schedule(sub, perm)
    else:
        sch = Schedule()
    offsets = {i: max((pc.end for pc in sch.machine_pieces(i)), default=Fraction(0))
               for i in range(1, m + 1)}
    base = max(offsets.values(), default=Fraction(0))
    offsets = {i: base for i in offsets}
    if big:
        sub_rout = {jid: inst.routing(jid) for jid in big}
        sub = Instance(env="flowF", m=m,
                       jobs=[Job(id=jid, p=sum(pp for (_, pp) in sub_rout[jid]))
                             for jid in big],
                       routings=sub_rout, name="big").validate()
        counter = _counter_for(getattr(budget, "max_nodes", None) or 10 ** 6)
        _, big_sched = _shop_active_bb(sub, counter)
        for piece in big_sched.pieces:
            sch.add(piece.job, piece.machine, piece.start + base,
                    piece.end + base, op=piece.op)
    return None, sch, sch.makespan(), "Cmax <= (2+eps) * OPT"


def _flow_sa(inst, seed, params):
    params = params or {}
    ids = inst.job_ids()
    n = len(ids)
    bounds = inst.shop_bounds()
    c = Fraction(params.get("c0", max(Fraction(bounds["L_max"], 10), Fraction(1))))
    cooling = params.get("cooling", Fraction(95, 100))
    idle_limit = params.get("idle_sweeps", 50)
    rng = random.Random(seed)
    cur = list(ids)
    cur_val = flow_perm_value(inst, cur)
    best = (list(cur), cur_val)
    idle = 0
    while idle < idle_limit and n > 1:
        improved = False
        for _ in range(n):
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            if b >= a:
                b += 1
            trial = list(cur)
            jid = trial.pop(a)
            trial.insert(b, jid)
            val = flow_perm_value(inst, trial)
            if val <= cur_val or rng.random() < math.exp(
                    min(float(cur_val - val), 0.0) / float(c)):
                cur, cur_val = trial, val
                if val < best[1]:
                    best = (list(trial), val)
                    improved = True
        c = c * cooling
        idle = 0 if improved else idle + 1
    perm = best[0]
    return perm, flow_perm_schedule(inst, perm), best[1], ""
