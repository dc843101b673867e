"""Preemptive parallel machines: McNaughton's wrap rule, the Gonzalez-Sahni
composite-machine construction, Sahni-Cho deadlines, the staircase algorithm
for release dates, network-flow feasibility and parametric Lmax, memory
constraints on identical machines, and the unrelated-machine LP with its
open-shop realization."""

from __future__ import annotations

from fractions import Fraction

from .core.schedule import Schedule
from .kernels.assignment import min_cost_assignment
from .kernels.lp import DenseLP, lp_solve
from .kernels.maxflow import FlowNetwork, max_flow


def _speeds(inst):
    if inst.env == "uniformQ":
        return [Fraction(s) for s in inst.speeds]
    return [Fraction(1)] * inst.m


# ---------------------------------------------------------------------------
# McNaughton wrap rule
# ---------------------------------------------------------------------------


def mcnaughton(inst, horizon=None):
    """P|pmtn|Cmax: fill machines in order up to max(p_max, sum p / m);
    at most m - 1 preemptions."""
    if inst.env != "identicalP":
        raise ValueError("mcnaughton needs identical machines")
    jobs = [j for j in inst.jobs if j.p > 0]
    total = sum(Fraction(j.p) for j in jobs)
    pmax = max((Fraction(j.p) for j in jobs), default=Fraction(0))
    T = max(pmax, total / inst.m)
    if horizon is not None:
        if Fraction(horizon) < T:
            raise ValueError("horizon below the McNaughton bound")
        T = Fraction(horizon)
    sch = Schedule()
    machine = 1
    t = Fraction(0)
    for j in jobs:
        rem = Fraction(j.p)
        while rem > 0:
            room = T - t
            if room == 0:
                machine += 1
                t = Fraction(0)
                continue
            use = min(rem, room)
            sch.add(j.id, machine, t, t + use)
            t += use
            rem -= use
    return sch, T


def mcnaughton_amounts(amounts, m, T, offset=Fraction(0), machines=None):
    """Wrap-fill arbitrary amounts into [offset, offset+T] on the given
    machines; amounts is a list of (job, amount)."""
    machines = machines or list(range(1, m + 1))
    sch = []
    mi = 0
    t = Fraction(0)
    for (jid, amount) in amounts:
        rem = Fraction(amount)
        while rem > 0:
            if t >= T:
                mi += 1
                t = Fraction(0)
            room = T - t
            use = min(rem, room)
            sch.append((jid, machines[mi], offset + t, offset + t + use))
            t += use
            rem -= use
    return sch


# ---------------------------------------------------------------------------
# Gonzalez-Sahni composite machines
# ---------------------------------------------------------------------------


class Composite:
    """Ordered elementary intervals (machine, t0, t1, speed), disjoint in time."""

    def __init__(self, segments):
        self.segments = [s for s in segments if s[2] > s[1] and s[3] > 0]

    @property
    def capacity(self):
        return sum((t1 - t0) * s for (_, t0, t1, s) in self.segments)

    def cap_before(self, t):
        total = Fraction(0)
        for (_, t0, t1, s) in self.segments:
            if t1 <= t:
                total += (t1 - t0) * s
            elif t0 < t:
                total += (t - t0) * s
        return total

    def split(self, t):
        """(segments before t, segments after t)."""
        before, after = [], []
        for (mach, t0, t1, s) in self.segments:
            if t1 <= t:
                before.append((mach, t0, t1, s))
            elif t0 >= t:
                after.append((mach, t0, t1, s))
            else:
                before.append((mach, t0, t, s))
                after.append((mach, t, t1, s))
        return before, after


def gs_lower_bound(ps, speeds, m):
    """Smallest horizon satisfying the prefix capacity inequalities."""
    ps = sorted((Fraction(p) for p in ps), reverse=True)
    speeds = sorted((Fraction(s) for s in speeds), reverse=True)
    best = Fraction(0)
    pre_p = Fraction(0)
    pre_s = Fraction(0)
    for k in range(1, min(len(ps), m) + 1):
        pre_p += ps[k - 1]
        pre_s += speeds[k - 1]
        if k < m:
            best = max(best, pre_p / pre_s)
    total_s = sum(speeds[:m])
    best = max(best, sum(ps, Fraction(0)) / total_s)
    return best


def gs_schedule_amounts(amounts, composites, T):
    """Schedule (job, amount) pairs on composite machines within [0, T] per the
    three Gonzalez-Sahni cases; returns (pieces, leftover composites)."""
    comps = sorted(composites, key=lambda c: -c.capacity)
    pieces = []
    for (jid, amount) in sorted(amounts, key=lambda e: (-Fraction(e[1]), e[0])):
        amount = Fraction(amount)
        if amount == 0:
            continue
        k = None
        for idx in range(len(comps)):
            if comps[idx].capacity >= amount:
                k = idx
            else:
                break
        if k is None:
            raise RuntimeError("capacity check failed; bound computed wrongly")
        ck = comps[k]
        if ck.capacity == amount:
            for (mach, t0, t1, s) in ck.segments:
                pieces.append((jid, mach, t0, t1))
            comps.pop(k)
            continue
        if k == len(comps) - 1:
            # slowest composite still fits the whole job: consume from the front
            rem = amount
            used, left = [], []
            for (mach, t0, t1, s) in ck.segments:
                if rem == 0:
                    left.append((mach, t0, t1, s))
                    continue
                cap = (t1 - t0) * s
                if cap <= rem:
                    used.append((mach, t0, t1, s))
                    rem -= cap
                else:
                    tcut = t0 + rem / s
                    used.append((mach, t0, tcut, s))
                    left.append((mach, tcut, t1, s))
                    rem = 0
            for (mach, t0, t1, _) in used:
                pieces.append((jid, mach, t0, t1))
            comps[k] = Composite(left)
            continue
        # split between composites k and k+1 at time t with
        # cap_k([0,t]) + cap_{k+1}([t,T]) == amount
        cn = comps[k + 1]
        t = _find_split(ck, cn, amount, T)
        k_before, k_after = ck.split(t)
        n_before, n_after = cn.split(t)
        for (mach, t0, t1, _) in k_before:
            pieces.append((jid, mach, t0, t1))
        for (mach, t0, t1, _) in n_after:
            pieces.append((jid, mach, t0, t1))
        merged = Composite(n_before + k_after)
        comps[k:k + 2] = [merged]
        comps.sort(key=lambda c: -c.capacity)
    return pieces, comps


def _find_split(ck, cn, amount, T):
    """t with ck.cap_before(t) + (cn.capacity - cn.cap_before(t)) == amount."""
    points = sorted({Fraction(0), T}
                    | {s[1] for s in ck.segments} | {s[2] for s in ck.segments}
                    | {s[1] for s in cn.segments} | {s[2] for s in cn.segments})

    def g(t):
        return ck.cap_before(t) + cn.capacity - cn.cap_before(t)

    for (a, b) in zip(points, points[1:]):
        ga, gb = g(a), g(b)
        if ga == amount:
            return a
        if (ga < amount <= gb) or (gb <= amount < ga):
            if gb == ga:
                return b
            return a + (amount - ga) * (b - a) / (gb - ga)
    if g(points[-1]) == amount:
        return points[-1]
    raise RuntimeError("split point not found")


def gonzalez_sahni(inst, jobs_amounts=None, horizon=None, offset=Fraction(0)):
    """Q|pmtn|Cmax: schedule at the exact prefix bound with at most 2(m-1)
    preemptions. Optionally schedules given amounts within a given horizon."""
    speeds = sorted(_speeds(inst), reverse=True)
    m = inst.m
    if jobs_amounts is None:
        jobs_amounts = [(j.id, Fraction(j.p)) for j in inst.jobs if j.p > 0]
    if horizon is None:
        T = gs_lower_bound([a for (_, a) in jobs_amounts], speeds, m)
    else:
        T = Fraction(horizon)
    if T == 0:
        return Schedule(), Fraction(0)
    comps = [Composite([(i, Fraction(0), T, speeds[i - 1])]) for i in range(1, m + 1)]
    pieces, _ = gs_schedule_amounts(jobs_amounts, comps, T)
    sch = Schedule()
    for (jid, mach, t0, t1) in pieces:
        sch.add(jid, mach, offset + t0, offset + t1)
    return sch, T


# ---------------------------------------------------------------------------
# Sahni-Cho deadline scheduling
# ---------------------------------------------------------------------------


def sahni_cho(inst):
    """Q|pmtn,dl| feasibility with a schedule: grow composite machines deadline
    by deadline, placing each job by the Gonzalez-Sahni cases. Identical
    machines use the one-preemption fast path."""
    if any(j.dl is None for j in inst.jobs):
        raise ValueError("sahni_cho needs deadlines")
    if inst.env == "identicalP":
        return _sahni_cho_identical(inst)
    speeds = sorted(_speeds(inst), reverse=True)
    m = inst.m
    jobs = sorted(inst.jobs, key=lambda j: (j.dl, j.id))
    comps = [Composite([]) for _ in range(m)]
    prev = Fraction(0)
    sch = Schedule()
    for j in jobs:
        d = Fraction(j.dl)
        if d > prev:
            for i in range(m):
                comps[i] = Composite(comps[i].segments +
                                     [(i + 1, prev, d, speeds[i])])
            prev = d
        comps.sort(key=lambda c: -c.capacity)
        if j.p == 0:
            continue
        if not comps or comps[0].capacity < j.p:
            return None, "infeasible"
        pieces, comps = gs_schedule_amounts([(j.id, Fraction(j.p))], comps, prev)
        while len(comps) < m:
            comps.append(Composite([]))
        for (jid, mach, t0, t1) in pieces:
            sch.add(jid, mach, t0, t1)
    return sch, "feasible"


def _sahni_cho_identical(inst):
    """Identical-machine fast path: each job placed with at most one split."""
    T = max(j.dl for j in inst.jobs)
    avail = [[Fraction(0), i] for i in range(1, inst.m + 1)]   # busy-until, machine
    sch = Schedule()
    for j in sorted(inst.jobs, key=lambda x: (x.dl, x.id)):
        if j.p == 0:
            continue
        d = Fraction(j.dl)
        p = Fraction(j.p)
        fits = [e for e in avail if d - e[0] >= p]
        if not fits:
            return None, "infeasible"
        fits.sort(key=lambda e: (-e[0], e[1]))
        a_i = fits[0]
        if d - a_i[0] == p or a_i[0] == max(e[0] for e in avail):
            sch.add(j.id, a_i[1], a_i[0], a_i[0] + p)
            a_i[0] += p
            continue
        # split: overflow onto the fullest machine that cannot take it whole
        overfull = [e for e in avail if d - e[0] < p and e[0] < d]
        if not overfull:
            sch.add(j.id, a_i[1], a_i[0], a_i[0] + p)
            a_i[0] += p
            continue
        overfull.sort(key=lambda e: (e[0], e[1]))
        a_r = overfull[0]
        first = d - a_r[0]
        sch.add(j.id, a_r[1], a_r[0], d)
        a_r[0] = d
        rest = p - first
        sch.add(j.id, a_i[1], a_i[0], a_i[0] + rest)
        a_i[0] += rest
    return sch, "feasible"


# ---------------------------------------------------------------------------
# staircase algorithm for release dates
# ---------------------------------------------------------------------------


def _staircase_targets(ps, speeds, t):
    """Remaining amounts after an interval of length t: the merge loop of the
    staircase recurrence; ps sorted nonincreasing."""
    k = len(ps)
    h = [0]
    q = [None]       # q[0] acts as the +infinity sentinel
    for j in range(1, k + 1):
        h.append(j)
        q.append(ps[j - 1] - t * Fraction(speeds[j - 1]))
        i = len(h) - 1
        while i >= 2 and (q[i - 1] <= q[i] or q[i - 1] < 0):
            q[i - 1] = ((h[i - 1] - h[i - 2]) * q[i - 1] +
                        (h[i] - h[i - 1]) * q[i]) / (h[i] - h[i - 2])
            h[i - 1] = h[i]
            del h[i]
            del q[i]
            i -= 1
    # a trailing negative step means surplus capacity: those jobs just finish
    out = []
    for step in range(1, len(h)):
        val = max(q[step], Fraction(0))
        for _ in range(h[step] - h[step - 1]):
            out.append(val)
    return out


def staircase(inst):
    """Q|pmtn,r_j|Cmax, nearly on-line: after each release the sorted remaining
    work vector has minimal prefix sums; the final interval is solved by
    Gonzalez-Sahni."""
    speeds = sorted(_speeds(inst), reverse=True)
    m = inst.m
    jobs = [j for j in inst.jobs if j.p > 0]
    if not jobs:
        return Schedule(), Fraction(0)
    releases = sorted({Fraction(j.r) for j in jobs})
    ext_speeds = speeds + [Fraction(0)] * max(0, len(jobs) - m)
    rem = {}
    sch = Schedule()
    for ridx, r in enumerate(releases):
        for j in jobs:
            if Fraction(j.r) == r:
                rem[j.id] = Fraction(j.p)
        if ridx + 1 < len(releases):
            t = releases[ridx + 1] - r
            order = sorted(rem, key=lambda x: (-rem[x], x))
            ps = [rem[x] for x in order]
            targets = _staircase_targets(ps, ext_speeds, t)
            amounts = []
            for jid, before, after in zip(order, ps, targets):
                if before - after > 0:
                    amounts.append((jid, before - after))
                rem[jid] = after
            # each machine is fully used inside the interval by construction
            sub, _ = gonzalez_sahni(inst, jobs_amounts=amounts, horizon=t)
            for piece in sub.pieces:
                sch.add(piece.job, piece.machine, piece.start + r, piece.end + r)
            for jid in [x for x in rem if rem[x] == 0]:
                del rem[jid]
    last = releases[-1]
    amounts = [(jid, a) for jid, a in sorted(rem.items()) if a > 0]
    if amounts:
        sub, T = gonzalez_sahni(inst, jobs_amounts=amounts)
        for piece in sub.pieces:
            sch.add(piece.job, piece.machine, piece.start + last, piece.end + last)
        cmax = last + T
    else:
        cmax = sch.makespan()
    return sch, max(cmax, sch.makespan())


# ---------------------------------------------------------------------------
# network flow feasibility and parametric Lmax
# ---------------------------------------------------------------------------


def _flow_network(inst, deadlines):
    """Feasibility network for P/Q|pmtn,r_j,dl_j|: jobs feed the intervals
    they may run in; interval capacity encodes the speed profile."""
    speeds = sorted(_speeds(inst), reverse=True) + [Fraction(0)]
    m = inst.m
    jobs = [j for j in inst.jobs if j.p > 0]
    points = sorted({Fraction(j.r) for j in jobs} |
                    {Fraction(deadlines[j.id]) for j in jobs})
    net = FlowNetwork()
    net.set_source("s")
    net.set_sink("t")
    intervals = [(a, b) for (a, b) in zip(points, points[1:]) if b > a]
    uniform = inst.env == "uniformQ"
    for j in jobs:
        net.add_arc("s", ("J", j.id), Fraction(j.p))
    for idx, (a, b) in enumerate(intervals):
        length = b - a
        if uniform:
            for i in range(1, m + 1):
                gap = speeds[i - 1] - speeds[i]
                if gap:
                    net.add_arc(("E", idx, i), "t", i * gap * length)
        else:
            net.add_arc(("E", idx), "t", m * length)
    for j in jobs:
        for idx, (a, b) in enumerate(intervals):
            if Fraction(j.r) <= a and Fraction(deadlines[j.id]) >= b:
                length = b - a
                if uniform:
                    for i in range(1, m + 1):
                        gap = speeds[i - 1] - speeds[i]
                        if gap:
                            net.add_arc(("J", j.id), ("E", idx, i), gap * length)
                else:
                    net.add_arc(("J", j.id), ("E", idx), length)
    return net, intervals


def _realize_intervals(inst, flows, net, intervals):
    """Turn interval flows into a schedule: McNaughton inside each interval on
    identical machines, Gonzalez-Sahni on uniform ones."""
    per_interval = {}
    for (arcidx, (tail, head, cap, mu)) in enumerate(net.arcs):
        if isinstance(tail, tuple) and tail[0] == "J":
            jid = tail[1]
            idx = head[1]
            amt = flows[arcidx]
            if amt > 0:
                per_interval.setdefault(idx, {})
                per_interval[idx][jid] = per_interval[idx].get(jid, Fraction(0)) + amt
    sch = Schedule()
    speeds = sorted(_speeds(inst), reverse=True)
    for idx, (a, b) in enumerate(intervals):
        amounts = sorted(per_interval.get(idx, {}).items())
        if not amounts:
            continue
        if inst.env == "identicalP":
            for (jid, mach, t0, t1) in mcnaughton_amounts(amounts, inst.m, b - a, a):
                sch.add(jid, mach, t0, t1)
        else:
            sub, _ = gonzalez_sahni(inst, jobs_amounts=amounts, horizon=b - a)
            for piece in sub.pieces:
                sch.add(piece.job, piece.machine, piece.start + a, piece.end + a)
    return sch


def _parametric_network(inst, jobs, lam_mid):
    """Feasibility network with deadlines d_j + lam, built with the breakpoint
    structure frozen at lam_mid; arc capacities are exact affine functions of
    lam on the whole segment where that structure is valid (endpoints give
    zero-length intervals, not wrong ones)."""
    speeds = sorted(_speeds(inst), reverse=True) + [Fraction(0)]
    m = inst.m
    uniform = inst.env == "uniformQ"
    marks = []
    for j in jobs:
        marks.append((Fraction(j.r), Fraction(0)))          # position: c + mu*lam
        marks.append((Fraction(j.d), Fraction(1)))
    # dedup by position at lam_mid, order by that position
    bypos = {}
    for (c, mu) in marks:
        bypos.setdefault(c + mu * lam_mid, []).append((c, mu))
    points = []
    for pos in sorted(bypos):
        cands = bypos[pos]
        # a release and a deadline can coincide only at a segment endpoint;
        # keep both endpoints so lengths stay affine across the segment
        for (c, mu) in sorted(set(cands), key=lambda e: e[1]):
            points.append((c, mu))
    net = FlowNetwork()
    net.set_source("s")
    net.set_sink("t")
    intervals = []
    for (a, b) in zip(points, points[1:]):
        const = b[0] - a[0]
        mult = b[1] - a[1]
        intervals.append((a, b, const, mult))
    for j in jobs:
        net.add_arc("s", ("J", j.id), Fraction(j.p))
    for idx, (a, b, const, mult) in enumerate(intervals):
        if uniform:
            for i in range(1, m + 1):
                gap = speeds[i - 1] - speeds[i]
                if gap:
                    net.add_arc(("E", idx, i), "t", i * gap * const, i * gap * mult)
        else:
            net.add_arc(("E", idx), "t", m * const, m * mult)
    for j in jobs:
        for idx, (a, b, const, mult) in enumerate(intervals):
            apos = a[0] + a[1] * lam_mid
            bpos = b[0] + b[1] * lam_mid
            if Fraction(j.r) <= apos and Fraction(j.d) + lam_mid >= bpos:
                if uniform:
                    for i in range(1, m + 1):
                        gap = speeds[i - 1] - speeds[i]
                        if gap:
                            net.add_arc(("J", j.id), ("E", idx, i),
                                        gap * const, gap * mult)
                else:
                    net.add_arc(("J", j.id), ("E", idx), const, mult)
    return net, intervals


def deadline_flow(inst, mode="feasible", deadlines=None):
    """P/Q|pmtn,r_j,dl_j| feasibility by max flow (feasible iff the flow value
    is sum p), and minimum Lmax by bisection over the critical lambda values
    followed by the min-cut multiplier iteration inside one segment."""
    if mode == "feasible":
        dls = deadlines or {j.id: j.dl for j in inst.jobs}
        if any(v is None for v in dls.values()):
            raise ValueError("feasible mode needs deadlines")
        total = sum(Fraction(j.p) for j in inst.jobs if j.p > 0)
        net, intervals = _flow_network(inst, dls)
        value, flows, cut = max_flow(net)
        if value != total:
            return None, "infeasible"
        return _realize_intervals(inst, flows, net, intervals), "feasible"
    if mode != "lmax":
        raise ValueError(mode)
    jobs = [j for j in inst.jobs if j.p > 0]
    if any(j.d is None for j in jobs):
        raise ValueError("lmax mode needs due dates")
    speeds = sorted(_speeds(inst), reverse=True)
    total = sum(Fraction(j.p) for j in jobs)

    def feasible(lam):
        dls = {j.id: Fraction(j.d) + lam for j in jobs}
        net, intervals = _flow_network(inst, dls)
        value, flows, cut = max_flow(net)
        return value == total

    lam_lb = max(Fraction(j.r) + Fraction(j.p) / speeds[0] - Fraction(j.d)
                 for j in jobs)
    if feasible(lam_lb):
        lam_star = lam_lb
    else:
        # bisect the critical values d_j + lam = r_k for the segment holding
        # the optimum, then iterate cuts inside it (capacities stay affine)
        crit = sorted({Fraction(k.r) - Fraction(j.d) for j in jobs for k in jobs
                       if Fraction(k.r) - Fraction(j.d) > lam_lb})
        lo, hi = 0, len(crit) - 1
        seg_hi = None
        while crit and lo <= hi:
            mid = (lo + hi) // 2
            if feasible(crit[mid]):
                seg_hi = mid
                hi = mid - 1
            else:
                lo = mid + 1
        if seg_hi is None:
            seg_lo = crit[-1] if crit else lam_lb
            seg_end = seg_lo + 1 + sum(Fraction(j.p) for j in jobs)
        else:
            seg_lo = crit[seg_hi - 1] if seg_hi > 0 else lam_lb
            seg_end = crit[seg_hi]
        mid_lam = (seg_lo + seg_end) / 2
        pnet, _ = _parametric_network(inst, jobs, mid_lam)
        lam = seg_lo
        guard = 0
        while True:
            guard += 1
            if guard > inst.m * (2 * len(jobs) + 2) + 4:
                raise RuntimeError("multiplier iteration exceeded its bound")
            value, flows, cut = max_flow(pnet.at(lam))
            if value == total:
                break
            const, mult = pnet.cut_parametric(cut)
            if mult <= 0:
                raise RuntimeError("min cut cannot grow; segment chosen wrongly")
            lam = (total - const) / mult
            if lam > seg_end:
                raise RuntimeError("multiplier step left the segment")
        lam_star = lam
    dls = {j.id: Fraction(j.d) + lam_star for j in jobs}
    net, intervals = _flow_network(inst, dls)
    value, flows, cut = max_flow(net)
    return _realize_intervals(inst, flows, net, intervals), lam_star


# ---------------------------------------------------------------------------
# memory constraints, identical machines
# ---------------------------------------------------------------------------


def memory_identical(inst, capacities, requirements):
    """P|pmtn,mem|Cmax: the optimal horizon is max(max_i X_i / i, p_max) over
    the must-run-on-fast-prefix groups; groups fill residual capacity with at
    most one split per job."""
    if inst.env != "identicalP":
        raise ValueError("memory_identical needs identical machines")
    m = inst.m
    caps = sorted(capacities, reverse=True)
    if len(caps) != m:
        raise ValueError("need one capacity per machine")
    jobs = [j for j in inst.jobs if j.p > 0]
    for j in jobs:
        if requirements[j.id] > caps[0]:
            raise ValueError("job %d needs more memory than any machine" % j.id)
    groups = {i: [] for i in range(1, m + 1)}
    for j in jobs:
        i = max(i for i in range(1, m + 1) if caps[i - 1] >= requirements[j.id])
        groups[i].append(j)
    X = Fraction(0)
    T = max((Fraction(j.p) for j in jobs), default=Fraction(0))
    for i in range(1, m + 1):
        X += sum(Fraction(j.p) for j in groups[i])
        T = max(T, X / i)
    # one McNaughton wrap over nonincreasing memory requirement: when group i
    # is exhausted at most X_i <= i*T work is placed, so its jobs never spill
    # past machine i
    order = []
    for i in range(1, m + 1):
        order.extend((j.id, Fraction(j.p)) for j in sorted(groups[i], key=lambda x: x.id))
    sch = Schedule()
    if T > 0:
        for (jid, mach, t0, t1) in mcnaughton_amounts(order, m, T):
            sch.add(jid, mach, t0, t1)
    return sch, T


# ---------------------------------------------------------------------------
# unrelated machines: LP plus open-shop realization
# ---------------------------------------------------------------------------


def open_shop_realize(matrix, machines, jobs):
    """Thm-10.2 construction: repeatedly peel a decrementing set (one positive
    cell per tight row/column, at most one per slack row/column) off the
    amount matrix; returns pieces (job, machine, start, end) of total length
    C = max(row sums, column sums)."""
    X = {k: Fraction(v) for k, v in matrix.items() if v > 0}
    rowsum = {i: sum(v for (a, b), v in X.items() if a == i) for i in machines}
    colsum = {j: sum(v for (a, b), v in X.items() if b == j) for j in jobs}
    C = max([*rowsum.values(), *colsum.values(), Fraction(0)])
    t = Fraction(0)
    pieces = []
    guard = 0
    while any(v > 0 for v in X.values()):
        guard += 1
        if guard > len(machines) * len(jobs) + len(machines) + len(jobs) + 2:
            raise RuntimeError("decrementing iteration exceeded its bound")
        rem = C - t
        tight_rows = [i for i in machines if rowsum[i] == rem]
        tight_cols = [j for j in jobs if colsum[j] == rem]
        S = _decrementing_set(X, machines, jobs, tight_rows, tight_cols)
        delta = min(X[c] for c in S)
        for i in machines:
            if i not in {a for (a, _) in S} and rowsum[i] > 0:
                delta = min(delta, rem - rowsum[i])
        for j in jobs:
            if j not in {b for (_, b) in S} and colsum[j] > 0:
                delta = min(delta, rem - colsum[j])
        delta = min(delta, rem)
        if delta <= 0:
            raise RuntimeError("no progress in the decrementing construction")
        for (i, j) in S:
            pieces.append((j, i, t, t + delta))
            X[(i, j)] -= delta
            rowsum[i] -= delta
            colsum[j] -= delta
            if X[(i, j)] == 0:
                del X[(i, j)]
        t += delta
    return pieces, C


def _decrementing_set(X, machines, jobs, tight_rows, tight_cols):
    """Extreme point of the cover polytope via a padded assignment: every
    tight row/column must receive a positive cell, slack ones may sit out."""
    nm, nj = len(machines), len(jobs)
    size = nm + nj
    big = Fraction(10 ** 9)
    cost = [[big] * size for _ in range(size)]
    for a, i in enumerate(machines):
        for b, j in enumerate(jobs):
            if (i, j) in X:
                cost[a][b] = Fraction(0)
        if i not in tight_rows:
            cost[a][nj + a] = Fraction(0)      # row may opt out
    for b, j in enumerate(jobs):
        if j not in tight_cols:
            for a in range(nm, size):
                cost[a][b] = Fraction(0) if a - nm == b else cost[a][b]
    for a in range(nm, size):
        for b in range(nj, size):
            cost[a][b] = Fraction(0)
    # allow any dummy row to absorb any slack column
    for b, j in enumerate(jobs):
        if j not in tight_cols:
            for a in range(nm, size):
                cost[a][b] = Fraction(0)
    match, total, _ = min_cost_assignment(cost)
    if total >= big:
        raise RuntimeError("no decrementing set; matrix violates the theorem")
    S = []
    for a, i in enumerate(machines):
        b = match[a]
        if b is not None and b < nj and (i, jobs[b]) in X:
            S.append((i, jobs[b]))
    return S


def r_pmtn_lp(inst, obj="cmax"):
    """R|pmtn|Cmax (and Lmax) by the fractional-assignment LP, realized as a
    preemptive open shop via decrementing sets. With an identity allocation it
    solves O|pmtn|Cmax at the beta bound."""
    ids = inst.job_ids()
    m = inst.m
    pt = {}
    for i in range(1, m + 1):
        for x, jid in enumerate(ids):
            v = inst.ptable[i - 1][x]
            if v is not None and v > 0:
                pt[(i, jid)] = Fraction(v)
    if obj == "cmax":
        var = {key: k for k, key in enumerate(sorted(pt))}
        nv = len(var)
        lp = DenseLP(c=[0] * nv + [1])
        for i in range(1, m + 1):
            row = [0] * (nv + 1)
            for jid in ids:
                if (i, jid) in var:
                    row[var[(i, jid)]] = 1
            row[nv] = -1
            lp.add(row, "<=", 0)
        for jid in ids:
            row = [0] * (nv + 1)
            for i in range(1, m + 1):
                if (i, jid) in var:
                    row[var[(i, jid)]] = 1
            row[nv] = -1
            lp.add(row, "<=", 0)
        for jid in ids:
            row = [0] * (nv + 1)
            for i in range(1, m + 1):
                if (i, jid) in var:
                    row[var[(i, jid)]] = Fraction(1) / pt[(i, jid)]
            lp.add(row, "=", 1)
        res = lp_solve(lp, exact=True)
        if res.status != "optimal":
            raise RuntimeError("allocation LP failed: %s" % res.status)
        matrix = {key: res.x[var[key]] for key in var}
        pieces, C = open_shop_realize(matrix, list(range(1, m + 1)), ids)
        sch = Schedule()
        for (jid, i, a, b) in pieces:
            if b > a:
                sch.add(jid, i, a, b)
        return sch, C
    if obj != "lmax":
        raise ValueError(obj)
    return _r_pmtn_lmax(inst, ids, pt)


def _r_pmtn_lmax(inst, ids, pt):
    """min Lmax: intervals end at d_(k) + lam; interval lengths are affine in
    lam, so one LP over (x, lam+, lam-) decides everything; each interval is
    then realized as an open shop."""
    m = inst.m
    djs = {j.id: Fraction(j.d) for j in inst.jobs}
    dsorted = sorted(set(djs.values()))
    K = len(dsorted)
    var = {}
    for (i, jid) in sorted(pt):
        kj = dsorted.index(djs[jid])
        for k in range(kj + 1):
            var[(i, jid, k)] = len(var)
    nv = len(var)
    LP, LM = nv, nv + 1       # lam = LP - LM
    lp = DenseLP(c=[0] * nv + [1, -1])

    def length_terms(k):
        """interval k length = const + coef * lam."""
        if k == 0:
            return dsorted[0], 1
        return dsorted[k] - dsorted[k - 1], 0

    for jid in ids:
        row = [0] * (nv + 2)
        for i in range(1, m + 1):
            if (i, jid) in pt:
                kj = dsorted.index(djs[jid])
                for k in range(kj + 1):
                    row[var[(i, jid, k)]] = Fraction(1) / pt[(i, jid)]
        lp.add(row, "=", 1)
    for k in range(K):
        const, coef = length_terms(k)
        for i in range(1, m + 1):
            row = [0] * (nv + 2)
            touched = False
            for jid in ids:
                if (i, jid, k) in var:
                    row[var[(i, jid, k)]] = 1
                    touched = True
            if touched:
                row[LP] = -coef
                row[LM] = coef
                lp.add(row, "<=", const)
        for jid in ids:
            row = [0] * (nv + 2)
            touched = False
            for i in range(1, m + 1):
                if (i, jid, k) in var:
                    row[var[(i, jid, k)]] = 1
                    touched = True
            if touched:
                row[LP] = -coef
                row[LM] = coef
                lp.add(row, "<=", const)
    res = lp_solve(lp, exact=True)
    if res.status != "optimal":
        raise RuntimeError("Lmax LP failed: %s" % res.status)
    lam = res.x[LP] - res.x[LM]
    sch = Schedule()
    start = Fraction(0)
    for k in range(K):
        const, coef = length_terms(k)
        length = const + coef * lam
        matrix = {}
        for (i, jid, kk), vix in var.items():
            if kk == k and res.x[vix] > 0:
                matrix[(i, jid)] = res.x[vix]
        if matrix and length > 0:
            pieces, C = open_shop_realize(matrix, list(range(1, m + 1)), ids)
            for (jid, i, a, b) in pieces:
                if b > a:
                    sch.add(jid, i, start + a, start + b)
        start += length
    return sch, lam
