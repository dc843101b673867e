"""Exhaustive exact solvers for small instances: ground truth for every
optimality claim and approximation-ratio audit."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .core.instance import SHOP_ENVS
from .core.schedule import Schedule, Objective, evaluate


@dataclass
class OracleBudget:
    max_nodes: int = 10 ** 7
    max_seconds: float = 120.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budget must be positive")


class OracleBudgetExceeded(RuntimeError):
    pass


class UnsupportedOracle(ValueError):
    pass


class _Counter:
    def __init__(self, budget):
        self.nodes = 0
        self.budget = budget or OracleBudget()
        self.t0 = time.monotonic()

    def tick(self, k=1):
        self.nodes += k
        if self.nodes > self.budget.max_nodes:
            raise OracleBudgetExceeded("node budget exceeded")
        if self.nodes % 4096 == 0 and time.monotonic() - self.t0 > self.budget.max_seconds:
            raise OracleBudgetExceeded("time budget exceeded")


def _obj(obj):
    return Objective(obj) if isinstance(obj, str) else obj


# ---------------------------------------------------------------------------
# nonpreemptive exact search
# ---------------------------------------------------------------------------


def brute_exact(inst, obj, budget=None, permutation_only=True):
    """Exactly optimal value over left-justified schedules, plus one optimal
    schedule. Precedence- and deadline-infeasible branches are pruned.

    For flow shops, permutation_only selects permutation schedules; set it to
    False to search general (active) schedules.
    """
    obj = _obj(obj)
    counter = _Counter(budget)
    if inst.env == "single":
        return _single_exact(inst, obj, counter)
    if inst.env in ("identicalP", "uniformQ", "unrelatedR"):
        if inst.prec:
            raise UnsupportedOracle("parallel enumeration supports no precedence")
        if obj.kind == "Cmax" and all(j.r == 0 for j in inst.jobs) and \
           all(j.dl is None for j in inst.jobs):
            return _parallel_cmax_bb(inst, counter)
        return _parallel_enumerate(inst, obj, counter)
    if inst.env == "flowF" and permutation_only:
        return _flow_permutation(inst, obj, counter)
    if inst.env in SHOP_ENVS:
        if obj.kind != "Cmax":
            raise UnsupportedOracle("shop oracle supports Cmax only")
        return _shop_active_bb(inst, counter)
    raise UnsupportedOracle(inst.env)


def _single_exact(inst, obj, counter):
    jobs = inst.jobs
    n = len(jobs)
    if n > 10:
        raise UnsupportedOracle("single-machine oracle limited to n <= 10")
    succ = {j.id: set() for j in jobs}
    preds = {j.id: set() for j in jobs}
    for (a, b) in inst.prec:
        succ[a].add(b)
        preds[b].add(a)
    by_id = {j.id: j for j in jobs}
    best = [None, None]
    seq = []

    additive = obj.kind in ("SumC", "SumWC", "SumU", "SumWU", "SumT", "SumWT", "SumF")
    maxtype = obj.kind in ("Cmax", "Lmax", "Fmax")

    def term(job, c):
        if obj.kind in ("Cmax",):
            return c
        if obj.kind == "Lmax":
            return c - job.d
        if obj.kind == "SumC":
            return c
        if obj.kind == "SumWC":
            return job.w * c
        if obj.kind == "SumU":
            return 1 if (job.d is not None and c > job.d) else 0
        if obj.kind == "SumWU":
            return job.w if (job.d is not None and c > job.d) else 0
        if obj.kind == "SumT":
            return max(0, c - job.d)
        if obj.kind == "SumWT":
            return job.w * max(0, c - job.d)
        if obj.kind in ("Fmax", "SumF"):
            return obj.costfns[job.id](c)
        raise UnsupportedOracle(obj.kind)

    def rec(remaining, t, acc):
        counter.tick()
        if not remaining:
            if best[0] is None or acc < best[0]:
                best[0] = acc
                best[1] = list(seq)
            return
        for jid in sorted(remaining):
            if preds[jid] & remaining:
                continue
            job = by_id[jid]
            s = max(t, job.r)
            c = s + job.p
            if job.dl is not None and c > job.dl:
                continue
            new_acc = acc + term(job, c) if additive else max(acc, term(job, c))
            if best[0] is not None and new_acc >= best[0] and (additive and _nonneg_terms(obj) or maxtype):
                continue
            remaining.remove(jid)
            seq.append((jid, s, c))
            rec(remaining, c, new_acc)
            seq.pop()
            remaining.add(jid)

    start_acc = 0 if additive else Fraction(-10 ** 12)
    rec(set(by_id), 0, start_acc)
    if best[0] is None:
        return None, None
    sch = Schedule()
    for (jid, s, c) in best[1]:
        sch.add(jid, 1, s, c)
    return Fraction(best[0]), sch


def _nonneg_terms(obj):
    return obj.kind in ("SumC", "SumWC", "SumU", "SumWU", "SumT", "SumWT")


def _speed(inst, i):
    if inst.env == "uniformQ":
        return Fraction(inst.speeds[i - 1])
    return Fraction(1)


def _ptime(inst, job, jidx, machine):
    if inst.env == "unrelatedR":
        v = inst.ptable[machine - 1][jidx]
        return None if v is None else Fraction(v)
    return Fraction(job.p) / _speed(inst, machine)


def _parallel_enumerate(inst, obj, counter):
    """Exercise-1.2 style enumeration: permute jobs with machine separators;
    on identical machines symmetric assignments are pruned by requiring the
    first jobs per machine to be increasing."""
    jobs = inst.jobs
    ids = [j.id for j in jobs]
    n = len(ids)
    best = [None, None]
    identical = inst.env == "identicalP"

    def eval_assignment(lists):
        sch = Schedule()
        for mi, lst in enumerate(lists, start=1):
            t = Fraction(0)
            for jidx in lst:
                job = jobs[jidx]
                pt = _ptime(inst, job, jidx, mi)
                if pt is None:
                    return None, None
                s = max(t, Fraction(job.r))
                c = s + pt
                if job.dl is not None and c > job.dl:
                    return None, None
                sch.add(job.id, mi, s, c)
                t = c
        return evaluate(inst, sch, obj), sch

    for perm in permutations(range(n)):
        for cuts in combinations(range(n + inst.m - 1), inst.m - 1):
            counter.tick()
            lists = []
            cur = []
            pos = 0
            k = 0
            for slot in range(n + inst.m - 1):
                if k < len(cuts) and slot == cuts[k]:
                    lists.append(cur)
                    cur = []
                    k += 1
                else:
                    cur.append(perm[pos])
                    pos += 1
            lists.append(cur)
            if identical:
                firsts = [lst[0] for lst in lists if lst]
                if firsts != sorted(firsts):
                    continue
                if any(not a and b for a, b in zip(lists, lists[1:])):
                    continue
            val, sch = eval_assignment(lists)
            if val is not None and (best[0] is None or val < best[0]):
                best = [val, sch]
    if best[0] is None:
        return None, None
    return best[0], best[1]


def _parallel_cmax_bb(inst, counter):
    """Depth-first makespan branch-and-bound with symmetry pruning."""
    jobs = inst.jobs
    n = len(jobs)
    order = sorted(range(n), key=lambda k: (-max(_ptime(inst, jobs[k], k, i) or 0
                                                 for i in range(1, inst.m + 1)), k))
    loads = [Fraction(0)] * inst.m
    assign = [0] * n
    best = [None, None]

    # greedy incumbent
    gl = [Fraction(0)] * inst.m
    ga = [0] * n
    for k in order:
        cands = []
        for i in range(1, inst.m + 1):
            pt = _ptime(inst, jobs[k], k, i)
            if pt is not None:
                cands.append((gl[i - 1] + pt, i))
        c, i = min(cands)
        gl[i - 1] += _ptime(inst, jobs[k], k, i)
        ga[k] = i
    best[0] = max(gl)
    best[1] = list(ga)

    total = [Fraction(0)]
    if inst.env != "unrelatedR":
        sumpt = sum(Fraction(j.p) for j in jobs)
        speedsum = sum(_speed(inst, i) for i in range(1, inst.m + 1))
    else:
        sumpt = None

    def lb(pos):
        rest = 0
        if inst.env != "unrelatedR":
            rest = sum(Fraction(jobs[k].p) for k in order[pos:])
            return max(max(loads), (sum(loads) * 0 + rest + sum(
                loads[i - 1] * _speed(inst, i) for i in range(1, inst.m + 1))) / speedsum)
        return max(loads)

    def rec(pos):
        counter.tick()
        if pos == n:
            mk = max(loads)
            if mk < best[0]:
                best[0] = mk
                best[1] = list(assign)
            return
        if lb(pos) >= best[0]:
            return
        k = order[pos]
        seen_loads = set()
        for i in range(1, inst.m + 1):
            pt = _ptime(inst, jobs[k], k, i)
            if pt is None:
                continue
            if inst.env == "identicalP" and loads[i - 1] in seen_loads:
                continue
            seen_loads.add(loads[i - 1])
            if loads[i - 1] + pt >= best[0]:
                continue
            loads[i - 1] += pt
            assign[k] = i
            rec(pos + 1)
            loads[i - 1] -= pt
        assign[k] = 0

    rec(0)
    sch = Schedule()
    t = [Fraction(0)] * inst.m
    for k in range(n):
        i = best[1][k]
        pt = _ptime(inst, jobs[k], k, i)
        sch.add(jobs[k].id, i, t[i - 1], t[i - 1] + pt)
        t[i - 1] += pt
    return best[0], sch


def _flow_permutation(inst, obj, counter):
    jobs = inst.jobs
    n = len(jobs)
    if n > 9:
        raise UnsupportedOracle("flow permutation oracle limited to n <= 9")
    m = inst.m
    p = {j.id: dict(inst.routing(j.id)) for j in jobs}
    best = [None, None]
    for perm in permutations([j.id for j in jobs]):
        counter.tick()
        comp = [Fraction(0)] * (m + 1)
        ends = {}
        for jid in perm:
            for i in range(1, m + 1):
                comp[i] = max(comp[i - 1], comp[i]) + p[jid][i]
            ends[jid] = comp[m]
        if obj.kind == "Cmax":
            val = comp[m]
        else:
            raise UnsupportedOracle("flow oracle supports Cmax only")
        if best[0] is None or val < best[0]:
            best = [val, perm]
    sch = _realize_permutation_flow(inst, best[1])
    return best[0], sch


def _realize_permutation_flow(inst, perm):
    m = inst.m
    p = {jid: dict(inst.routing(jid)) for jid in perm}
    free = [Fraction(0)] * (m + 1)
    jend = {jid: Fraction(0) for jid in perm}
    sch = Schedule()
    for jid in perm:
        t = Fraction(0)
        for i in range(1, m + 1):
            s = max(free[i], t)
            e = s + p[jid][i]
            if p[jid][i] > 0:
                sch.add(jid, i, s, e, op=i - 1)
            free[i] = e
            t = e
    return sch


def _shop_active_bb(inst, counter):
    """Active-schedule enumeration for job shops and open shops (full expansion
    with incumbent pruning); exact for Cmax."""
    jobs = inst.jobs
    routes = {j.id: list(inst.routing(j.id)) for j in jobs}
    open_shop = inst.env == "openO"
    best = [None, None]
    pieces = []

    done = set()
    jfree = {j.id: Fraction(0) for j in jobs}
    mfree = {i: Fraction(0) for i in range(1, inst.m + 1)}

    def signature(jid):
        """State fingerprint for symmetry pruning of interchangeable jobs."""
        rem = tuple(sorted((mi, p) for h, (mi, p) in enumerate(routes[jid])
                           if (jid, h) not in done))
        started = tuple(sorted((mi, p) for h, (mi, p) in enumerate(routes[jid])
                               if (jid, h) in done))
        return (rem, started, jfree[jid])

    def candidates():
        out = []
        for j in jobs:
            route = routes[j.id]
            if open_shop:
                hs = [h for h in range(len(route)) if (j.id, h) not in done]
            else:
                h = len([g for g in range(len(route)) if (j.id, g) in done])
                hs = [h] if h < len(route) else []
            for h in hs:
                mi, p = route[h]
                out.append((j.id, h, mi, p))
        return out

    def rec():
        counter.tick()
        cands = candidates()
        if not cands:
            mk = max(e for (_, _, _, _, e) in pieces) if pieces else Fraction(0)
            if best[0] is None or mk < best[0]:
                best[0] = mk
                best[1] = list(pieces)
            return
        # zero-length operations are fixed immediately, no branching
        for (jid, h, mi, p) in cands:
            if p == 0:
                s = max(jfree[jid], 0)
                done.add((jid, h))
                pieces.append((jid, h, mi, s, s))
                rec()
                pieces.pop()
                done.remove((jid, h))
                return
        # lower bound pruning
        if best[0] is not None:
            lb1 = max((jfree[j.id] + _jrem(j.id) for j in jobs), default=Fraction(0))
            lb2 = max((mfree[i] + _mrem(i) for i in mfree), default=Fraction(0))
            if max(lb1, lb2) >= best[0]:
                return
        ests = [(max(jfree[jid], mfree[mi]) + p, max(jfree[jid], mfree[mi]), jid, h, mi, p)
                for (jid, h, mi, p) in cands]
        ect, est0, jid0, h0, mi0, p0 = min(ests)
        if open_shop:
            # scheduling one operation of a job blocks its siblings, so the
            # machine-restricted conflict set is incomplete here: branch on
            # every operation startable before the minimum completion
            conflict = [(jid, h, mi, p, est) for (c, est, jid, h, mi, p) in ests
                        if est < ect]
            # interchangeable jobs: keep the smallest id per state fingerprint
            seen = {}
            pruned = []
            for (jid, h, mi, p, est) in sorted(conflict):
                key = (mi, p, est, signature(jid))
                if key in seen:
                    continue
                seen[key] = jid
                pruned.append((jid, h, mi, p, est))
            conflict = pruned
        else:
            conflict = [(jid, h, mi, p, est) for (c, est, jid, h, mi, p) in ests
                        if mi == mi0 and est < ect]
        for (jid, h, mi, p, est) in sorted(conflict):
            s = est
            e = s + p
            oj, om = jfree[jid], mfree[mi]
            jfree[jid], mfree[mi] = e, e
            done.add((jid, h))
            pieces.append((jid, h, mi, s, e))
            rec()
            pieces.pop()
            done.remove((jid, h))
            jfree[jid], mfree[mi] = oj, om

    def _mrem(i):
        total = Fraction(0)
        for j in jobs:
            route = routes[j.id]
            for h in range(len(route)):
                if (j.id, h) not in done and route[h][0] == i:
                    total += route[h][1]
        return total

    def _jrem(jid):
        route = routes[jid]
        return sum(p for h, (_, p) in enumerate(route) if (jid, h) not in done)

    # seed the incumbent with a dispatch pass so pruning bites immediately
    g_jfree = dict(jfree)
    g_mfree = dict(mfree)
    g_done = set()
    g_pieces = []
    while True:
        cands = []
        for j in jobs:
            route = routes[j.id]
            hs = ([h for h in range(len(route)) if (j.id, h) not in g_done]
                  if open_shop else
                  ([len([g for g in range(len(route)) if (j.id, g) in g_done])]
                   if len([g for g in range(len(route)) if (j.id, g) in g_done])
                   < len(route) else []))
            for h in hs:
                mi, p = route[h]
                est = max(g_jfree[j.id], g_mfree[mi])
                cands.append((est + p, est, j.id, h, mi, p))
        if not cands:
            break
        c, est, jid, h, mi, p = min(cands)
        g_done.add((jid, h))
        g_jfree[jid] = est + p
        g_mfree[mi] = est + p
        g_pieces.append((jid, h, mi, est, est + p))
    best[0] = max((e for (_, _, _, _, e) in g_pieces), default=Fraction(0))
    best[1] = g_pieces

    rec()
    sch = Schedule()
    for (jid, h, mi, s, e) in best[1]:
        if e > s:
            sch.add(jid, mi, s, e, op=h)
    return best[0], sch


# ---------------------------------------------------------------------------
# preemptive exact values
# ---------------------------------------------------------------------------


def pmtn_grid_exact(inst, obj, budget=None):
    """Optimal preemptive value by exhaustive search.

    Single machine: unit-grid dynamic program over integer decision points
    (integral data admit integral decisions there). Parallel machines: the
    grid is replaced by exhaustive cut certificates enumerated over all job
    subsets, which the flow model proves exact; combinations without such a
    certificate are refused rather than guessed.
    """
    obj = _obj(obj)
    counter = _Counter(budget)
    if inst.env == "single":
        if obj.kind in ("SumU", "SumWU"):
            return _pmtn_wu_subsets(inst, obj)
        return _pmtn_grid_single(inst, obj, counter)
    if inst.env in ("identicalP", "uniformQ"):
        speeds = (inst.speeds if inst.env == "uniformQ" else [1] * inst.m)
        if obj.kind == "Cmax":
            if any(j.r for j in inst.jobs):
                return _pmtn_parallel_lmax(inst, speeds, cmax=True)
            return _pmtn_parallel_cmax(inst, speeds)
        if obj.kind == "Lmax":
            return _pmtn_parallel_lmax(inst, speeds)
        if obj.kind == "SumC":
            if inst.env == "identicalP":
                # no advantage to preemption on identical machines
                val, _ = brute_exact(inst, Objective("SumC"), budget)
                return val
            return _pmtn_q_sumc(inst)
        raise UnsupportedOracle("parallel preemptive oracle: %s" % obj.kind)
    raise UnsupportedOracle(inst.env)


def pmtn_feasible_parallel(jobs, m, speeds, deadlines):
    """Exact feasibility of preemptive scheduling with release dates and
    deadlines on identical/uniform machines: exhaustive cut certificates
    over every job subset (max-flow = min-cut for the interval network)."""
    sp = sorted((Fraction(s) for s in speeds), reverse=True)
    S = [Fraction(0)]
    for s in sp:
        S.append(S[-1] + s)

    def cap(u):
        return S[min(u, m)]

    points = sorted({Fraction(j.r) for j in jobs} | {Fraction(deadlines[j.id]) for j in jobs})
    ids = [j.id for j in jobs]
    n = len(ids)
    for mask in range(1, 1 << n):
        A = [jobs[k] for k in range(n) if mask >> k & 1]
        pa = sum(Fraction(j.p) for j in A)
        got = Fraction(0)
        for a, b in zip(points, points[1:]):
            active = sum(1 for j in A if j.r <= a and deadlines[j.id] >= b)
            got += (b - a) * cap(active)
        if got < pa:
            return False
    return True


def _pmtn_parallel_cmax(inst, speeds):
    """Q|pmtn|Cmax exact: exhaustive subset bound max p(A) / S(min(|A|, m))."""
    sp = sorted((Fraction(s) for s in speeds), reverse=True)
    S = [Fraction(0)]
    for s in sp:
        S.append(S[-1] + s)
    n = inst.n
    best = Fraction(0)
    for mask in range(1, 1 << n):
        pa = sum(Fraction(inst.jobs[k].p) for k in range(n) if mask >> k & 1)
        u = min(bin(mask).count("1"), inst.m)
        best = max(best, pa / S[u])
    return best


def _pmtn_parallel_lmax(inst, speeds, cmax=False):
    """Exact min Lmax (or Cmax with releases) for P/Q preemptive machines via a
    parametric sweep of exhaustive cut certificates."""
    jobs = inst.jobs
    n = len(jobs)
    m = inst.m
    sp = sorted((Fraction(s) for s in speeds), reverse=True)
    S = [Fraction(0)]
    for s in sp:
        S.append(S[-1] + s)

    def cap(u):
        return S[min(u, m)]

    dvals = {j.id: (Fraction(0) if cmax else Fraction(j.d)) for j in jobs}

    def g(A, lam):
        points = sorted({Fraction(j.r) for j in A} |
                        {dvals[j.id] + lam for j in A})
        total = Fraction(0)
        for a, b in zip(points, points[1:]):
            active = sum(1 for j in A if Fraction(j.r) <= a and dvals[j.id] + lam >= b)
            total += (b - a) * cap(active)
        return total

    crit = sorted({Fraction(j.r) - dvals[k.id] for j in jobs for k in jobs})
    lam_low = min(Fraction(j.r) + Fraction(j.p) / cap(1) - dvals[j.id] for j in jobs)
    grid = [lam_low] + [c for c in crit if c > lam_low]
    best = None
    for mask in range(1, 1 << n):
        A = [jobs[k] for k in range(n) if mask >> k & 1]
        pa = sum(Fraction(j.p) for j in A)
        lam_a = None
        for i in range(len(grid)):
            a = grid[i]
            b = grid[i + 1] if i + 1 < len(grid) else a + pa + 1
            ga, gb = g(A, a), g(A, b)
            if ga >= pa:
                lam_a = a
                break
            if gb >= pa:
                # affine on [a, b]
                if gb == ga:
                    lam_a = b
                else:
                    lam_a = a + (pa - ga) * (b - a) / (gb - ga)
                break
        if lam_a is None:
            # beyond last critical point the slope is cap(|A|) > 0
            a = grid[-1]
            ga = g(A, a)
            slope = cap(len(A))
            lam_a = a + (pa - ga) / slope
        if best is None or lam_a > best:
            best = lam_a
    return best


def _pmtn_wu_subsets(inst, obj):
    """1|pmtn,r_j|SumWU exact: enumerate on-time sets; preemptive EDD decides
    feasibility of each set exactly."""
    jobs = inst.jobs
    n = len(jobs)
    best = None
    for mask in range(1 << n):
        chosen = [jobs[k] for k in range(n) if mask >> k & 1]
        if not _edd_feasible(chosen):
            continue
        late = [jobs[k] for k in range(n) if not mask >> k & 1]
        val = sum((1 if obj.kind == "SumU" else j.w) for j in late)
        if best is None or val < best:
            best = val
    return Fraction(best)


def _edd_feasible(jobs):
    """Preemptive EDD meets every due date iff the job set is feasible."""
    if not jobs:
        return True
    events = sorted({j.r for j in jobs})
    rem = {j.id: Fraction(j.p) for j in jobs}
    dd = {j.id: Fraction(j.d) for j in jobs}
    rel = {j.id: Fraction(j.r) for j in jobs}
    t = Fraction(events[0])
    pending = set(rem)
    while pending:
        avail = [j for j in pending if rel[j] <= t]
        if not avail:
            t = min(rel[j] for j in pending)
            continue
        j = min(avail, key=lambda x: (dd[x], x))
        next_rel = min((rel[k] for k in pending if rel[k] > t), default=None)
        run = rem[j] if next_rel is None else min(rem[j], next_rel - t)
        t += run
        rem[j] -= run
        if rem[j] == 0:
            if t > dd[j]:
                return False
            pending.remove(j)
    return True


def _pmtn_grid_single(inst, obj, counter):
    """Unit-grid DP for single-machine preemptive objectives on integral data."""
    jobs = inst.jobs
    horizon = max((j.r for j in jobs), default=0) + sum(j.p for j in jobs)
    if horizon > 64:
        raise UnsupportedOracle("grid horizon above 64")
    ids = [j.id for j in jobs]
    by_id = {j.id: j for j in jobs}
    additive = obj.kind in ("SumC", "SumWC", "SumU", "SumWU", "SumT", "SumWT", "SumF")

    def term(jid, c):
        job = by_id[jid]
        k = obj.kind
        if k == "Cmax":
            return Fraction(c)
        if k == "Lmax":
            return Fraction(c - job.d)
        if k == "SumC":
            return Fraction(c)
        if k == "SumWC":
            return Fraction(job.w * c)
        if k in ("SumU",):
            return Fraction(1 if c > job.d else 0)
        if k == "SumWU":
            return Fraction(job.w if c > job.d else 0)
        if k == "SumT":
            return Fraction(max(0, c - job.d))
        if k == "SumWT":
            return Fraction(job.w * max(0, c - job.d))
        if k in ("Fmax", "SumF"):
            return obj.costfns[jid](c)
        raise UnsupportedOracle(k)

    from functools import lru_cache

    rel = tuple(j.r for j in jobs)

    @lru_cache(maxsize=None)
    def f(t, rem):
        counter.tick()
        if all(v == 0 for v in rem):
            return Fraction(0) if additive else Fraction(-10 ** 12)
        avail = [k for k in range(len(ids)) if rem[k] > 0 and rel[k] <= t]
        if not avail:
            nxt = min(rel[k] for k in range(len(ids)) if rem[k] > 0)
            return f(nxt, rem)
        best = None
        for k in avail:
            nrem = list(rem)
            nrem[k] -= 1
            contrib = term(ids[k], t + 1) if nrem[k] == 0 else None
            sub = f(t + 1, tuple(nrem))
            if additive:
                val = sub + (contrib if contrib is not None else 0)
            else:
                val = max(sub, contrib) if contrib is not None else sub
            if best is None or val < best:
                best = val
        return best

    return f(0, tuple(j.p for j in jobs))


def _pmtn_q_sumc(inst):
    """Q|pmtn|SumC exact: exhaustive minimum over completion orders of the
    componentwise-least solution of the machine-capacity prefix system."""
    speeds = sorted((Fraction(s) for s in inst.speeds), reverse=True)
    n = inst.n
    while len(speeds) < n:
        speeds.append(Fraction(0))
    best = None
    for perm in permutations(range(n)):
        ps = [Fraction(inst.jobs[k].p) for k in perm]
        C = []
        total = Fraction(0)
        ok = True
        for k in range(n):
            # sum_{i<=k} s_{k+1-i} C_i >= sum of first k+1 p's
            lhs = sum(speeds[k - i] * C[i] for i in range(k))
            need = sum(ps[:k + 1])
            if speeds[0] == 0:
                ok = False
                break
            ck = (need - lhs) / speeds[0]
            if C and ck < C[-1]:
                ck = C[-1]
            C.append(ck)
        if not ok:
            continue
        val = sum(C)
        if best is None or val < best:
            best = val
    return best


def r_pmtn_cmax_vertex(inst):
    """Exact R|pmtn|Cmax by exhaustive vertex enumeration of the allocation
    polytope: eliminate the per-job coverage equalities, enumerate every basis
    of the remaining inequality system, and keep the best feasible vertex."""
    ids = inst.job_ids()
    m = inst.m
    n = len(ids)
    pt = {}
    for i in range(1, m + 1):
        for x, jid in enumerate(ids):
            v = inst.ptable[i - 1][x]
            if v is None or v <= 0:
                raise UnsupportedOracle("vertex oracle needs complete tables")
            pt[(i, jid)] = Fraction(v)
    # variables: y[(i,j)] for i < m, plus C; x[m,j] is eliminated through
    # sum_i x_ij / p_ij = 1
    vars_ = [(i, jid) for i in range(1, m) for jid in ids] + ["C"]
    nv = len(vars_)

    def row_of(coeffs, rhs):
        return ([coeffs.get(v, Fraction(0)) for v in vars_], Fraction(rhs))

    rows = []
    # machine loads i < m: sum_j y_ij <= C
    for i in range(1, m):
        rows.append(row_of({**{(i, jid): Fraction(1) for jid in ids},
                            "C": Fraction(-1)}, 0))
    # machine m: sum_j p_mj (1 - sum_{i<m} y_ij/p_ij) <= C
    coeffs = {"C": Fraction(-1)}
    rhs = Fraction(0)
    for jid in ids:
        rhs -= pt[(m, jid)]
        for i in range(1, m):
            coeffs[(i, jid)] = coeffs.get((i, jid), Fraction(0)) \
                - pt[(m, jid)] / pt[(i, jid)]
    rows.append(row_of(coeffs, rhs))
    # job rows: sum_{i<m} y_ij + x_mj <= C
    for jid in ids:
        coeffs = {"C": Fraction(-1)}
        rhs = -pt[(m, jid)]
        for i in range(1, m):
            coeffs[(i, jid)] = Fraction(1) - pt[(m, jid)] / pt[(i, jid)]
        rows.append(row_of(coeffs, rhs))
    # x_mj >= 0: sum_{i<m} y_ij / p_ij <= 1
    for jid in ids:
        rows.append(row_of({(i, jid): Fraction(1) / pt[(i, jid)]
                            for i in range(1, m)}, 1))
    # y >= 0 and C >= 0
    for k, v in enumerate(vars_):
        coeff = [Fraction(0)] * nv
        coeff[k] = Fraction(-1)
        rows.append((coeff, Fraction(0)))

    cidx = vars_.index("C")
    best = None
    for basis in combinations(range(len(rows)), nv):
        mat = [list(rows[r][0]) for r in basis]
        rhs = [rows[r][1] for r in basis]
        sol = _solve_linear(mat, rhs)
        if sol is None:
            continue
        ok = all(sum(a * s for a, s in zip(coeff, sol)) <= b + 0
                 for (coeff, b) in rows)
        if not ok:
            continue
        c = sol[cidx]
        if best is None or c < best:
            best = c
    return best


def _solve_linear(mat, rhs):
    """Exact solve of a square rational system; None when singular."""
    n = len(mat)
    a = [list(row) + [rhs[k]] for k, row in enumerate(mat)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]
