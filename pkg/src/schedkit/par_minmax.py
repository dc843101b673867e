"""Nonpreemptive parallel-machine makespan approximation: list rules, multifit,
relaxed-decision bisection, LP rounding for unrelated machines, the fixed-m
FPTAS, and a Monte-Carlo demonstration of LPT's vanishing error."""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from math import ceil, lcm

from .core.schedule import Schedule
from .kernels.lp import DenseLP, lp_solve


def _speeds(inst):
    if inst.env == "uniformQ":
        return [Fraction(s) for s in inst.speeds]
    return [Fraction(1)] * inst.m


def _loads_to_schedule(inst, assignment):
    """assignment: job id -> machine; jobs run back to back in id order."""
    speeds = _speeds(inst)
    ids = inst.job_ids()
    t = [Fraction(0)] * inst.m
    sch = Schedule()
    for jid in ids:
        i = assignment[jid]
        if inst.env == "unrelatedR":
            dur = Fraction(inst.ptable[i - 1][ids.index(jid)])
        else:
            dur = Fraction(inst.job(jid).p) / speeds[i - 1]
        if dur > 0 or inst.job(jid).p:
            sch.add(jid, i, t[i - 1], t[i - 1] + dur)
        t[i - 1] += dur
    return sch, max(t) if t else Fraction(0)


def list_family(inst, rule="lpt", job_list=None):
    """List rules with their proven ratios: ls (2 - 1/m on identical machines),
    lpt (4/3 - 1/3m), lpt_prime on uniform machines (2 - 1/m, assign to the
    machine of earliest completion), differencing2 on two identical machines
    (7/6)."""
    m = inst.m
    speeds = _speeds(inst)
    if rule == "differencing2":
        if inst.env != "identicalP" or m != 2:
            raise ValueError("differencing2 needs two identical machines")
        sch, cmax = _differencing2(inst)
        return sch, cmax, Fraction(7, 6)
    if rule in ("ls", "lpt"):
        if rule == "lpt":
            order = sorted(inst.job_ids(), key=lambda j: (-inst.job(j).p, j))
        else:
            order = list(job_list) if job_list is not None else inst.job_ids()
        if inst.env == "uniformQ":
            # machines take the next job whenever they fall idle
            free = [(Fraction(0), i) for i in range(1, m + 1)]
            heapq.heapify(free)
            assign = {}
            t_free = {}
            for jid in order:
                t, i = heapq.heappop(free)
                assign[jid] = i
                heapq.heappush(free, (t + Fraction(inst.job(jid).p) / speeds[i - 1], i))
        else:
            loads = [Fraction(0)] * m
            assign = {}
            for jid in order:
                i = min(range(1, m + 1), key=lambda i: (loads[i - 1], i))
                assign[jid] = i
                loads[i - 1] += inst.job(jid).p
        sch, cmax = _loads_to_schedule(inst, assign)
        rho = Fraction(2) - Fraction(1, m) if rule == "ls" else \
            Fraction(4, 3) - Fraction(1, 3 * m)
        return sch, cmax, rho
    if rule == "lpt_prime":
        if inst.env not in ("uniformQ", "identicalP"):
            raise ValueError("lpt_prime needs uniform machines")
        order = sorted(inst.job_ids(), key=lambda j: (-inst.job(j).p, j))
        loads = [Fraction(0)] * m
        assign = {}
        for jid in order:
            p = Fraction(inst.job(jid).p)
            i = min(range(1, m + 1),
                    key=lambda i: (loads[i - 1] + p / speeds[i - 1], i))
            assign[jid] = i
            loads[i - 1] += p / speeds[i - 1]
        sch, cmax = _loads_to_schedule(inst, assign)
        return sch, cmax, Fraction(2) - Fraction(1, m)
    raise ValueError(rule)


def _differencing2(inst):
    items = [(j.p, j.id) for j in inst.jobs]
    trace = []
    virt = 0
    pool = {jid: p for (p, jid) in items}
    keys = sorted(pool, key=lambda j: (-pool[j], j))
    while len(pool) > 1:
        keys = sorted(pool, key=lambda j: (-pool[j], j))
        a, b = keys[0], keys[1]
        virt -= 1
        trace.append((virt, a, b))
        pool[virt] = pool[a] - pool[b]
        del pool[a]
        del pool[b]
    side = {}
    if pool:
        side[next(iter(pool))] = 1
    for (v, a, b) in reversed(trace):
        s = side.pop(v)
        side[a] = s
        side[b] = 3 - s
    assign = {j.id: side[j.id] for j in inst.jobs}
    return _loads_to_schedule(inst, assign)


# ---------------------------------------------------------------------------
# FFD and multifit
# ---------------------------------------------------------------------------


def ffd_pack(sizes, cap):
    """First fit decreasing: items (size, id) sorted by size desc then id;
    bins indexed by creation order. Returns list of bins (lists of ids)."""
    bins = []
    loads = []
    for (s, jid) in sorted(sizes, key=lambda e: (-e[0], e[1])):
        placed = False
        for b in range(len(bins)):
            if loads[b] + s <= cap:
                bins[b].append(jid)
                loads[b] += s
                placed = True
                break
        if not placed:
            bins.append([jid])
            loads.append(s)
    return bins


def multifit(inst, iters=20):
    """Bisection over FFD bin size; Cmax <= (13/11 + 2^-iters) optimum."""
    if inst.env != "identicalP":
        raise ValueError("multifit needs identical machines")
    sizes = [(j.p, j.id) for j in inst.jobs]
    sched, cmax, _ = list_family(inst, "ls")
    UB = int(cmax)
    LB = max(max((j.p for j in inst.jobs), default=0),
             ceil(Fraction(sum(j.p for j in inst.jobs), inst.m)))
    best_bins = None
    it = 0
    while LB < UB and it < iters:
        it += 1
        d = (LB + UB) // 2
        bins = ffd_pack(sizes, d)
        if len(bins) > inst.m:
            LB = d + 1
        else:
            UB = d
            best_bins = bins
    if best_bins is None:
        bins = ffd_pack(sizes, UB)
        best_bins = bins if len(bins) <= inst.m else None
    if best_bins is None:
        return sched, cmax
    assign = {}
    for b, content in enumerate(best_bins, start=1):
        for jid in content:
            assign[jid] = b
    return _loads_to_schedule(inst, assign)


# ---------------------------------------------------------------------------
# the B_rho bisection framework
# ---------------------------------------------------------------------------


def _pack_bb(items, cap, max_per_bin, max_bins):
    """Exact minimum-bin packing with a per-bin item cap (small inputs)."""
    items = sorted(items, reverse=True)
    n = len(items)
    best = [None]

    loads = []
    counts = []

    def rec(k):
        if best[0] is not None and len(loads) >= best[0]:
            return
        if k == n:
            best[0] = len(loads)
            best[1:] = [list(assign)]
            return
        s = items[k]
        seen = set()
        for b in range(len(loads)):
            key = (loads[b], counts[b])
            if key in seen:
                continue
            seen.add(key)
            if loads[b] + s <= cap and counts[b] < max_per_bin:
                loads[b] += s
                counts[b] += 1
                assign.append(b)
                rec(k + 1)
                assign.pop()
                loads[b] -= s
                counts[b] -= 1
        if len(loads) < max_bins:
            loads.append(s)
            counts.append(1)
            assign.append(len(loads) - 1)
            rec(k + 1)
            assign.pop()
            loads.pop()
            counts.pop()

    assign = []
    rec(0)
    if best[0] is None:
        return None
    return best[1]


def decide_dk(inst, d, k):
    """(1 + 1/k)-relaxed decision for identical machines: round long jobs down
    to multiples of d/k^2, pack them exactly with fewer than k jobs per bin,
    then list-schedule the short jobs into the plan."""
    m = inst.m
    jobs = inst.jobs
    if sum(j.p for j in jobs) > m * d:
        return None
    unit = Fraction(d, k * k)
    longs = [j for j in jobs if j.p > Fraction(d, k)]
    shorts = [j for j in jobs if j.p <= Fraction(d, k)]
    rounded = []
    for j in longs:
        rounded.append((int(Fraction(j.p) / unit), j.id))
    capacity = k * k
    assign_list = _pack_bb([r for (r, _) in rounded], capacity, k - 1, m)
    if assign_list is None:
        return None
    order = sorted(range(len(rounded)), key=lambda i: (-rounded[i][0], rounded[i][1]))
    assign = {}
    for pos, idx in enumerate(order):
        assign[rounded[idx][1]] = assign_list[pos] + 1
    loads = [Fraction(0)] * m
    for j in longs:
        loads[assign[j.id] - 1] += j.p
    for j in shorts:
        i = min(range(1, m + 1), key=lambda i: (loads[i - 1], i))
        assign[j.id] = i
        loads[i - 1] += j.p
    return _loads_to_schedule(inst, assign)[0]


def decide_recurse(inst, d):
    """3/2-relaxed decision for uniform machines (the recursive split)."""
    speeds = sorted(_speeds(inst), reverse=True)
    jobs = [(Fraction(j.p), j.id) for j in inst.jobs]

    def rec(J, m):
        if sum(p for (p, _) in J) > d * sum(speeds[:m]):
            return None
        if m == 0:
            return None if J else {}
        if m == 1:
            return {jid: 1 for (_, jid) in J}
        sm = speeds[m - 1]
        S = [(p, jid) for (p, jid) in J if p <= d * sm / 2]
        rest = [(p, jid) for (p, jid) in J if p > d * sm / 2]
        cands = [(p, jid) for (p, jid) in rest if p <= d * sm]
        if cands:
            pr, r = max(cands)
            sub = rec([(p, jid) for (p, jid) in rest if jid != r], m - 1)
            if sub is None:
                return None
            sub = dict(sub)
            sub[r] = m
        else:
            sub = rec(rest, m - 1)
            if sub is None:
                return None
            sub = dict(sub)
        # extend with the small jobs by earliest completion on machines 1..m
        loads = [Fraction(0)] * m
        for jid, i in sub.items():
            loads[i - 1] += dict((j, p) for (p, j) in J)[jid] / speeds[i - 1]
        for (p, jid) in sorted(S, key=lambda e: e[1]):
            i = min(range(1, m + 1), key=lambda i: (loads[i - 1] + p / speeds[i - 1], i))
            sub[jid] = i
            loads[i - 1] += p / speeds[i - 1]
        return sub

    out = rec(jobs, inst.m)
    if out is None:
        return None
    return _loads_to_schedule(inst, out)[0]


def bisection_decide(inst, proc="dk", k=2):
    """The bisection framework: repeatedly run a rho-relaxed decision procedure
    (dk: 1+1/k on identical machines; q_recurse: 3/2 on uniform; ffd: the
    multifit test). Returns (schedule, cmax, rho, transcript)."""
    if proc == "dk":
        rho = 1 + Fraction(1, k)
        scale = 1
        sched0, ub, _ = list_family(inst, "ls")
        LB = max(max((j.p for j in inst.jobs), default=0),
                 ceil(Fraction(sum(j.p for j in inst.jobs), inst.m)))
        decide = lambda d: decide_dk(inst, d, k)
    elif proc == "q_recurse":
        rho = Fraction(3, 2)
        scale = lcm(*[int(s) for s in _speeds(inst)]) if inst.m else 1
        sched0, ub, _ = list_family(inst, "lpt_prime")
        speeds = sorted(_speeds(inst), reverse=True)
        LBf = max(Fraction(max((j.p for j in inst.jobs), default=0), 1) / speeds[0],
                  Fraction(sum(j.p for j in inst.jobs)) / sum(speeds),
                  Fraction(ub, 2))
        LB = ceil(LBf * scale)
        decide = lambda d: decide_recurse(inst, Fraction(d, scale))
    elif proc == "ffd":
        rho = Fraction(13, 11)
        scale = 1
        sched0, ub, _ = list_family(inst, "ls")
        LB = max(max((j.p for j in inst.jobs), default=0),
                 ceil(Fraction(sum(j.p for j in inst.jobs), inst.m)))

        def decide(d):
            bins = ffd_pack([(j.p, j.id) for j in inst.jobs], d)
            if len(bins) > inst.m:
                return None
            assign = {jid: b for b, content in enumerate(bins, start=1)
                      for jid in content}
            return _loads_to_schedule(inst, assign)[0]
    else:
        raise ValueError(proc)

    UB = ceil(Fraction(ub) * scale)
    best = sched0
    transcript = []
    while LB < UB:
        d = (LB + UB) // 2
        sch = decide(d)
        transcript.append((Fraction(d, scale), sch is not None))
        if sch is None:
            LB = d + 1
        else:
            UB = d
            best = sch
    cmax = best.makespan()
    return best, cmax, rho, transcript


# ---------------------------------------------------------------------------
# unrelated machines
# ---------------------------------------------------------------------------


def _r_times(inst):
    ids = inst.job_ids()
    return ids, {(i, jid): inst.ptable[i - 1][x]
                 for i in range(1, inst.m + 1) for x, jid in enumerate(ids)
                 if inst.ptable[i - 1][x] is not None}


def r_approx(inst, mode="lp_prime"):
    """R||Cmax approximations. greedy: fastest machine per job (ratio m);
    rs: relative-speed lists with the sqrt(m) cutoff; lp_m: assignment LP plus
    enumeration of the fractional jobs (fixed m, ratio 2); lp_prime: bisection
    plus rounding of the deadline LP's extreme point (ratio 2).

    Returns (schedule, cmax, lower_bound)."""
    ids, pt = _r_times(inst)
    m = inst.m
    if mode == "greedy":
        assign = {}
        for jid in ids:
            i = min((i for i in range(1, m + 1) if (i, jid) in pt),
                    key=lambda i: (pt[(i, jid)], i))
            assign[jid] = i
        sch, cmax = _loads_to_schedule(inst, assign)
        T = sum(min(pt[(i, jid)] for i in range(1, m + 1) if (i, jid) in pt)
                for jid in ids)
        return sch, cmax, Fraction(T, m)
    if mode == "rs":
        return _rs(inst, ids, pt)
    if mode == "lp_m":
        return _lp_m(inst, ids, pt)
    if mode == "lp_prime":
        return _lp_prime(inst, ids, pt)
    raise ValueError(mode)


def _rs(inst, ids, pt):
    m = inst.m
    best = {jid: min(pt[(i, jid)] for i in range(1, m + 1) if (i, jid) in pt)
            for jid in ids}
    lists = {}
    for i in range(1, m + 1):
        lists[i] = sorted((jid for jid in ids if (i, jid) in pt),
                          key=lambda j: (Fraction(pt[(i, j)], best[j]), j))
    done = set()
    free = [(Fraction(0), i) for i in range(1, m + 1)]
    heapq.heapify(free)
    assign = {}
    alive = set(range(1, m + 1))
    while len(done) < len(ids) and free:
        t, i = heapq.heappop(free)
        nxt = None
        for jid in lists[i]:
            if jid in done:
                continue
            # ratio <= sqrt(m), compared by squares
            if pt[(i, jid)] ** 2 <= m * best[jid] ** 2:
                nxt = jid
            break
        if nxt is None:
            alive.discard(i)
            continue
        done.add(nxt)
        assign[nxt] = i
        heapq.heappush(free, (t + pt[(i, nxt)], i))
    for jid in ids:
        if jid not in assign:
            i = min((i for i in range(1, m + 1) if (i, jid) in pt),
                    key=lambda i: (pt[(i, jid)], i))
            assign[jid] = i
    sch, cmax = _loads_to_schedule(inst, assign)
    T = sum(best[jid] for jid in ids)
    return sch, cmax, Fraction(T, m)


def _lp_m(inst, ids, pt):
    m = inst.m
    if m > 4:
        raise ValueError("lp_m enumerates m^(m-1) extensions; m <= 4 only")
    n = len(ids)
    var = {}
    for jid in ids:
        for i in range(1, m + 1):
            if (i, jid) in pt:
                var[(i, jid)] = len(var)
    nv = len(var)
    c = [0.0] * nv + [1.0]
    lp = DenseLP(c=c)
    for jid in ids:
        row = [0.0] * (nv + 1)
        for i in range(1, m + 1):
            if (i, jid) in var:
                row[var[(i, jid)]] = 1.0
        lp.add(row, "=", 1)
    for i in range(1, m + 1):
        row = [0.0] * (nv + 1)
        for jid in ids:
            if (i, jid) in var:
                row[var[(i, jid)]] = float(pt[(i, jid)])
        row[nv] = -1.0
        lp.add(row, "<=", 0)
    res = lp_solve(lp)
    if res.status != "optimal":
        raise RuntimeError("assignment LP failed: %s" % res.status)
    assign = {}
    fractional = []
    for jid in ids:
        placed = None
        for i in range(1, m + 1):
            if (i, jid) in var and res.x[var[(i, jid)]] >= 1 - 1e-6:
                placed = i
                break
        if placed is None:
            fractional.append(jid)
        else:
            assign[jid] = placed
    best = None
    stack = [dict(assign)]
    from itertools import product
    for combo in product(range(1, m + 1), repeat=len(fractional)):
        cand = dict(assign)
        ok = True
        for jid, i in zip(fractional, combo):
            if (i, jid) not in pt:
                ok = False
                break
            cand[jid] = i
        if not ok:
            continue
        sch, cmax = _loads_to_schedule(inst, cand)
        if best is None or cmax < best[1]:
            best = (sch, cmax)
    return best[0], best[1], res.value


def _lp_prime(inst, ids, pt):
    m = inst.m
    greedy_sched, greedy_cmax, _ = r_approx(inst, "greedy")
    UB = int(greedy_cmax)
    T = sum(min(pt[(i, jid)] for i in range(1, m + 1) if (i, jid) in pt)
            for jid in ids)
    LB = max(ceil(Fraction(T, m)),
             max(min(pt[(i, jid)] for i in range(1, m + 1) if (i, jid) in pt)
                 for jid in ids))
    best = _lp_prime_decide(inst, ids, pt, UB)
    if best is None:
        raise RuntimeError("deadline LP infeasible at the greedy makespan")
    while LB < UB:
        d = (LB + UB) // 2
        out = _lp_prime_decide(inst, ids, pt, d)
        if out is None:
            LB = d + 1
        else:
            UB = d
            best = out
    sch, cmax = _loads_to_schedule(inst, best)
    return sch, cmax, Fraction(LB)


def _lp_prime_decide(inst, ids, pt, d):
    m = inst.m
    var = {}
    for jid in ids:
        for i in range(1, m + 1):
            if (i, jid) in pt and pt[(i, jid)] <= d:
                var[(i, jid)] = len(var)
    for jid in ids:
        if not any((i, jid) in var for i in range(1, m + 1)):
            return None
    nv = len(var)
    lp = DenseLP(c=[0.0] * nv)
    for jid in ids:
        row = [0.0] * nv
        for i in range(1, m + 1):
            if (i, jid) in var:
                row[var[(i, jid)]] = 1.0
        lp.add(row, "=", 1)
    for i in range(1, m + 1):
        row = [0.0] * nv
        any_there = False
        for jid in ids:
            if (i, jid) in var:
                row[var[(i, jid)]] = float(pt[(i, jid)])
                any_there = True
        if any_there:
            lp.add(row, "<=", d)
    res = lp_solve(lp)
    if res.status != "optimal":
        return None
    assign = {}
    frac_edges = []
    for (i, jid), v in var.items():
        x = res.x[v]
        if x >= 1 - 1e-6:
            assign[jid] = i
        elif x > 1e-6:
            frac_edges.append((i, jid))
    frac_jobs = sorted({jid for (_, jid) in frac_edges if jid not in assign})
    # match every fractional job to a distinct machine along support edges
    adj = {jid: sorted({i for (i, j2) in frac_edges if j2 == jid}) for jid in frac_jobs}
    matched = {}

    def augment(jid, seen):
        for i in adj[jid]:
            if i in seen:
                continue
            seen.add(i)
            if i not in matched or augment(matched[i], seen):
                matched[i] = jid
                return True
        return False

    for jid in frac_jobs:
        if not augment(jid, set()):
            return None
    for i, jid in matched.items():
        assign[jid] = i
    return assign


def rm_fptas(inst, eps):
    """Rm||Cmax within (1+eps): round to delta = T/(kmn) and run the
    load-vector DP; the final makespan is evaluated with original times."""
    ids, pt = _r_times(inst)
    m = inst.m
    if m > 3:
        raise ValueError("rm_fptas supports m <= 3")
    n = len(ids)
    k = ceil(1 / Fraction(eps))
    T = sum(min(pt[(i, jid)] for i in range(1, m + 1) if (i, jid) in pt)
            for jid in ids)
    if T == 0:
        assign = {jid: 1 for jid in ids}
        sch, cmax = _loads_to_schedule(inst, assign)
        return sch, cmax
    delta = Fraction(T, k * m * n)
    rp = {key: int(Fraction(v) / delta) for key, v in pt.items()}
    start = tuple([0] * (m - 1))
    assign = {}
    Ftab = [{start: (0, None)}]
    for jid in ids:
        prev = Ftab[-1]
        nxt = {}
        for st, (l0, _) in prev.items():
            for i in range(1, m + 1):
                if (i, jid) not in rp:
                    continue
                if i < m:
                    ns = st[:i - 1] + (st[i - 1] + rp[(i, jid)],) + st[i:]
                    nl = l0
                else:
                    ns = st
                    nl = l0 + rp[(i, jid)]
                old = nxt.get(ns)
                if old is None or nl < old[0]:
                    nxt[ns] = (nl, (st, l0, i))
        Ftab.append(nxt)
    state = min(Ftab[-1], key=lambda s: max(list(s) + [Ftab[-1][s][0]]))
    for lvl in range(len(ids), 0, -1):
        _, parent = Ftab[lvl][state]
        pstate, plm, i = parent
        assign[ids[lvl - 1]] = i
        state = pstate
    sch, cmax = _loads_to_schedule(inst, assign)
    return sch, cmax


# ---------------------------------------------------------------------------
# Monte-Carlo demonstration
# ---------------------------------------------------------------------------


def lpt_experiment(m, ns, trials, seed):
    """Mean/max load gap of LPT on uniform-random processing times (integers
    over 2^16); reproducible per seed. Returns rows (n, trials, mean_gap,
    max_gap)."""
    rows = []
    for n in ns:
        total = Fraction(0)
        worst = Fraction(0)
        for t in range(trials):
            rng = random.Random(((seed * 1000003 + m) * 1000003 + n) * 1000003 + t)
            ps = sorted((rng.randrange(1, 2 ** 16) for _ in range(n)), reverse=True)
            loads = [0] * m
            heap = [(0, i) for i in range(m)]
            heapq.heapify(heap)
            for p in ps:
                l, i = heapq.heappop(heap)
                heapq.heappush(heap, (l + p, i))
            finals = sorted(l for (l, _) in heap)
            gap = Fraction(finals[-1] - finals[0], 2 ** 16)
            total += gap
            worst = max(worst, gap)
        rows.append((n, trials, total / trials, worst))
    return rows
