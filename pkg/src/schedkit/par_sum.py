"""Parallel-machine minsum: coefficient matching, preemptive SPT on uniform
machines, the fixed-m dynamic program, and unit-time slot matching."""

from __future__ import annotations

import heapq
from fractions import Fraction

from .core.schedule import Schedule
from .kernels.assignment import min_cost_assignment
from .sm_latejobs import oppositely_ordered


class CoefficientStream:
    """Emits the values k/s_i in nondecreasing order; ties by smaller machine."""

    def __init__(self, speeds):
        self.speeds = [Fraction(s) for s in speeds]
        self.heap = [(Fraction(1) / s, i, 1) for i, s in enumerate(self.speeds, start=1)]
        heapq.heapify(self.heap)

    def pop(self):
        val, i, k = heapq.heappop(self.heap)
        heapq.heappush(self.heap, ((k + 1) / self.speeds[i - 1], i, k + 1))
        return val, i, k


def _speeds(inst):
    if inst.env == "uniformQ":
        return [Fraction(s) for s in inst.speeds]
    return [Fraction(1)] * inst.m


def minsum_assign(inst, offsets=None):
    """Optimal sum of completion times by coefficient matching: SPT against
    the k/s_i stream for identical/uniform machines, a pruned position
    assignment for unrelated ones. Weights are honored only on identical
    machines with oppositely ordered processing times and weights."""
    if any(j.r for j in inst.jobs) or inst.prec:
        raise ValueError("minsum_assign needs equal releases and no precedence")
    weighted = any(j.w != 1 for j in inst.jobs)
    if weighted:
        if inst.env != "identicalP" or not oppositely_ordered(inst.jobs):
            raise ValueError("weights need identical machines with oppositely "
                             "ordered processing times and weights")
    if inst.env == "unrelatedR":
        return _minsum_unrelated(inst, offsets)
    if offsets is not None:
        raise ValueError("offsets are supported on unrelated machines only")
    speeds = _speeds(inst)
    jobs = sorted(inst.jobs, key=lambda j: (-j.p, j.id))
    if weighted:
        # oppositely ordered: SPT is simultaneously largest-weight-first
        jobs = sorted(inst.jobs, key=lambda j: (-j.p, j.w, j.id))
    stream = CoefficientStream(speeds)
    per_machine = {i: [] for i in range(1, inst.m + 1)}
    for job in jobs:
        _, i, k = stream.pop()
        per_machine[i].append((k, job))
    sch = Schedule()
    value = Fraction(0)
    for i, slots in per_machine.items():
        slots.sort(key=lambda e: -e[0])      # k-th last position: big k first
        t = Fraction(0)
        for (k, job) in slots:
            dur = Fraction(job.p) / speeds[i - 1]
            sch.add(job.id, i, t, t + dur)
            t += dur
        cs = t
    for j in inst.jobs:
        value += j.w * sch.completion(j.id) if j.p else 0
    return sch, value


def _minsum_unrelated(inst, offsets):
    ids = inst.job_ids()
    n = len(ids)
    offsets = offsets or [0] * inst.m
    # per-job stream of the n cheapest k*p_ij coefficients
    slots = set()
    for jidx, jid in enumerate(ids):
        heap = []
        for i in range(1, inst.m + 1):
            pij = inst.ptable[i - 1][jidx]
            if pij is not None:
                heapq.heappush(heap, (pij + offsets[i - 1], i, 1))
        for _ in range(n):
            if not heap:
                break
            cost, i, k = heapq.heappop(heap)
            slots.add((i, k))
            pij = inst.ptable[i - 1][jidx]
            heapq.heappush(heap, ((k + 1) * pij + offsets[i - 1], i, k + 1))
    slots = sorted(slots)
    big = Fraction(sum(sum(v for v in row if v is not None) for row in inst.ptable) + 1) * (n + 1)
    cost = []
    for jidx in range(n):
        row = []
        for (i, k) in slots:
            pij = inst.ptable[i - 1][jidx]
            row.append(big if pij is None else Fraction(k * pij + offsets[i - 1]))
        cost.append(row)
    match, total, _ = min_cost_assignment(cost, allow_partial=True)
    per_machine = {i: [] for i in range(1, inst.m + 1)}
    for jidx, sidx in enumerate(match):
        i, k = slots[sidx]
        per_machine[i].append((k, jidx))
    sch = Schedule()
    value = Fraction(0)
    for i, assigned in per_machine.items():
        assigned.sort(key=lambda e: -e[0])
        t = Fraction(offsets[i - 1])
        for (k, jidx) in assigned:
            pij = inst.ptable[i - 1][jidx]
            sch.add(ids[jidx], i, t, t + pij)
            t += pij
            value += t
    return sch, value


# ---------------------------------------------------------------------------
# preemptive SPT on uniform machines
# ---------------------------------------------------------------------------


def q_pmtn_spt(inst):
    """Q|pmtn|sum C: job j runs on the fastest machine after its predecessor
    vacates it; completions solve the staircase capacity system exactly."""
    if any(j.w != 1 for j in inst.jobs) or any(j.r for j in inst.jobs):
        raise ValueError("q_pmtn_spt needs unit weights and equal releases")
    speeds = sorted(_speeds(inst), reverse=True)
    jobs = sorted(inst.jobs, key=lambda j: (j.p, j.id))
    if len(set(speeds)) == 1:
        # equal speeds: the staircase pieces concatenate in time, so plain SPT
        # list scheduling realizes the same completions without preemption
        sch = Schedule()
        free = [(Fraction(0), i) for i in range(1, inst.m + 1)]
        heapq.heapify(free)
        value = Fraction(0)
        for job in jobs:
            t, i = heapq.heappop(free)
            dur = Fraction(job.p) / speeds[0]
            sch.add(job.id, i, t, t + dur)
            value += t + dur
            heapq.heappush(free, (t + dur, i))
        return sch, value
    n = len(jobs)
    m = inst.m
    C = []
    for idx, job in enumerate(jobs):
        k = idx + 1
        used = Fraction(0)
        for i in range(2, min(k, m) + 1):
            lo = C[k - i - 1] if k - i - 1 >= 0 else Fraction(0)
            hi = C[k - i]
            used += speeds[i - 1] * (hi - lo)
        prev = C[-1] if C else Fraction(0)
        ck = prev + (Fraction(job.p) - used) / speeds[0]
        if C and ck < C[-1]:
            ck = C[-1]
        C.append(ck)
    sch = Schedule()
    for idx, job in enumerate(jobs):
        k = idx + 1
        for slot in range(max(1, k - m + 1), k + 1):
            machine = k - slot + 1
            lo = C[slot - 2] if slot >= 2 else Fraction(0)
            hi = C[slot - 1]
            if hi > lo:
                sch.add(job.id, machine, lo, hi)
    value = sum(C, Fraction(0))
    return sch, value


# ---------------------------------------------------------------------------
# fixed-m dynamic program
# ---------------------------------------------------------------------------


def _ptimes(inst):
    """Integral per-machine processing times as a dict (machine, jobid)."""
    out = {}
    ids = inst.job_ids()
    for i in range(1, inst.m + 1):
        for jidx, jid in enumerate(ids):
            if inst.env == "unrelatedR":
                v = inst.ptable[i - 1][jidx]
            elif inst.env == "uniformQ":
                frac = Fraction(inst.job(jid).p) / inst.speeds[i - 1]
                if frac.denominator != 1:
                    raise ValueError("qm_dp needs integral per-machine times; rescale")
                v = int(frac)
            else:
                v = inst.job(jid).p
            out[(i, jid)] = v
    return out


def qm_dp(inst, obj="SumWC", order=None, horizon=None):
    """Fixed-m DP over per-machine completion vectors; optimal among schedules
    consistent with the a-priori order, which is globally optimal for the
    supported objectives (ratio order for SumWC, EDD for Lmax/SumWU/SumWT,
    any for Cmax)."""
    kind = obj if isinstance(obj, str) else obj.kind
    jobs = {j.id: j for j in inst.jobs}
    if order is None:
        if kind == "SumWC":
            if inst.env == "unrelatedR":
                raise ValueError("SumWC has no a-priori order on unrelated machines")
            order = sorted(jobs, key=lambda j: (-Fraction(jobs[j].w, jobs[j].p), j))
        elif kind == "Cmax":
            order = sorted(jobs)
        elif kind in ("Lmax", "SumWU", "SumWT"):
            if any(jobs[j].d is None for j in jobs):
                raise ValueError("%s needs due dates" % kind)
            order = sorted(jobs, key=lambda j: (jobs[j].d, j))
            if kind == "SumWT" and len({jobs[j].d for j in jobs}) != 1:
                raise ValueError("SumWT supports a common deadline only")
        else:
            raise ValueError("no valid a-priori order for %s" % kind)
    pt = _ptimes(inst)
    if horizon is None:
        total = sum(max(pt[(i, j)] for i in range(1, inst.m + 1)) for j in jobs)
        horizon = total
    if horizon > 40 and inst.m > 1:
        raise ValueError("horizon %d exceeds the desk-scale bound" % horizon)

    minsum = kind in ("SumWC", "SumWU", "SumWT")

    def cost(jid, t):
        job = jobs[jid]
        if kind == "Cmax":
            return t
        if kind == "Lmax":
            return t - job.d
        if kind == "SumWC":
            return job.w * t
        if kind == "SumWU":
            return job.w if t > job.d else 0
        if kind == "SumWT":
            return job.w * max(0, t - job.d)
        raise AssertionError(kind)

    start = tuple([0] * inst.m)
    F = {start: (0 if minsum else -10 ** 15, None)}
    for jid in order:
        nxt = {}
        for state, (val, _) in F.items():
            for i in range(1, inst.m + 1):
                ti = state[i - 1] + pt[(i, jid)]
                if ti > horizon:
                    continue
                ns = state[:i - 1] + (ti,) + state[i:]
                nv = val + cost(jid, ti) if minsum else max(val, cost(jid, ti))
                old = nxt.get(ns)
                if old is None or nv < old[0]:
                    nxt[ns] = (nv, (state, i))
            if kind == "SumWU":
                # a late job pays its weight and consumes no machine time
                nv = val + jobs[jid].w
                old = nxt.get(state)
                if old is None or nv < old[0]:
                    nxt[state] = (nv, (state, None))
        F = nxt
    if not F:
        raise ValueError("horizon too small for any schedule")
    best_state = min(F, key=lambda s: F[s][0])
    value = F[best_state][0]
    return Fraction(value)


# ---------------------------------------------------------------------------
# unit-time jobs: slot matching
# ---------------------------------------------------------------------------


def unit_slots(inst):
    """The n earliest completion slots (time, machine, position)."""
    stream = CoefficientStream(_speeds(inst))
    return [stream.pop() for _ in range(inst.n)]


def unit_matching(inst, obj="SumC", costfns=None):
    """Q|p_j=1| objectives by matching jobs to the n earliest slots: a full
    assignment for SumF, sorting for SumC/SumWC, greedy over slots for SumU,
    and least-cost-last over slots for Fmax."""
    if any(j.p != 1 for j in inst.jobs):
        raise ValueError("unit_matching requires unit processing times")
    kind = obj if isinstance(obj, str) else obj.kind
    slots = unit_slots(inst)
    ids = inst.job_ids()
    n = len(ids)
    jobs = {j.id: j for j in inst.jobs}

    if kind in ("SumC", "SumWC"):
        order = sorted(ids, key=lambda j: (-jobs[j].w, j))
        times = sorted(range(n), key=lambda s: (slots[s][0], slots[s][1]))
        assign = {order[h]: slots[times[h]] for h in range(n)}
    elif kind == "SumF":
        cost = [[costfns[j](slots[s][0]) for s in range(n)] for j in ids]
        match, _, _ = min_cost_assignment(cost)
        assign = {ids[jidx]: slots[s] for jidx, s in enumerate(match)}
    elif kind == "SumU":
        by_time = sorted(range(n), key=lambda s: (slots[s][0], slots[s][1]))
        pending = sorted(ids, key=lambda j: (jobs[j].d, j))
        assign = {}
        leftover = []
        for s in by_time:
            t = slots[s][0]
            cands = [j for j in pending if j not in assign and jobs[j].d >= t]
            if cands:
                assign[cands[0]] = slots[s]
            else:
                leftover.append(slots[s])
        for j in ids:
            if j not in assign:
                assign[j] = leftover.pop()
    elif kind == "Fmax":
        fns = costfns or {j: (lambda t, d=jobs[j].d: t - d) for j in ids}
        remaining = set(ids)
        assign = {}
        for s in sorted(range(n), key=lambda s: (-slots[s][0], slots[s][1])):
            t = slots[s][0]
            j = min(remaining, key=lambda x: (fns[x](t), x))
            assign[j] = slots[s]
            remaining.remove(j)
    else:
        raise ValueError(kind)

    sch = Schedule()
    speeds = _speeds(inst)
    value_total = Fraction(0)
    worst = None
    for jid, (t, i, k) in assign.items():
        lo = Fraction(k - 1) / speeds[i - 1]
        sch.add(jid, i, lo, t)
    cs = sch.completions()
    if kind in ("SumC", "SumWC"):
        value = sum(jobs[j].w * cs[j] for j in ids)
    elif kind == "SumF":
        value = sum(costfns[j](cs[j]) for j in ids)
    elif kind == "SumU":
        value = Fraction(sum(1 for j in ids if cs[j] > jobs[j].d))
    else:
        fns = costfns or {j: (lambda t, d=jobs[j].d: t - d) for j in ids}
        value = max(fns[j](cs[j]) for j in ids)
    return sch, value
