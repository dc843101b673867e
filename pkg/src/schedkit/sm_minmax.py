"""Single-machine minmax scheduling: EDD family, Least Cost Last, preemptive
blocks, equal-length jobs, head-body-tail approximation and branch-and-bound."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .core.instance import Instance
from .core.schedule import Schedule, lateness_fn


@dataclass
class CriticalInfo:
    c: int                    # critical job
    Q: list                   # critical-sequence job ids in processing order
    b: int | None = None      # interference job, if any
    S_b: object = None        # its starting time


@dataclass
class BBNode:
    lb: object
    depth: int
    r: dict
    q: dict
    branch: str = ""

    def __lt__(self, other):
        return (self.lb, self.depth) < (other.lb, other.depth)


@dataclass
class BBResult:
    value: object
    schedule: Schedule
    nodes: int
    lower_bound: object
    optimal: bool = True


def as_hbt(inst):
    """(ids, r, p, q) view; q_j = -d_j when only due dates are given."""
    ids = inst.job_ids()
    r = {j.id: j.r for j in inst.jobs}
    p = {j.id: j.p for j in inst.jobs}
    q = {}
    for j in inst.jobs:
        if j.q is not None:
            q[j.id] = j.q
        elif j.d is not None:
            q[j.id] = -j.d
        else:
            q[j.id] = 0
    return ids, r, p, q


# ---------------------------------------------------------------------------
# date modification
# ---------------------------------------------------------------------------


def modify_dates(inst):
    """Propagate precedence into dates: d_j := min(d_j, d_k - p_k) along arcs
    into k (processing sinks first), and r_k := max(r_k, r_j + p_j) forward.
    Delivery times follow the q = -d convention. Feasible schedules and their
    values are unchanged."""
    inst2 = Instance(env=inst.env, m=inst.m, speeds=list(inst.speeds),
                     jobs=[_copy_job(j) for j in inst.jobs],
                     prec=list(inst.prec), routings=dict(inst.routings),
                     pmtn=inst.pmtn, name=inst.name).validate()
    order = inst2.topological_order()
    by_id = {j.id: j for j in inst2.jobs}
    # releases forward
    for jid in order:
        j = by_id[jid]
        for k in inst2.successors(jid):
            jk = by_id[k]
            jk.r = max(jk.r, j.r + j.p)
    # dates backward (select sinks first)
    has_d = any(j.d is not None for j in inst2.jobs)
    has_q = any(j.q is not None for j in inst2.jobs)
    for kid in reversed(order):
        k = by_id[kid]
        for jid in inst2.predecessors(kid):
            j = by_id[jid]
            if has_d and k.d is not None:
                j.d = min(j.d if j.d is not None else k.d - k.p, k.d - k.p)
            if has_q and k.q is not None:
                j.q = max(j.q if j.q is not None else k.q + k.p, k.q + k.p)
            if has_d and has_q and j.d is not None:
                j.q = -j.d
    return inst2


def _copy_job(j):
    from .core.instance import Job
    return Job(id=j.id, p=j.p, w=j.w, r=j.r, d=j.d, dl=j.dl, q=j.q)


# ---------------------------------------------------------------------------
# Least Cost Last (1|prec|fmax)
# ---------------------------------------------------------------------------


def least_cost_last(inst, costfns=None):
    """Optimal sequence for 1|prec|fmax: the last position goes to the sink job
    of least cost at p(N), recursively. Ties by smallest id."""
    if any(j.r != 0 for j in inst.jobs):
        raise ValueError("least_cost_last requires all release dates zero")
    if costfns is None:
        costfns = {j.id: lateness_fn(j.d) for j in inst.jobs}
    remaining = set(inst.job_ids())
    succ = {j.id: set(inst.successors(j.id)) for j in inst.jobs}
    p = {j.id: j.p for j in inst.jobs}
    t = sum(p.values())
    seq = []
    while remaining:
        sinks = [j for j in remaining if not (succ[j] & remaining)]
        best = min(sinks, key=lambda j: (costfns[j](t), j))
        seq.append(best)
        remaining.remove(best)
        t -= p[best]
    seq.reverse()
    sch = Schedule()
    t = Fraction(0)
    fmax = None
    for jid in seq:
        sch.add(jid, 1, t, t + p[jid])
        t += p[jid]
        v = costfns[jid](t)
        fmax = v if fmax is None else max(fmax, v)
    return seq, fmax, sch


# ---------------------------------------------------------------------------
# preemptive fmax via blocks (1|pmtn,prec,r_j|fmax)
# ---------------------------------------------------------------------------


def _find_blocks(jobs, r, p):
    """Maximal subsets processed continuously without idle time, with their
    [r(B), t(B)) windows; jobs is a list of ids."""
    order = sorted(jobs, key=lambda j: (r[j], j))
    blocks = []
    cur = []
    start = t = None
    for j in order:
        if cur and r[j] <= t:
            cur.append(j)
            t += p[j]
        else:
            if cur:
                blocks.append((cur, start, t))
            cur = [j]
            start = r[j]
            t = r[j] + p[j]
    if cur:
        blocks.append((cur, start, t))
    return blocks


def preemptive_fmax(inst, costfns=None):
    """1|pmtn,prec,r_j|fmax by the block recursion; at most n-1 preemptions.
    Dates must already be precedence-consistent (run modify_dates first).

    Returns (schedule, value, certificate) where certificate is the job set S
    with value = r(S) + p(S) - d(S) when every cost function is a lateness,
    else None."""
    lateness = costfns is None
    if costfns is None:
        costfns = {j.id: lateness_fn(j.d) for j in inst.jobs}
    r = {j.id: j.r for j in inst.jobs}
    p = {j.id: j.p for j in inst.jobs}
    succ = {j.id: set(inst.successors(j.id)) for j in inst.jobs}
    sch = Schedule()

    def schedule_block(block, t_end):
        if not block:
            return
        inside = set(block)
        eligible = [j for j in block if not (succ[j] & inside)]
        l = min(eligible, key=lambda j: (costfns[j](t_end), j))
        rest = [j for j in block if j != l]
        subs = _find_blocks(rest, r, p)
        # job l fills every gap the sub-blocks leave inside [r(B), t(B))
        t = min(r[j] for j in block)
        remaining = p[l]
        cursor = max(t, r[l])
        for (bjobs, bstart, bend) in subs:
            gap_start = max(cursor, t)
            if bstart > gap_start and remaining > 0:
                use = min(remaining, bstart - gap_start)
                sch.add(l, 1, gap_start, gap_start + use)
                remaining -= use
            cursor = max(cursor, bend)
        if remaining > 0:
            sch.add(l, 1, cursor, cursor + remaining)
        for (bjobs, bstart, bend) in subs:
            schedule_block(bjobs, bend)

    for (bjobs, bstart, bend) in _find_blocks(list(r), r, p):
        schedule_block(bjobs, bend)

    value = None
    for jid in inst.job_ids():
        if p[jid] == 0:
            continue
        v = costfns[jid](sch.completion(jid))
        value = v if value is None else max(value, v)

    cert = None
    if lateness:
        cert = _edd_certificate(inst)
    return sch, value, cert


def preemptive_edd_schedule(jobs_view):
    """Preemptive EDD simulation on (id, r, p, d) tuples; returns a Schedule."""
    rem = {j[0]: Fraction(j[2]) for j in jobs_view}
    rel = {j[0]: Fraction(j[1]) for j in jobs_view}
    dd = {j[0]: Fraction(j[3]) for j in jobs_view}
    sch = Schedule()
    pending = {j[0] for j in jobs_view if rem[j[0]] > 0}
    t = min(rel.values()) if pending else Fraction(0)
    while pending:
        avail = [j for j in pending if rel[j] <= t]
        if not avail:
            t = min(rel[j] for j in pending)
            continue
        j = min(avail, key=lambda x: (dd[x], x))
        nxt = min((rel[k] for k in pending if rel[k] > t), default=None)
        run = rem[j] if nxt is None else min(rem[j], nxt - t)
        sch.add(j, 1, t, t + run)
        t += run
        rem[j] -= run
        if rem[j] == 0:
            pending.remove(j)
    return sch


def _edd_certificate(inst):
    """The set S achieving Lmax = r(S) + p(S) - d(S) from a preemptive EDD run:
    the latest time t such that every job processed in [t, C_c] was released at
    or after t (the window is then busy, ends at the critical job, and shares
    its due date)."""
    view = [(j.id, j.r, j.p, j.d) for j in inst.jobs if j.p > 0]
    if not view:
        return []
    sch = preemptive_edd_schedule(view)
    dd = {j.id: j.d for j in inst.jobs}
    rel = {j.id: Fraction(j.r) for j in inst.jobs}
    cs = sch.completions()
    c = max(cs, key=lambda j: (cs[j] - dd[j], j))
    cc = cs[c]
    pieces = sorted(sch.pieces, key=lambda p: p.start)
    candidates = sorted({p.start for p in pieces if p.start < cc}
                        | {r for r in rel.values() if r < cc}, reverse=True)
    for t0 in candidates:
        window = [p for p in pieces if p.end > t0 and p.start < cc]
        S = sorted({p.job for p in window})
        if not S:
            continue
        if any(rel[j] < t0 for j in S):
            continue
        if max(dd[j] for j in S) != dd[c]:
            continue
        covered = t0
        for p in sorted(window, key=lambda p: p.start):
            if p.start > covered:
                covered = None
                break
            covered = max(covered, p.end)
        if covered is None or covered < cc:
            continue
        return S
    return [c]


# ---------------------------------------------------------------------------
# equal-length jobs (1|r_j, p_j=p|Lmax and the deadline decision problem)
# ---------------------------------------------------------------------------


def _equal_length_decide(ids, r, dbar, p):
    """Either a feasible schedule meeting all deadlines or an infeasibility
    token (critical job, critical sequence) obtained after growing forbidden
    regions; regions' upper endpoints are release dates."""
    forbidden = []   # list of (lo, hi)
    rounds = 0
    while True:
        rounds += 1
        if rounds > len(ids) * len(ids) + len(ids) + 2:
            raise RuntimeError("forbidden-region iteration exceeded its bound")
        N = set(ids)
        t = 0
        seq = []
        start = {}
        late_job = None
        while N:
            moved = True
            while moved:
                moved = False
                for (lo, hi) in forbidden:
                    if lo <= t < hi:
                        t = hi
                        moved = True
            A = [j for j in N if r[j] <= t]
            if not A:
                t = min(r[j] for j in N)
                continue
            j = min(A, key=lambda x: (dbar[x], x))
            start[j] = t
            seq.append(j)
            N.remove(j)
            t = t + p
            if t > dbar[j] and late_job is None:
                late_job = j
                break
        if late_job is None:
            sch = Schedule()
            for j in seq:
                sch.add(j, 1, start[j], start[j] + p)
            return ("feasible", sch, forbidden)
        # critical sequence: walk back while idle is covered by forbidden regions
        c = late_job
        i = seq.index(c)
        Q = [c]
        while i > 0:
            prev = seq[i - 1]
            gap_lo, gap_hi = start[prev] + p, start[seq[i]]
            if gap_lo == gap_hi or _covered(gap_lo, gap_hi, forbidden):
                Q.insert(0, prev)
                i -= 1
            else:
                break
        interference = None
        for j in reversed(Q[:-1]):
            if dbar[j] > dbar[c]:
                interference = j
                break
        if interference is None:
            return ("infeasible", c, Q)
        sb = start[interference]
        qprime = [j for j in seq if sb < start[j] <= start[c]]
        lo, hi = sb, min(r[j] for j in qprime)
        if hi <= lo:
            return ("infeasible", c, Q)
        forbidden.append((lo, hi))


def _covered(lo, hi, regions):
    """Whether [lo, hi) is fully inside the union of the regions."""
    t = lo
    changed = True
    while t < hi and changed:
        changed = False
        for (a, b) in regions:
            if a <= t < b:
                t = b
                changed = True
    return t >= hi


def equal_length(inst, mode="feasible"):
    """Equal-length jobs: 'feasible' decides the deadline problem, 'lmax'
    minimizes Lmax by bisection over the O(n^3) values r_j + s*p - d_k."""
    ps = {j.p for j in inst.jobs}
    if len(ps) != 1:
        raise ValueError("equal_length requires identical processing times")
    p = ps.pop()
    ids = inst.job_ids()
    r = {j.id: j.r for j in inst.jobs}
    if mode == "feasible":
        dbar = {j.id: j.dl for j in inst.jobs}
        if any(v is None for v in dbar.values()):
            raise ValueError("feasible mode needs deadlines")
        out = _equal_length_decide(ids, r, dbar, p)
        if out[0] == "feasible":
            return ("feasible", out[1])
        return ("infeasible", {"critical": out[1], "sequence": out[2]})
    if mode != "lmax":
        raise ValueError(mode)
    d = {j.id: j.d for j in inst.jobs}
    if any(v is None for v in d.values()):
        raise ValueError("lmax mode needs due dates")
    n = len(ids)
    # lateness values are (r_j + s p) - d_k with the completing step included
    candidates = sorted({r[j] + s * p - d[k] for j in ids for k in ids
                         for s in range(n + 1)})
    lo, hi = 0, len(candidates) - 1

    def feasible(lam):
        dbar = {j: d[j] + lam for j in ids}
        return _equal_length_decide(ids, r, dbar, p)

    out_hi = feasible(candidates[hi])
    if out_hi[0] != "feasible":
        raise RuntimeError("even the largest candidate Lmax is infeasible")
    best = (candidates[hi], out_hi[1])
    while lo <= hi:
        mid = (lo + hi) // 2
        out = feasible(candidates[mid])
        if out[0] == "feasible":
            best = (candidates[mid], out[1])
            hi = mid - 1
        else:
            lo = mid + 1
    return best


# ---------------------------------------------------------------------------
# head-body-tail approximation (NEDD, INEDD, PTAS)
# ---------------------------------------------------------------------------


def nedd_schedule(ids, r, p, q, reserved=None):
    """Nonpreemptive EDD in head-body-tail form: at each decision point pick an
    available job of largest delivery time (ties: larger p, then smaller id).
    reserved maps position -> job id that must take that slot regardless."""
    N = set(ids)
    t = 0
    seq = []
    start = {}
    pos = 0
    while N:
        pos += 1
        if reserved and pos in reserved and reserved[pos] in N:
            j = reserved[pos]
            t = max(t, r[j])
        else:
            blocked = set(reserved.values()) if reserved else set()
            A = [j for j in N if r[j] <= t and j not in blocked]
            if not A:
                future = [j for j in N if j not in blocked] or list(N)
                t = max(t, min(r[j] for j in future))
                A = [j for j in N if r[j] <= t and j not in blocked]
                if not A:
                    A = [j for j in N if r[j] <= t]
            j = max(A, key=lambda x: (q[x], p[x], -x))
        start[j] = t
        seq.append(j)
        N.remove(j)
        t += p[j]
    value = max(start[j] + p[j] + q[j] for j in seq)
    return seq, start, value


def critical_info(seq, start, p, q, r):
    """Critical job, critical sequence and interference job of an NEDD run."""
    ends = {j: start[j] + p[j] for j in seq}
    c = max(seq, key=lambda j: (ends[j] + q[j], ends[j], -j))
    i = seq.index(c)
    Q = [c]
    while i > 0 and start[seq[i - 1]] + p[seq[i - 1]] == start[seq[i]]:
        Q.insert(0, seq[i - 1])
        i -= 1
    b = None
    for j in reversed(Q[:-1]):
        if q[j] < q[c]:
            b = j
            break
    return CriticalInfo(c=c, Q=Q, b=b, S_b=start[b] if b is not None else None)


def _hbt_to_schedule(seq, start, p):
    sch = Schedule()
    for j in seq:
        if p[j] > 0:
            sch.add(j, 1, start[j], start[j] + p[j])
    return sch


def hbt_approx(inst, mode="nedd", k=3):
    """Head-body-tail approximation: nedd (< 2 OPT), inedd (< 3/2 OPT), or
    ptas(k) enumerating long-job positions (<= (1+1/k) OPT)."""
    work = inst
    if inst.prec:
        if mode != "nedd":
            raise ValueError("inedd/ptas do not support precedence constraints")
        work = modify_dates(inst)
    ids, r, p, q = as_hbt(work)
    if mode == "nedd":
        seq, start, value = nedd_schedule(ids, r, p, q)
        info = critical_info(seq, start, p, q, r)
        return _hbt_to_schedule(seq, start, p), value, info
    if mode == "inedd":
        rr = dict(r)
        best = None
        last_info = None
        for _ in range(len(ids)):
            seq, start, value = nedd_schedule(ids, rr, p, q)
            info = critical_info(seq, start, p, q, rr)
            if best is None or value < best[1]:
                best = (_hbt_to_schedule(seq, start, p), value, info)
            if info.b is None:
                break
            rr = dict(rr)
            rr[info.b] = max(rr[info.b], rr[info.c])
        return best
    if mode == "ptas":
        total = sum(p.values())
        longs = [j for j in ids if p[j] * k > total]
        from itertools import permutations as _perms
        best = None
        options = [()] if not longs else list(_perms(range(1, len(ids) + 1), len(longs)))
        for placement in options:
            reserved = {pos: j for pos, j in zip(placement, longs)}
            seq, start, value = nedd_schedule(ids, r, p, q, reserved=reserved)
            if best is None or value < best[1]:
                info = critical_info(seq, start, p, q, r)
                best = (_hbt_to_schedule(seq, start, p), value, info)
        return best
    raise ValueError(mode)


# ---------------------------------------------------------------------------
# branch and bound (1|r_j|Lmax in head-body-tail form)
# ---------------------------------------------------------------------------


def _pmtn_hbt_bound(ids, r, p, q, t0):
    """Preemptive largest-q-first relaxation value from time t0 (a valid lower
    bound for the nonpreemptive completion)."""
    if not ids:
        return None
    rem = {j: Fraction(p[j]) for j in ids}
    rel = {j: Fraction(max(r[j], 0)) for j in ids}
    t = Fraction(t0)
    pending = set(ids)
    best = None
    while pending:
        avail = [j for j in pending if rel[j] <= t]
        if not avail:
            t = min(rel[j] for j in pending)
            continue
        j = max(avail, key=lambda x: (q[x], -x))
        nxt = min((rel[k] for k in pending if rel[k] > t), default=None)
        run = rem[j] if nxt is None else min(rem[j], nxt - t)
        t += run
        rem[j] -= run
        if rem[j] == 0:
            pending.remove(j)
            v = t + q[j]
            best = v if best is None else max(best, v)
    return best


def carlier_bb(inst, variant="carlier", budget=None):
    """Exact 1|r_j|Lmax (head-body-tail) by branch and bound.

    simple: branch on the next position with the release-date dominance rule,
    bounding by the preemptive relaxation. carlier: branch on the interference
    job going before or after the critical tail, enforced through the release
    and delivery updates; best-first on the node lower bound."""
    ids, r, p, q = as_hbt(modify_dates(inst) if inst.prec else inst)
    max_nodes = getattr(budget, "max_nodes", None) or 10 ** 6
    if variant == "simple":
        return _carlier_simple(ids, r, p, q, max_nodes)
    if variant == "carlier":
        return _carlier_main(ids, r, p, q, max_nodes)
    raise ValueError(variant)


def _carlier_simple(ids, r, p, q, max_nodes):
    seq0, start0, ub = nedd_schedule(ids, r, p, q)
    best_sched = _hbt_to_schedule(seq0, start0, p)
    nodes = 0
    heap = []
    root_lb = _pmtn_hbt_bound(ids, r, p, q, 0)
    heapq.heappush(heap, (root_lb, 0, (), 0, -10 ** 9))
    counter = 0
    while heap:
        lb, _, prefix, t, acc = heapq.heappop(heap)
        if lb >= ub:
            break
        nodes += 1
        if nodes > max_nodes:
            return BBResult(ub, best_sched, nodes, lb, optimal=False)
        rest = [j for j in ids if j not in prefix]
        if not rest:
            if acc < ub:
                ub = acc
                best_sched = _prefix_to_schedule(prefix, r, p)
            continue
        bound_next = min(max(t, r[j]) + p[j] for j in rest)
        for j in sorted(rest):
            if r[j] >= bound_next and len(rest) > 1:
                continue  # dominated: another job fits entirely before it
            s = max(t, r[j])
            c = s + p[j]
            acc2 = max(acc, c + q[j])
            rest2 = [x for x in rest if x != j]
            relax = _pmtn_hbt_bound(rest2, r, p, q, c)
            lb2 = max(acc2, relax if relax is not None else acc2)
            if lb2 < ub:
                counter += 1
                heapq.heappush(heap, (lb2, counter, prefix + (j,), c, acc2))
    return BBResult(ub, best_sched, nodes, ub, optimal=True)


def _prefix_to_schedule(prefix, r, p):
    sch = Schedule()
    t = 0
    for j in prefix:
        s = max(t, r[j])
        if p[j] > 0:
            sch.add(j, 1, s, s + p[j])
        t = s + p[j]
    return sch


def _carlier_main(ids, r0, p, q0, max_nodes):
    seq0, start0, ub = nedd_schedule(ids, r0, p, q0)
    best_sched = _hbt_to_schedule(seq0, start0, p)
    nodes = 0
    heap = []
    counter = 0
    root = BBNode(lb=-10 ** 9, depth=0, r=dict(r0), q=dict(q0))
    heapq.heappush(heap, (root.lb, 0, root))
    final_lb = None
    while heap:
        lb, _, node = heapq.heappop(heap)
        if lb >= ub:
            final_lb = ub
            break
        nodes += 1
        if nodes > max_nodes:
            return BBResult(ub, best_sched, nodes, lb, optimal=False)
        seq, start, value = nedd_schedule(ids, node.r, p, node.q)
        # the sequence is feasible for the original data (releases and
        # deliveries only grew), so it always refreshes the upper bound
        v_orig = _true_value(seq, r0, p, q0)
        if v_orig < ub:
            ub = v_orig
            best_sched = _schedule_for_order(seq, r0, p)
        info = critical_info(seq, start, p, node.q, node.r)
        if info.b is None:
            continue  # NEDD value is exact for this node's restriction
        b, c = info.b, info.c
        qprime = info.Q[info.Q.index(b) + 1:]
        # the alternative schedule with b after the tail also updates the bound
        r_after = dict(node.r)
        r_after[b] = max(r_after[b], max(node.r[j] for j in qprime))
        seq2, start2, _ = nedd_schedule(ids, r_after, p, node.q)
        v2 = _true_value(seq2, r0, p, q0)
        if v2 < ub:
            ub = v2
            best_sched = _schedule_for_order(seq2, r0, p)
        for child_kind in ("before", "after"):
            rr = dict(node.r)
            qq = dict(node.q)
            if child_kind == "before":
                qq[b] = max(qq[b], max(qq[j] for j in qprime))
            else:
                rr[b] = max(rr[b], max(rr[j] for j in qprime))
            lb_tail = _set_bound(qprime, rr, p, qq)
            lb_tail_b = _set_bound(qprime + [b], rr, p, qq)
            lb2 = max(node.lb, lb_tail, lb_tail_b)
            if lb2 < ub:
                counter += 1
                heapq.heappush(heap, (lb2, counter,
                                      BBNode(lb=lb2, depth=node.depth + 1,
                                             r=rr, q=qq, branch=child_kind)))
    return BBResult(ub, best_sched, nodes, final_lb if final_lb is not None else ub,
                    optimal=True)


def _set_bound(S, r, p, q):
    if not S:
        return -10 ** 9
    return min(r[j] for j in S) + sum(p[j] for j in S) + min(q[j] for j in S)


def _true_value(seq, r, p, q):
    t = 0
    val = None
    for j in seq:
        t = max(t, r[j]) + p[j]
        v = t + q[j]
        val = v if val is None else max(val, v)
    return val


def _schedule_for_order(seq, r, p):
    sch = Schedule()
    t = 0
    for j in seq:
        s = max(t, r[j])
        if p[j] > 0:
            sch.add(j, 1, s, s + p[j])
        t = s + p[j]
    return sch
