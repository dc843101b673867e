"""Weighted number of late jobs: dominance-pair dynamic programs, the
Moore-Hodgson rule, similarly ordered release dates, the general preemptive
DP, and an FPTAS."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core.schedule import Schedule
from .sm_minmax import least_cost_last, preemptive_edd_schedule


class OrderingError(ValueError):
    """Release/due-date ordering precondition fails (use pmtn_general_dp)."""


def edd_index(jobs):
    """EDD order; due-date ties go by release date (keeps similarly ordered
    instances similarly indexed), then smaller p, then smaller id."""
    return sorted(jobs, key=lambda j: (j.d, j.r, j.p, j.id))


def _similarly_ordered(jobs):
    srt = edd_index(jobs)
    for a, b in zip(srt, srt[1:]):
        if a.d < b.d and a.r > b.r:
            return False
    return True


@dataclass
class WUResult:
    value: object              # min sum of late weights
    on_time: list
    pairs: list                # final dominant pair list [(w, completion)]
    schedule: Schedule


def _ontime_schedule(inst, chosen):
    """Extended-EDD schedule of the chosen set, late jobs appended after."""
    sch = Schedule()
    t = Fraction(0)
    for j in edd_index([inst.job(x) for x in chosen]):
        s = max(t, Fraction(j.r))
        if j.p:
            sch.add(j.id, 1, s, s + j.p)
        t = s + j.p
    for j in inst.jobs:
        if j.id in chosen or j.p == 0:
            continue
        s = max(t, Fraction(j.r))
        sch.add(j.id, 1, s, s + j.p)
        t = s + j.p
    return sch


def wu_dp(inst, mode="exact", eps=None):
    """1||sum w U (and 1|r_j|sum w U with similarly ordered dates) by the
    dominance-pair DP; the fptas mode rescales weights by eps*wbar/n after a
    minimax preprocessing pass and runs the late-weight DP."""
    jobs = edd_index(inst.jobs)
    if any(j.d is None for j in jobs):
        raise ValueError("wu_dp needs due dates")
    with_r = any(j.r for j in jobs)
    if with_r and not _similarly_ordered(jobs):
        raise OrderingError("release and due dates are not similarly ordered; "
                            "use pmtn_general_dp")
    if mode == "exact":
        return _wu_exact(inst, jobs, with_r)
    if mode == "fptas":
        if eps is None or eps <= 0:
            raise ValueError("fptas mode needs eps > 0")
        return _wu_fptas(inst, jobs, eps)
    raise ValueError(mode)


def _wu_exact(inst, jobs, with_r):
    # pairs (w, C): max weight on time with earliest completion; strictly
    # increasing in both coordinates; parents for set recovery
    cur = [(0, Fraction(0), 0, False)]
    history = []
    for j in jobs:
        entries = [(w, c, k, False) for k, (w, c, _, _) in enumerate(cur)]
        for k, (w, c, _, _) in enumerate(cur):
            nc = max(Fraction(j.r), c) + j.p if with_r else c + j.p
            if nc <= j.d:
                entries.append((w + j.w, nc, k, True))
        # dominant pairs: weight and completion both strictly increasing
        entries.sort(key=lambda e: (-e[0], e[1]))
        nxt = []
        best = None
        for e in entries:
            if best is None or e[1] < best:
                nxt.append(e)
                best = e[1]
        nxt.reverse()
        history.append(cur)
        cur = nxt
    entry = max(cur, key=lambda e: e[0])
    chosen = []
    e = entry
    for idx in range(len(jobs) - 1, -1, -1):
        _, _, k, took = e
        if took:
            chosen.append(jobs[idx].id)
        e = history[idx][k]
    chosen.reverse()
    total = sum(j.w for j in jobs)
    pairs = [(w, c) for (w, c, _, _) in cur]
    return WUResult(value=total - entry[0], on_time=sorted(chosen), pairs=pairs,
                    schedule=_ontime_schedule(inst, set(chosen)))


def minimax_late_weight(inst):
    """Minimum over schedules of the maximum weight of a late job (the
    Least Cost Last special case with f_j = w_j U_j)."""
    costs = {j.id: (lambda t, w=j.w, d=j.d: w if t > d else 0) for j in inst.jobs}
    _, value, _ = least_cost_last(inst, costs)
    return value


def _wu_fptas(inst, jobs, eps):
    if any(j.r for j in jobs):
        raise ValueError("fptas supports equal release dates")
    wbar = minimax_late_weight(inst)
    if wbar == 0:
        chosen = [j.id for j in jobs]
        return WUResult(value=Fraction(0), on_time=sorted(chosen), pairs=[],
                        schedule=_ontime_schedule(inst, set(chosen)))
    n = len(jobs)
    delta = Fraction(eps) * wbar / n
    wr = {j.id: int(Fraction(j.w) / delta) for j in jobs}
    # late-weight DP: pairs (late rounded weight, min processing kept on time)
    cur = [(0, 0, 0, False)]       # (omega, P, parent, went_late)
    history = []
    for j in jobs:
        entries = []
        for k, (om, P, _, _) in enumerate(cur):
            if P + j.p <= j.d:
                entries.append((om, P + j.p, k, False))    # on time
            entries.append((om + wr[j.id], P, k, True))     # late
        entries.sort(key=lambda e: (e[0], e[1]))
        nxt = []
        best = None
        for e in entries:
            if best is None or e[1] < best:
                if nxt and nxt[-1][0] == e[0]:
                    continue
                nxt.append(e)
                best = e[1]
        history.append(cur)
        cur = nxt
    entry = min(cur, key=lambda e: (e[0], e[1]))
    late = []
    e = entry
    for idx in range(len(jobs) - 1, -1, -1):
        _, _, k, went_late = e
        if went_late:
            late.append(jobs[idx].id)
        e = history[idx][k]
    value = sum(inst.job(x).w for x in late)
    chosen = [j.id for j in jobs if j.id not in late]
    return WUResult(value=Fraction(value), on_time=sorted(chosen), pairs=[],
                    schedule=_ontime_schedule(inst, set(chosen)))


# ---------------------------------------------------------------------------
# Moore-Hodgson
# ---------------------------------------------------------------------------


def oppositely_ordered(jobs):
    """Whether p_i < p_j implies w_i >= w_j over all pairs."""
    srt = sorted(jobs, key=lambda j: (j.p, -j.w))
    low = None
    for a, b in zip(srt, srt[1:]):
        if a.p < b.p:
            low = a.w if low is None else min(low, a.w)
        if low is not None and b.w > low:
            return False
    return True


def moore_hodgson(inst):
    """Max-weight feasible set when processing times and weights are
    oppositely ordered: insert in EDD order, ejecting the longest job whenever
    the running total passes the due date."""
    if any(j.r for j in inst.jobs):
        raise ValueError("moore_hodgson requires equal release dates")
    if not oppositely_ordered(inst.jobs):
        raise OrderingError("processing times and weights are not oppositely ordered")
    import heapq
    S = []
    total = 0
    for j in edd_index(inst.jobs):
        heapq.heappush(S, (-j.p, j.w, j.id))
        total += j.p
        if total > j.d:
            negp, _, _ = heapq.heappop(S)
            total += negp
    chosen = sorted(jid for (_, _, jid) in S)
    value = sum(j.w for j in inst.jobs if j.id not in set(chosen))
    return WUResult(value=Fraction(value), on_time=chosen, pairs=[],
                    schedule=_ontime_schedule(inst, set(chosen)))


# ---------------------------------------------------------------------------
# similarly ordered release and due dates, unit weights
# ---------------------------------------------------------------------------


def similar_ordered(inst):
    """Max-cardinality on-time set for 1|r_j|sum U with similarly ordered
    dates: Moore-Hodgson on effective processing times, maintained by the
    release-shift modification sweep."""
    jobs = edd_index(inst.jobs)
    if not _similarly_ordered(jobs):
        raise OrderingError("release and due dates are not similarly ordered")
    S = []          # [effective q, id], positive effective time
    S_zero = []     # ids whose effective time was consumed
    qsum = 0
    prev_r = jobs[0].r if jobs else 0

    def modify(shift):
        nonlocal qsum
        left = shift
        while left > 0 and S:
            S.sort()
            q0, jid = S[0]
            if q0 <= left:
                S.pop(0)
                S_zero.append(jid)
                qsum -= q0
                left -= q0
            else:
                S[0][0] = q0 - left
                qsum -= left
                left = 0

    for j in jobs:
        modify(j.r - prev_r)
        prev_r = j.r
        S.append([j.p, j.id])
        qsum += j.p
        if qsum > j.d - j.r:
            S.sort()
            qmax, jid = S[-1]
            S.pop()
            qsum -= qmax
    chosen = sorted([jid for (_, jid) in S] + S_zero)
    value = len(inst.jobs) - len(chosen)
    return WUResult(value=Fraction(value), on_time=chosen, pairs=[],
                    schedule=_ontime_schedule(inst, set(chosen)))


# ---------------------------------------------------------------------------
# the general preemptive problem 1|pmtn,r_j|sum w U
# ---------------------------------------------------------------------------


def pmtn_general_dp(inst, max_weight=200, max_releases=8):
    """Exact maximum-weight feasible set with preemption and release dates.

    Two value families are iterated per job: C(r, w) is the earliest completion
    of a feasible set of the first j jobs with r(S) >= r and w(S) >= w, and
    P(r, r', w) is the least processing such a set needs after the current
    release r_j given it completes by r'. The realized set is scheduled by
    extended EDD with at most (distinct releases - 1) preemptions."""
    jobs = edd_index(inst.jobs)
    if any(j.d is None for j in jobs):
        raise ValueError("pmtn_general_dp needs due dates")
    W = sum(j.w for j in jobs)
    releases = sorted({j.r for j in jobs})
    if W > max_weight or len(releases) > max_releases:
        raise ValueError("instance exceeds the desk-scale limits of this DP")
    k = len(releases)
    ridx = {r: i for i, r in enumerate(releases)}
    INF = None

    # C[(ri, w)] = (completion, parent decision); weights w in 0..W
    C = {}
    for ri in range(k):
        C[(ri, 0)] = (Fraction(releases[ri]), ("empty",))
        for w in range(1, W + 1):
            C[(ri, w)] = (INF, None)

    def next_ridx_at_least(value):
        for i, r in enumerate(releases):
            if r >= value:
                return i
        return None

    hist = []
    for idx, j in enumerate(jobs):
        rj = j.r
        # P[(ri, ri2, w)]: min processing after rj; computed from current C
        P = {}
        for ri2 in range(k):
            for ri in range(ri2, -1, -1):
                for w in range(W + 1):
                    if w == 0:
                        P[(ri, ri2, w)] = (Fraction(0), ("pempty",))
                        continue
                    best = INF
                    bestd = None
                    up = P.get((ri + 1, ri2, w))
                    if ri + 1 <= ri2 and up is not None and up[0] is not None:
                        best, bestd = up[0], ("pup",)
                    for wp in range(1, w + 1):
                        cv = C[(ri, wp)][0]
                        if cv is None or cv > releases[ri2]:
                            continue
                        tail = max(Fraction(0), cv - rj)
                        rpp = next_ridx_at_least(cv)
                        if w - wp == 0:
                            rest = Fraction(0)
                        elif rpp is None or rpp > ri2:
                            continue
                        else:
                            sub = P.get((rpp, ri2, w - wp))
                            if sub is None or sub[0] is None:
                                continue
                            rest = sub[0]
                        cand = tail + rest
                        if best is None or cand < best:
                            best = cand
                            bestd = ("psplit", wp, rpp)
                    P[(ri, ri2, w)] = (best, bestd)

        newC = {}
        for ri in range(k):
            for w in range(W + 1):
                old, oldd = C[(ri, w)]
                if releases[ri] > rj:
                    newC[(ri, w)] = (old, ("skip", ri, w))
                    continue
                best, bestd = old, ("skip", ri, w)
                # job j appended after the rest completes
                wprev = max(0, w - j.w)
                cv = C[(ri, wprev)][0]
                if cv is not None:
                    cand = max(Fraction(rj), cv) + j.p
                    if cand <= j.d and (best is None or cand < best):
                        best, bestd = cand, ("tail", ri, wprev)
                # job j interleaved with a later block
                for ri2 in range(k):
                    if releases[ri2] <= rj:
                        continue
                    for wp in range(1, W + 1):
                        cv2 = C[(ri2, wp)][0]
                        if cv2 is None:
                            continue
                        wrest = max(0, w - j.w - wp)
                        sub = P[(ri, ri2, wrest)]
                        if sub[0] is None:
                            continue
                        cand = cv2 + max(Fraction(0),
                                         j.p - (releases[ri2] - rj) + sub[0])
                        if cand <= j.d and (best is None or cand < best):
                            best, bestd = cand, ("block", ri, ri2, wp, wrest)
                newC[(ri, w)] = (best, bestd)
        hist.append((C, P))
        C = newC

    best_w = max(w for w in range(W + 1) if C[(0, w)][0] is not None)
    chosen = _recover(jobs, hist, C, 0, best_w, len(jobs))
    sch = _pmtn_schedule(inst, chosen)
    value = W - sum(inst.job(x).w for x in chosen)
    return WUResult(value=Fraction(value), on_time=sorted(chosen), pairs=[],
                    schedule=sch)


def _recover(jobs, hist, C_final, ri, w, level):
    """Walk the decision pointers back to the chosen job set."""
    out = []

    def walkC(level, ri, w):
        if level == 0 or w <= 0:
            return
        Cj = C_final if level == len(jobs) else hist[level][0]
        dec = Cj[(ri, w)][1]
        if dec is None:
            return
        kind = dec[0]
        if kind == "empty":
            return
        if kind == "skip":
            walkC(level - 1, dec[1], dec[2])
            return
        if kind == "tail":
            out.append(jobs[level - 1].id)
            walkC(level - 1, dec[1], dec[2])
            return
        if kind == "block":
            _, ri0, ri2, wp, wrest = dec
            out.append(jobs[level - 1].id)
            walkC(level - 1, ri2, wp)
            walkP(level - 1, ri0, ri2, wrest)
            return
        raise AssertionError(dec)

    def walkP(level, ri, ri2, w):
        if w <= 0:
            return
        P = hist[level][1]
        dec = P[(ri, ri2, w)][1]
        if dec is None or dec[0] == "pempty":
            return
        if dec[0] == "pup":
            walkP(level, ri + 1, ri2, w)
            return
        _, wp, rpp = dec
        walkC(level, ri, wp)
        if w - wp > 0:
            walkP(level, rpp, ri2, w - wp)

    walkC(level, ri, w)
    return sorted(set(out))


def _pmtn_schedule(inst, chosen):
    """Extended preemptive EDD realization of the chosen set; late jobs are
    appended non-preemptively at the end."""
    view = [(j.id, j.r, j.p, j.d) for j in inst.jobs if j.id in set(chosen) and j.p > 0]
    sch = preemptive_edd_schedule(view) if view else Schedule()
    t = sch.makespan()
    for j in inst.jobs:
        if j.id in set(chosen) or j.p == 0:
            continue
        s = max(t, Fraction(j.r))
        sch.add(j.id, 1, s, s + j.p)
        t = s + j.p
    return sch
