"""Job shops: the disjunctive graph model, priority dispatch, the shifting
bottleneck heuristic, critical-path local search (simulated annealing and tabu
search), and the vector-sum absolute-error construction."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .core.instance import Instance, Job
from .core.schedule import Schedule
from .kernels.dag import CycleError, dag_longest
from .openflow import VectorFamily, steinitz
from .sm_minmax import carlier_bb, hbt_approx
from .oracle import OracleBudget


@dataclass
class SearchParams:
    seed: int = 0
    c0: Fraction | None = None
    cooling: Fraction = Fraction(95, 100)
    sweep: int | None = None
    idle_limit: int = 50
    tabu_len: int = 8
    tabu_idle: int = 400
    max_iters: int = 2000


class DisjunctiveGraph:
    """Operations with weights, job-chain arcs, and per-machine disjunctions;
    an orientation is a processing sequence per machine."""

    def __init__(self, inst):
        self.inst = inst
        self.ops = {}          # (job, h) -> (machine, length)
        self.machine_ops = {}  # machine -> [(job, h)]
        for j in inst.jobs:
            for h, (i, p) in enumerate(inst.routing(j.id)):
                self.ops[(j.id, h)] = (i, p)
                self.machine_ops.setdefault(i, []).append((j.id, h))
        self.chain_arcs = []
        for j in inst.jobs:
            route = inst.routing(j.id)
            for h in range(len(route) - 1):
                self.chain_arcs.append(((j.id, h), (j.id, h + 1)))

    def arcs(self, orientation):
        arcs = list(self.chain_arcs)
        for i, seq in orientation.items():
            for a, b in zip(seq, seq[1:]):
                arcs.append((a, b))
        return arcs


def graph_eval(inst, orientation, graph=None):
    """Longest-path evaluation of an orientation: (cmax, blocks, heads, tails)
    or a CycleError carrying the witness. Heads are earliest starts, tails the
    critical time after completion."""
    g = graph or DisjunctiveGraph(inst)
    weights = {o: Fraction(p) for o, (i, p) in g.ops.items()}
    arcs = g.arcs(orientation)
    lengths, path = dag_longest(weights, arcs)
    cmax = max(lengths.values()) if lengths else Fraction(0)
    heads = {o: lengths[o] - weights[o] for o in g.ops}
    rev = [(b, a) for (a, b) in arcs]
    rlengths, _ = dag_longest(weights, rev)
    tails = {o: rlengths[o] - weights[o] for o in g.ops}
    blocks = []
    cur = []
    for o in path:
        if cur and g.ops[cur[-1]][0] == g.ops[o][0]:
            cur.append(o)
        else:
            if len(cur) > 1:
                blocks.append(cur)
            cur = [o]
    if len(cur) > 1:
        blocks.append(cur)
    return cmax, blocks, heads, tails, path


def orientation_schedule(inst, orientation, graph=None):
    """Left-justified schedule realizing an acyclic orientation."""
    g = graph or DisjunctiveGraph(inst)
    cmax, blocks, heads, tails, path = graph_eval(inst, orientation, g)
    sch = Schedule()
    for (jid, h), (i, p) in sorted(g.ops.items()):
        if p > 0:
            sch.add(jid, i, heads[(jid, h)], heads[(jid, h)] + p, op=h)
    return sch, cmax


# ---------------------------------------------------------------------------
# priority dispatch
# ---------------------------------------------------------------------------


def dispatch(inst, klass="active", priority="spt"):
    """Giffler-Thompson style schedule generation for the declared class
    (semi_active, active, non_delay) under a priority rule (spt, lpt, lrpt,
    fifo); ties by smallest (job, op)."""
    g = DisjunctiveGraph(inst)
    remaining = {j.id: 0 for j in inst.jobs}
    routes = {j.id: inst.routing(j.id) for j in inst.jobs}
    job_ready = {j.id: Fraction(0) for j in inst.jobs}
    mach_ready = {i: Fraction(0) for i in range(1, inst.m + 1)}
    rem_work = {j.id: sum(p for (_, p) in routes[j.id]) for j in inst.jobs}
    sch = Schedule()
    seqs = {i: [] for i in range(1, inst.m + 1)}

    def prio_key(o):
        jid, h = o
        i, p = routes[jid][h]
        if priority == "spt":
            return (p, jid, h)
        if priority == "lpt":
            return (-p, jid, h)
        if priority == "lrpt":
            return (-rem_work[jid], jid, h)
        if priority == "fifo":
            return (job_ready[jid], jid, h)
        raise ValueError(priority)

    while True:
        cands = []
        for jid, h in remaining.items():
            if h >= len(routes[jid]):
                continue
            i, p = routes[jid][h]
            est = max(job_ready[jid], mach_ready[i])
            cands.append((est, est + p, jid, h, i, p))
        if not cands:
            break
        if klass == "semi_active":
            pool = cands
        elif klass == "active":
            ect, _est, jid0, h0, i0, _p0 = min(
                (c[1], c[0], c[2], c[3], c[4], c[5]) for c in cands)
            pool = [c for c in cands if c[4] == i0 and c[0] < ect]
        elif klass == "non_delay":
            t0 = min(c[0] for c in cands)
            pool = [c for c in cands if c[0] == t0]
        else:
            raise ValueError(klass)
        est, ectv, jid, h, i, p = min(pool, key=lambda c: prio_key((c[2], c[3])))
        if p > 0:
            sch.add(jid, i, est, est + p, op=h)
        seqs[i].append((jid, h))
        job_ready[jid] = est + p
        mach_ready[i] = est + p
        rem_work[jid] -= p
        remaining[jid] += 1
    return sch, sch.makespan(), {i: s for i, s in seqs.items() if s}


# ---------------------------------------------------------------------------
# shifting bottleneck
# ---------------------------------------------------------------------------


def _one_machine_data(g, orientation, machine):
    """Heads and tails for one machine's operations under a partial
    orientation that skips the machine itself."""
    part = {i: seq for i, seq in orientation.items() if i != machine}
    cmax, blocks, heads, tails, path = graph_eval(g.inst, part, g)
    data = []
    for o in g.machine_ops.get(machine, []):
        (i, p) = g.ops[o]
        data.append((o, heads[o], p, tails[o]))
    return data


def _solve_one_machine(data, budget):
    """Exact head-body-tail sequence for one machine; falls back to the
    iterated heuristic when the budget runs out."""
    jobs = [Job(id=k + 1, p=int(p), r=int(r), q=int(q))
            for k, (o, r, p, q) in enumerate(data)]
    inst = Instance(env="single", jobs=jobs, name="sbh-sub").validate()
    res = carlier_bb(inst, "carlier", budget)
    flagged = not res.optimal
    if flagged:
        sch, value, info = hbt_approx(inst, "inedd")
        order = sorted(sch.jobs(), key=lambda j: sch.start(j))
        return value, [data[k - 1][0] for k in order], True
    order = sorted(res.schedule.jobs(), key=lambda j: res.schedule.start(j))
    seq = [data[k - 1][0] for k in order]
    return res.value, seq, flagged


def _safe_sequence(g, orientation, machine):
    """A machine sequence guaranteed consistent with the partial orientation:
    order by earliest start in a semi-active simulation."""
    part = {i: seq for i, seq in orientation.items() if i != machine}
    cmax, blocks, heads, tails, path = graph_eval(g.inst, part, g)
    return sorted(g.machine_ops.get(machine, []),
                  key=lambda o: (heads[o], o))


def shifting_bottleneck(inst, reopt="cycles3", budget=None):
    """Fix machines one at a time at their exact one-machine optimum (largest
    maximum lateness first), re-optimizing the fixed set; never returns worse
    than the active-SPT dispatch."""
    budget = budget or OracleBudget(max_nodes=200000, max_seconds=60)
    g = DisjunctiveGraph(inst)
    base_sched, base_cmax, _ = dispatch(inst, "active", "spt")
    orientation = {}
    fixed_order = []
    machines = sorted(g.machine_ops)
    flagged = False
    while len(fixed_order) < len(machines):
        best = None
        for i in machines:
            if i in orientation:
                continue
            data = _one_machine_data(g, orientation, i)
            value, seq, fl = _solve_one_machine(data, budget)
            flagged = flagged or fl
            if best is None or (value, -i) > (best[0], -best[1]):
                best = (value, i, seq)
        value, i, seq = best
        orientation[i] = seq
        if _cycle_check(g, orientation):
            orientation[i] = _safe_sequence(g, orientation, i)
        fixed_order.append(i)
        orientation = _reoptimize(g, orientation, fixed_order, reopt, budget)
    sch, cmax = orientation_schedule(inst, orientation, g)
    if cmax > base_cmax:
        return base_sched, base_cmax, {"flagged": flagged, "fallback": True}
    return sch, cmax, {"flagged": flagged, "fallback": False}


def _cycle_check(g, orientation):
    try:
        graph_eval(g.inst, orientation, g)
        return False
    except CycleError:
        return True


def _reoptimize(g, orientation, fixed_order, reopt, budget):
    def one_cycle(order):
        changed = False
        for i in order:
            old = orientation.pop(i)
            data = _one_machine_data(g, orientation, i)
            value, seq, _ = _solve_one_machine(data, budget)
            orientation[i] = seq
            if _cycle_check(g, orientation):
                orientation[i] = _safe_sequence(g, orientation, i)
            if orientation[i] != old:
                changed = True
        return changed

    def lateness_order():
        vals = []
        for i in fixed_order:
            saved = orientation.pop(i)
            data = _one_machine_data(g, orientation, i)
            orientation[i] = saved
            lb = max((r + p + q for (_, r, p, q) in data), default=0)
            vals.append((lb, i))
        return [i for (_, i) in sorted(vals, reverse=True)]

    if len(fixed_order) <= 1:
        return orientation
    if reopt == "cycles3":
        one_cycle(list(fixed_order))
        one_cycle(lateness_order())
        one_cycle(lateness_order())
    elif reopt == "until_stable":
        for _ in range(20):
            if not one_cycle(list(fixed_order)):
                break
    else:
        raise ValueError(reopt)
    return orientation


# ---------------------------------------------------------------------------
# local search
# ---------------------------------------------------------------------------


def _neighbors(g, orientation, nbhd):
    """Neighbor orientations as (move description, new orientation); critical
    interchange moves are feasible by the reversal property, shifts are
    checked and dropped when cyclic."""
    cmax, blocks, heads, tails, path = graph_eval(g.inst, orientation, g)
    out = []
    seen = set()
    for block in blocks:
        machine = g.ops[block[0]][0]
        seq = orientation[machine]
        pairs = []
        if nbhd == "inter_cp":
            pairs = list(zip(block, block[1:]))
        elif nbhd == "inter_end_block":
            pairs = [(block[0], block[1])]
            if len(block) > 2:
                pairs.append((block[-2], block[-1]))
        elif nbhd == "shift_block":
            for o in block[1:]:
                key = ("front", machine, o, block[0])
                if key not in seen:
                    seen.add(key)
                    ns = list(seq)
                    ns.remove(o)
                    ns.insert(ns.index(block[0]), o)
                    out.append((key, {**orientation, machine: ns}))
            for o in block[:-1]:
                key = ("back", machine, o, block[-1])
                if key not in seen:
                    seen.add(key)
                    ns = list(seq)
                    ns.remove(o)
                    ns.insert(ns.index(block[-1]) + 1, o)
                    out.append((key, {**orientation, machine: ns}))
            continue
        else:
            raise ValueError(nbhd)
        for (a, b) in pairs:
            key = ("swap", machine, a, b)
            if key in seen:
                continue
            seen.add(key)
            ns = list(seq)
            ia, ib = ns.index(a), ns.index(b)
            ns[ia], ns[ib] = ns[ib], ns[ia]
            out.append((key, {**orientation, machine: ns}))
    valid = []
    for key, cand in out:
        try:
            val = graph_eval(g.inst, cand, g)[0]
        except CycleError:
            continue
        valid.append((key, cand, val))
    return cmax, valid


def local_search(inst, start=None, kind="tabu", nbhd="inter_end_block",
                 params=None):
    """Seed-deterministic local search over orientations; returns
    (best schedule, best cmax, trace rows)."""
    params = params or SearchParams()
    g = DisjunctiveGraph(inst)
    if start is None:
        _, _, start = dispatch(inst, "active", "spt")
    cur = {i: list(s) for i, s in start.items()}
    cur_val = graph_eval(inst, cur, g)[0]
    best = ({i: list(s) for i, s in cur.items()}, cur_val)
    trace = [(0, cur_val, cur_val, "start")]
    rng = random.Random(params.seed)
    bounds = inst.shop_bounds()
    c = params.c0 if params.c0 is not None else max(Fraction(bounds["L_max"], 10), Fraction(1))
    sweep = params.sweep or max(1, sum(len(inst.routing(j.id)) for j in inst.jobs))
    if kind == "sa":
        idle = 0
        it = 0
        while idle < params.idle_limit and it < params.max_iters:
            improved = False
            for _ in range(sweep):
                it += 1
                _, nbrs = _neighbors(g, cur, nbhd)
                if not nbrs:
                    idle = params.idle_limit
                    break
                key, cand, val = nbrs[rng.randrange(len(nbrs))]
                accept = val <= cur_val or \
                    rng.random() < math.exp(min(float(cur_val - val), 0.0) / float(c))
                if accept:
                    cur, cur_val = cand, val
                    if val < best[1]:
                        best = ({i: list(s) for i, s in cand.items()}, val)
                        improved = True
                trace.append((it, cur_val, best[1], str(key)))
                if it >= params.max_iters:
                    break
            c = c * params.cooling
            idle = 0 if improved else idle + 1
        sch, cmax = orientation_schedule(inst, best[0], g)
        return sch, best[1], trace
    if kind != "tabu":
        raise ValueError(kind)
    tabu = []
    idle = 0
    for it in range(1, params.max_iters + 1):
        _, nbrs = _neighbors(g, cur, nbhd)
        if not nbrs:
            break
        ranked = sorted(nbrs, key=lambda e: (e[2], str(e[0])))
        chosen = None
        for key, cand, val in ranked:
            attr = key[:4]
            if attr in tabu and not val < best[1]:
                continue
            chosen = (key, cand, val)
            break
        if chosen is None:
            chosen = ranked[0]
        key, cand, val = chosen
        tabu.append(key[:4])
        if len(tabu) > params.tabu_len:
            tabu.pop(0)
        cur, cur_val = cand, val
        if val < best[1]:
            best = ({i: list(s) for i, s in cand.items()}, val)
            idle = 0
        else:
            idle += 1
        trace.append((it, cur_val, best[1], str(key)))
        if idle >= params.tabu_idle:
            # restart from the incumbent with its next-best neighbor
            cur = {i: list(s) for i, s in best[0].items()}
            _, nbrs = _neighbors(g, cur, nbhd)
            ranked = sorted(nbrs, key=lambda e: (e[2], str(e[0])))
            if len(ranked) > 1:
                key, cand, val = ranked[1]
                cur, cur_val = cand, val
            idle = 0
    sch, cmax = orientation_schedule(inst, best[0], g)
    return sch, best[1], trace


# ---------------------------------------------------------------------------
# the vector-sum construction
# ---------------------------------------------------------------------------


def trace_tsv(trace):
    """Local-search trace as TSV rows (iteration, current, best, move)."""
    lines = ["iteration\tcurrent\tbest\tmove"]
    for (it, cur, best, move) in trace:
        lines.append("%d\t%s\t%s\t%s" % (it, cur, best, move))
    return "\n".join(lines) + "\n"


def js_pad(inst):
    """Pad so every job has the same number of operations and every machine
    the same load: zero-length filler operations, then dummy jobs whose
    operations (each at most p_max) absorb the load deficits."""
    mu = max(len(inst.routing(j.id)) for j in inst.jobs)
    routings = {j.id: list(inst.routing(j.id)) for j in inst.jobs}
    for jid in routings:
        while len(routings[jid]) < mu:
            routings[jid].append((1, 0))
    loads = {i: 0 for i in range(1, inst.m + 1)}
    pmax = 1
    for route in routings.values():
        for (i, p) in route:
            loads[i] += p
            pmax = max(pmax, p)
    target = max(loads.values())
    next_id = max(routings) + 1
    while any(loads[i] < target for i in loads):
        route = []
        for _ in range(mu):
            i = min(loads, key=lambda i: (loads[i] - target, i))
            take = min(pmax, target - loads[i])
            if take > 0:
                route.append((i, take))
                loads[i] += take
            else:
                route.append((1, 0))
        routings[next_id] = route
        next_id += 1
    return routings, mu, pmax, target


def js_sevast(inst, pad=True):
    """Schedule of length at most Pi_max + O(m mu^3 p_max): balance the
    per-(h, machine) load vectors by the Steinitz permutation, then pipeline
    the jobs in groups of r staggered blocks."""
    if inst.env not in ("jobJ", "flowF", "openO"):
        raise ValueError("js_sevast needs a shop instance")
    routings, mu, pmax, target = js_pad(inst)
    m = inst.m
    ids = sorted(routings)
    real = set(inst.job_ids())
    n = len(ids)
    pim = Fraction(target)
    if pim == 0:
        return Schedule(), Fraction(0), {"bound": Fraction(0)}

    # r makes consecutive phases t and t+r sync across machines; a short last
    # group needs no padding: its missing positions take the idle fillers that
    # the accounting already assigns to undefined operations
    r = ceil(Fraction(2 * n * m * mu * mu * pmax, pim)) + 1

    # balanced permutation of the (machine, h) contribution vectors
    pihi = {}
    for jid in ids:
        for h, (i, p) in enumerate(routings[jid]):
            pihi[(h, i)] = pihi.get((h, i), 0) + p
    keys = [(h, i) for h in range(mu) for i in range(1, m + 1)]
    vecs = []
    for jid in ids:
        row = []
        contrib = {}
        for h, (i, p) in enumerate(routings[jid]):
            contrib[(h, i)] = contrib.get((h, i), 0) + p
        for key in keys:
            row.append(Fraction(contrib.get(key, 0) - Fraction(pihi.get(key, 0), n),
                                pmax))
        vecs.append(tuple(row))
    perm = steinitz(VectorFamily(vecs, norm="linf"))
    order = [ids[k] for k in perm]
    index = {jid: pos + 1 for pos, jid in enumerate(order)}

    pieces = []
    mach_t = {i: Fraction(0) for i in range(1, m + 1)}
    staggered = r <= n
    if staggered:
        # phases 1..z; phase t holds position s of block b; undefined
        # positions idle for their average share
        z = r * (ceil(Fraction(n, r)) + mu - 1)
        for t in range(1, z + 1):
            b = (t - 1) // r + 1
            s = (t - 1) % r + 1
            for i in range(1, m + 1):
                cur = mach_t[i]
                for h in range(mu):
                    jpos = (b - h - 1) * r + s
                    if 1 <= jpos <= n:
                        jid = order[jpos - 1]
                        mach, p = routings[jid][h]
                        if mach == i and p > 0:
                            pieces.append((jid, i, h, cur, cur + p))
                            cur += p
                    else:
                        cur += Fraction(pihi.get((h, i), 0), n)
                mach_t[i] = cur
    else:
        # a single short group gains nothing from pipelining: run the op
        # layers between global barriers instead
        for h in range(mu):
            barrier = max(mach_t.values())
            for i in mach_t:
                mach_t[i] = barrier
            for jid in order:
                mach, p = routings[jid][h]
                if p > 0:
                    pieces.append((jid, mach, h, mach_t[mach], mach_t[mach] + p))
                    mach_t[mach] += p
    sch = Schedule()
    for (jid, i, h, a, bnd) in pieces:
        if jid in real:
            sch.add(jid, i, a, bnd, op=h)
    cmax = sch.makespan()
    bound = (Fraction(2 * n * m * mu * mu * pmax, pim) + 2) * (mu - 1) * pim / n \
        + m * mu * mu * pmax
    return sch, cmax, {"bound": bound, "pi_max": pim, "r": r, "n": n, "mu": mu,
                       "staggered": staggered}
