"""Single-machine weighted completion time: ratio rule and preference orders,
series-parallel and two-dimensional exact algorithms, Sidney decompositions,
LP and Lagrangian bounds, and release-date approximation algorithms."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core.schedule import Schedule
from .kernels.lp import DenseLP, lp_solve
from .kernels.maxflow import FlowNetwork, max_flow
from .kernels.sp import sp_decompose, transitive_closure


# ---------------------------------------------------------------------------
# preference orders
# ---------------------------------------------------------------------------


@dataclass
class PreferenceOrder:
    kind: str                      # wspt | discounted | fault_detection | monotone_density
    rate: float = 1.0              # discount rate, discounted only
    params: dict = field(default_factory=dict)

    @property
    def on_sequences(self):
        return self.kind in ("wspt", "discounted", "fault_detection")


class _Seq:
    """A (compound) job: tuple of ids with cached aggregates for comparisons."""

    __slots__ = ("ids", "w", "p", "aux")

    def __init__(self, ids, w, p, aux):
        self.ids = ids
        self.w = w
        self.p = p
        self.aux = aux


def _seq_key(order, s):
    """Sort key: ascending key = processing order (most preferred first)."""
    if order.kind == "wspt":
        return (-Fraction(s.w, s.p), min(s.ids))
    if order.kind == "discounted":
        # aux = sum of w_j * exp(-rate * local completion); prefer larger
        # aux / (1 - exp(-rate p))
        denom = 1.0 - math.exp(-order.rate * float(s.p))
        return (-(s.aux / denom), min(s.ids))
    if order.kind == "fault_detection":
        # aux = expected local cost, p = product of pass probabilities
        return (Fraction(s.aux) / (1 - Fraction(s.p)), min(s.ids))
    raise ValueError("no sequence order for %s" % order.kind)


def _make_seq(order, inst, jid):
    j = inst.job(jid)
    if order.kind == "wspt":
        return _Seq((jid,), j.w, j.p, None)
    if order.kind == "discounted":
        return _Seq((jid,), j.w, j.p, j.w * math.exp(-order.rate * j.p))
    if order.kind == "fault_detection":
        q = order.params["q"][jid]
        c = order.params["c"][jid]
        return _Seq((jid,), 0, Fraction(q), Fraction(c))
    raise ValueError(order.kind)


def _concat(order, a, b):
    ids = a.ids + b.ids
    if order.kind == "wspt":
        return _Seq(ids, a.w + b.w, a.p + b.p, None)
    if order.kind == "discounted":
        aux = a.aux + math.exp(-order.rate * float(a.p)) * b.aux
        return _Seq(ids, a.w + b.w, a.p + b.p, aux)
    if order.kind == "fault_detection":
        return _Seq(ids, 0, a.p * b.p, a.aux + a.p * b.aux)
    raise ValueError(order.kind)


def order_value(inst, order, seq):
    """Objective value of a job sequence under a preference order's objective."""
    t = Fraction(0)
    if order.kind == "wspt":
        total = Fraction(0)
        for jid in seq:
            t += inst.job(jid).p
            total += inst.job(jid).w * t
        return total
    if order.kind == "discounted":
        tf = 0.0
        total = 0.0
        for jid in seq:
            tf += inst.job(jid).p
            total += -inst.job(jid).w * math.exp(-order.rate * tf)
        return total
    if order.kind == "fault_detection":
        q = order.params["q"]
        c = order.params["c"]
        prob = Fraction(1)
        total = Fraction(0)
        for jid in seq:
            total += Fraction(c[jid]) * prob
            prob *= Fraction(q[jid])
        return total
    if order.kind == "monotone_density":
        gcum = order.params.get("gcum", lambda t: Fraction(t) * Fraction(t) / 2)
        total = Fraction(0)
        for jid in seq:
            j = inst.job(jid)
            t += j.p
            total += j.w * (gcum(t) - gcum(t - j.p))
        return total
    raise ValueError(order.kind)


class ZWitnessError(ValueError):
    def __init__(self, witness):
        super().__init__("precedence order is not series-parallel: Z on %s" % (witness,))
        self.witness = witness


def order_sequence(inst, order, sp=None):
    """Optimal sequence for the order's objective: Smith-style sort without
    precedence, Lawler's composition-tree algorithm with one. Ties by
    smallest id."""
    if any(j.r for j in inst.jobs):
        raise ValueError("order_sequence requires equal release dates")
    ids = inst.job_ids()
    if order.kind == "monotone_density":
        if inst.prec:
            raise ValueError("monotone_density admits no precedence constraints")
        seq = sorted(ids, key=lambda j: (-inst.job(j).w, j))
        return seq, order_value(inst, order, seq)
    if not inst.prec:
        seqs = sorted((_make_seq(order, inst, j) for j in ids),
                      key=lambda s: _seq_key(order, s))
        flat = [j for s in seqs for j in s.ids]
        return flat, order_value(inst, order, flat)
    if not order.on_sequences:
        raise ValueError("order %s cannot honor precedence constraints" % order.kind)
    if sp is None:
        kind, payload = sp_decompose(ids, inst.prec)
        if kind == "z":
            raise ZWitnessError(payload)
        sp = payload

    def build(node):
        if node.kind == "leaf":
            return [_make_seq(order, inst, node.job)]
        L = build(node.left)
        R = build(node.right)
        if node.kind == "P":
            return L + R
        L.sort(key=lambda s: _seq_key(order, s))
        R.sort(key=lambda s: _seq_key(order, s))
        if L and R and _seq_key(order, L[-1]) < _seq_key(order, R[0]):
            return L + R
        s = _concat(order, L.pop(), R.pop(0))
        while True:
            if L and _seq_key(order, L[-1]) >= _seq_key(order, s):
                s = _concat(order, L.pop(), s)
            elif R and _seq_key(order, R[0]) <= _seq_key(order, s):
                s = _concat(order, s, R.pop(0))
            else:
                break
        return L + R + [s]

    seqs = sorted(build(sp), key=lambda s: _seq_key(order, s))
    flat = [j for s in seqs for j in s.ids]
    return flat, order_value(inst, order, flat)


def wspt_value(inst, seq):
    return order_value(inst, PreferenceOrder("wspt"), seq)


def sequence_schedule(inst, seq):
    sch = Schedule()
    t = Fraction(0)
    for jid in seq:
        j = inst.job(jid)
        sch.add(jid, 1, t, t + j.p)
        t += j.p
    return sch


# ---------------------------------------------------------------------------
# Sidney decomposition
# ---------------------------------------------------------------------------


@dataclass
class SidneyDecomposition:
    blocks: list                  # list of sorted job-id lists
    ratios: list                  # rho(I_i), strictly decreasing (maximal variant)


def _max_closure_maximal(weights, implications):
    """Maximal maximum-weight closed set: arcs (u, v) force v when u is chosen.
    Maximality comes from taking the complement of the residual nodes that
    reach the sink."""
    net = FlowNetwork()
    net.set_source("__s")
    net.set_sink("__t")
    big = sum((abs(w) for w in weights.values()), Fraction(0)) + 1
    for v, w in weights.items():
        net.add_node(("n", v))
        if w > 0:
            net.add_arc("__s", ("n", v), w)
        elif w < 0:
            net.add_arc(("n", v), "__t", -w)
    for (u, v) in implications:
        net.add_arc(("n", u), ("n", v), big)
    value, flows, _ = max_flow(net)
    # residual reverse reachability from the sink
    radj = {v: [] for v in net.nodes}
    for k, (t, h, c, _) in enumerate(net.arcs):
        if c - flows[k] > 0:
            radj[h].append(t)       # forward residual, walked backwards
        if flows[k] > 0:
            radj[t].append(h)       # backward residual, walked backwards
    reach_t = {"__t"}
    stack = ["__t"]
    while stack:
        v = stack.pop()
        for u in radj[v]:
            if u not in reach_t:
                reach_t.add(u)
                stack.append(u)
    closure = {v for v in weights if ("n", v) not in reach_t}
    total = sum((weights[v] for v in closure), Fraction(0))
    return closure, total


def _ratio_maximal_initial(inst, remaining):
    """Maximal ratio-maximal initial set of the remaining jobs via parametric
    max-closure (Dinkelbach iteration, exact rationals)."""
    rem = sorted(remaining)
    prec = [(a, b) for (a, b) in inst.prec if a in remaining and b in remaining]
    implications = [(b, a) for (a, b) in prec]      # j in I forces its predecessors
    w = {j: Fraction(inst.job(j).w) for j in rem}
    p = {j: Fraction(inst.job(j).p) for j in rem}
    lam = sum(w.values()) / sum(p.values())
    best = set(rem)
    while True:
        weights = {j: w[j] - lam * p[j] for j in rem}
        closure, total = _max_closure_maximal(weights, implications)
        if not closure:
            # cannot happen: the set realizing lam has value 0 and the maximal
            # optimal closure contains it
            return sorted(best), lam
        new_lam = sum(w[j] for j in closure) / sum(p[j] for j in closure)
        best = closure
        if new_lam == lam:
            return sorted(best), lam
        lam = new_lam


def sidney_decompose(inst):
    """Ordered ratio-maximal initial sets (canonical maximal variant, strictly
    decreasing ratios); each block certified by the parametric closure cut."""
    if any(j.p <= 0 for j in inst.jobs):
        raise ValueError("sidney_decompose requires positive processing times")
    remaining = set(inst.job_ids())
    blocks = []
    ratios = []
    while remaining:
        block, rho = _ratio_maximal_initial(inst, remaining)
        blocks.append(block)
        ratios.append(rho)
        remaining -= set(block)
    return SidneyDecomposition(blocks=blocks, ratios=ratios)


# ---------------------------------------------------------------------------
# 2-approximations for 1|prec|sum w C
# ---------------------------------------------------------------------------


def _topological(ids, prec):
    indeg = {j: 0 for j in ids}
    succ = {j: [] for j in ids}
    inside = set(ids)
    for (a, b) in prec:
        if a in inside and b in inside:
            indeg[b] += 1
            succ[a].append(b)
    ready = sorted(j for j in ids if indeg[j] == 0)
    out = []
    while ready:
        j = ready.pop(0)
        out.append(j)
        for k in succ[j]:
            indeg[k] -= 1
            if indeg[k] == 0:
                ready.append(k)
        ready.sort()
    return out


def prec_2approx(inst, mode="lp_delta", lp_limit=15):
    """Sequence with sum wC at most twice the returned lower bound.

    lp_delta orders jobs by LP completion times from the linear ordering
    relaxation; sidney_any takes any topological order consistent with a
    Sidney decomposition (lower bound: area under the 2D diagonal)."""
    ids = inst.job_ids()
    n = len(ids)
    if mode == "lp_delta" and n > lp_limit:
        mode = "sidney_any"
        note = "lp size exceeded; fell back to sidney_any"
    else:
        note = ""
    if mode == "lp_delta":
        seq, value, bound = _lp_delta(inst)
        return seq, value, bound, "lp_delta" + (" (%s)" % note if note else "")
    if mode != "sidney_any":
        raise ValueError(mode)
    dec = sidney_decompose(inst)
    seq = []
    for block in dec.blocks:
        seq.extend(_topological(block, inst.prec))
    value = wspt_value(inst, seq)
    bound = Fraction(0)
    before = Fraction(0)
    for block in dec.blocks:
        wB = sum(Fraction(inst.job(j).w) for j in block)
        pB = sum(Fraction(inst.job(j).p) for j in block)
        bound += wB * (before + pB / 2)
        before += pB
    return seq, value, bound, "sidney_any" + (" (%s)" % note if note else "")


def _lp_delta(inst):
    ids = inst.job_ids()
    n = len(ids)
    closure = transitive_closure(ids, inst.prec)
    pos = {j: k for k, j in enumerate(ids)}
    p = {j.id: j.p for j in inst.jobs}
    w = {j.id: j.w for j in inst.jobs}

    # one variable per unrelated unordered pair {i, j}, i < j: x = delta_ij
    free = {}
    for a in range(n):
        for b in range(a + 1, n):
            i, j = ids[a], ids[b]
            if (i, j) not in closure and (j, i) not in closure:
                free[(i, j)] = len(free)

    def delta_expr(i, j):
        """delta_ij as (constant, var index or None, coefficient)."""
        if (i, j) in closure:
            return (1, None, 0)
        if (j, i) in closure:
            return (0, None, 0)
        if (i, j) in free:
            return (0, free[(i, j)], 1)
        return (1, free[(j, i)], -1)

    c = [0.0] * len(free)
    const = Fraction(0)
    for i in ids:
        for j in ids:
            if i == j:
                continue
            coef = w[j] * p[i]
            k0, var, sgn = delta_expr(i, j)
            const += coef * k0
            if var is not None:
                c[var] += coef * sgn
    if not free:
        # the precedence order is total: delta is fully determined
        Cs = {j: sum(p[i] for i in ids if (i, j) in closure) + p[j] for j in ids}
        seq = sorted(ids, key=lambda j: (Cs[j], j))
        value = wspt_value(inst, seq)
        bound = float(const) + sum(w[j] * p[j] for j in ids)
        return seq, value, bound
    lp = DenseLP(c=c)
    # delta in [0, 1]
    for v in range(len(free)):
        row = [0.0] * len(free)
        row[v] = 1.0
        lp.add(row, "<=", 1)
    # transitivity: delta_jk + delta_ki - delta_ji <= 1 over distinct triples
    for i in ids:
        for j in ids:
            for k in ids:
                if len({i, j, k}) != 3:
                    continue
                row = [0.0] * len(free)
                rhs = 1
                touched = False
                for (a, b, s) in ((j, k, 1), (k, i, 1), (j, i, -1)):
                    k0, var, sgn = delta_expr(a, b)
                    rhs -= s * k0
                    if var is not None:
                        row[var] += s * sgn
                        touched = True
                if touched:
                    lp.add(row, "<=", rhs)
    res = lp_solve(lp, exact=False)
    if res.status != "optimal":
        raise RuntimeError("linear ordering relaxation failed: %s" % res.status)
    delta = {}
    for i in ids:
        for j in ids:
            if i == j:
                continue
            k0, var, sgn = delta_expr(i, j)
            delta[(i, j)] = k0 + (sgn * res.x[var] if var is not None else 0)
    Cs = {j: sum(p[i] * delta[(i, j)] for i in ids if i != j) + p[j] for j in ids}
    seq = sorted(ids, key=lambda j: (Cs[j], j))
    value = wspt_value(inst, seq)
    bound = res.value + float(const) + sum(w[j] * p[j] for j in ids)
    return seq, value, bound


# ---------------------------------------------------------------------------
# two-dimensional orders: exact via min-weight closure
# ---------------------------------------------------------------------------


class LinextError(ValueError):
    def __init__(self, witness):
        super().__init__("linear extension is separating on triple %s" % (witness,))
        self.witness = witness


def closure_2d_exact(inst, linext):
    """Exact optimum for two-dimensional precedence via the closure form of
    the ordering LP (totally unimodular, solved as a min cut). The supplied
    order must be a nonseparating linear extension; a witness triple is
    raised otherwise."""
    ids = inst.job_ids()
    closure = transitive_closure(ids, inst.prec)
    pos = {j: k for k, j in enumerate(linext)}
    if sorted(linext) != sorted(ids):
        raise ValueError("linext must order exactly the job set")
    for (i, j) in closure:
        if pos[i] > pos[j]:
            raise LinextError((i, j, None))
    for (i, j) in closure:
        for k in ids:
            if k in (i, j):
                continue
            if (i, k) in closure or (k, i) in closure or \
               (j, k) in closure or (k, j) in closure:
                continue
            if not (pos[k] < pos[i] or pos[j] < pos[k]):
                raise LinextError((i, j, k))

    p = {j.id: j.p for j in inst.jobs}
    w = {j.id: j.w for j in inst.jobs}
    free = []
    for a in range(len(linext)):
        for b in range(a + 1, len(linext)):
            i, j = linext[a], linext[b]
            if (i, j) not in closure and (j, i) not in closure:
                free.append((i, j))
    fset = set(free)

    # setting x_ij = 1 keeps i before j in pi order; 0 flips it
    node_w = {(i, j): Fraction(w[j] * p[i] - w[i] * p[j]) for (i, j) in free}

    # retained transitivity rows; the linext property guarantees every side is
    # itself a free pi-ordered pair, so x <= y becomes a plain implication
    arcs = []
    for (i, j) in closure:
        for k in ids:
            if k in (i, j):
                continue
            if (i, k) in closure or (k, i) in closure or \
               (j, k) in closure or (k, j) in closure:
                continue
            if pos[j] < pos[k]:
                lo, hi = (j, k), (i, k)      # d_jk <= d_ik
            else:
                lo, hi = (k, i), (k, j)      # d_ki <= d_kj
            if lo not in fset or hi not in fset:
                raise RuntimeError("retained row touches a fixed pair; "
                                   "linext check should prevent this")
            arcs.append((lo, hi))

    # minimize sum node_w over implication-closed sets = max closure of -w
    if free:
        chosen, _ = _max_closure_maximal({v: -node_w[v] for v in free}, arcs)
    else:
        chosen = set()

    delta = {}
    for a in range(len(linext)):
        for b in range(a + 1, len(linext)):
            i, j = linext[a], linext[b]
            if (i, j) in closure:
                delta[(i, j)] = 1
            elif (j, i) in closure:
                delta[(i, j)] = 0
            else:
                delta[(i, j)] = 1 if (i, j) in chosen else 0
            delta[(j, i)] = 1 - delta[(i, j)]
    Cs = {j: sum(p[i] * delta[(i, j)] for i in ids if i != j) + p[j] for j in ids}
    seq = sorted(ids, key=lambda j: (Cs[j], j))
    value = wspt_value(inst, seq)
    return seq, value


# ---------------------------------------------------------------------------
# Lagrangian lower bound for 1|prec|sum w C
# ---------------------------------------------------------------------------


def smith_sequence(ids, w, p):
    return sorted(ids, key=lambda j: (-Fraction(w[j], p[j]), j))


def lagrangian_bound(inst, iters=100, step0=Fraction(2)):
    """Subgradient iteration on the precedence multipliers; every iterate's
    relaxation value is a valid lower bound and the best one is returned.

    The dualized rows are C_l - C_k >= p_l for k -> l (the successor's
    processing time; the predecessor variant is not valid for feasible
    schedules). The reweighting is w~_k = w_k + lambda_kl, w~_l = w_l -
    lambda_kl, and the relaxation is solved by the ratio rule."""
    ids = inst.job_ids()
    p = {j.id: Fraction(j.p) for j in inst.jobs}
    w = {j.id: Fraction(j.w) for j in inst.jobs}
    arcs = list(inst.prec)
    lam = {a: Fraction(0) for a in arcs}
    best = None
    trace = []
    for it in range(1, iters + 1):
        wt = dict(w)
        for (k, l) in arcs:
            wt[k] += lam[(k, l)]
            wt[l] -= lam[(k, l)]
        seq = sorted(ids, key=lambda j: (-(wt[j] / p[j]), j))
        t = Fraction(0)
        C = {}
        val = Fraction(0)
        for j in seq:
            t += p[j]
            C[j] = t
            val += wt[j] * t
        val += sum(lam[(k, l)] * p[l] for (k, l) in arcs)
        trace.append(val)
        if best is None or val > best:
            best = val
        step = step0 / it
        for (k, l) in arcs:
            sub = p[l] - C[l] + C[k]
            lam[(k, l)] = max(Fraction(0), lam[(k, l)] + step * sub)
    return best, trace


# ---------------------------------------------------------------------------
# preemptive exact rules with release dates
# ---------------------------------------------------------------------------


def pmtn_exact(inst, rule="srpt"):
    """srpt: optimal 1|r_j,pmtn|sum C (preempts only at releases);
    ratio_mbt: preemptive ratio rule, optimal for sum w M (mean busy times)."""
    jobs = inst.jobs
    rem = {j.id: Fraction(j.p) for j in jobs}
    rel = {j.id: Fraction(j.r) for j in jobs}
    w = {j.id: Fraction(j.w) for j in jobs}
    sch = Schedule()
    pending = {j.id for j in jobs if rem[j.id] > 0}
    t = min(rel.values()) if pending else Fraction(0)

    def priority(j):
        if rule == "srpt":
            return (rem[j], j)
        if rule == "ratio_mbt":
            return (-(w[j] / rem_orig[j]), j)
        raise ValueError(rule)

    rem_orig = {j.id: Fraction(j.p) for j in jobs}
    while pending:
        avail = [j for j in pending if rel[j] <= t]
        if not avail:
            t = min(rel[j] for j in pending)
            continue
        j = min(avail, key=priority)
        nxt = min((rel[k] for k in pending if rel[k] > t), default=None)
        run = rem[j] if nxt is None else min(rem[j], nxt - t)
        sch.add(j, 1, t, t + run)
        t += run
        rem[j] -= run
        if rem[j] == 0:
            pending.remove(j)
    if rule == "srpt":
        value = sum(sch.completions().values(), Fraction(0))
    else:
        value = sum(w[j.id] * sch.mean_busy_time(j.id, j.p) for j in jobs if j.p > 0)
    return sch, value


# ---------------------------------------------------------------------------
# release-date approximation algorithms
# ---------------------------------------------------------------------------


def alpha_point(sch, jid, p_total, alpha):
    """First time an alpha fraction of the job is done in the schedule."""
    need = Fraction(alpha) * p_total if not isinstance(alpha, float) else None
    if need is None:
        need = Fraction(alpha).limit_denominator(10 ** 9) * p_total
    acc = Fraction(0)
    for piece in sch.pieces_of(jid):
        length = piece.end - piece.start
        if acc + length >= need:
            return piece.start + (need - acc)
        acc += length
    return sch.completion(jid)


def _order_schedule(inst, order, earliest):
    """Minimal nonpreemptive schedule processing jobs in the given order with
    per-job earliest start times."""
    sch = Schedule()
    t = Fraction(0)
    for jid in order:
        j = inst.job(jid)
        s = max(t, Fraction(earliest[jid]))
        sch.add(jid, 1, s, s + j.p)
        t = s + j.p
    return sch


def release_approx(inst, mode="srpt_order", trials=1, seed=0):
    """Nonpreemptive approximations for release-date minsum problems.

    Deterministic modes return (schedule, value, lower_bound). Randomized
    modes return (best_schedule, best_value, lower_bound, stats) where stats
    holds per-trial values and their mean."""
    unit = all(j.w == 1 for j in inst.jobs)
    if mode in ("srpt_order", "srpt_online", "alpha_random", "alpha_best") and not unit:
        raise ValueError("%s requires unit weights" % mode)

    if mode in ("srpt_order", "srpt_online", "alpha_random", "alpha_best"):
        pre, pre_value = pmtn_exact(inst, "srpt")
        lower = pre_value
    else:
        pre, mbt = pmtn_exact(inst, "ratio_mbt")
        lower = mbt + sum(Fraction(j.w * j.p, 2) for j in inst.jobs)

    comps = pre.completions()
    if mode == "srpt_order":
        order = sorted(comps, key=lambda j: (comps[j], j))
        sch = _order_schedule(inst, order, {j.id: j.r for j in inst.jobs})
        return sch, _wsum(inst, sch), lower
    if mode == "srpt_online":
        order = sorted(comps, key=lambda j: (comps[j], j))
        sch = _order_schedule(inst, order, comps)
        return sch, _wsum(inst, sch), lower

    if mode == "alpha_random":
        rng = random.Random(seed)
        values = []
        best = None
        for _ in range(trials):
            u = rng.random()
            alpha = math.log(1.0 + u * (math.e - 1.0))
            sch = _alpha_schedule(inst, pre, alpha)
            v = _wsum(inst, sch)
            values.append(v)
            if best is None or v < best[1]:
                best = (sch, v)
        mean = sum(values, Fraction(0)) / len(values)
        return best[0], best[1], lower, {"values": values, "mean": mean}

    if mode == "alpha_best":
        cands = {Fraction(1)}
        for j in inst.jobs:
            pieces = pre.pieces_of(j.id)
            acc = Fraction(0)
            for piece in pieces[:-1]:
                acc += piece.end - piece.start
                cands.add(acc / j.p)
        # the schedule is piecewise constant between critical fractions:
        # probe interval midpoints as well as the fractions themselves
        srt = sorted(c for c in cands if 0 < c <= 1)
        probes = set(srt)
        prev = Fraction(0)
        for c in srt:
            probes.add((prev + c) / 2)
            prev = c
        best = None
        for alpha in sorted(probes):
            if alpha <= 0:
                continue
            sch = _alpha_schedule(inst, pre, alpha)
            v = _wsum(inst, sch)
            if best is None or v < best[1]:
                best = (sch, v)
        return best[0], best[1], lower

    if mode == "alphaj_random":
        rng = random.Random(seed)
        values = []
        best = None
        rel = {j.id: j.r for j in inst.jobs}
        for _ in range(trials):
            alphas = {j.id: Fraction(rng.randrange(1, 10 ** 6), 10 ** 6) for j in inst.jobs}
            points = {j.id: alpha_point(pre, j.id, Fraction(j.p), alphas[j.id])
                      for j in inst.jobs}
            order = sorted(points, key=lambda j: (points[j], j))
            sch = _order_schedule(inst, order, rel)
            v = _wsum(inst, sch)
            values.append(v)
            if best is None or v < best[1]:
                best = (sch, v)
        mean = sum(values, Fraction(0)) / len(values)
        return best[0], best[1], lower, {"values": values, "mean": mean}

    if mode == "delayed_ratio":
        return _delayed_ratio(inst) + (lower,)

    raise ValueError(mode)


def _alpha_schedule(inst, pre, alpha):
    """Minimal schedule processing jobs in alpha-point order (starts bounded
    by release dates only, which dominates the availability-delayed variant)."""
    points = {j.id: alpha_point(pre, j.id, Fraction(j.p), alpha) for j in inst.jobs}
    order = sorted(points, key=lambda j: (points[j], j))
    return _order_schedule(inst, order, {j.id: j.r for j in inst.jobs})


def _wsum(inst, sch):
    cs = sch.completions()
    return sum(Fraction(j.w) * cs[j.id] for j in inst.jobs)


def _delayed_ratio(inst):
    """Start the best-ratio available job once the clock passes its length."""
    jobs = {j.id: j for j in inst.jobs}
    pending = set(jobs)
    t = Fraction(0)
    sch = Schedule()
    while pending:
        avail = [j for j in pending if jobs[j].r <= t]
        if not avail:
            t = Fraction(min(jobs[j].r for j in pending))
            continue
        j = max(avail, key=lambda x: (Fraction(jobs[x].w, jobs[x].p), -x))
        if t >= jobs[j].p:
            sch.add(j, 1, t, t + jobs[j].p)
            t += jobs[j].p
            pending.remove(j)
        else:
            future = [Fraction(jobs[k].r) for k in pending if jobs[k].r > t]
            wake = min([Fraction(jobs[j].p)] + [f for f in future])
            t = wake
    return sch, _wsum(inst, sch)
