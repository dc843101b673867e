"""Command-line surface: solve, verify, audit, gantt, gen, experiment.

Exit codes: 0 ok, 1 violation or infeasible verdict, 2 usage, 3 budget.
All randomness flows from --seed; report commands write delimited output and
render a matplotlib figure next to it.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .core import (parse_instance, serialize_instance, parse_schedule,
                   serialize_schedule, validate_schedule, render_gantt, fixtures)
from . import sm_minmax, sm_minsum, sm_latejobs, par_sum, par_minmax, par_pmtn, \
    openflow, jobshop
from .oracle import brute_exact, OracleBudget, OracleBudgetExceeded


class Incompatible(ValueError):
    pass


def _need(inst, env=None, pmtn=None):
    if env and inst.env not in env:
        raise Incompatible("environment %s unsupported" % inst.env)
    if pmtn is not None and inst.pmtn != pmtn:
        raise Incompatible("pmtn=%s required" % pmtn)


def _run_mcnaughton(inst, args):
    _need(inst, env=("identicalP",), pmtn=True)
    sch, val = par_pmtn.mcnaughton(inst)
    return sch, val, val, "value = max(p_max, sum p / m) (exact)"


def _run_gonzalez_sahni(inst, args):
    _need(inst, env=("uniformQ", "identicalP"), pmtn=True)
    sch, val = par_pmtn.gonzalez_sahni(inst)
    return sch, val, val, "value attains the prefix capacity bound (exact)"


def _run_staircase(inst, args):
    _need(inst, env=("uniformQ", "identicalP"), pmtn=True)
    sch, val = par_pmtn.staircase(inst)
    return sch, val, val, "exact for Q|pmtn,r_j|Cmax"


def _run_lpt(inst, args):
    _need(inst, env=("identicalP",), pmtn=False)
    sch, val, rho = par_minmax.list_family(inst, "lpt")
    lb = max(max(j.p for j in inst.jobs), -(-sum(j.p for j in inst.jobs) // inst.m))
    return sch, val, Fraction(lb), "value <= (4/3 - 1/3m) * OPT"


def _run_ls(inst, args):
    _need(inst, env=("identicalP", "uniformQ"), pmtn=False)
    sch, val, rho = par_minmax.list_family(inst, "ls")
    return sch, val, None, "value <= (2 - 1/m) * OPT on identical machines"


def _run_multifit(inst, args):
    _need(inst, env=("identicalP",), pmtn=False)
    sch, val = par_minmax.multifit(inst, iters=20)
    return sch, val, None, "value <= (13/11 + 2^-20) * OPT"


def _run_dk(inst, args):
    _need(inst, env=("identicalP",), pmtn=False)
    sch, val, rho, _ = par_minmax.bisection_decide(inst, "dk", k=args.k or 2)
    return sch, val, None, "value <= (1 + 1/k) * OPT"


def _run_q_recurse(inst, args):
    _need(inst, env=("uniformQ",), pmtn=False)
    sch, val, rho, _ = par_minmax.bisection_decide(inst, "q_recurse")
    return sch, val, None, "value <= 3/2 * OPT"


def _run_r(mode):
    def run(inst, args):
        _need(inst, env=("unrelatedR",), pmtn=False)
        sch, val, lb = par_minmax.r_approx(inst, mode)
        rho = {"greedy": "m", "rs": "2.5 sqrt(m)+1+1/(2 sqrt(m))",
               "lp_m": "2", "lp_prime": "2"}[mode]
        return sch, val, lb, "value <= %s * OPT" % rho
    return run


def _run_rm_fptas(inst, args):
    _need(inst, env=("unrelatedR",), pmtn=False)
    sch, val = par_minmax.rm_fptas(inst, Fraction(args.eps or "1/2"))
    return sch, val, None, "value <= (1 + eps) * OPT"


def _run_smith(inst, args):
    _need(inst, env=("single",))
    seq, val = sm_minsum.order_sequence(inst, sm_minsum.PreferenceOrder("wspt"))
    return sm_minsum.sequence_schedule(inst, seq), val, val, "exact (ratio rule)"


def _run_lcl(inst, args):
    _need(inst, env=("single",))
    seq, val, sch = sm_minmax.least_cost_last(inst)
    return sch, val, val, "exact (least cost last)"


def _run_preemptive_edd(inst, args):
    _need(inst, env=("single",), pmtn=True)
    work = sm_minmax.modify_dates(inst) if inst.prec else inst
    sch, val, cert = sm_minmax.preemptive_fmax(work)
    return sch, val, val, "exact; certificate set %s" % (cert,)


def _run_nedd(inst, args):
    _need(inst, env=("single",))
    sch, val, info = sm_minmax.hbt_approx(inst, "nedd")
    return sch, val, None, "value < 2 * OPT"


def _run_inedd(inst, args):
    _need(inst, env=("single",))
    sch, val, info = sm_minmax.hbt_approx(inst, "inedd")
    return sch, val, None, "value < 3/2 * OPT"


def _run_hbt_ptas(inst, args):
    _need(inst, env=("single",))
    sch, val, info = sm_minmax.hbt_approx(inst, "ptas", k=args.k or 3)
    return sch, val, None, "value <= (1 + 1/k) * OPT"


def _run_carlier(inst, args):
    _need(inst, env=("single",))
    budget = OracleBudget(max_nodes=args.nodes or 10 ** 6)
    res = sm_minmax.carlier_bb(inst, "carlier", budget)
    if not res.optimal:
        raise OracleBudgetExceeded("incumbent %s, bound %s" % (res.value, res.lower_bound))
    return res.schedule, res.value, res.value, "exact (branch and bound, %d nodes)" % res.nodes


def _run_equal_length(inst, args):
    _need(inst, env=("single",))
    lam, sch = sm_minmax.equal_length(inst, "lmax")
    return sch, lam, lam, "exact (forbidden regions)"


def _run_moore_hodgson(inst, args):
    _need(inst, env=("single",))
    res = sm_latejobs.moore_hodgson(inst)
    return res.schedule, res.value, res.value, "exact (Moore-Hodgson)"


def _run_wu_dp(inst, args):
    _need(inst, env=("single",))
    res = sm_latejobs.wu_dp(inst)
    return res.schedule, res.value, res.value, "exact (dominance pairs)"


def _run_pmtn_wu(inst, args):
    _need(inst, env=("single",), pmtn=True)
    res = sm_latejobs.pmtn_general_dp(inst)
    return res.schedule, res.value, res.value, "exact (release-block DP)"


def _run_srpt(inst, args):
    _need(inst, env=("single",), pmtn=True)
    sch, val = sm_minsum.pmtn_exact(inst, "srpt")
    return sch, val, val, "exact (SRPT)"


def _run_srpt_order(inst, args):
    _need(inst, env=("single",), pmtn=False)
    sch, val, lb = sm_minsum.release_approx(inst, "srpt_order")
    return sch, val, lb, "value <= 2 * OPT"


def _run_delayed_ratio(inst, args):
    _need(inst, env=("single",), pmtn=False)
    sch, val, lb = sm_minsum.release_approx(inst, "delayed_ratio")
    return sch, val, lb, "value <= 2 * OPT"


def _run_alpha_best(inst, args):
    _need(inst, env=("single",), pmtn=False)
    sch, val, lb = sm_minsum.release_approx(inst, "alpha_best")
    return sch, val, lb, "value <= e/(e-1) * SRPT value"


def _run_prec2(inst, args):
    _need(inst, env=("single",))
    seq, val, lb, used = sm_minsum.prec_2approx(inst, "lp_delta")
    return sm_minsum.sequence_schedule(inst, seq), val, lb, \
        "value <= 2 * LB (%s)" % used


def _run_sahni_cho(inst, args):
    _need(inst, env=("identicalP", "uniformQ"), pmtn=True)
    sch, verdict = par_pmtn.sahni_cho(inst)
    if verdict != "feasible":
        return None, verdict, None, "infeasible"
    return sch, sch.makespan(), None, "feasible (all deadlines met)"


def _run_deadline_flow(inst, args):
    _need(inst, env=("identicalP", "uniformQ"), pmtn=True)
    sch, lam = par_pmtn.deadline_flow(inst, "lmax")
    return sch, lam, lam, "exact (parametric flow)"


def _run_memory(inst, args):
    raise Incompatible("memory constraints need an API call with capacities")


def _run_r_pmtn_lp(inst, args):
    _need(inst, env=("unrelatedR",), pmtn=True)
    sch, val = par_pmtn.r_pmtn_lp(inst, "cmax")
    return sch, val, val, "exact (allocation LP + open-shop realization)"


def _run_minsum_assign(inst, args):
    _need(inst, env=("identicalP", "uniformQ", "unrelatedR"), pmtn=False)
    sch, val = par_sum.minsum_assign(inst)
    return sch, val, val, "exact (coefficient matching)"


def _run_q_pmtn_spt(inst, args):
    _need(inst, env=("uniformQ", "identicalP"), pmtn=True)
    sch, val = par_sum.q_pmtn_spt(inst)
    return sch, val, val, "exact (preemptive SPT)"


def _run_o2(inst, args):
    _need(inst, env=("openO",))
    sch, val = openflow.o2_exact(inst)
    return sch, val, val, "exact (value = beta)"


def _run_o_greedy(inst, args):
    _need(inst, env=("openO",))
    sch, val = openflow.o_greedy(inst)
    beta = inst.shop_bounds()["beta"]
    return sch, val, Fraction(beta), "value <= 2 * beta"


def _run_fiala(inst, args):
    _need(inst, env=("openO",))
    sch, val = openflow.fiala(inst)
    return sch, val, val, "exact (value = L_max)"


def _run_o3_ptas(inst, args):
    _need(inst, env=("openO",))
    sch, val = openflow.o3_ptas(inst, Fraction(args.eps or "3/10"))
    beta = inst.shop_bounds()["beta"]
    return sch, val, Fraction(beta), "value <= (1 + 3 eps^2 + 6 eps) * OPT"


def _run_johnson(inst, args):
    _need(inst, env=("flowF",))
    perm, val = openflow.johnson(inst)
    return openflow.flow_perm_schedule(inst, perm), val, val, "exact (Johnson)"


def _flow_runner(method, note):
    def run(inst, args):
        _need(inst, env=("flowF",))
        perm, sch, val, bound = openflow.flow_solve(inst, method, seed=args.seed or 0)
        return sch, val, None, note or bound
    return run


def _run_js_dispatch(inst, args):
    _need(inst, env=("jobJ", "flowF"))
    sch, val, seqs = jobshop.dispatch(inst, "active", "spt")
    return sch, val, None, "active schedule (SPT rule)"


def _run_sbh(inst, args):
    _need(inst, env=("jobJ", "flowF"))
    sch, val, info = jobshop.shifting_bottleneck(inst)
    return sch, val, None, "shifting bottleneck%s" % (" (flagged)" if info["flagged"] else "")


def _run_js_tabu(inst, args):
    _need(inst, env=("jobJ", "flowF"))
    params = jobshop.SearchParams(seed=args.seed or 0, max_iters=args.nodes or 1000)
    sch, val, trace = jobshop.local_search(inst, kind="tabu", params=params)
    return sch, val, None, "tabu search (seed-deterministic)"


def _run_js_sevast(inst, args):
    _need(inst, env=("jobJ", "flowF", "openO"))
    sch, val, info = jobshop.js_sevast(inst)
    return sch, val, info["pi_max"], "value <= Pi_max + staggering bound %s" % info["bound"]


def _run_oracle(inst, args):
    budget = OracleBudget(max_nodes=args.nodes or 10 ** 7)
    obj = args.objective or "Cmax"
    val, sch = brute_exact(inst, obj, budget)
    return sch, val, val, "exact (exhaustive oracle)"


ALGORITHMS = {
    "mcnaughton": _run_mcnaughton,
    "gonzalez_sahni": _run_gonzalez_sahni,
    "staircase": _run_staircase,
    "sahni_cho": _run_sahni_cho,
    "deadline_flow": _run_deadline_flow,
    "r_pmtn_lp": _run_r_pmtn_lp,
    "ls": _run_ls,
    "lpt": _run_lpt,
    "multifit": _run_multifit,
    "dk": _run_dk,
    "q_recurse": _run_q_recurse,
    "greedy_r": _run_r("greedy"),
    "rs": _run_r("rs"),
    "lp_m": _run_r("lp_m"),
    "lp_prime": _run_r("lp_prime"),
    "rm_fptas": _run_rm_fptas,
    "minsum_assign": _run_minsum_assign,
    "q_pmtn_spt": _run_q_pmtn_spt,
    "smith": _run_smith,
    "least_cost_last": _run_lcl,
    "preemptive_edd": _run_preemptive_edd,
    "nedd": _run_nedd,
    "inedd": _run_inedd,
    "hbt_ptas": _run_hbt_ptas,
    "carlier": _run_carlier,
    "equal_length": _run_equal_length,
    "moore_hodgson": _run_moore_hodgson,
    "wu_dp": _run_wu_dp,
    "pmtn_wu_dp": _run_pmtn_wu,
    "srpt": _run_srpt,
    "srpt_order": _run_srpt_order,
    "delayed_ratio": _run_delayed_ratio,
    "alpha_best": _run_alpha_best,
    "prec_2approx": _run_prec2,
    "o2": _run_o2,
    "o_greedy": _run_o_greedy,
    "fiala": _run_fiala,
    "o3_ptas": _run_o3_ptas,
    "johnson": _run_johnson,
    "flow_aggregate": _flow_runner("aggregate", "value <= ceil(m/2) * OPT"),
    "flow_sevast": _flow_runner("sevast", "value <= OPT + m(m-1) p_max"),
    "palmer": _flow_runner("palmer", ""),
    "cds": _flow_runner("cds", ""),
    "neh": _flow_runner("neh", ""),
    "flow_sa": _flow_runner("sa", ""),
    "js_dispatch": _run_js_dispatch,
    "shifting_bottleneck": _run_sbh,
    "js_tabu": _run_js_tabu,
    "js_sevast": _run_js_sevast,
    "oracle": _run_oracle,
}


def _load_instance(path):
    if path.startswith("fix:") or path.startswith("FIX-"):
        name = path[4:] if path.startswith("fix:") else path
        return fixtures.get(name.upper() if not name.startswith("FIX") else name).instance
    with open(path) as f:
        return parse_instance(f.read(), name=os.path.splitext(os.path.basename(path))[0])


def cmd_solve(args):
    inst = _load_instance(args.input)
    runner = ALGORITHMS.get(args.algo)
    if runner is None:
        print("unknown algorithm %r" % args.algo, file=sys.stderr)
        return 2
    try:
        sch, val, lb, guarantee = runner(inst, args)
    except Incompatible as e:
        compatible = []
        for name, r in sorted(ALGORITHMS.items()):
            try:
                r(inst, args)
                compatible.append(name)
            except Exception:
                pass
        print("algorithm %s incompatible: %s" % (args.algo, e), file=sys.stderr)
        print("compatible algorithms: %s" % ", ".join(compatible), file=sys.stderr)
        return 2
    except OracleBudgetExceeded as e:
        print("budget exceeded: %s" % e, file=sys.stderr)
        return 3
    if sch is None:
        print("verdict: %s" % val)
        return 1
    print("value %s" % val)
    if lb is not None:
        print("guarantee: %s (lower bound %s)" % (guarantee, lb))
    else:
        print("guarantee: %s" % guarantee)
    text = serialize_schedule(sch, inst.name)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args):
    inst = _load_instance(args.input)
    with open(args.schedule) as f:
        sch, name = parse_schedule(f.read())
    report = validate_schedule(inst, sch)
    if report.ok:
        print("ok")
        return 0
    print(report)
    return 1


def cmd_gantt(args):
    inst = _load_instance(args.input)
    with open(args.schedule) as f:
        sch, name = parse_schedule(f.read())
    doc = render_gantt(inst, sch, format=args.format or "svg")
    if args.out:
        with open(args.out, "w") as f:
            f.write(doc)
    else:
        sys.stdout.write(doc)
    return 0


_AUDIT_BOUNDS = {
    "lpt": lambda inst: Fraction(4, 3) - Fraction(1, 3 * inst.m),
    "ls": lambda inst: Fraction(2) - Fraction(1, inst.m),
    "multifit": lambda inst: Fraction(13, 11) + Fraction(1, 2 ** 20),
    "greedy_r": lambda inst: Fraction(inst.m),
    "lp_prime": lambda inst: Fraction(2),
    "lp_m": lambda inst: Fraction(2),
    "nedd": lambda inst: Fraction(2),
    "inedd": lambda inst: Fraction(3, 2),
    "o_greedy": lambda inst: Fraction(2),
    "srpt_order": lambda inst: Fraction(2),
    "delayed_ratio": lambda inst: Fraction(2),
}


def cmd_audit(args):
    runner = ALGORITHMS.get(args.algo)
    if runner is None:
        print("unknown algorithm %r" % args.algo, file=sys.stderr)
        return 2
    paths = []
    if os.path.isdir(args.input):
        paths = [os.path.join(args.input, f) for f in sorted(os.listdir(args.input))
                 if f.endswith(".inst")]
    else:
        paths = [args.input]
    bound_fn = _AUDIT_BOUNDS.get(args.algo)
    rows = []
    worst = Fraction(0)
    failed = False
    for path in paths:
        inst = _load_instance(path)
        sch, val, lb, guarantee = runner(inst, args)
        budget = OracleBudget(max_nodes=args.nodes or 10 ** 7)
        opt, _ = brute_exact(inst, args.objective or "Cmax", budget)
        ratio = Fraction(val) / opt if opt else Fraction(1)
        worst = max(worst, ratio)
        bound = bound_fn(inst) if bound_fn else None
        if bound is not None and ratio > bound:
            failed = True
        rows.append((os.path.basename(path), val, opt, ratio, bound))
    out = args.out or "audit.tsv"
    bound_name = {
        "lpt": "4/3 - 1/3m", "ls": "2 - 1/m", "multifit": "13/11 + 2^-20",
        "greedy_r": "m", "lp_prime": "2", "lp_m": "2", "nedd": "2",
        "inedd": "3/2", "o_greedy": "2", "srpt_order": "2", "delayed_ratio": "2",
    }.get(args.algo, "none proven")
    with open(out, "w") as f:
        f.write("# audit algo=%s objective=%s proven-bound=%s\n"
                % (args.algo, args.objective or "Cmax", bound_name))
        f.write("instance\tvalue\toracle\tratio\tbound\n")
        for (name, val, opt, ratio, bound) in rows:
            f.write("%s\t%s\t%s\t%s\t%s\n" % (name, val, opt, float(ratio),
                                              "" if bound is None else float(bound)))
    _audit_figure(rows, args.algo, os.path.splitext(out)[0] + ".png")
    print("audited %d instances; worst ratio %s -> %s" % (len(rows), float(worst), out))
    return 1 if failed else 0


def _audit_figure(rows, algo, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    ratios = [float(r[3]) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(ratios, bins=20, color="#4c78a8", edgecolor="#333333")
    bounds = [r[4] for r in rows if r[4] is not None]
    if bounds:
        ax.axvline(float(max(bounds)), color="#e45756", linestyle="--",
                   label="proven bound")
        ax.legend()
    ax.set_xlabel("value / oracle")
    ax.set_ylabel("instances")
    ax.set_title("audit: %s" % algo)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_experiment(args):
    ns = [int(x) for x in (args.sizes or "10,100,1000").split(",")]
    rows = par_minmax.lpt_experiment(args.m or 2, ns, args.trials or 200,
                                     seed=args.seed or 0)
    out = args.out or "lpt_experiment.tsv"
    with open(out, "w") as f:
        f.write("n\ttrials\tmean_gap\tmax_gap\n")
        for (n, trials, mean, worst) in rows:
            f.write("%d\t%d\t%s\t%s\n" % (n, trials, float(mean), float(worst)))
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog([r[0] for r in rows], [float(r[2]) for r in rows], "o-",
              color="#4c78a8", label="mean gap")
    ax.loglog([r[0] for r in rows], [float(r[3]) for r in rows], "s--",
              color="#f58518", label="max gap")
    ax.set_xlabel("jobs")
    ax.set_ylabel("machine load gap")
    ax.set_title("LPT load gap, m=%d" % (args.m or 2))
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.splitext(out)[0] + ".png", dpi=120)
    plt.close(fig)
    print("wrote %s" % out)
    return 0


def cmd_gen(args):
    import random as _random
    rng = _random.Random(args.seed or 0)
    fam = args.family
    if fam.startswith("fix:"):
        fx = fixtures.get(fam[4:].upper() if not fam[4:].startswith("FIX")
                          else fam[4:], args.m)
        text = serialize_instance(fx.instance)
    elif fam.startswith("tight:"):
        kind = fam[6:]
        m = args.m or 3
        fx = {"ls": fixtures.fix_ls, "og": fixtures.fix_og, "oh": fixtures.fix_oh}.get(kind)
        if fx is None and kind == "eta3":
            text = serialize_instance(fixtures.fix_eta3().instance)
        elif fx is None:
            print("unknown tight family %r" % kind, file=sys.stderr)
            return 2
        else:
            text = serialize_instance(fx(m).instance)
    elif fam == "uniform":
        n = args.n or 8
        m = args.m or 2
        pmax = args.pmax or 9
        env = "P%d" % m if m > 1 else "1"
        lines = ["problem %s||Cmax" % env, "machines %d" % m]
        for j in range(1, n + 1):
            lines.append("job %d p=%d" % (j, rng.randint(1, pmax)))
        text = "\n".join(lines) + "\n"
    elif fam == "partition_like":
        t = args.n or 4
        a = [rng.randint(1, 9) for _ in range(t)]
        b = sum(a) - sum(a) // 2
        lines = ["problem 1|r_j|Lmax", "machines 1"]
        for j, aj in enumerate(a, start=1):
            lines.append("job %d p=%d d=%d" % (j, aj, sum(a) + 1))
        lines.append("job %d p=1 r=%d d=%d" % (t + 1, sum(a) // 2, sum(a) // 2 + 1))
        text = "\n".join(lines) + "\n"
    else:
        print("unknown family %r" % fam, file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(prog="schedkit",
                                     description="deterministic machine scheduling toolkit")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--eps", default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--nodes", type=int, default=None, help="search budget")
        p.add_argument("--time-limit", type=float, default=None)
        p.add_argument("--objective", default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", default=None, choices=[None, "text", "svg", "tsv"])

    p = sub.add_parser("solve", help="run an algorithm, write schedule + guarantee")
    p.add_argument("--algo", required=True)
    p.add_argument("--in", dest="input", required=True)
    common(p)
    p = sub.add_parser("verify", help="validate a schedule file against an instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--schedule", required=True)
    common(p)
    p = sub.add_parser("gantt", help="render a schedule")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--schedule", required=True)
    common(p)
    p = sub.add_parser("audit", help="compare an algorithm against the oracle")
    p.add_argument("--algo", required=True)
    p.add_argument("--in", dest="input", required=True)
    common(p)
    p = sub.add_parser("experiment", help="LPT load-gap Monte Carlo demo")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--sizes", default=None)
    p.add_argument("--trials", type=int, default=200)
    common(p)
    p = sub.add_parser("gen", help="generate instance files")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--pmax", type=int, default=None)
    common(p)

    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        return {"solve": cmd_solve, "verify": cmd_verify, "gantt": cmd_gantt,
                "audit": cmd_audit, "experiment": cmd_experiment,
                "gen": cmd_gen}[args.command](args)
    except OracleBudgetExceeded as e:
        print("budget exceeded: %s" % e, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
