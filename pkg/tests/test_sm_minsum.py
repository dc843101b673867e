import math
import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from schedkit.core import Instance, Job, fixtures, validate_schedule
from schedkit.core.schedule import Schedule
from schedkit.sm_minsum import (PreferenceOrder, order_sequence, order_value,
                                sidney_decompose, prec_2approx, closure_2d_exact,
                                lagrangian_bound, pmtn_exact, release_approx,
                                wspt_value, sequence_schedule, ZWitnessError,
                                LinextError)
from schedkit.oracle import brute_exact, pmtn_grid_exact
from schedkit.kernels.sp import sp_decompose

import helpers


def weighted(rng, n=None, prec_p=0.0, sp_prec=False):
    n = n or rng.randint(1, 7)
    jobs = [Job(i + 1, p=rng.randint(1, 5), w=rng.randint(0, 5)) for i in range(n)]
    prec = helpers.sp_precedence(rng, n) if sp_prec else []
    if prec_p and not sp_prec:
        prec = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                if rng.random() < prec_p]
    return Instance(env="single", jobs=jobs, prec=prec).validate()


def test_smith_no_prec_unit_ratios():
    inst = Instance(env="single",
                    jobs=[Job(i + 1, p=p, w=p) for i, p in
                          enumerate([5, 8, 6, 2, 3, 1, 3, 4])]).validate()
    seq, val = order_sequence(inst, PreferenceOrder("wspt"))
    # all ratios equal: any order gives the same value
    assert val == wspt_value(inst, inst.job_ids())


def test_wspt_sp_equals_oracle():
    rng = random.Random(1)
    for _ in range(150):
        inst = weighted(rng, sp_prec=True)
        seq, val = order_sequence(inst, PreferenceOrder("wspt"))
        opt, _ = brute_exact(inst, "SumWC")
        assert val == opt


def test_adjacent_interchange_optimality():
    rng = random.Random(2)
    for _ in range(60):
        inst = weighted(rng)
        seq, val = order_sequence(inst, PreferenceOrder("wspt"))
        for k in range(len(seq) - 1):
            swapped = list(seq)
            swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
            assert wspt_value(inst, swapped) >= val


def test_z_witness_raised_without_tree():
    inst = Instance(env="single", jobs=[Job(i, p=1, w=1) for i in (1, 2, 3, 4)],
                    prec=[(1, 3), (2, 3), (2, 4)]).validate()
    with pytest.raises(ZWitnessError):
        order_sequence(inst, PreferenceOrder("wspt"))


def test_discounted_and_fault_orders():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 6)
        inst = Instance(env="single", jobs=[Job(i + 1, p=rng.randint(1, 5),
                                                w=rng.randint(1, 5))
                                            for i in range(n)]).validate()
        order = PreferenceOrder("discounted", rate=0.4)
        seq, val = order_sequence(inst, order)
        best = min(order_value(inst, order, list(pi))
                   for pi in permutations(inst.job_ids()))
        assert val <= best + 1e-9
        q = {i + 1: Fraction(rng.randint(1, 9), 10) for i in range(n)}
        c = {i + 1: rng.randint(1, 9) for i in range(n)}
        order = PreferenceOrder("fault_detection", params={"q": q, "c": c})
        seq, val = order_sequence(inst, order)
        best = min(order_value(inst, order, list(pi))
                   for pi in permutations(inst.job_ids()))
        assert val == best


def test_monotone_density_order():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 6)
        inst = Instance(env="single", jobs=[Job(i + 1, p=rng.randint(1, 5),
                                                w=rng.randint(0, 5))
                                            for i in range(n)]).validate()
        order = PreferenceOrder("monotone_density")
        seq, val = order_sequence(inst, order)
        best = min(order_value(inst, order, list(pi))
                   for pi in permutations(inst.job_ids()))
        assert val == best


def test_sidney_examples():
    rng = random.Random(5)
    # distinct ratios, no prec: singleton blocks in ratio order
    inst = Instance(env="single", jobs=[Job(1, p=1, w=6), Job(2, p=2, w=6),
                                        Job(3, p=1, w=1)]).validate()
    dec = sidney_decompose(inst)
    assert dec.blocks == [[1], [2], [3]]
    assert dec.ratios == [Fraction(6), Fraction(3), Fraction(1)]
    # FIX-LP3 is one block of ratio 2/3
    dec = sidney_decompose(fixtures.get("FIX-LP3").instance)
    assert dec.blocks == [[1, 2, 3]] and dec.ratios == [Fraction(2, 3)]
    # chain with weight at the end
    inst = Instance(env="single", jobs=[Job(1, p=1, w=0), Job(2, p=1, w=10)],
                    prec=[(1, 2)]).validate()
    dec = sidney_decompose(inst)
    assert dec.blocks == [[1, 2]] and dec.ratios == [Fraction(5)]


def test_sidney_blocks_are_ratio_maximal():
    rng = random.Random(6)
    for _ in range(60):
        inst = weighted(rng, n=rng.randint(1, 7), prec_p=0.3)
        if all(j.w == 0 for j in inst.jobs):
            continue
        dec = sidney_decompose(inst)
        assert all(a > b for a, b in zip(dec.ratios, dec.ratios[1:]))
        remaining = set(inst.job_ids())
        closure = {(a, b) for (a, b) in inst.prec}
        for block, rho in zip(dec.blocks, dec.ratios):
            # enumerate all initial sets of the remainder and check maximality
            rem = sorted(remaining)
            best = None
            for r in range(1, len(rem) + 1):
                for A in combinations(rem, r):
                    As = set(A)
                    if any(a in remaining and a not in As
                           for (a, b) in inst.prec if b in As):
                        continue
                    ratio = Fraction(sum(inst.job(j).w for j in A),
                                     sum(inst.job(j).p for j in A))
                    best = ratio if best is None else max(best, ratio)
            assert rho == best
            remaining -= set(block)


def test_prec_2approx_both_modes():
    rng = random.Random(7)
    for _ in range(100):
        inst = weighted(rng, n=rng.randint(1, 7), prec_p=0.3)
        opt, _ = brute_exact(inst, "SumWC")
        for mode in ("lp_delta", "sidney_any"):
            seq, val, lb, used = prec_2approx(inst, mode)
            assert float(val) <= 2 * float(lb) + 1e-6
            assert float(lb) <= float(opt) + 1e-6
            assert val >= opt


def test_prec_2approx_no_prec_is_exact():
    rng = random.Random(8)
    for _ in range(30):
        inst = weighted(rng)
        opt, _ = brute_exact(inst, "SumWC")
        seq, val, lb, used = prec_2approx(inst, "sidney_any")
        assert val == opt


def test_sidney_any_consistent_sequences_within_two():
    rng = random.Random(9)
    for _ in range(40):
        inst = weighted(rng, n=rng.randint(1, 6), prec_p=0.3)
        if all(j.w == 0 for j in inst.jobs):
            continue
        opt, _ = brute_exact(inst, "SumWC")
        dec = sidney_decompose(inst)
        # every sequence consistent with the decomposition is within 2 OPT
        def consistent(parts):
            if not parts:
                yield []
                return
            head, rest = parts[0], parts[1:]
            for pi in permutations(head):
                order = list(pi)
                ok = all(order.index(a) < order.index(b)
                         for (a, b) in inst.prec
                         if a in head and b in head)
                if not ok:
                    continue
                for tail in consistent(rest):
                    yield order + tail
        for seq in consistent(dec.blocks):
            assert wspt_value(inst, seq) <= 2 * opt


def test_fix_lp3_lp_delta():
    fx = fixtures.get("FIX-LP3")
    seq, val, lb, used = prec_2approx(fx.instance, "lp_delta")
    assert val == 5
    # the ordering relaxation dominates the completion-time LP's 14/3 bound
    # (and is integral here, the precedence being series-parallel)
    assert float(fx.value("lp_value")) - 1e-6 <= lb <= float(val) + 1e-6
    assert float(val) <= 2 * lb + 1e-6


def test_closure_2d_exact_on_sp_and_plain():
    rng = random.Random(10)
    for _ in range(100):
        inst = weighted(rng, n=rng.randint(1, 7), sp_prec=rng.random() < 0.7)
        kind, tree = sp_decompose(inst.job_ids(), inst.prec)
        linext = tree.leaves()
        seq, val = closure_2d_exact(inst, linext)
        opt, _ = brute_exact(inst, "SumWC")
        assert val == opt
        if not inst.prec:
            seq2, val2 = order_sequence(inst, PreferenceOrder("wspt"))
            assert val == val2


def test_closure_2d_rejects_separating_extension():
    inst = Instance(env="single", jobs=[Job(1, p=1, w=1), Job(2, p=1, w=1),
                                        Job(3, p=1, w=1)],
                    prec=[(1, 2)]).validate()
    with pytest.raises(LinextError) as err:
        closure_2d_exact(inst, [1, 3, 2])
    assert err.value.witness == (1, 2, 3)


def test_lagrangian_bound_validity():
    rng = random.Random(11)
    for _ in range(80):
        inst = weighted(rng, n=rng.randint(1, 6), prec_p=0.3)
        opt, _ = brute_exact(inst, "SumWC")
        best, trace = lagrangian_bound(inst, iters=40)
        assert best <= opt
        assert all(t <= opt for t in trace)
        if not inst.prec:
            assert best == opt


def test_lagrangian_fix_lp3():
    fx = fixtures.get("FIX-LP3")
    best, trace = lagrangian_bound(fx.instance, iters=100)
    assert best <= 5
    assert best >= trace[0]


def test_srpt_and_ratio_rules():
    rng = random.Random(12)
    for _ in range(80):
        n = rng.randint(1, 5)
        inst = helpers.single(rng, n=n, pmax=4, rmax=6, pmtn=True)
        sch, val = pmtn_exact(inst, "srpt")
        assert validate_schedule(inst, sch).ok
        assert val == pmtn_grid_exact(inst, "SumC")
        # preemptions only at releases
        releases = {Fraction(j.r) for j in inst.jobs}
        for jid in sch.jobs():
            pieces = sch.pieces_of(jid)
            for a, b in zip(pieces, pieces[1:]):
                if b.start > a.end:
                    assert b.start in releases or a.end in releases


def test_srpt_example():
    inst = Instance(env="single", pmtn=True,
                    jobs=[Job(1, p=3, r=0), Job(2, p=1, r=1)]).validate()
    sch, val = pmtn_exact(inst, "srpt")
    assert val == 6 and sch.completion(2) == 2


def test_ratio_mbt_equal_ratios_work_conserving():
    inst = Instance(env="single", pmtn=True,
                    jobs=[Job(1, p=2, w=2, r=0), Job(2, p=3, w=3, r=1)]).validate()
    sch, val = pmtn_exact(inst, "ratio_mbt")
    # any work-conserving schedule has the same weighted mean busy time
    alt = Schedule([(1, 1, 0, 2), (2, 1, 2, 5)])
    from schedkit.core import evaluate
    assert val == evaluate(inst, alt, "SumWM")


def test_parallel_inequalities_and_separation():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(1, 6)
        inst = helpers.single(rng, n=n)
        seq = inst.job_ids()
        rng.shuffle(seq)
        sch = sequence_schedule(inst, seq)
        M = {j.id: sch.completion(j.id) - Fraction(inst.job(j.id).p, 2)
             for j in inst.jobs}
        p = {j.id: j.p for j in inst.jobs}
        ids = inst.job_ids()
        for r in range(1, n + 1):
            for A in combinations(ids, r):
                pa = sum(p[j] for j in A)
                assert sum(p[j] * M[j] for j in A) >= Fraction(pa * pa, 2)
        # most-violated-set search over prefixes finds violations iff any exist
        M2 = dict(M)
        victim = rng.choice(ids)
        M2[victim] -= Fraction(rng.randint(0, 3))
        order = sorted(ids, key=lambda j: (M2[j], j))
        prefix_viol = any(
            sum(p[j] * M2[j] for j in order[:k]) <
            Fraction(sum(p[j] for j in order[:k]) ** 2, 2)
            for k in range(1, n + 1))
        full_viol = any(
            sum(p[j] * M2[j] for j in A) < Fraction(sum(p[j] for j in A) ** 2, 2)
            for r in range(1, n + 1) for A in combinations(ids, r))
        assert prefix_viol == full_viol


def test_wc_minus_wm_constant():
    rng = random.Random(14)
    for _ in range(30):
        inst = helpers.single(rng, wmax=4)
        seq = inst.job_ids()
        rng.shuffle(seq)
        sch = sequence_schedule(inst, seq)
        from schedkit.core import evaluate
        diff = evaluate(inst, sch, "SumWC") - evaluate(inst, sch, "SumWM")
        assert diff == sum(Fraction(j.w * j.p, 2) for j in inst.jobs)


def test_reversal_duality():
    rng = random.Random(15)
    for _ in range(50):
        inst = weighted(rng, n=rng.randint(1, 6), prec_p=0.3)
        if any(j.w == 0 for j in inst.jobs):
            continue
        rev = Instance(env="single",
                       jobs=[Job(j.id, p=j.w, w=j.p) for j in inst.jobs],
                       prec=[(b, a) for (a, b) in inst.prec]).validate()
        a, _ = brute_exact(inst, "SumWC")
        b, _ = brute_exact(rev, "SumWC")
        assert a == b


def test_release_modes_ratios():
    rng = random.Random(16)
    e_ratio = Fraction(math.e / (math.e - 1)).limit_denominator(10 ** 9)
    for _ in range(80):
        n = rng.randint(1, 6)
        inst = helpers.single(rng, n=n, pmax=4, rmax=7)
        opt, _ = brute_exact(inst, "SumC")
        sch, val, lb = release_approx(inst, "srpt_order")
        assert val <= 2 * opt and lb <= opt
        assert validate_schedule(inst, sch).ok
        sch, val, lb = release_approx(inst, "srpt_online")
        assert val <= 2 * lb
        sch, val, lb = release_approx(inst, "alpha_best")
        assert val <= e_ratio * lb
        sch, val, lb = release_approx(inst, "delayed_ratio")
        assert val <= 2 * opt


def test_release_no_releases_exact():
    rng = random.Random(17)
    for _ in range(20):
        inst = helpers.single(rng)
        opt, _ = brute_exact(inst, "SumC")
        for mode in ("srpt_order", "alpha_best"):
            _, val, *_ = release_approx(inst, mode)
            assert val == opt
        # the delayed rule idles until t >= p of the best job by definition,
        # so at equal releases it stays within its factor-2 contract only
        _, val, _ = release_approx(inst, "delayed_ratio")
        assert val <= 2 * opt


def test_randomized_modes_seeded():
    rng = random.Random(18)
    inst = helpers.single(rng, n=5, rmax=6)
    out1 = release_approx(inst, "alpha_random", trials=50, seed=7)
    out2 = release_approx(inst, "alpha_random", trials=50, seed=7)
    assert out1[3]["values"] == out2[3]["values"]
    instw = Instance(env="single", jobs=[Job(i, p=i, w=3 - i % 2, r=i)
                                         for i in (1, 2, 3)]).validate()
    a = release_approx(instw, "alphaj_random", trials=30, seed=3)
    b = release_approx(instw, "alphaj_random", trials=30, seed=3)
    assert a[3]["values"] == b[3]["values"]
