import math
import random
from fractions import Fraction

import pytest

from schedkit.core import Instance, Job, fixtures, validate_schedule
from schedkit.par_minmax import (list_family, multifit, bisection_decide, r_approx,
                                 rm_fptas, lpt_experiment, ffd_pack, decide_dk)
from schedkit.oracle import brute_exact

import helpers


def test_fix_ls_adversarial():
    for m in (2, 3, 4, 5):
        fx = fixtures.get("FIX-LS", m)
        sch, cmax, rho = list_family(fx.instance, "ls",
                                     job_list=fx.value("adversarial_list"))
        assert cmax == 2 * m - 1
        assert validate_schedule(fx.instance, sch).ok
        opt, _ = brute_exact(fx.instance, "Cmax")
        assert opt == m


def test_fix_lpt2():
    fx = fixtures.get("FIX-LPT2")
    _, cmax, rho = list_family(fx.instance, "lpt")
    assert cmax == 7
    opt, _ = brute_exact(fx.instance, "Cmax")
    assert opt == 6
    assert Fraction(cmax, opt) == rho       # tight
    _, mf = multifit(fx.instance)
    assert mf == 6
    _, dc, _ = list_family(fx.instance, "differencing2")
    assert dc <= 7 and dc <= Fraction(7, 6) * opt


def test_identical_families_vs_oracle():
    rng = random.Random(1)
    for _ in range(100):
        inst = helpers.parallel(rng, env="identicalP", n=rng.randint(1, 10),
                                m=rng.randint(1, 4), pmax=9)
        opt, _ = brute_exact(inst, "Cmax")
        _, c1, r1 = list_family(inst, "ls")
        _, c2, r2 = list_family(inst, "lpt")
        _, c3 = multifit(inst, iters=20)
        assert c1 <= r1 * opt
        assert c2 <= r2 * opt
        assert c3 <= (Fraction(13, 11) + Fraction(1, 2 ** 20)) * opt
        if inst.m == 2:
            _, c4, _ = list_family(inst, "differencing2")
            assert c4 <= Fraction(7, 6) * opt


def test_multifit_unit_jobs():
    inst = Instance(env="identicalP", m=3,
                    jobs=[Job(i + 1, p=1) for i in range(9)]).validate()
    _, c = multifit(inst)
    assert c == 3


def test_dk_structure_and_bound():
    rng = random.Random(2)
    for _ in range(60):
        inst = helpers.parallel(rng, env="identicalP", n=rng.randint(1, 9),
                                m=rng.randint(1, 3), pmax=9)
        opt, _ = brute_exact(inst, "Cmax")
        for k in (2, 3):
            sch, cmax, rho, transcript = bisection_decide(inst, "dk", k)
            assert cmax <= (1 + Fraction(1, k)) * opt
            assert validate_schedule(inst, sch).ok
            # relaxed-decision contract: every 'no' is a correct 'no'
            for (d, ok) in transcript:
                if not ok:
                    assert d < opt
            # a produced schedule at the final d stays within rho * d
            sch_d = decide_dk(inst, int(opt), k)
            if sch_d is not None:
                assert sch_d.makespan() <= (1 + Fraction(1, k)) * opt
            # rounded instance structure: at most k-1 long jobs per machine
            if sch_d is not None:
                unit = Fraction(int(opt), k * k)
                for i in range(1, inst.m + 1):
                    longs = [p for p in sch_d.machine_pieces(i)
                             if inst.job(p.job).p > Fraction(int(opt), k)]
                    assert len(longs) <= k - 1


def test_uniform_rules_vs_oracle():
    rng = random.Random(3)
    for _ in range(80):
        inst = helpers.parallel(rng, env="uniformQ", n=rng.randint(1, 7),
                                m=rng.randint(1, 3), pmax=9)
        opt, _ = brute_exact(inst, "Cmax")
        _, c1, r1 = list_family(inst, "lpt_prime")
        assert c1 <= r1 * opt
        sch, c2, rho, _ = bisection_decide(inst, "q_recurse")
        assert c2 <= Fraction(3, 2) * opt
        assert validate_schedule(inst, sch).ok
        # uniform list scheduling bound
        _, c3, _ = list_family(inst, "ls")
        sp = sorted(inst.speeds, reverse=True)
        assert c3 <= (1 + Fraction(sp[0], sp[-1]) - Fraction(sp[0], sum(sp))) * opt


def test_unrelated_modes():
    rng = random.Random(4)
    for _ in range(60):
        inst = helpers.unrelated(rng, n=rng.randint(1, 6), m=rng.randint(1, 3))
        opt, _ = brute_exact(inst, "Cmax")
        m = inst.m
        _, cg, lbg = r_approx(inst, "greedy")
        assert cg <= m * opt and lbg <= opt
        _, crs, _ = r_approx(inst, "rs")
        assert float(crs) <= (2.5 * math.sqrt(m) + 1 + 1 / (2 * math.sqrt(m))) \
            * float(opt) + 1e-9
        _, c5, lb5 = r_approx(inst, "lp_m")
        assert c5 <= 2 * opt and lb5 <= float(opt) + 1e-6
        sch6, c6, lb6 = r_approx(inst, "lp_prime")
        assert c6 <= 2 * opt and lb6 <= opt
        assert validate_schedule(inst, sch6).ok
        sch7, c7 = rm_fptas(inst, Fraction(1, 3))
        assert c7 <= Fraction(4, 3) * opt
        assert validate_schedule(inst, sch7).ok


def test_greedy_two_machine_trivial():
    big = 100
    inst = Instance(env="unrelatedR", m=2, ptable=[[1, big], [big, 1]],
                    jobs=[Job(1, p=0), Job(2, p=0)]).validate()
    _, cg, _ = r_approx(inst, "greedy")
    _, cl, _ = r_approx(inst, "lp_prime")
    assert cg == 1 and cl == 1


def test_greedy_tightness_family():
    # all jobs fastest on machine 1: greedy piles them up
    for m in (2, 3):
        n = 3 * m
        tbl = [[1] * n] + [[2] * n for _ in range(m - 1)]
        inst = Instance(env="unrelatedR", m=m, ptable=tbl,
                        jobs=[Job(i + 1, p=0) for i in range(n)]).validate()
        _, cg, _ = r_approx(inst, "greedy")
        assert cg == n


def test_rm_fptas_single_job():
    inst = Instance(env="unrelatedR", m=3, ptable=[[4], [2], [7]],
                    jobs=[Job(1, p=0)]).validate()
    _, c = rm_fptas(inst, Fraction(1, 2))
    assert c == 2


def test_rm_fptas_identical_rows():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 6)
        m = rng.randint(1, 3)
        row = [rng.randint(1, 6) for _ in range(n)]
        inst = Instance(env="unrelatedR", m=m, ptable=[list(row) for _ in range(m)],
                        jobs=[Job(i + 1, p=0) for i in range(n)]).validate()
        instP = Instance(env="identicalP", m=m,
                         jobs=[Job(i + 1, p=row[i]) for i in range(n)]).validate()
        opt, _ = brute_exact(instP, "Cmax")
        _, c = rm_fptas(inst, Fraction(1, 4))
        assert c <= Fraction(5, 4) * opt


def test_ffd_deterministic():
    sizes = [(5, 1), (5, 2), (3, 3), (2, 4)]
    assert ffd_pack(sizes, 7) == ffd_pack(sizes, 7)
    assert ffd_pack(sizes, 7) == [[1, 4], [2], [3]]
    assert ffd_pack(sizes, 8) == [[1, 3], [2, 4]]


def test_lpt_experiment_monotone_and_reproducible():
    rows = lpt_experiment(2, [10, 100, 1000], 50, seed=9)
    gaps = [r[2] for r in rows]
    assert gaps[0] > gaps[1] > gaps[2]
    assert rows == lpt_experiment(2, [10, 100, 1000], 50, seed=9)


def test_lpt_experiment_n_equals_m():
    rows = lpt_experiment(3, [3], 20, seed=1)
    assert rows[0][2] >= 0


def test_bisection_ffd_mode():
    rng = random.Random(31)
    for _ in range(60):
        inst = helpers.parallel(rng, env="identicalP", n=rng.randint(1, 9),
                                m=rng.randint(1, 4), pmax=9)
        opt, _ = brute_exact(inst, "Cmax")
        sch, cmax, rho, transcript = bisection_decide(inst, "ffd")
        assert validate_schedule(inst, sch).ok
        assert cmax <= (Fraction(13, 11) + Fraction(1, 2 ** 20)) * opt
        for (d, okflag) in transcript:
            if not okflag:
                assert d < opt      # FFD 'no' answers never cut off the optimum
