import random
from fractions import Fraction
from itertools import permutations

import pytest

from schedkit.core import Instance, Job, fixtures, validate_schedule
from schedkit.par_sum import (CoefficientStream, minsum_assign, q_pmtn_spt, qm_dp,
                              unit_matching, unit_slots)
from schedkit.oracle import brute_exact, _pmtn_q_sumc
from schedkit.kernels.assignment import min_cost_assignment

import helpers


def test_stream_identical_pattern():
    s = CoefficientStream([1, 1, 1])
    vals = [s.pop()[0] for h in range(9)]
    assert vals == [-(-h // 3) for h in range(1, 10)]


def test_stream_tie_by_machine():
    s = CoefficientStream([2, 2])
    assert [s.pop()[1] for _ in range(2)] == [1, 2]


def test_minsum_fix_mcn():
    fx = fixtures.get("FIX-MCN")
    inst = Instance(env="identicalP", m=4,
                    jobs=[Job(j.id, p=j.p) for j in fx.instance.jobs]).validate()
    sch, val = minsum_assign(inst)
    opt, _ = brute_exact(inst, "SumC")
    assert val == opt and validate_schedule(inst, sch).ok


def test_minsum_single_machine_is_spt():
    rng = random.Random(1)
    inst = helpers.parallel(rng, m=1, n=5)
    sch, val = minsum_assign(inst)
    opt, _ = brute_exact(inst, "SumC")
    assert val == opt


def test_minsum_all_envs_vs_oracle():
    rng = random.Random(2)
    for _ in range(100):
        env = rng.choice(["identicalP", "uniformQ", "unrelatedR"])
        if env == "unrelatedR":
            inst = helpers.unrelated(rng)
        else:
            inst = helpers.parallel(rng, env=env)
        sch, val = minsum_assign(inst)
        opt, _ = brute_exact(inst, "SumC")
        assert val == opt
        assert validate_schedule(inst, sch).ok


def test_minsum_weighted_identical():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 6)
        ps = sorted(rng.randint(1, 6) for _ in range(n))
        ws = sorted((rng.randint(1, 6) for _ in range(n)), reverse=True)
        inst = Instance(env="identicalP", m=rng.randint(1, 3),
                        jobs=[Job(i + 1, p=ps[i], w=ws[i]) for i in range(n)]).validate()
        sch, val = minsum_assign(inst)
        opt, _ = brute_exact(inst, "SumWC")
        assert val == opt


def test_minsum_weighted_guard():
    inst = Instance(env="identicalP", m=2, jobs=[Job(1, p=1, w=1),
                                                 Job(2, p=2, w=9)]).validate()
    with pytest.raises(ValueError):
        minsum_assign(inst)


def test_minsum_unrelated_identical_rows_reduce_to_p():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 6)
        m = rng.randint(1, 3)
        row = [rng.randint(1, 6) for _ in range(n)]
        instR = Instance(env="unrelatedR", m=m, ptable=[list(row) for _ in range(m)],
                         jobs=[Job(i + 1, p=0) for i in range(n)]).validate()
        instP = Instance(env="identicalP", m=m,
                         jobs=[Job(i + 1, p=row[i]) for i in range(n)]).validate()
        _, vR = minsum_assign(instR)
        _, vP = minsum_assign(instP)
        assert vR == vP


def test_minsum_unrelated_offsets():
    # machine availability offsets fold into the coefficients
    inst = Instance(env="unrelatedR", m=2, ptable=[[2, 2], [2, 2]],
                    jobs=[Job(1, p=0), Job(2, p=0)]).validate()
    sch, val = minsum_assign(inst, offsets=[0, 3])
    assert val == 2 + 4      # both on machine 1 beats waiting for machine 2


def test_q_pmtn_spt_identical_no_preemption():
    rng = random.Random(5)
    for _ in range(30):
        inst = helpers.parallel(rng, env="identicalP", pmtn=True)
        sch, val = q_pmtn_spt(inst)
        assert sch.preemption_count() == 0
        inst2 = Instance(env="identicalP", m=inst.m,
                         jobs=[Job(j.id, p=j.p) for j in inst.jobs]).validate()
        _, v2 = minsum_assign(inst2)
        assert val == v2


def test_q_pmtn_spt_exact_and_structure():
    rng = random.Random(6)
    for _ in range(100):
        inst = helpers.parallel(rng, env="uniformQ", n=rng.randint(1, 5),
                                m=rng.randint(1, 3), pmtn=True)
        sch, val = q_pmtn_spt(inst)
        assert validate_schedule(inst, sch).ok
        assert val == _pmtn_q_sumc(inst)
        n, m = inst.n, inst.m
        if n >= m:
            assert sch.preemption_count() <= (m - 1) * (n - Fraction(m, 2))
        # triangular capacity system holds with equality
        speeds = sorted((Fraction(s) for s in inst.speeds), reverse=True)
        while len(speeds) < n:
            speeds.append(Fraction(0))
        C = sorted(sch.completions().values())
        ps = sorted(Fraction(j.p) for j in inst.jobs)
        for k in range(1, n + 1):
            lhs = sum(speeds[k - i] * C[i - 1] for i in range(1, k + 1))
            assert lhs >= sum(ps[:k])
        nonp, _ = brute_exact(Instance(env="uniformQ", m=m, speeds=inst.speeds,
                                       jobs=[Job(j.id, p=j.p) for j in inst.jobs]
                                       ).validate(), "SumC")
        assert val <= nonp


def test_fix_gs_q_pmtn_spt():
    fx = fixtures.get("FIX-GS")
    sch, val = q_pmtn_spt(fx.instance)
    assert val == _pmtn_q_sumc(fx.instance)
    nonp, _ = brute_exact(Instance(env="uniformQ", m=4, speeds=[10, 8, 4, 1],
                                   jobs=[Job(j.id, p=j.p) for j in fx.instance.jobs]
                                   ).validate(), "SumC")
    assert val <= nonp


def test_qm_dp_objectives_vs_oracle():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 5)
        m = rng.randint(1, 2)
        tbl = [[rng.randint(1, 5) for _ in range(n)] for _ in range(m)]
        inst = Instance(env="unrelatedR", m=m, ptable=tbl,
                        jobs=[Job(i + 1, p=0, d=rng.randint(2, 12), w=rng.randint(1, 3))
                              for i in range(n)]).validate()
        for obj in ("Cmax", "Lmax", "SumWU"):
            assert qm_dp(inst, obj) == brute_exact(inst, obj)[0]
    for _ in range(40):
        inst = helpers.parallel(rng, env="identicalP", n=rng.randint(1, 5),
                                m=rng.randint(1, 2))
        for j in inst.jobs:
            j.w = rng.randint(1, 4)
        assert qm_dp(inst, "SumWC") == brute_exact(inst, "SumWC")[0]


def test_qm_dp_single_machine_smith():
    rng = random.Random(8)
    inst = helpers.parallel(rng, env="identicalP", m=1, n=5)
    for j in inst.jobs:
        j.w = rng.randint(1, 4)
    from schedkit.sm_minsum import order_sequence, PreferenceOrder
    single = Instance(env="single", jobs=[Job(j.id, p=j.p, w=j.w)
                                          for j in inst.jobs]).validate()
    _, smith = order_sequence(single, PreferenceOrder("wspt"))
    assert qm_dp(inst, "SumWC") == smith


def test_unit_matching_example():
    inst = Instance(env="uniformQ", m=2, speeds=[2, 1],
                    jobs=[Job(1, p=1, w=3), Job(2, p=1, w=2),
                          Job(3, p=1, w=1)]).validate()
    sch, val = unit_matching(inst, "SumWC")
    assert val == Fraction(9, 2)


def test_unit_matching_identical_round_robin():
    rng = random.Random(9)
    for m in (1, 2, 3):
        n = 7
        inst = Instance(env="identicalP", m=m,
                        jobs=[Job(i + 1, p=1) for i in range(n)]).validate()
        sch, val = unit_matching(inst, "SumC")
        assert val == sum(-(-h // m) for h in range(1, n + 1))


def test_unit_matching_fast_paths_vs_assignment():
    rng = random.Random(10)
    for _ in range(60):
        n = rng.randint(1, 6)
        m = rng.randint(1, 3)
        speeds = sorted((rng.randint(1, 3) for _ in range(m)), reverse=True)
        inst = Instance(env="uniformQ", m=m, speeds=speeds,
                        jobs=[Job(i + 1, p=1, w=rng.randint(1, 5),
                                  d=rng.randint(0, 4)) for i in range(n)]).validate()
        slots = unit_slots(inst)
        # SumWC fast path
        _, fast = unit_matching(inst, "SumWC")
        cost = [[inst.jobs[j].w * slots[s][0] for s in range(n)] for j in range(n)]
        _, best, _ = min_cost_assignment(cost)
        assert fast == best
        # SumU greedy
        _, u = unit_matching(inst, "SumU")
        cost = [[1 if slots[s][0] > inst.jobs[j].d else 0 for s in range(n)]
                for j in range(n)]
        _, bestu, _ = min_cost_assignment(cost)
        assert u == bestu
        # Fmax lexicographic bottleneck vs enumeration
        _, f = unit_matching(inst, "Fmax")
        bt = min(max(slots[pi[k]][0] - inst.jobs[k].d for k in range(n))
                 for pi in permutations(range(n)))
        assert f == bt
        # SumF via full assignment
        fns = {j.id: (lambda t, d=j.d: max(Fraction(0), t - d)) for j in inst.jobs}
        sch, v = unit_matching(inst, "SumF", costfns=fns)
        cost = [[fns[inst.jobs[j].id](slots[s][0]) for s in range(n)] for j in range(n)]
        _, bestf, _ = min_cost_assignment(cost)
        assert v == bestf
