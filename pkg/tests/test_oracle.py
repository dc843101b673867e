import random
from fractions import Fraction

import pytest

from schedkit.core import Instance, Job, fixtures, validate_schedule
from schedkit.oracle import (brute_exact, pmtn_grid_exact, OracleBudget,
                             OracleBudgetExceeded, UnsupportedOracle,
                             pmtn_feasible_parallel)

import helpers


def test_fixture_values():
    fx = fixtures.get("FIX-LS", 3)
    value, sch = brute_exact(fx.instance, "Cmax")
    assert value == 3 and validate_schedule(fx.instance, sch).ok
    fx = fixtures.get("FIX-JS")
    value, sch = brute_exact(fx.instance, "Cmax")
    assert value == 25 and validate_schedule(fx.instance, sch).ok


def test_mh_capacity_boundary():
    fx = fixtures.get("FIX-MH")
    for j in fx.instance.jobs:
        j.d = 15
    value, _ = brute_exact(fx.instance, "SumWU")
    assert value == 0


def test_budget_exceeded_is_explicit():
    rng = random.Random(1)
    inst = helpers.parallel(rng, n=6, m=3)
    with pytest.raises(OracleBudgetExceeded):
        brute_exact(inst, "SumC", OracleBudget(max_nodes=10))


def test_single_job_grid():
    inst = Instance(env="single", pmtn=True, jobs=[Job(1, p=4, r=2, d=3)]).validate()
    assert pmtn_grid_exact(inst, "Lmax") == 3


def test_grid_vs_brute_no_advantage_to_preemption():
    # equal releases on a single machine: preemption gains nothing
    rng = random.Random(5)
    for _ in range(40):
        inst = helpers.single(rng, n=rng.randint(1, 5), dmax=10, wmax=3)
        inst.pmtn = True
        for obj in ("SumC", "SumWC", "Lmax"):
            g = pmtn_grid_exact(inst, obj)
            b, _ = brute_exact(inst, obj)
            assert g == b


def test_parallel_enumeration_matches_bb_fast_path():
    rng = random.Random(9)
    for _ in range(30):
        inst = helpers.parallel(rng, env=rng.choice(["identicalP", "uniformQ"]),
                                n=rng.randint(1, 5), m=rng.randint(1, 2))
        fast, _ = brute_exact(inst, "Cmax")
        from schedkit.oracle import _parallel_enumerate, _Counter
        from schedkit.core.schedule import Objective
        slow, _ = _parallel_enumerate(inst, Objective("Cmax"), _Counter(None))
        assert fast == slow


def test_unsupported_combination_refused():
    rng = random.Random(11)
    inst = helpers.parallel(rng, env="uniformQ", n=3, m=2, dmax=9)
    inst.pmtn = True
    with pytest.raises(UnsupportedOracle):
        pmtn_grid_exact(inst, "SumWU")


def test_feasibility_certificates_match_sahni_cho():
    rng = random.Random(13)
    from schedkit.par_pmtn import sahni_cho
    for _ in range(60):
        inst = helpers.parallel(rng, env=rng.choice(["identicalP", "uniformQ"]),
                                n=rng.randint(1, 5), m=rng.randint(1, 3), dlmax=14)
        inst.pmtn = True
        speeds = inst.speeds or [1] * inst.m
        orc = pmtn_feasible_parallel(inst.jobs, inst.m, speeds,
                                     {j.id: j.dl for j in inst.jobs})
        sch, verdict = sahni_cho(inst)
        assert (verdict == "feasible") == orc
