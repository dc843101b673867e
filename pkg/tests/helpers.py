"""Shared random-instance generators for the test suites."""

import random

from schedkit.core import Instance, Job


def single(rng, n=None, pmax=5, rmax=0, dmax=None, wmax=None, prec_p=0.0,
           pmtn=False, qmax=None, dlmax=None):
    n = n or rng.randint(1, 6)
    jobs = []
    for i in range(1, n + 1):
        jobs.append(Job(
            id=i, p=rng.randint(1, pmax),
            r=rng.randint(0, rmax) if rmax else 0,
            d=rng.randint(0, dmax) if dmax is not None else None,
            w=rng.randint(1, wmax) if wmax else 1,
            q=rng.randint(0, qmax) if qmax is not None else None,
            dl=rng.randint(1, dlmax) if dlmax is not None else None,
        ))
    prec = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < prec_p:
                prec.append((a, b))
    return Instance(env="single", jobs=jobs, prec=prec, pmtn=pmtn).validate()


def parallel(rng, env="identicalP", n=None, m=None, pmax=6, pmtn=False,
             rmax=0, dmax=None, dlmax=None, smax=3):
    n = n or rng.randint(1, 6)
    m = m or rng.randint(1, 3)
    speeds = sorted((rng.randint(1, smax) for _ in range(m)), reverse=True) \
        if env == "uniformQ" else []
    jobs = [Job(id=i, p=rng.randint(1, pmax),
                r=rng.randint(0, rmax) if rmax else 0,
                d=rng.randint(0, dmax) if dmax is not None else None,
                dl=rng.randint(1, dlmax) if dlmax is not None else None)
            for i in range(1, n + 1)]
    return Instance(env=env, m=m, speeds=speeds, jobs=jobs, pmtn=pmtn).validate()


def unrelated(rng, n=None, m=None, pmax=6, pmtn=False, dmax=None):
    n = n or rng.randint(1, 5)
    m = m or rng.randint(1, 3)
    tbl = [[rng.randint(1, pmax) for _ in range(n)] for _ in range(m)]
    jobs = [Job(id=i, p=0, d=rng.randint(1, dmax) if dmax else None)
            for i in range(1, n + 1)]
    return Instance(env="unrelatedR", m=m, ptable=tbl, jobs=jobs, pmtn=pmtn).validate()


def open_shop(rng, n=None, m=2, pmax=6):
    n = n or rng.randint(1, 6)
    routings = {}
    jobs = []
    for j in range(1, n + 1):
        ops = [(i, rng.randint(0, pmax)) for i in range(1, m + 1)]
        routings[j] = ops
        jobs.append(Job(id=j, p=sum(p for (_, p) in ops)))
    return Instance(env="openO", m=m, jobs=jobs, routings=routings).validate()


def flow_shop(rng, n=None, m=2, pmax=6):
    n = n or rng.randint(1, 6)
    routings = {}
    jobs = []
    for j in range(1, n + 1):
        ops = [(i, rng.randint(0, pmax)) for i in range(1, m + 1)]
        routings[j] = ops
        jobs.append(Job(id=j, p=sum(p for (_, p) in ops)))
    return Instance(env="flowF", m=m, jobs=jobs, routings=routings).validate()


def job_shop(rng, n=None, m=None, pmax=5, mu=None):
    n = n or rng.randint(2, 4)
    m = m or rng.randint(2, 3)
    routings = {}
    jobs = []
    for j in range(1, n + 1):
        k = mu or rng.randint(1, m)
        machines = rng.sample(range(1, m + 1), k)
        ops = [(i, rng.randint(1, pmax)) for i in machines]
        routings[j] = ops
        jobs.append(Job(id=j, p=sum(p for (_, p) in ops)))
    return Instance(env="jobJ", m=m, jobs=jobs, routings=routings).validate()


def sp_precedence(rng, n):
    """Random series-parallel precedence arcs over ids 1..n."""
    ids = list(range(1, n + 1))
    rng.shuffle(ids)

    def build(lst):
        if len(lst) == 1:
            return [], lst
        k = rng.randint(1, len(lst) - 1)
        a1, left = build(lst[:k])
        a2, right = build(lst[k:])
        arcs = a1 + a2
        if rng.random() < 0.5:
            arcs += [(a, b) for a in left for b in right]
        return arcs, left + right

    return build(ids)[0]
