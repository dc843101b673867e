"""Named fixture corpus shared by all tests.

Every stored value carries a provenance tag: PAPER (printed in the source
text), TRIVIAL (immediate), or DERIVED (computed by an independent oracle).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .instance import Instance, Job

PAPER = "PAPER"
TRIVIAL = "TRIVIAL"
DERIVED = "DERIVED"


@dataclass
class Fixture:
    name: str
    instance: Instance
    known: dict = field(default_factory=dict)   # key -> (value, tag)
    time_unit: Fraction = Fraction(1)           # original time units per stored integer unit

    def value(self, key):
        return self.known[key][0]

    def tag(self, key):
        return self.known[key][1]


def _jobs(ps, ws=None, rs=None, ds=None, dls=None, qs=None):
    out = []
    for idx, p in enumerate(ps):
        out.append(Job(
            id=idx + 1, p=p,
            w=ws[idx] if ws else 1,
            r=rs[idx] if rs else 0,
            d=ds[idx] if ds else None,
            dl=dls[idx] if dls else None,
            q=qs[idx] if qs else None,
        ))
    return out


def fix_mcn():
    inst = Instance(env="identicalP", m=4, pmtn=True,
                    jobs=_jobs([5, 8, 6, 2, 3, 1, 3, 4]), name="FIX-MCN").validate()
    return Fixture("FIX-MCN", inst, {"Cmax_pmtn": (Fraction(8), PAPER)})


def fix_gs():
    inst = Instance(env="uniformQ", m=4, speeds=[10, 8, 4, 1], pmtn=True,
                    jobs=_jobs([28, 26, 16, 12, 10]), name="FIX-GS").validate()
    return Fixture("FIX-GS", inst, {"Cmax_pmtn": (Fraction(4), PAPER)})


def fix_mh():
    inst = Instance(env="single", jobs=_jobs([2, 1, 5, 4, 3], ws=[4, 5, 1, 2, 3],
                                             ds=[100] * 5), name="FIX-MH").validate()
    pairs = [(0, 0), (5, 1), (9, 3), (12, 6), (14, 10), (15, 15)]
    return Fixture("FIX-MH", inst, {"wu_pairs": (pairs, PAPER)})


def fix_sim():
    inst = Instance(env="single", jobs=_jobs([3, 7, 5, 3, 3], rs=[1, 2, 3, 5, 6],
                                             ds=[100] * 5), name="FIX-SIM").validate()
    pairs = [(0, 0), (1, 4), (2, 8), (3, 11), (4, 15), (5, 22)]
    return Fixture("FIX-SIM", inst, {"cardinality_pairs": (pairs, PAPER)})


def fix_el():
    inst = Instance(env="single",
                    jobs=_jobs([3] * 6, rs=[0, 1, 2, 6, 13, 15],
                               dls=[12, 22, 5, 10, 20, 19]), name="FIX-EL").validate()
    return Fixture("FIX-EL", inst, {"feasible": (True, DERIVED)})


def fix_horse():
    routings = {}
    jobs = []
    for j in range(1, 8):
        jobs.append(Job(id=j, p=20))
        routings[j] = [(i, 5) for i in range(1, 5)]
    inst = Instance(env="openO", m=4, jobs=jobs, routings=routings, pmtn=True,
                    name="FIX-HORSE").validate()
    return Fixture("FIX-HORSE", inst, {"Cmax_pmtn": (Fraction(35), PAPER),
                                       "Cmax": (Fraction(35), PAPER)})


def fix_ls(m):
    n = m * (m - 1) + 1
    ps = [1] * (n - 1) + [m]
    inst = Instance(env="identicalP", m=m, jobs=_jobs(ps), name="FIX-LS(%d)" % m).validate()
    return Fixture(inst.name, inst, {
        "Cmax_opt": (Fraction(m), PAPER),
        "Cmax_ls_adversarial": (Fraction(2 * m - 1), PAPER),
        "adversarial_list": (list(range(1, n + 1)), PAPER),
    })


def fix_lpt2():
    inst = Instance(env="identicalP", m=2, jobs=_jobs([3, 3, 2, 2, 2]),
                    name="FIX-LPT2").validate()
    return Fixture("FIX-LPT2", inst, {"Cmax_opt": (Fraction(6), DERIVED),
                                      "Cmax_lpt": (Fraction(7), DERIVED)})


def fix_og(m):
    jobs = []
    routings = {}
    jid = 0
    for i in range(1, m + 1):
        for _ in range(m - 1):
            jid += 1
            jobs.append(Job(id=jid, p=1))
            routings[jid] = [(h, 1 if h == i else 0) for h in range(1, m + 1)]
    jid += 1
    jobs.append(Job(id=jid, p=m))
    routings[jid] = [(h, 1) for h in range(1, m + 1)]
    inst = Instance(env="openO", m=m, jobs=jobs, routings=routings,
                    name="FIX-OG(%d)" % m).validate()
    return Fixture(inst.name, inst, {
        "Cmax_opt": (Fraction(m), PAPER),
        "Cmax_greedy_adversarial": (Fraction(2 * m - 1), PAPER),
    })


def fix_oh(m):
    jobs = []
    routings = {}
    for j in range(1, m + 1):
        jobs.append(Job(id=j, p=m - 1))
        routings[j] = [(h, m - 1 if h == j else 0) for h in range(1, m + 1)]
    jobs.append(Job(id=m + 1, p=m))
    routings[m + 1] = [(h, 1) for h in range(1, m + 1)]
    inst = Instance(env="openO", m=m, jobs=jobs, routings=routings,
                    name="FIX-OH(%d)" % m).validate()
    return Fixture(inst.name, inst, {
        "beta": (Fraction(m), PAPER),
        "Cmax_opt": (Fraction(-(-m // 2) + m - 1), PAPER),
    })


def fix_eta3():
    # eta(3) family at eps = 1/10, stored scaled by 10 to keep integer data
    jobs = [Job(id=1, p=30)]
    routings = {1: [(1, 10), (2, 10), (3, 10)]}
    jid = 1
    for i in range(1, 4):
        for _ in range(3):
            jid += 1
            jobs.append(Job(id=jid, p=9))
            routings[jid] = [(h, 9 if h == i else 0) for h in range(1, 4)]
    inst = Instance(env="openO", m=3, jobs=jobs, routings=routings,
                    name="FIX-ETA3").validate()
    return Fixture("FIX-ETA3", inst, {
        "beta": (Fraction(37, 10), PAPER),
        "Cmax_opt": (Fraction(39, 10), PAPER),
    }, time_unit=Fraction(1, 10))


def fix_lp3():
    inst = Instance(env="single", jobs=_jobs([1, 1, 1], ws=[0, 1, 1]),
                    prec=[(1, 2), (1, 3)], name="FIX-LP3").validate()
    return Fixture("FIX-LP3", inst, {
        "lp_vertex": ([Fraction(4, 3), Fraction(7, 3), Fraction(7, 3)], PAPER),
        "lp_value": (Fraction(14, 3), PAPER),
        "SumWC_opt": (Fraction(5), DERIVED),
    })


def fix_js():
    jobs = [Job(id=1, p=14), Job(id=2, p=19), Job(id=3, p=15)]
    routings = {
        1: [(1, 2), (2, 8), (3, 4)],
        2: [(2, 7), (1, 3), (3, 6), (4, 3)],
        3: [(1, 5), (2, 9), (4, 1)],
    }
    inst = Instance(env="jobJ", m=4, jobs=jobs, routings=routings, name="FIX-JS").validate()
    return Fixture("FIX-JS", inst, {"Cmax_opt": (Fraction(25), DERIVED)})


def fix_part():
    a = [1, 2, 3, 4]
    b = 5
    jobs = _jobs(a + [1], rs=[0] * 4 + [b], ds=[2 * b + 1] * 4 + [b + 1])
    inst = Instance(env="single", jobs=jobs, name="FIX-PART").validate()
    return Fixture("FIX-PART", inst, {"Lmax_opt": (Fraction(0), PAPER)})


_FACTORIES = {
    "FIX-MCN": fix_mcn, "FIX-GS": fix_gs, "FIX-MH": fix_mh, "FIX-SIM": fix_sim,
    "FIX-EL": fix_el, "FIX-HORSE": fix_horse, "FIX-LPT2": fix_lpt2,
    "FIX-ETA3": fix_eta3, "FIX-LP3": fix_lp3, "FIX-JS": fix_js, "FIX-PART": fix_part,
}


def get(name, param=None):
    """Fetch a fixture by name; parametric families take an integer argument."""
    if name in _FACTORIES:
        return _FACTORIES[name]()
    if name.startswith("FIX-LS"):
        return fix_ls(param if param is not None else int(name[7:-1]))
    if name.startswith("FIX-OG"):
        return fix_og(param if param is not None else int(name[7:-1]))
    if name.startswith("FIX-OH"):
        return fix_oh(param if param is not None else int(name[7:-1]))
    raise KeyError(name)


def names():
    return sorted(_FACTORIES) + ["FIX-LS(m)", "FIX-OG(m)", "FIX-OH(m)"]
