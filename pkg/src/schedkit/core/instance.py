"""Problem model: machine environments, jobs, precedence, shop routings, file I/O."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


ENVS = ("single", "identicalP", "uniformQ", "unrelatedR", "openO", "flowF", "jobJ")
SHOP_ENVS = ("openO", "flowF", "jobJ")


class InstanceError(ValueError):
    """Semantic error in instance data (cycle, negative value, routing mismatch)."""


class ParseError(ValueError):
    """Syntax error in an instance or schedule file; carries a line number."""

    def __init__(self, lineno, message):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


@dataclass
class Job:
    id: int
    p: int = 0                # processing requirement
    w: int = 1                # weight
    r: int = 0                # release date
    d: int | None = None      # due date (soft; may be negative in head-body-tail form)
    dl: int | None = None     # deadline (hard)
    q: int | None = None      # delivery time; q = -d convention

    def validate(self):
        if self.p < 0:
            raise InstanceError("job %s: negative processing time" % self.id)
        if self.w < 0:
            raise InstanceError("job %s: negative weight" % self.id)
        if self.r < 0:
            raise InstanceError("job %s: negative release date" % self.id)
        if self.q is not None:
            if self.q < 0:
                raise InstanceError("job %s: negative delivery time" % self.id)
            if self.d is not None and self.q != -self.d:
                raise InstanceError("job %s: q and d present but q != -d" % self.id)


@dataclass
class Instance:
    env: str = "single"
    m: int = 1
    speeds: list = field(default_factory=list)        # uniformQ: nonincreasing, positive
    ptable: list = field(default_factory=list)        # unrelatedR: m rows of n entries
    jobs: list = field(default_factory=list)          # list of Job
    prec: list = field(default_factory=list)          # arc list (j, k): j before k
    routings: dict = field(default_factory=dict)      # job id -> [(machine, length), ...]
    pmtn: bool = False
    name: str = "instance"
    classifier: str = ""                              # the alpha|beta|gamma string, if given

    # -- accessors -------------------------------------------------------

    @property
    def n(self):
        return len(self.jobs)

    def job(self, jid):
        return self._by_id[jid]

    def job_ids(self):
        return [j.id for j in self.jobs]

    def routing(self, jid):
        return self.routings.get(jid, [])

    def op_length(self, jid, machine):
        """Total processing required for job jid on a machine (shop environments)."""
        return sum(p for (i, p) in self.routing(jid) if i == machine)

    def successors(self, jid):
        return [k for (j, k) in self.prec if j == jid]

    def predecessors(self, jid):
        return [j for (j, k) in self.prec if k == jid]

    def total_p(self):
        return sum(j.p for j in self.jobs)

    # -- validation ------------------------------------------------------

    def validate(self):
        if self.env not in ENVS:
            raise InstanceError("unknown environment %r" % self.env)
        if self.m < 1:
            raise InstanceError("machine count must be positive")
        if self.env == "single" and self.m != 1:
            raise InstanceError("single-machine instance with m != 1")
        seen = set()
        for j in self.jobs:
            if j.id in seen:
                raise InstanceError("duplicate job id %s" % j.id)
            seen.add(j.id)
            j.validate()
        self._by_id = {j.id: j for j in self.jobs}
        if self.env == "uniformQ":
            if len(self.speeds) != self.m:
                raise InstanceError("uniformQ needs %d speeds" % self.m)
            if any(s <= 0 for s in self.speeds):
                raise InstanceError("speeds must be positive")
            self.speeds = sorted(self.speeds, reverse=True)
        if self.env == "unrelatedR":
            if len(self.ptable) != self.m:
                raise InstanceError("unrelatedR table needs %d rows" % self.m)
            for row in self.ptable:
                if len(row) != self.n:
                    raise InstanceError("unrelatedR row length != job count")
                for v in row:
                    if v is not None and v < 0:
                        raise InstanceError("negative processing time in table")
        for (j, k) in self.prec:
            if j not in seen or k not in seen:
                raise InstanceError("precedence arc over unknown job (%s, %s)" % (j, k))
        self._check_acyclic()
        if self.env in SHOP_ENVS:
            self._check_routings()
        return self

    def _check_acyclic(self):
        order = self.topological_order()
        if order is None:
            raise InstanceError("precedence digraph has a cycle")

    def topological_order(self):
        ids = self.job_ids()
        indeg = {j: 0 for j in ids}
        succ = {j: [] for j in ids}
        for (j, k) in self.prec:
            indeg[k] += 1
            succ[j].append(k)
        ready = sorted(j for j in ids if indeg[j] == 0)
        order = []
        while ready:
            j = ready.pop(0)
            order.append(j)
            for k in succ[j]:
                indeg[k] -= 1
                if indeg[k] == 0:
                    ready.append(k)
            ready.sort()
        return order if len(order) == len(ids) else None

    def _check_routings(self):
        for j in self.jobs:
            route = self.routing(j.id)
            if not route:
                raise InstanceError("job %s has no routing in shop environment" % j.id)
            for (i, p) in route:
                if not (1 <= i <= self.m):
                    raise InstanceError("job %s routed to unknown machine %s" % (j.id, i))
                if p < 0:
                    raise InstanceError("job %s has a negative operation" % j.id)
            if self.env == "flowF":
                if [i for (i, _) in route] != list(range(1, self.m + 1)):
                    raise InstanceError("flow-shop job %s must visit machines 1..m in order" % j.id)
            if self.env == "openO":
                if sorted(i for (i, _) in route) != list(range(1, self.m + 1)):
                    raise InstanceError("open-shop job %s needs exactly one operation per machine" % j.id)

    # -- derived quantities ----------------------------------------------

    def shop_bounds(self):
        """Machine loads, job lengths and the beta lower bound for shop instances."""
        loads = {i: 0 for i in range(1, self.m + 1)}
        jlen = {}
        omax = 0
        for j in self.jobs:
            tot = 0
            for (i, p) in self.routing(j.id):
                loads[i] += p
                tot += p
                omax = max(omax, p)
            jlen[j.id] = tot
        lmax = max(loads.values()) if loads else 0
        pmax = max(jlen.values()) if jlen else 0
        return {
            "loads": loads,
            "L_max": lmax,
            "lengths": jlen,
            "p_max": pmax,
            "o_max": omax,
            "beta": max(lmax, pmax),
        }


# -- file format -----------------------------------------------------------


def _parse_rational(tok):
    if "/" in tok:
        a, b = tok.split("/", 1)
        return Fraction(int(a), int(b))
    return Fraction(int(tok))


_ENV_BY_ALPHA = {
    "1": "single", "P": "identicalP", "Q": "uniformQ", "R": "unrelatedR",
    "O": "openO", "F": "flowF", "J": "jobJ",
}


def parse_instance(text, name="instance"):
    """Parse the line-oriented instance format into a validated Instance."""
    inst = Instance(name=name)
    jobs = {}
    job_order = []
    prec = []
    routings = {}
    table_rows_expected = 0
    table = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        key = toks[0]
        if table_rows_expected > 0 and key not in ("problem", "machines", "unrelated",
                                                   "job", "prec", "op"):
            try:
                row = [int(t) for t in toks]
            except ValueError:
                raise ParseError(lineno, "expected a row of integers in unrelated table")
            table.append(row)
            table_rows_expected -= 1
            continue
        if key == "problem":
            if len(toks) < 2:
                raise ParseError(lineno, "problem line needs a classifier")
            inst.classifier = toks[1]
            fields = toks[1].split("|")
            alpha = fields[0]
            env_letter = alpha[0] if alpha else "1"
            if env_letter not in _ENV_BY_ALPHA:
                raise ParseError(lineno, "unknown machine environment %r" % alpha)
            inst.env = _ENV_BY_ALPHA[env_letter]
            if len(alpha) > 1:
                try:
                    inst.m = int(alpha[1:])
                except ValueError:
                    raise ParseError(lineno, "bad machine count in %r" % alpha)
            beta = fields[1] if len(fields) > 1 else ""
            if "pmtn" in beta:
                inst.pmtn = True
        elif key == "machines":
            if len(toks) < 2:
                raise ParseError(lineno, "machines line needs a count")
            try:
                inst.m = int(toks[1])
            except ValueError:
                raise ParseError(lineno, "bad machine count")
            rest = toks[2:]
            if rest:
                if rest[0] != "speeds":
                    raise ParseError(lineno, "expected 'speeds' after machine count")
                try:
                    inst.speeds = [int(t) for t in rest[1:]]
                except ValueError:
                    raise ParseError(lineno, "bad speed value")
        elif key == "unrelated":
            table_rows_expected = inst.m
        elif key == "job":
            if len(toks) < 2:
                raise ParseError(lineno, "job line needs an id")
            try:
                jid = int(toks[1])
            except ValueError:
                raise ParseError(lineno, "bad job id %r" % toks[1])
            job = Job(id=jid)
            got_p = False
            for t in toks[2:]:
                if "=" not in t:
                    raise ParseError(lineno, "bad job attribute %r" % t)
                k, v = t.split("=", 1)
                if k not in ("p", "w", "r", "d", "dl", "q"):
                    raise ParseError(lineno, "unknown job attribute %r" % k)
                try:
                    iv = int(v)
                except ValueError:
                    raise ParseError(lineno, "bad integer %r" % v)
                setattr(job, k, iv)
                if k == "p":
                    got_p = True
            if not got_p and inst.env not in SHOP_ENVS and inst.env != "unrelatedR":
                raise ParseError(lineno, "job %d missing p=" % jid)
            jobs[jid] = job
            job_order.append(jid)
        elif key == "prec":
            if len(toks) != 3:
                raise ParseError(lineno, "prec line needs two job ids")
            try:
                j, k = int(toks[1]), int(toks[2])
            except ValueError:
                raise ParseError(lineno, "bad job id in prec line")
            if j == k:
                raise ParseError(lineno, "self-loop in precedence: %d -> %d" % (j, k))
            prec.append((j, k))
        elif key == "op":
            if len(toks) != 4:
                raise ParseError(lineno, "op line needs job, machine, length")
            try:
                j, i, p = int(toks[1]), int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError(lineno, "bad integer in op line")
            routings.setdefault(j, []).append((i, p))
            if j not in jobs:
                jobs[j] = Job(id=j)
                job_order.append(j)
        else:
            raise ParseError(lineno, "unknown key %r" % key)
    if table_rows_expected > 0:
        raise ParseError(len(lines), "unrelated table is missing rows")
    if table and not jobs:
        for jid in range(1, len(table[0]) + 1):
            jobs[jid] = Job(id=jid)
            job_order.append(jid)
    inst.jobs = [jobs[j] for j in job_order]
    inst.prec = prec
    inst.routings = routings
    inst.ptable = table
    for j in inst.jobs:
        route = routings.get(j.id)
        if route and j.p == 0:
            j.p = sum(p for (_, p) in route)
    return inst.validate()


def serialize_instance(inst):
    """Inverse of parse_instance; parse(serialize(x)) reproduces x bit-exactly."""
    out = []
    alpha = {v: k for k, v in _ENV_BY_ALPHA.items()}[inst.env]
    if inst.classifier:
        out.append("problem %s" % inst.classifier)
    else:
        beta = "pmtn" if inst.pmtn else ""
        out.append("problem %s|%s|" % (alpha, beta))
    if inst.speeds:
        out.append("machines %d speeds %s" % (inst.m, " ".join(str(s) for s in inst.speeds)))
    else:
        out.append("machines %d" % inst.m)
    if inst.ptable:
        out.append("unrelated")
        for row in inst.ptable:
            out.append(" ".join(str(v) for v in row))
    for j in inst.jobs:
        parts = ["job %d" % j.id, "p=%d" % j.p]
        if j.w != 1:
            parts.append("w=%d" % j.w)
        if j.r != 0:
            parts.append("r=%d" % j.r)
        if j.d is not None:
            parts.append("d=%d" % j.d)
        if j.dl is not None:
            parts.append("dl=%d" % j.dl)
        if j.q is not None:
            parts.append("q=%d" % j.q)
        out.append(" ".join(parts))
    for (j, k) in inst.prec:
        out.append("prec %d %d" % (j, k))
    for j in inst.jobs:
        for (i, p) in inst.routing(j.id):
            out.append("op %d %d %d" % (j.id, i, p))
    return "\n".join(out) + "\n"
