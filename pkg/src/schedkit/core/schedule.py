"""Schedule model, validation and exact objective evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .instance import SHOP_ENVS, _parse_rational


@dataclass(frozen=True)
class Piece:
    job: int
    machine: int
    start: Fraction
    end: Fraction
    op: int | None = None     # operation index within the job's routing, if known


class Schedule:
    """A set of execution intervals per (job, machine)."""

    def __init__(self, pieces=()):
        self.pieces = []
        for p in pieces:
            if isinstance(p, Piece):
                self.pieces.append(p)
            else:
                self.pieces.append(Piece(p[0], p[1], Fraction(p[2]), Fraction(p[3]),
                                         p[4] if len(p) > 4 else None))

    def add(self, job, machine, start, end, op=None):
        start, end = Fraction(start), Fraction(end)
        if end > start:
            self.pieces.append(Piece(job, machine, start, end, op))

    def completion(self, job):
        return max(p.end for p in self.pieces if p.job == job)

    def start(self, job):
        return min(p.start for p in self.pieces if p.job == job)

    def completions(self):
        out = {}
        for p in self.pieces:
            out[p.job] = max(out.get(p.job, p.end), p.end)
        return out

    def makespan(self):
        return max((p.end for p in self.pieces), default=Fraction(0))

    def jobs(self):
        return sorted({p.job for p in self.pieces})

    def pieces_of(self, job):
        return sorted((p for p in self.pieces if p.job == job), key=lambda p: p.start)

    def machine_pieces(self, machine):
        return sorted((p for p in self.pieces if p.machine == machine), key=lambda p: p.start)

    def preemption_count(self, per_op=False):
        """Number of preemptions: split pieces beyond the first per job (or per op)."""
        count = 0
        groups = {}
        for p in self.pieces:
            key = (p.job, p.op) if per_op else p.job
            groups.setdefault(key, []).append(p)
        for key, ps in groups.items():
            ps.sort(key=lambda p: p.start)
            runs = 1
            for a, b in zip(ps, ps[1:]):
                if b.start > a.end or b.machine != a.machine:
                    runs += 1
            count += runs - 1
        return count

    def mean_busy_time(self, job, p_total):
        """M_j: the average time at which the machine works on the job."""
        acc = Fraction(0)
        for p in self.pieces_of(job):
            acc += (p.end * p.end - p.start * p.start) / 2
        return acc / Fraction(p_total)

    def __len__(self):
        return len(self.pieces)


# -- cost functions ----------------------------------------------------------


class PiecewiseLinear:
    """Monotone nondecreasing piecewise-linear cost function.

    Given as breakpoints [(t0, v0), (t1, v1), ...]; final_slope extends past
    the last breakpoint and initial_slope extends before the first one.
    """

    def __init__(self, breakpoints, final_slope=Fraction(0), initial_slope=Fraction(0)):
        self.breakpoints = [(Fraction(t), Fraction(v)) for (t, v) in breakpoints]
        self.final_slope = Fraction(final_slope)
        self.initial_slope = Fraction(initial_slope)
        if not self.breakpoints:
            raise ValueError("need at least one breakpoint")
        ts = [t for (t, _) in self.breakpoints]
        if ts != sorted(ts):
            raise ValueError("breakpoints must be sorted by time")
        vs = [v for (_, v) in self.breakpoints]
        if any(b < a for a, b in zip(vs, vs[1:])) or self.final_slope < 0 \
                or self.initial_slope < 0:
            raise ValueError("cost function must be nondecreasing")

    def __call__(self, t):
        t = Fraction(t)
        bps = self.breakpoints
        if t <= bps[0][0]:
            return bps[0][1] - self.initial_slope * (bps[0][0] - t)
        for (t0, v0), (t1, v1) in zip(bps, bps[1:]):
            if t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        t_last, v_last = bps[-1]
        return v_last + self.final_slope * (t - t_last)


def lateness_fn(d):
    """f(t) = t - d as a piecewise-linear function."""
    return PiecewiseLinear([(Fraction(d), Fraction(0))],
                           final_slope=Fraction(1), initial_slope=Fraction(1))


@dataclass
class Objective:
    kind: str                      # Cmax, Lmax, SumC, SumWC, SumU, SumWU, SumT, SumWT, Fmax, SumF, SumWM
    costfns: dict = field(default_factory=dict)   # job id -> PiecewiseLinear, for Fmax/SumF

    KINDS = ("Cmax", "Lmax", "SumC", "SumWC", "SumU", "SumWU",
             "SumT", "SumWT", "Fmax", "SumF", "SumWM")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError("unknown objective %r" % self.kind)


def evaluate(inst, sch, obj):
    """Exact rational objective value of a schedule."""
    if isinstance(obj, str):
        obj = Objective(obj)
    cs = sch.completions()
    for j in inst.jobs:
        if j.id not in cs:
            if (inst.env in SHOP_ENVS and sum(p for (_, p) in inst.routing(j.id)) == 0) or \
               (inst.env not in SHOP_ENVS and j.p == 0):
                cs[j.id] = Fraction(j.r)
            else:
                raise ValueError("job %s does not appear in the schedule" % j.id)
    kind = obj.kind
    if kind == "Cmax":
        return max(cs.values(), default=Fraction(0))
    if kind == "Lmax":
        return max(cs[j.id] - j.d for j in inst.jobs)
    if kind == "SumC":
        return sum(cs.values(), Fraction(0))
    if kind == "SumWC":
        return sum(j.w * cs[j.id] for j in inst.jobs)
    if kind == "SumU":
        return Fraction(sum(1 for j in inst.jobs if j.d is not None and cs[j.id] > j.d))
    if kind == "SumWU":
        return Fraction(sum(j.w for j in inst.jobs if j.d is not None and cs[j.id] > j.d))
    if kind == "SumT":
        return sum(max(Fraction(0), cs[j.id] - j.d) for j in inst.jobs)
    if kind == "SumWT":
        return sum(j.w * max(Fraction(0), cs[j.id] - j.d) for j in inst.jobs)
    if kind == "Fmax":
        return max(obj.costfns[j.id](cs[j.id]) for j in inst.jobs)
    if kind == "SumF":
        return sum(obj.costfns[j.id](cs[j.id]) for j in inst.jobs)
    if kind == "SumWM":
        total = Fraction(0)
        for j in inst.jobs:
            if j.p == 0:
                continue
            total += j.w * sch.mean_busy_time(j.id, j.p)
        return total
    raise AssertionError(kind)


# -- validation --------------------------------------------------------------


@dataclass
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return "%s: %s" % (self.kind, self.detail)


class ValidationReport:
    def __init__(self):
        self.violations = []

    def add(self, kind, detail):
        self.violations.append(Violation(kind, detail))

    @property
    def ok(self):
        return not self.violations

    def __iter__(self):
        return iter(self.violations)

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def _overlaps(a, b):
    return a.start < b.end and b.start < a.end


def validate_schedule(inst, sch):
    """List every violation: overlap, release/deadline, precedence, preemption,
    routing order, under/over-processing."""
    report = ValidationReport()
    for p in sch.pieces:
        if p.end <= p.start:
            report.add("empty-piece", "piece %s has end <= start" % (p,))
        if not (1 <= p.machine <= inst.m):
            report.add("unknown-machine", "piece on machine %d" % p.machine)
    known = set(inst.job_ids())
    for p in sch.pieces:
        if p.job not in known:
            report.add("unknown-job", "piece for job %d" % p.job)
    if not report.ok:
        return report

    # machine overlap
    for i in range(1, inst.m + 1):
        ps = sch.machine_pieces(i)
        for a, b in zip(ps, ps[1:]):
            if _overlaps(a, b):
                report.add("machine-overlap",
                           "machine %d runs jobs %d and %d concurrently" % (i, a.job, b.job))
    # job overlap (no job on two machines at once)
    for j in sch.jobs():
        ps = sch.pieces_of(j)
        for a, b in zip(ps, ps[1:]):
            if _overlaps(a, b):
                report.add("job-overlap", "job %d runs on two machines at once" % j)

    cs = sch.completions()
    for job in inst.jobs:
        ps = sch.pieces_of(job.id)
        if not ps:
            required = (sum(p for (_, p) in inst.routing(job.id))
                        if inst.env in SHOP_ENVS else job.p)
            if required > 0:
                report.add("under-processing", "job %d missing from schedule" % job.id)
            continue
        if ps[0].start < job.r:
            report.add("release", "job %d starts at %s before release %d"
                       % (job.id, ps[0].start, job.r))
        if job.dl is not None and cs[job.id] > job.dl:
            report.add("deadline", "job %d completes at %s after deadline %d"
                       % (job.id, cs[job.id], job.dl))

    # precedence: job j must complete before job k starts
    for (j, k) in inst.prec:
        if j in cs and any(p.job == k for p in sch.pieces):
            if sch.start(k) < cs[j]:
                report.add("precedence", "job %d starts before job %d completes" % (k, j))

    if inst.env in SHOP_ENVS:
        _validate_shop(inst, sch, report)
    else:
        for job in inst.jobs:
            done = sum(p.end - p.start for p in sch.pieces_of(job.id))
            if inst.env == "uniformQ":
                done = sum((p.end - p.start) * inst.speeds[p.machine - 1]
                           for p in sch.pieces_of(job.id))
            if inst.env == "unrelatedR":
                done = Fraction(0)
                for p in sch.pieces_of(job.id):
                    pij = inst.ptable[p.machine - 1][inst.job_ids().index(job.id)]
                    if pij in (None, 0):
                        report.add("routing", "job %d on machine %d where it cannot run"
                                   % (job.id, p.machine))
                        continue
                    done += (p.end - p.start) / pij
                if done != 1 and job.p >= 0 and sch.pieces_of(job.id):
                    report.add("processing", "job %d fraction processed is %s, not 1"
                               % (job.id, done))
                continue
            if done != job.p:
                kind = "under-processing" if done < job.p else "over-processing"
                report.add(kind, "job %d scheduled for %s of %d units" % (job.id, done, job.p))
        if not inst.pmtn:
            for job in sch.jobs():
                ps = sch.pieces_of(job)
                contiguous = all(b.start == a.end and b.machine == a.machine
                                 for a, b in zip(ps, ps[1:]))
                if not contiguous:
                    report.add("preemption", "job %d is split but pmtn is false" % job)
    return report


def _validate_shop(inst, sch, report):
    """Check per-operation amounts and routing order by greedy matching of
    pieces to operations in routing order."""
    for job in inst.jobs:
        route = inst.routing(job.id)
        ps = sch.pieces_of(job.id)
        if any(p.op is not None for p in ps):
            # trust the op labels: check amounts and order directly
            for h, (mach, length) in enumerate(route):
                mine = [p for p in ps if p.op == h]
                done = sum(p.end - p.start for p in mine)
                if done != length:
                    report.add("processing", "job %d op %d did %s of %d" % (job.id, h, done, length))
                for p in mine:
                    if p.machine != mach:
                        report.add("routing", "job %d op %d on machine %d, wants %d"
                                   % (job.id, h, p.machine, mach))
            if inst.env != "openO":
                ends = {}
                starts = {}
                for p in ps:
                    if p.op is None:
                        continue
                    ends[p.op] = max(ends.get(p.op, p.end), p.end)
                    starts[p.op] = min(starts.get(p.op, p.start), p.start)
                for h in range(len(route) - 1):
                    lh = route[h][1]
                    lh1 = route[h + 1][1]
                    if lh and lh1 and h in ends and h + 1 in starts and starts[h + 1] < ends[h]:
                        report.add("routing-order", "job %d op %d starts before op %d ends"
                                   % (job.id, h + 1, h))
            if not inst.pmtn:
                for h in range(len(route)):
                    mine = sorted((p for p in ps if p.op == h), key=lambda p: p.start)
                    if any(b.start != a.end for a, b in zip(mine, mine[1:])):
                        report.add("preemption", "job %d op %d split but pmtn is false"
                                   % (job.id, h))
            continue
        # unlabeled pieces: match greedily along the routing
        if inst.env == "openO":
            for i in range(1, inst.m + 1):
                need = inst.op_length(job.id, i)
                done = sum(p.end - p.start for p in ps if p.machine == i)
                if done != need:
                    report.add("processing", "job %d requires %d on machine %d, got %s"
                               % (job.id, need, i, done))
        else:
            idx = 0
            rem = route[0][1] if route else 0
            ok = True
            for p in ps:
                while idx < len(route) and rem == 0:
                    idx += 1
                    rem = route[idx][1] if idx < len(route) else 0
                if idx >= len(route) or p.machine != route[idx][0]:
                    ok = False
                    break
                amount = p.end - p.start
                if amount > rem:
                    ok = False
                    break
                rem -= amount
            while idx < len(route) and rem == 0:
                idx += 1
                rem = route[idx][1] if idx < len(route) else 0
            if not ok or idx < len(route):
                report.add("routing-order",
                           "job %d pieces do not realize its routing in order" % job.id)


# -- schedule file I/O -------------------------------------------------------


def parse_schedule(text):
    """Parse the schedule file format: header then 'exec job machine start end'."""
    sch = Schedule()
    name = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "schedule":
            name = toks[1] if len(toks) > 1 else None
        elif toks[0] == "exec":
            if len(toks) != 5:
                from .instance import ParseError
                raise ParseError(lineno, "exec line needs job, machine, start, end")
            sch.add(int(toks[1]), int(toks[2]),
                    _parse_rational(toks[3]), _parse_rational(toks[4]))
        else:
            from .instance import ParseError
            raise ParseError(lineno, "unknown key %r" % toks[0])
    return sch, name


def serialize_schedule(sch, name="instance"):
    out = ["schedule %s" % name]
    def fmt(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
    for p in sorted(sch.pieces, key=lambda p: (p.machine, p.start, p.job)):
        out.append("exec %d %d %s %s" % (p.job, p.machine, fmt(p.start), fmt(p.end)))
    return "\n".join(out) + "\n"
