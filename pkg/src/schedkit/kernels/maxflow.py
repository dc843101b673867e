"""Exact max-flow / min-cut: highest-label push-relabel with the gap heuristic.

Capacities are rationals; internally every capacity is scaled by the common
denominator so the core loop runs on integers, and flows are scaled back.
Parametric capacities are stored as (c, mu) pairs and evaluated at a chosen
rational delta before solving.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class FlowNetwork:
    def __init__(self):
        self.nodes = []
        self._index = {}
        self.source = None
        self.sink = None
        self.arcs = []   # (tail, head, capacity, mu)

    def add_node(self, name):
        if name not in self._index:
            self._index[name] = len(self.nodes)
            self.nodes.append(name)
        return name

    def set_source(self, name):
        self.add_node(name)
        self.source = name

    def set_sink(self, name):
        self.add_node(name)
        self.sink = name

    def add_arc(self, tail, head, capacity, mu=Fraction(0)):
        self.add_node(tail)
        self.add_node(head)
        if head == self.source or tail == self.sink:
            raise ValueError("no arc may enter the source or leave the sink")
        self.arcs.append((tail, head, Fraction(capacity), Fraction(mu)))

    def at(self, delta):
        """Evaluate parametric capacities c + mu*delta at a rational delta."""
        net = FlowNetwork()
        for v in self.nodes:
            net.add_node(v)
        net.source, net.sink = self.source, self.sink
        for (t, h, c, mu) in self.arcs:
            cap = c + mu * Fraction(delta)
            if cap < 0:
                cap = Fraction(0)
            net.add_arc(t, h, cap)
        return net

    def cut_parametric(self, cut_nodes):
        """(constant, multiplier) of the cut defined by a source-side node set."""
        const = Fraction(0)
        mult = Fraction(0)
        inside = set(cut_nodes)
        for (t, h, c, mu) in self.arcs:
            if t in inside and h not in inside:
                const += c
                mult += mu
        return const, mult


def max_flow(net):
    """Returns (value, arc_flows, cut_nodes): exact rational max flow, flow per
    arc index, and the source side of a minimum cut (flow value == cut capacity).
    """
    if net.source is None or net.sink is None:
        raise ValueError("network needs a source and a sink")
    n = len(net.nodes)
    idx = {v: i for i, v in enumerate(net.nodes)}
    s, t = idx[net.source], idx[net.sink]

    denom = 1
    for (_, _, c, mu) in net.arcs:
        if mu != 0:
            raise ValueError("evaluate parametric capacities with .at(delta) first")
        denom = lcm(denom, c.denominator)

    # adjacency with residual arcs
    head = []
    cap = []
    nxt = []
    first = [-1] * n

    def _add(u, v, c):
        head.append(v); cap.append(c); nxt.append(first[u]); first[u] = len(head) - 1
        head.append(u); cap.append(0); nxt.append(first[v]); first[v] = len(head) - 1

    arc_pos = []
    for (tail, hd, c, _) in net.arcs:
        arc_pos.append(len(head))
        _add(idx[tail], idx[hd], int(c * denom))

    excess = [0] * n
    height = [0] * n
    count = [0] * (2 * n + 1)
    height[s] = n
    count[0] = n - 1
    count[n] = 1
    cur = first[:]

    # saturate source arcs
    e = first[s]
    while e != -1:
        v = head[e]
        if cap[e] > 0:
            delta = cap[e]
            cap[e] = 0
            cap[e ^ 1] += delta
            excess[v] += delta
            excess[s] -= delta
        e = nxt[e]

    import heapq
    active = []
    inq = [False] * n
    for v in range(n):
        if v not in (s, t) and excess[v] > 0:
            heapq.heappush(active, (-height[v], v))
            inq[v] = True

    def push(u, e):
        v = head[e]
        delta = min(excess[u], cap[e])
        cap[e] -= delta
        cap[e ^ 1] += delta
        excess[u] -= delta
        excess[v] += delta
        if v not in (s, t) and not inq[v] and excess[v] > 0:
            heapq.heappush(active, (-height[v], v))
            inq[v] = True

    def relabel(u):
        old = height[u]
        best = 2 * n
        e = first[u]
        while e != -1:
            if cap[e] > 0:
                best = min(best, height[head[e]] + 1)
            e = nxt[e]
        height[u] = best
        count[old] -= 1
        count[best] += 1
        if count[old] == 0 and old < n:
            # gap heuristic: lift every node above the gap
            for v in range(n):
                if v != s and old < height[v] < n:
                    count[height[v]] -= 1
                    height[v] = n + 1
                    count[height[v]] += 1

    while active:
        hneg, u = heapq.heappop(active)
        inq[u] = False
        if -hneg != height[u]:
            if excess[u] > 0 and u not in (s, t):
                heapq.heappush(active, (-height[u], u))
                inq[u] = True
            continue
        while excess[u] > 0:
            e = cur[u]
            if e == -1:
                relabel(u)
                cur[u] = first[u]
                if height[u] >= 2 * n:
                    break
                continue
            if cap[e] > 0 and height[u] == height[head[e]] + 1:
                push(u, e)
            else:
                cur[u] = nxt[e]

    value = Fraction(excess[t], denom)
    flows = []
    for k, (tail, hd, c, _) in enumerate(net.arcs):
        pos = arc_pos[k]
        flows.append(Fraction(cap[pos ^ 1], denom))

    # min cut: nodes reachable from source in the residual graph
    seen = [False] * n
    seen[s] = True
    stack = [s]
    while stack:
        u = stack.pop()
        e = first[u]
        while e != -1:
            v = head[e]
            if cap[e] > 0 and not seen[v]:
                seen[v] = True
                stack.append(v)
            e = nxt[e]
    cut_nodes = {net.nodes[v] for v in range(n) if seen[v]}
    return value, flows, cut_nodes


def cut_capacity(net, cut_nodes):
    total = Fraction(0)
    inside = set(cut_nodes)
    for (tail, hd, c, _) in net.arcs:
        if tail in inside and hd not in inside:
            total += c
    return total


def min_cut_closure(node_weights, arcs):
    """Maximum-weight closed set (closure) of a DAG via min cut.

    arcs (u, v) mean: if u is in the closure then v must be too.
    Returns (closure_set, total_weight).
    """
    net = FlowNetwork()
    net.set_source("__s")
    net.set_sink("__t")
    big = sum(abs(w) for w in node_weights.values()) + 1
    for v, w in node_weights.items():
        net.add_node(("n", v))
        if w > 0:
            net.add_arc("__s", ("n", v), w)
        elif w < 0:
            net.add_arc(("n", v), "__t", -w)
    for (u, v) in arcs:
        net.add_arc(("n", u), ("n", v), big)
    value, _, cut = max_flow(net)
    closure = {v for v in node_weights if ("n", v) in cut}
    total = sum(node_weights[v] for v in closure)
    return closure, total
