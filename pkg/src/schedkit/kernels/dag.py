"""Longest paths in vertex-weighted DAGs, with cycle detection."""

from __future__ import annotations

from fractions import Fraction


class CycleError(ValueError):
    def __init__(self, cycle):
        super().__init__("cycle detected: %s" % (cycle,))
        self.cycle = cycle


def topological_sort(nodes, arcs):
    """Kahn's algorithm over sorted node ids; returns order or raises CycleError."""
    nodes = sorted(nodes)
    succ = {v: [] for v in nodes}
    indeg = {v: 0 for v in nodes}
    for (u, v) in arcs:
        succ[u].append(v)
        indeg[v] += 1
    ready = sorted(v for v in nodes if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    if len(order) != len(nodes):
        raise CycleError(_find_cycle(nodes, succ))
    return order


def _find_cycle(nodes, succ):
    color = {v: 0 for v in nodes}
    stack = []

    def dfs(v):
        color[v] = 1
        stack.append(v)
        for w in succ[v]:
            if color[w] == 1:
                return stack[stack.index(w):]
            if color[w] == 0:
                found = dfs(w)
                if found:
                    return found
        stack.pop()
        color[v] = 2
        return None

    for v in nodes:
        if color[v] == 0:
            found = dfs(v)
            if found:
                return found
    return []


def dag_longest(weights, arcs, sources=None):
    """Per-node longest path lengths (sums of vertex weights, path-inclusive)
    and one critical path; ties broken by smallest node id on the path.

    weights: dict node -> weight. arcs: iterable of (u, v).
    Returns (lengths, critical_path) where lengths[v] = max weight of a path
    ending at v, and critical_path is the node list of one maximum path.
    Raises CycleError when the graph has a cycle.
    """
    nodes = list(weights)
    order = topological_sort(nodes, arcs)
    pred = {v: [] for v in nodes}
    for (u, v) in arcs:
        pred[v].append(u)
    lengths = {}
    back = {}
    for v in order:
        if sources is not None and not pred[v] and v not in sources:
            # unreachable start nodes still get their own weight
            pass
        best = None
        best_u = None
        for u in sorted(pred[v]):
            cand = lengths[u]
            if best is None or cand > best or (cand == best and _path_key(back, u) < _path_key(back, best_u)):
                best = cand
                best_u = u
        lengths[v] = (best if best is not None else Fraction(0)) + weights[v]
        back[v] = best_u
    top = max(lengths.values())
    end = min(v for v in nodes if lengths[v] == top)
    path = []
    v = end
    while v is not None:
        path.append(v)
        v = back[v]
    path.reverse()
    return lengths, path


def _path_key(back, v):
    path = []
    while v is not None:
        path.append(v)
        v = back.get(v)
    return tuple(reversed(path))
