"""Series-parallel recognition by recursive splitting on the transitive closure.

Returns a binary composition tree whose series/parallel operations regenerate
exactly the transitive closure of the input, or four vertices inducing a "Z"
when the order is not series-parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass
class SPNode:
    kind: str          # "leaf" | "S" | "P"
    job: int | None = None
    left: "SPNode | None" = None
    right: "SPNode | None" = None

    def leaves(self):
        if self.kind == "leaf":
            return [self.job]
        return self.left.leaves() + self.right.leaves()

    def closure(self):
        """The set of (a, b) relations generated by the tree."""
        if self.kind == "leaf":
            return set()
        rel = self.left.closure() | self.right.closure()
        if self.kind == "S":
            for a in self.left.leaves():
                for b in self.right.leaves():
                    rel.add((a, b))
        return rel

    def __repr__(self):
        if self.kind == "leaf":
            return str(self.job)
        return "%s(%r,%r)" % (self.kind, self.left, self.right)


def leaf(j):
    return SPNode("leaf", job=j)


def _fold(kind, subtrees):
    node = subtrees[0]
    for sub in subtrees[1:]:
        node = SPNode(kind, left=node, right=sub)
    return node


def transitive_closure(nodes, arcs):
    nodes = sorted(nodes)
    reach = {v: set() for v in nodes}
    succ = {v: set() for v in nodes}
    for (u, v) in arcs:
        succ[u].add(v)
    # reverse topological accumulation
    order = []
    seen = set()

    def dfs(v):
        seen.add(v)
        for w in succ[v]:
            if w not in seen:
                dfs(w)
        order.append(v)

    for v in nodes:
        if v not in seen:
            dfs(v)
    for v in order:
        for w in succ[v]:
            reach[v].add(w)
            reach[v] |= reach[w]
    return {(u, v) for u in nodes for v in reach[u]}


def _components(nodes, edges):
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (u, v) in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps = {}
    for v in nodes:
        comps.setdefault(find(v), []).append(v)
    return [sorted(c) for c in comps.values()]


def sp_decompose(nodes, arcs):
    """Returns ("tree", SPNode) or ("z", (a, b, c, d)) with a->c, b->c, b->d
    the only relations among the four."""
    nodes = sorted(set(nodes))
    closure = transitive_closure(nodes, arcs)
    result = _decompose(nodes, closure)
    if result is None:
        return ("z", _find_z(nodes, closure))
    return ("tree", result)


def _decompose(nodes, closure):
    if len(nodes) == 1:
        return leaf(nodes[0])
    comparable = [(u, v) for (u, v) in closure if u in nodes and v in nodes]
    comps = _components(nodes, comparable)
    if len(comps) > 1:
        comps.sort(key=lambda c: c[0])
        subs = []
        for c in comps:
            sub = _decompose(c, closure)
            if sub is None:
                return None
            subs.append(sub)
        return _fold("P", subs)
    # series split: components of the incomparability graph, ordered by the relation
    present = set(nodes)
    rel = {(u, v) for (u, v) in closure if u in present and v in present}
    incomparable = []
    for u, v in combinations(nodes, 2):
        if (u, v) not in rel and (v, u) not in rel:
            incomparable.append((u, v))
    blocks = _components(nodes, incomparable)
    if len(blocks) == 1:
        return None
    # order the blocks: every cross pair must be comparable, uniformly directed
    def before(a, b):
        forward = all((u, v) in rel for u in a for v in b)
        if forward:
            return True
        backward = all((v, u) in rel for u in a for v in b)
        if backward:
            return False
        return None
    # order blocks by predecessors-outside per node: strictly increasing along
    # the series chain regardless of block sizes
    from fractions import Fraction as _F
    blocks.sort(key=lambda c: _F(sum(1 for (u, v) in rel if v in c and u not in c),
                                 len(c)))
    for a, b in zip(blocks, blocks[1:]):
        if before(a, b) is not True:
            return None
    subs = []
    for c in blocks:
        sub = _decompose(c, closure)
        if sub is None:
            return None
        subs.append(sub)
    return _fold("S", subs)


def _find_z(nodes, closure):
    """Search for four vertices inducing the Z pattern: a->c, b->c, b->d only."""
    rel = closure
    for quad in combinations(nodes, 4):
        for perm in _perms4(quad):
            a, b, c, d = perm
            want = {(a, c), (b, c), (b, d)}
            induced = {(u, v) for (u, v) in rel
                       if u in perm and v in perm and u != v}
            if induced == want:
                return (a, b, c, d)
    raise AssertionError("order is not series-parallel but no Z found")


def _perms4(quad):
    from itertools import permutations
    return permutations(quad)
