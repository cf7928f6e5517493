"""Minimum DFS codes for directed, labeled CIGs.

A DFS code is a sequence of step tuples ``(i, j, label_i, direction, delay,
label_j)`` where ``i``/``j`` are discovery positions, ``direction`` is 0 when
the stored edge points from position ``i`` to position ``j`` and 1 when the
walk goes against it. Steps are ordered as in gSpan: backward steps (from the
rightmost vertex to the rightmost path) before forward steps, backward steps
by target position, forward steps from the deepest rightmost-path vertex
first, then by direction, delay and new label.

The canonical label of a connected CIG is its minimum DFS code. A one-node
graph has the single code ``(0, 0, label, None, None, None)``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .cig import Cig

Step = tuple


class CanonError(ValueError):
    pass


def _neighbors(n: int, edges) -> list[list[tuple[int, int, object, int]]]:
    nbrs: list[list] = [[] for _ in range(n)]
    for eid, (f, t, d) in enumerate(edges):
        nbrs[f].append((t, 0, d, eid))
        nbrs[t].append((f, 1, d, eid))
    return nbrs


def rightmost_path(code: Sequence[Step]) -> list[int]:
    """Positions on the rightmost path, rightmost vertex first."""
    if not code or code[0][1] == 0:
        return [0]
    cur = max(max(s[0], s[1]) for s in code)
    path = [cur]
    for i, j, *_ in reversed(code):
        if i < j and j == cur:
            path.append(i)
            cur = i
    return path


def min_dfs_code(labels: Sequence, edges: Sequence[tuple[int, int, object]],
                 target: Sequence[Step] | None = None):
    """Minimum DFS code of a connected graph.

    With ``target`` the search stops at the first step where the minimum
    departs from ``target`` and returns ``None``; a valid DFS code of the
    graph can only depart by being larger, so ``None`` means "not minimal".
    """
    n = len(labels)
    if n == 0:
        raise CanonError("empty graph")
    if n == 1:
        if edges:
            raise CanonError("self-loop in one-node graph")
        return ((0, 0, labels[0], None, None, None),)
    nbrs = _neighbors(n, edges)
    if not _connected(nbrs):
        raise CanonError("graph is not connected")
    m = len(edges)

    # seed: smallest first step over every edge walked either way
    best = None
    projs = []
    for f in range(n):
        for t, dr, d, eid in nbrs[f]:
            key = (labels[f], dr, d, labels[t])
            if best is None or key < best:
                best = key
                projs = []
            if key == best:
                projs.append(([f, t], {f: 0, t: 1}, frozenset((eid,))))
    code = [(0, 1) + best]
    if target is not None and code[0] != tuple(target[0]):
        return None

    while len(code) < m:
        rm = rightmost_path(code)
        r = rm[0]
        onpath = set(rm)
        nxt = len(projs[0][0])
        best_key = None
        best_step = None
        new_projs = []
        for vmap, inv, used in projs:
            rnode = vmap[r]
            cands = []
            for y, dr, d, eid in nbrs[rnode]:
                if eid in used:
                    continue
                j = inv.get(y)
                if j is not None and j in onpath:
                    cands.append(((0, j, dr, d), (r, j, labels[rnode], dr, d, labels[y]), eid, None))
            if not cands:
                for i in rm:
                    x = vmap[i]
                    for y, dr, d, eid in nbrs[x]:
                        if y not in inv:
                            cands.append(((1, -i, dr, d, labels[y]),
                                          (i, nxt, labels[x], dr, d, labels[y]), eid, y))
            for key, step, eid, y in cands:
                if best_key is None or key < best_key:
                    best_key, best_step = key, step
                    new_projs = []
                if key == best_key:
                    if y is None:
                        new_projs.append((vmap, inv, used | {eid}))
                    else:
                        inv2 = dict(inv)
                        inv2[y] = nxt
                        new_projs.append((vmap + [y], inv2, used | {eid}))
        if best_step is None:
            raise CanonError("DFS stalled before covering every edge")
        code.append(best_step)
        projs = new_projs
        if target is not None:
            k = len(code) - 1
            if k >= len(target) or best_step != tuple(target[k]):
                return None
    return tuple(code)


def _connected(nbrs) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y, *_ in nbrs[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nbrs)


def _norm(x):
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if isinstance(x, tuple):
        return [_norm(y) for y in x]
    return x


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(y) for y in x)
    return x


@dataclass(frozen=True)
class CanonicalLabel:
    """Minimum DFS code wrapper; equal exactly for isomorphic CIGs."""

    code: tuple

    def __str__(self) -> str:
        return self.serialize()

    def serialize(self) -> str:
        return json.dumps(_norm(self.code), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def parse(cls, text: str) -> "CanonicalLabel":
        return cls(_tuplify(json.loads(text)))

    @property
    def n_nodes(self) -> int:
        return max(max(s[0], s[1]) for s in self.code) + 1

    def __lt__(self, other: "CanonicalLabel") -> bool:
        return self.serialize() < other.serialize()


def canonical_label(g: Cig) -> CanonicalLabel:
    return CanonicalLabel(min_dfs_code(g.labels, g.edges))


def code_graph(code: Sequence[Step]) -> tuple[list, list[tuple[int, int, object]]]:
    """Labels and stored edges of the graph a DFS code describes."""
    if len(code) == 1 and code[0][1] == 0:
        return [code[0][2]], []
    n = max(max(s[0], s[1]) for s in code) + 1
    labels: list = [None] * n
    edges = []
    for i, j, li, dr, d, lj in code:
        labels[i] = li
        labels[j] = lj
        edges.append((i, j, d) if dr == 0 else (j, i, d))
    return labels, edges


def is_min_code(code: Sequence[Step]) -> bool:
    """True iff no other DFS enumeration of the coded graph is smaller."""
    labels, edges = code_graph(code)
    if not edges:
        return True
    got = min_dfs_code(labels, edges, target=code)
    return got is not None and len(got) == len(code) and tuple(got) == tuple(code)


MAX_BRUTE_NODES = 10


def brute_force_isomorphic(a: Cig, b: Cig) -> bool:
    """Exhaustive search for a label-, direction- and delay-preserving bijection."""
    n = len(a)
    if n > MAX_BRUTE_NODES or len(b) > MAX_BRUTE_NODES:
        raise CanonError(f"brute-force isomorphism is capped at {MAX_BRUTE_NODES} nodes")
    if n != len(b) or len(a.edges) != len(b.edges):
        return False
    if Counter(a.labels) != Counter(b.labels):
        return False
    ea = {(f, t): d for f, t, d in a.edges}
    eb = {(f, t): d for f, t, d in b.edges}
    mapping: list[int] = []
    taken = [False] * n

    def consistent(x: int, y: int) -> bool:
        for x2, y2 in enumerate(mapping):
            if ea.get((x, x2), _MISSING) != eb.get((y, y2), _MISSING):
                return False
            if ea.get((x2, x), _MISSING) != eb.get((y2, y), _MISSING):
                return False
        return True

    def extend() -> bool:
        x = len(mapping)
        if x == n:
            return True
        for y in range(n):
            if taken[y] or a.labels[x] != b.labels[y] or not consistent(x, y):
                continue
            mapping.append(y)
            taken[y] = True
            if extend():
                return True
            mapping.pop()
            taken[y] = False
        return False

    return extend()


_MISSING = object()
