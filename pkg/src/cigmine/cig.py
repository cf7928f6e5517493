"""Constrained interval graphs.

One node per temporal edge; a directed edge joins two temporal edges that
overlap in time and share an endpoint vertex, pointing from the earlier start
to the later one and carrying the start-time difference.
"""

from __future__ import annotations

from typing import IO, Hashable, Sequence

from .intervaltree import IntervalTree
from .temporal import TemporalEdge, TemporalNetwork, format_time

NodeLabel = tuple  # (attr_lo, attr_e, attr_hi, duration class)


class ReconstructionError(ValueError):
    pass


class Cig:
    """Directed acyclic graph with labeled nodes and delay-labeled edges."""

    __slots__ = ("labels", "source", "edges", "out_adj", "in_adj", "_delay")

    def __init__(self):
        self.labels: list[NodeLabel] = []
        self.source: list[int | None] = []
        self.edges: list[tuple[int, int, Hashable]] = []
        self.out_adj: list[list[int]] = []
        self.in_adj: list[list[int]] = []
        self._delay: dict[tuple[int, int], Hashable] = {}

    def add_node(self, label: NodeLabel, source: int | None = None) -> int:
        self.labels.append(label)
        self.source.append(source)
        self.out_adj.append([])
        self.in_adj.append([])
        return len(self.labels) - 1

    def add_edge(self, frm: int, to: int, delay) -> None:
        if (frm, to) in self._delay or (to, frm) in self._delay:
            return
        self._delay[frm, to] = delay
        self.edges.append((frm, to, delay))
        self.out_adj[frm].append(to)
        self.in_adj[to].append(frm)

    def delay(self, frm: int, to: int):
        """Delay of edge ``frm -> to``, or ``None`` when absent."""
        return self._delay.get((frm, to))

    def __len__(self) -> int:
        return len(self.labels)

    def is_connected(self) -> bool:
        n = len(self.labels)
        if n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in self.out_adj[x] + self.in_adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == n

    def relabeled(self, node_fn=None, delay_fn=None) -> "Cig":
        out = Cig()
        for lab, src in zip(self.labels, self.source):
            out.add_node(node_fn(lab) if node_fn else lab, src)
        for f, t, d in self.edges:
            out.add_edge(f, t, delay_fn(d) if delay_fn else d)
        return out

    def induced(self, nodes: Sequence[int]) -> "Cig":
        """Subgraph on ``nodes``; new ids follow the given order."""
        pos = {x: i for i, x in enumerate(nodes)}
        out = Cig()
        for x in nodes:
            out.add_node(self.labels[x], self.source[x])
        for f, t, d in self.edges:
            if f in pos and t in pos:
                out.add_edge(pos[f], pos[t], d)
        return out

    def dump(self, stream: IO[str]) -> None:
        """Debug text form: ``n``-lines for nodes then ``e``-lines for edges."""
        for i, (au, ae, av, dur) in enumerate(self.labels):
            stream.write(f"n {i} {au} {ae} {av} {_fmt(dur)}\n")
        for f, t, d in sorted(self.edges, key=lambda e: (e[0], e[1])):
            stream.write(f"e {f} {t} {_fmt(d)}\n")

    def __repr__(self):
        return f"Cig(nodes={len(self.labels)}, edges={len(self.edges)})"


def _fmt(x) -> str:
    if isinstance(x, float):
        return format_time(x)
    return str(x)


def node_label(e: TemporalEdge) -> NodeLabel:
    # attribute pair sorted so the label does not depend on vertex identifiers
    a, b = (e.attr_u, e.attr_v) if e.attr_u <= e.attr_v else (e.attr_v, e.attr_u)
    return (a, e.attr_e, b, e.duration)


def construct_cig(network: TemporalNetwork, eps: float = 0.0) -> Cig:
    """Build the CIG of a start-sorted network using per-vertex interval trees."""
    cig = Cig()
    trees: dict[str, IntervalTree] = {}
    edges = network.edges
    for i, e in enumerate(edges):
        cig.add_node(node_label(e), i)
        lo, hi = e.start, e.start + e.duration
        earlier = set()
        for vert in (e.u, e.v):
            tree = trees.get(vert)
            if tree is not None:
                for _, _, j in tree.search_all(lo - eps, hi + eps):
                    earlier.add(j)
        for j in sorted(earlier):
            cig.add_edge(j, i, e.start - edges[j].start)
        for vert in (e.u, e.v):
            tree = trees.get(vert)
            if tree is None:
                tree = trees[vert] = IntervalTree()
            tree.insert(lo, hi, i)
    return cig


def reconstruct(pattern: Cig, network: TemporalNetwork, support: Sequence[int],
                anonymize: bool = False) -> TemporalNetwork:
    """Rebuild the temporal network a connected CIG (sub)graph stands for.

    ``support[k]`` is the index in ``network.edges`` of the temporal edge that
    pattern node ``k`` maps to; vertex identities, attributes and durations
    come from those edges. Starts are propagated from the smallest-id node
    along pattern edges, adding the delay when walking with an edge and
    subtracting it when walking against one, then shifted so the earliest
    start is 0. With ``anonymize`` the vertex identifiers are replaced by
    ``v0, v1, ...`` in order of first appearance.
    """
    n = len(pattern)
    if n == 0:
        raise ReconstructionError("empty pattern")
    if len(support) != n:
        raise ReconstructionError(f"support maps {len(support)} nodes, pattern has {n}")
    if len(set(support)) != n:
        raise ReconstructionError("support is not injective")
    for k, idx in enumerate(support):
        src = network.edges[idx]
        lab = node_label(src)
        if lab[:3] != tuple(pattern.labels[k][:3]):
            raise ReconstructionError(f"pattern node {k} label {pattern.labels[k]} "
                                      f"does not match supporting edge {src}")

    starts: dict[int, float] = {0: 0.0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in pattern.out_adj[v]:
            if u not in starts:
                starts[u] = starts[v] + pattern.delay(v, u)
                stack.append(u)
        for u in pattern.in_adj[v]:
            if u not in starts:
                starts[u] = starts[v] - pattern.delay(u, v)
                stack.append(u)
    if len(starts) != n:
        raise ReconstructionError("pattern is not connected")
    for f, t, d in pattern.edges:
        if starts[t] - starts[f] != d:
            raise ReconstructionError(f"inconsistent delays around edge {f}->{t}: corrupt embedding")

    base = min(starts.values())
    # ties in start keep the origin order so simultaneous edges keep their direction
    order = sorted(range(n), key=lambda k: (starts[k], support[k]))
    names: dict[str, str] = {}

    def ident(x: str) -> str:
        if not anonymize:
            return x
        if x not in names:
            names[x] = f"v{len(names)}"
        return names[x]

    out = []
    for k in order:
        src = network.edges[support[k]]
        out.append(TemporalEdge(ident(src.u), ident(src.v), src.attr_u, src.attr_e, src.attr_v,
                                starts[k] - base, src.duration))
    return TemporalNetwork.from_edges(out, network.name)


def pattern_from_support(cig: Cig, nodes: Sequence[int], tree_edges: Sequence[tuple[int, int]] | None = None) -> Cig:
    """Pattern graph over data nodes ``nodes`` (pattern id k = nodes[k]).

    With ``tree_edges`` (pairs of pattern ids) only those edges are kept,
    otherwise the full induced subgraph is returned. Labels and delays are the
    raw values of ``cig``.
    """
    if tree_edges is None:
        return cig.induced(nodes)
    out = Cig()
    for x in nodes:
        out.add_node(cig.labels[x], cig.source[x])
    for a, b in tree_edges:
        d = cig.delay(nodes[a], nodes[b])
        if d is not None:
            out.add_edge(a, b, d)
        else:
            d = cig.delay(nodes[b], nodes[a])
            if d is None:
                raise ReconstructionError(f"no data edge under pattern edge {a}-{b}")
            out.add_edge(b, a, d)
    return out
