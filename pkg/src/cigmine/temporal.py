"""Continuous-time temporal networks: edge types, parsing and contact merging."""

from __future__ import annotations

import bisect
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

log = logging.getLogger(__name__)

#: attribute used when a contact file carries no vertex classes
DEFAULT_ATTR = "_"
#: edge attribute given to merged contacts
CONTACT_ATTR = "contact"


class ParseError(ValueError):
    """A malformed input line."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ValidationError(ValueError):
    """Input that parses but violates a data invariant."""


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValidationError(f"interval lo {self.lo} > hi {self.hi}")

    def overlaps(self, other: "Interval", eps: float = 0.0) -> bool:
        # closed on both ends, so touching endpoints overlap
        return not (other.hi < self.lo - eps or self.hi < other.lo - eps)


@dataclass(frozen=True, slots=True)
class TemporalEdge:
    """One timed interaction between two vertices.

    Endpoints are stored in identifier order (``u <= v``); the vertex
    attributes travel with their vertex when the pair is swapped.
    """

    u: str
    v: str
    attr_u: str
    attr_e: str
    attr_v: str
    start: float
    duration: float

    def __post_init__(self):
        if self.u == self.v:
            raise ValidationError(f"self-interaction on vertex {self.u!r}")
        if not self.duration >= 0:
            raise ValidationError(f"negative duration {self.duration}")
        if self.v < self.u:
            u, v, au, av = self.v, self.u, self.attr_v, self.attr_u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
            object.__setattr__(self, "attr_u", au)
            object.__setattr__(self, "attr_v", av)

    @property
    def end(self) -> float:
        return self.start + self.duration

    @property
    def interval(self) -> Interval:
        return Interval(self.start, self.start + self.duration)

    def shifted(self, offset: float) -> "TemporalEdge":
        return TemporalEdge(self.u, self.v, self.attr_u, self.attr_e, self.attr_v,
                            self.start + offset, self.duration)


@dataclass(frozen=True)
class TemporalNetwork:
    """Start-sorted edge sequence plus vertex set.

    Build through :meth:`from_edges`, which performs the stable sort.
    """

    edges: tuple[TemporalEdge, ...]
    vertices: frozenset[str]
    name: str = ""

    @classmethod
    def from_edges(cls, edges: Iterable[TemporalEdge], name: str = "") -> "TemporalNetwork":
        ordered = tuple(sorted(edges, key=lambda e: e.start))
        verts = frozenset(x for e in ordered for x in (e.u, e.v))
        return cls(ordered, verts, name)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def window(self) -> tuple[float, float] | None:
        if not self.edges:
            return None
        return self.edges[0].start, max(e.end for e in self.edges)


@dataclass(frozen=True)
class DataSet:
    networks: tuple[TemporalNetwork, ...] = field(default_factory=tuple)

    def __post_init__(self):
        names = [n.name for n in self.networks]
        if len(set(names)) != len(names):
            raise ValidationError("network names must be unique within a data set")

    def __len__(self) -> int:
        return len(self.networks)

    def __iter__(self):
        return iter(self.networks)

    def __getitem__(self, i: int) -> TemporalNetwork:
        return self.networks[i]


def format_time(x: float) -> str:
    """Shortest text that parses back to exactly ``x``."""
    if float(x).is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _parse_time(tok: str, lineno: int, what: str) -> float:
    try:
        val = float(tok)
    except ValueError:
        raise ParseError(lineno, f"non-numeric {what} {tok!r}") from None
    if not math.isfinite(val):
        raise ParseError(lineno, f"non-finite {what} {tok!r}")
    return val


def parse_edge_list(stream: IO[str] | Iterable[str], name: str = "") -> TemporalNetwork:
    """Read ``u v attr_u attr_e attr_v start duration`` lines."""
    edges = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split()
        if len(cols) != 7:
            raise ParseError(lineno, f"expected 7 columns, got {len(cols)}")
        start = _parse_time(cols[5], lineno, "start")
        dur = _parse_time(cols[6], lineno, "duration")
        if dur < 0:
            raise ValidationError(f"line {lineno}: negative duration {dur}")
        try:
            edges.append(TemporalEdge(cols[0], cols[1], cols[2], cols[3], cols[4], start, dur))
        except ValidationError as exc:
            raise ValidationError(f"line {lineno}: {exc}") from None
    return TemporalNetwork.from_edges(edges, name)


def serialize_edge_list(network: TemporalNetwork, stream: IO[str]) -> None:
    for e in network.edges:
        toks = (e.u, e.v, e.attr_u, e.attr_e, e.attr_v)
        if any(not t or any(c.isspace() for c in t) or t.startswith("#") for t in toks):
            raise ValidationError(f"token not representable in edge-list format: {toks}")
        stream.write(" ".join(toks) + f" {format_time(e.start)} {format_time(e.duration)}\n")


def parse_sociopatterns(stream: IO[str] | Iterable[str]) -> list[tuple[float, str, str, str, str]]:
    """Parse ``t i j [Ci Cj]`` contact lines into contact records."""
    contacts = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split()
        if len(cols) == 3:
            t, i, j = cols
            ci = cj = DEFAULT_ATTR
        elif len(cols) == 5:
            t, i, j, ci, cj = cols
        else:
            raise ParseError(lineno, f"expected 3 or 5 columns, got {len(cols)}")
        contacts.append((_parse_time(t, lineno, "time"), i, j, ci, cj))
    return contacts


def merge_contacts(contacts: Sequence[tuple[float, str, str, str, str]], resolution: float,
                   name: str = "") -> TemporalNetwork:
    """Collapse fixed-resolution contacts into interval edges.

    A record at time ``t`` covers ``[t - resolution, t]``. Runs of records for
    the same pair (and the same attributes) at consecutive steps become one
    edge spanning the whole run.
    """
    if not resolution > 0:
        raise ValidationError(f"resolution must be positive, got {resolution}")
    tol = 1e-9 * resolution
    runs: dict[tuple, list[float]] = defaultdict(list)
    for t, i, j, ci, cj in contacts:
        if i == j:
            raise ValidationError(f"self-contact on vertex {i!r} at t={t}")
        if j < i:
            i, j, ci, cj = j, i, cj, ci
        runs[(i, j, ci, cj)].append(t)

    edges = []
    for (i, j, ci, cj), times in runs.items():
        times.sort()
        first = prev = times[0]
        steps = 1
        for t in times[1:]:
            gap = t - prev
            if gap <= tol:
                continue  # repeated record of the same step
            if abs(gap - resolution) <= tol:
                steps += 1
            else:
                edges.append(TemporalEdge(i, j, ci, CONTACT_ATTR, cj, first - resolution, steps * resolution))
                first, steps = t, 1
            prev = t
        edges.append(TemporalEdge(i, j, ci, CONTACT_ATTR, cj, first - resolution, steps * resolution))
    # input order among equal starts is the order pairs were first seen
    return TemporalNetwork.from_edges(edges, name)


def split_by_window(network: TemporalNetwork, boundaries: Sequence[float],
                    prefix: str | None = None) -> tuple[DataSet, int]:
    """Cut a network into windows ``[b[k], b[k+1])`` keyed by edge start.

    Each window's edges are shifted so the window begins at 0. Edges starting
    outside every window are dropped; the drop count is returned alongside.
    """
    bounds = list(boundaries)
    if len(bounds) < 2:
        raise ValidationError("need at least two boundaries to define a window")
    if any(b1 >= b2 for b1, b2 in zip(bounds, bounds[1:])):
        raise ValidationError("window boundaries must be strictly increasing")
    prefix = network.name if prefix is None else prefix
    buckets: list[list[TemporalEdge]] = [[] for _ in range(len(bounds) - 1)]
    dropped = 0
    for e in network.edges:
        k = bisect.bisect_right(bounds, e.start) - 1
        if 0 <= k < len(buckets):
            buckets[k].append(e.shifted(-bounds[k]))
        else:
            dropped += 1
    if dropped:
        log.warning("%d edge(s) start outside all windows and were dropped", dropped)
    width = len(str(len(buckets) - 1))
    nets = tuple(
        TemporalNetwork.from_edges(b, f"{prefix}_w{k:0{width}d}" if prefix else f"w{k:0{width}d}")
        for k, b in enumerate(buckets)
    )
    return DataSet(nets), dropped
