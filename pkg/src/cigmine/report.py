"""Run reports: per-pattern records, size histogram and phase timings."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field

from .cig import construct_cig, reconstruct
from .miner import Pattern
from .temporal import DataSet, TemporalNetwork


def _num(x: float):
    x = float(x)
    return int(x) if x.is_integer() else x


@dataclass
class PatternRecord:
    label: str
    n_edges: int
    support: int
    networks: list[str]
    edges: list[list]  # edge-list column order, earliest start at 0


@dataclass
class RunReport:
    config: dict
    patterns: list[PatternRecord] = field(default_factory=list)
    histogram: dict[str, int] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        raw = json.loads(text)
        return cls(raw["config"], [PatternRecord(**p) for p in raw["patterns"]],
                   raw["histogram"], raw["timings"])

    def pattern_section(self) -> str:
        return json.dumps([asdict(p) for p in self.patterns], indent=2, sort_keys=True,
                          ensure_ascii=False)

    def summary(self) -> str:
        lines = [f"{len(self.patterns)} frequent pattern(s)", "|E|  |s|"]
        lines += [f"{k:>3}  {v}" for k, v in self.histogram.items()]
        if self.timings:
            lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in self.timings.items()))
        return "\n".join(lines)


def histogram(records: list[PatternRecord]) -> dict[str, int]:
    """Pattern count by number of temporal edges, ``1..max`` with zero rows kept."""
    counts = Counter(r.n_edges for r in records)
    top = max(counts, default=1)
    return {str(k): counts.get(k, 0) for k in range(1, top + 1)}


def representative_network(ds: DataSet, pattern: Pattern, with_support_ids: bool = False) -> TemporalNetwork:
    """Temporal network of the pattern rebuilt from its smallest embedding.

    The embedding with the lowest ``(network, sorted nodes)`` is used so that
    any two miners finding the same occurrences print the same edges.
    """
    emb = min(pattern.embeddings, key=lambda e: (e.network, sorted(e.nodes)))
    net = ds[emb.network]
    nodes = sorted(emb.nodes)
    # origin order is start order, so the sub-network keeps it and node k is nodes[k]
    sub = TemporalNetwork.from_edges([net.edges[i] for i in nodes], net.name)
    return reconstruct(construct_cig(sub), sub, list(range(len(nodes))), anonymize=not with_support_ids)


def build_report(ds: DataSet, patterns: list[Pattern], config: dict,
                 timings: dict[str, float] | None = None, with_support_ids: bool = False) -> RunReport:
    records = []
    for p in patterns:
        tn = representative_network(ds, p, with_support_ids)
        edges = [[e.u, e.v, e.attr_u, e.attr_e, e.attr_v, _num(e.start), _num(e.duration)] for e in tn.edges]
        records.append(PatternRecord(p.label.serialize(), p.n_edges, p.support,
                                     [ds[i].name for i in p.networks], edges))
    return RunReport(config, records, histogram(records), dict(timings or {}))
