"""Frequent temporal pattern search over constrained interval graphs.

Every data-set network becomes a CIG; patterns are grown as CIG subtrees by
forward (new-node) extensions from the rightmost path, pruned to minimum DFS
codes, and supported by embedding lists extended from the parent's. Each
tree's embeddings are grouped by the full induced subgraph they cover, and a
group's identity is the canonical label of the CIG rebuilt from the temporal
network it reconstructs to. Support is the number of networks holding at
least one embedding.
"""

from __future__ import annotations

import logging
import math
import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .canon import CanonicalLabel, canonical_label, is_min_code, rightmost_path
from .cig import Cig, construct_cig, pattern_from_support, reconstruct
from .temporal import DataSet

log = logging.getLogger(__name__)

#: delay class shared by every CIG edge in the sequence-preserved modes
UNIFORM = -1

ISO_KINDS = ("e", "i", "es", "is")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class IsoMode:
    """Which temporal quantities must match exactly.

    ``e``: durations and delays; ``i``: durations compared by
    ``floor(duration / duration_bin)``; ``es``: durations exact, delays reduced
    to edge direction; ``is``: both relaxations. ``delay_bin`` optionally bins
    delays in mode ``i``.
    """

    kind: str = "e"
    duration_bin: float | None = None
    delay_bin: float | None = None

    def __post_init__(self):
        if self.kind not in ISO_KINDS:
            raise ConfigError(f"unknown isomorphism mode {self.kind!r}")
        if self.kind in ("i", "is"):
            if self.duration_bin is None or not self.duration_bin > 0:
                raise ConfigError(f"mode {self.kind} needs a positive duration_bin")
        elif self.duration_bin is not None:
            raise ConfigError(f"duration_bin is not allowed in mode {self.kind}")
        if self.delay_bin is not None:
            if self.kind != "i":
                raise ConfigError("delay_bin is only meaningful in mode i")
            if not self.delay_bin > 0:
                raise ConfigError("delay_bin must be positive")

    def duration_class(self, duration: float):
        if self.kind in ("i", "is"):
            return math.floor(duration / self.duration_bin)
        return duration

    def delay_class(self, delay: float):
        if self.kind in ("es", "is"):
            return UNIFORM
        if self.delay_bin is not None:
            return math.floor(delay / self.delay_bin)
        return delay

    def as_dict(self) -> dict:
        return {"kind": self.kind, "duration_bin": self.duration_bin, "delay_bin": self.delay_bin}


@dataclass(frozen=True)
class MinerConfig:
    """``min_supp`` is an absolute network count (int) or a fraction of the
    data set (float in (0, 1], rounded up)."""

    min_supp: int | float
    iso: IsoMode = field(default_factory=IsoMode)
    max_pattern_edges: int | None = None
    eps: float = 0.0
    workers: int = 1

    def __post_init__(self):
        ms = self.min_supp
        if isinstance(ms, bool) or not isinstance(ms, (int, float)):
            raise ConfigError(f"min_supp must be a number, got {ms!r}")
        if isinstance(ms, int):
            if ms < 1:
                raise ConfigError("absolute min_supp must be >= 1")
        elif not 0 < ms <= 1:
            raise ConfigError("fractional min_supp must lie in (0, 1]")
        if self.max_pattern_edges is not None and self.max_pattern_edges < 1:
            raise ConfigError("max_pattern_edges must be >= 1")
        if self.eps < 0:
            raise ConfigError("eps must be non-negative")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def threshold(self, n_networks: int) -> int:
        if isinstance(self.min_supp, int):
            return self.min_supp
        return max(1, math.ceil(self.min_supp * n_networks - 1e-12))


def transform_cig(cig: Cig, iso: IsoMode) -> Cig:
    if iso.kind == "e" and iso.delay_bin is None:
        return cig
    return cig.relabeled(lambda lab: lab[:3] + (iso.duration_class(lab[3]),), iso.delay_class)


def transform_labels(cigs: Sequence[Cig], iso: IsoMode) -> list[Cig]:
    """Apply the mode's duration and delay classes to freshly built CIGs."""
    return [transform_cig(c, iso) for c in cigs]


class Embedding(NamedTuple):
    network: int
    nodes: tuple[int, ...]  # data-CIG node per pattern position


@dataclass
class Pattern:
    label: CanonicalLabel
    code: tuple  # DFS code of the tree that first produced the label
    support: int
    networks: tuple[int, ...]
    embeddings: list[Embedding]

    @property
    def n_edges(self) -> int:
        """Temporal edges in the pattern (= CIG nodes)."""
        return len(self.embeddings[0].nodes)


@dataclass
class Preprocessed:
    """CIG data set plus frequent single-node and single-edge maps.

    ``node_map`` maps each frequent node label to its ``(network, node)``
    locations; ``edge_map`` maps each frequent ``(from label, delay class,
    to label)`` edge type to its ``(network, from, to)`` locations. ``cigs``
    keep every node and edge: pruning of infrequent labels applies to the
    search index only, since induced-subgraph labels need the full graphs.
    """

    cigs: list[Cig]
    raw_cigs: list[Cig]
    threshold: int
    node_map: dict
    edge_map: dict
    node_support: dict
    edge_support: dict
    node_labels: list  # dense id -> label, frequent labels in descending support
    delay_classes: list  # dense id -> delay class, frequent ones first


def _rank(support: dict) -> list:
    return sorted(support, key=lambda lab: (-support[lab], lab))


def preprocess(ds: DataSet, config: MinerConfig) -> Preprocessed:
    raw = [construct_cig(net, config.eps) for net in ds]
    cigs = transform_labels(raw, config.iso)
    thr = config.threshold(len(ds))

    node_support: dict = {}
    edge_support: dict = {}
    delay_support: dict = {}
    for cig in cigs:
        for lab in set(cig.labels):
            node_support[lab] = node_support.get(lab, 0) + 1
        types = {(cig.labels[f], d, cig.labels[t]) for f, t, d in cig.edges}
        for et in types:
            edge_support[et] = edge_support.get(et, 0) + 1
        for d in {d for _, _, d in cig.edges}:
            delay_support[d] = delay_support.get(d, 0) + 1

    frequent_nodes = {lab for lab, s in node_support.items() if s >= thr}
    node_map: dict = {}
    edge_map: dict = {}
    for gi, cig in enumerate(cigs):
        for x, lab in enumerate(cig.labels):
            if lab in frequent_nodes:
                node_map.setdefault(lab, []).append((gi, x))
        for f, t, d in cig.edges:
            et = (cig.labels[f], d, cig.labels[t])
            if edge_support[et] >= thr and et[0] in frequent_nodes and et[2] in frequent_nodes:
                edge_map.setdefault(et, []).append((gi, f, t))

    node_labels = _rank({lab: node_support[lab] for lab in frequent_nodes})
    delay_classes = _rank(delay_support)
    return Preprocessed(cigs, raw, thr, node_map, edge_map, node_support, edge_support,
                        node_labels, delay_classes)


def _csr(n: int, pairs: list[tuple[int, int, int]]):
    pairs.sort()
    ptr = np.zeros(n + 1, dtype=np.int64)
    for a, _, _ in pairs:
        ptr[a + 1] += 1
    np.cumsum(ptr, out=ptr)
    idx = np.fromiter((b for _, b, _ in pairs), dtype=np.int32, count=len(pairs))
    dly = np.fromiter((d for _, _, d in pairs), dtype=np.int32, count=len(pairs))
    return ptr, idx, dly


class _Index:
    """Disjoint union of all data CIGs in dense integer form."""

    def __init__(self, pre: Preprocessed):
        self.pre = pre
        node_id = {lab: i for i, lab in enumerate(pre.node_labels)}
        self.delay_id = delay_id = {d: i for i, d in enumerate(pre.delay_classes)}
        self.offsets = np.cumsum([0] + [len(c) for c in pre.cigs]).astype(np.int64)
        n = int(self.offsets[-1])
        self.node_net = np.repeat(np.arange(len(pre.cigs), dtype=np.int32), [len(c) for c in pre.cigs])
        self.node_lab = np.full(n, -1, dtype=np.int32)
        grow_out, grow_in, full = [], [], []
        for gi, cig in enumerate(pre.cigs):
            base = int(self.offsets[gi])
            for x, lab in enumerate(cig.labels):
                self.node_lab[base + x] = node_id.get(lab, -1)
            for f, t, d in cig.edges:
                a, b, dd = base + f, base + t, delay_id[d]
                full.append((a, b, dd))
                if (cig.labels[f], d, cig.labels[t]) in pre.edge_map:
                    grow_out.append((a, b, dd))
                    grow_in.append((b, a, dd))
        self.out = _csr(n, grow_out)
        self.inn = _csr(n, grow_in)
        self.full = _csr(n, full)
        # seeds: one per frequent edge type, ordered by their first DFS step
        seeds = []
        for (lf, d, lt), locs in pre.edge_map.items():
            a, dd, b = node_id[lf], delay_id[d], node_id[lt]
            fwd, bwd = (a, 0, dd, b), (b, 1, dd, a)
            seeds.append((min(fwd, bwd), (a, dd, b), locs))
        seeds.sort(key=lambda s: s[0])
        self.seeds = seeds


@dataclass
class MineStats:
    candidates: int = 0
    expansions: int = 0
    closure_checks: int = 0
    trees: int = 0


class _Search:
    def __init__(self, ds: DataSet, config: MinerConfig, pre: Preprocessed, index: _Index):
        self.ds = ds
        self.config = config
        self.pre = pre
        self.ix = index
        self.thr = pre.threshold
        self.max_k = config.max_pattern_edges
        self.stats = MineStats()
        self._label_cache: dict = {}
        self.found: dict = {}  # label -> Pattern, discovery order
        self.expansion_log: list[tuple[int, int]] | None = None

    # label of the full CIG rebuilt from one supporting embedding
    def _label(self, net: int, local: tuple[int, ...], tree_edges) -> CanonicalLabel:
        key = (net, frozenset(local))
        hit = self._label_cache.get(key)
        if hit is not None:
            return hit
        raw = self.pre.raw_cigs[net]
        pattern = pattern_from_support(raw, local, tree_edges)
        tn = reconstruct(pattern, self.ds[net], [raw.source[x] for x in local])
        full = transform_cig(construct_cig(tn, self.config.eps), self.config.iso)
        lab = canonical_label(full)
        self._label_cache[key] = lab
        return lab

    def _external_code(self, code) -> tuple:
        nl, dc = self.pre.node_labels, self.pre.delay_classes
        if len(code) == 1 and code[0][1] == 0:
            return ((0, 0, nl[code[0][2]], None, None, None),)
        return tuple((i, j, nl[li], dr, dc[d], nl[lj]) for i, j, li, dr, d, lj in code)

    def emit(self, code, embs: np.ndarray) -> None:
        """Group a tree's embeddings by induced subgraph and record new labels."""
        self.stats.trees += 1
        k = embs.shape[1]
        tree_edges = [(i, j) for i, j, *_ in code] if k > 1 else []
        if k > 1:
            sig = kernels.induced(embs, *self.ix.full)
            _, inverse = np.unique(sig, axis=0, return_inverse=True)
            inverse = inverse.reshape(-1)
        else:
            inverse = np.zeros(len(embs), dtype=np.int64)
        nets_all = self.ix.node_net[embs[:, 0]]
        offsets = self.ix.offsets
        groups: dict[CanonicalLabel, list[int]] = {}
        order: list[CanonicalLabel] = []
        for g in range(int(inverse.max()) + 1 if len(inverse) else 0):
            rows = np.flatnonzero(inverse == g)
            r0 = int(rows[0])
            net = int(nets_all[r0])
            local = tuple(int(x - offsets[net]) for x in embs[r0])
            lab = self._label(net, local, tree_edges)
            if lab not in groups:
                groups[lab] = []
                order.append(lab)
            groups[lab].extend(rows.tolist())
        for lab in order:
            rows = sorted(groups[lab])
            nets = sorted(set(nets_all[rows].tolist()))
            if len(nets) < self.thr:
                continue
            prev = self.found.get(lab)
            if prev is not None:
                if prev.support != len(nets):
                    raise RuntimeError(f"label {lab} reached with supports {prev.support} and {len(nets)}")
                continue
            embl = [Embedding(int(nets_all[r]), tuple(int(x - offsets[nets_all[r]]) for x in embs[r]))
                    for r in rows]
            self.found[lab] = Pattern(lab, self._external_code(code), len(nets), tuple(nets), embl)

    def grow(self, code: tuple, labels: list[int], embs: np.ndarray, support: int, allowed: set) -> None:
        self.emit(code, embs)
        k = embs.shape[1]
        if self.max_k is not None and k >= self.max_k:
            return
        rm = rightmost_path(code)
        rows, pos, dirs, dly, nbr = kernels.extensions(embs, np.asarray(rm, dtype=np.int32),
                                                       *self.ix.out, *self.ix.inn)
        if len(rows) == 0:
            return
        labs = self.ix.node_lab[nbr]
        keys = np.stack([-pos, dirs, dly, labs], axis=1)
        ukeys, inverse = np.unique(keys, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        nets_row = self.ix.node_net[embs[:, 0]]
        for g, (mpos, dr, dd, lab) in enumerate(ukeys.tolist()):
            i = -mpos
            etype = (labels[i], dd, lab) if dr == 0 else (lab, dd, labels[i])
            if etype not in allowed:
                continue
            self.stats.candidates += 1
            child = code + ((i, k, labels[i], dr, dd, lab),)
            if not is_min_code(child):
                continue
            sel = np.flatnonzero(inverse == g)
            prow = rows[sel]
            child_support = len(np.unique(nets_row[prow]))
            if child_support < self.thr:
                continue
            self.stats.closure_checks += 1
            if child_support > support:
                raise RuntimeError("downward closure violated: child support exceeds parent's")
            if self.expansion_log is not None:
                self.expansion_log.append((support, child_support))
            self.stats.expansions += 1
            child_embs = np.concatenate([embs[prow], nbr[sel, None]], axis=1)
            self.grow(child, labels + [lab], np.ascontiguousarray(child_embs, dtype=np.int32),
                      child_support, allowed)

    def run_seed(self, s: int) -> None:
        ix = self.ix
        first, _, locs = ix.seeds[s]
        a, dr, dd, b = first
        allowed = {et for _, et, _ in ix.seeds[s:]}
        rows = []
        for gi, f, t in locs:
            base = int(ix.offsets[gi])
            rows.append((base + f, base + t) if dr == 0 else (base + t, base + f))
        embs = np.asarray(rows, dtype=np.int32).reshape(-1, 2)
        support = len({gi for gi, _, _ in locs})
        if self.max_k is not None and self.max_k < 2:
            return
        self.grow(((0, 1, a, dr, dd, b),), [a, b], embs, support, allowed)

    def run_nodes(self) -> None:
        node_id = {lab: i for i, lab in enumerate(self.pre.node_labels)}
        for lab in self.pre.node_labels:
            locs = self.pre.node_map[lab]
            embs = np.asarray([int(self.ix.offsets[gi]) + x for gi, x in locs], dtype=np.int32)
            self.emit(((0, 0, node_id[lab], None, None, None),), embs.reshape(-1, 1))


_WORKER: _Search | None = None


def _run_seed_in_worker(s: int):
    search = _WORKER
    search.found = {}
    search.stats = MineStats()
    search.run_seed(s)
    return list(search.found.values()), search.stats


def mine(ds: DataSet, config: MinerConfig, stats: MineStats | None = None,
         expansion_log: list | None = None) -> list[Pattern]:
    """All patterns with support >= the threshold, sorted by canonical label."""
    pre = preprocess(ds, config)
    ix = _Index(pre)
    search = _Search(ds, config, pre, ix)
    search.expansion_log = expansion_log
    search.run_nodes()
    n_seeds = len(ix.seeds)
    if config.workers > 1 and n_seeds > 1 and expansion_log is None:
        global _WORKER
        _WORKER = search
        try:
            ctx = mp.get_context("fork")
            with ProcessPoolExecutor(max_workers=min(config.workers, n_seeds), mp_context=ctx) as pool:
                results = list(pool.map(_run_seed_in_worker, range(n_seeds)))
        finally:
            _WORKER = None
        # merged in seed order so the first finder of a label matches a serial run
        for patterns, st in results:
            for p in patterns:
                prev = search.found.get(p.label)
                if prev is None:
                    search.found[p.label] = p
                elif prev.support != p.support:
                    raise RuntimeError(f"label {p.label} reached with two supports")
            for f in ("candidates", "expansions", "closure_checks", "trees"):
                setattr(search.stats, f, getattr(search.stats, f) + getattr(st, f))
    else:
        for s in range(n_seeds):
            search.run_seed(s)
    if stats is not None:
        for f in ("candidates", "expansions", "closure_checks", "trees"):
            setattr(stats, f, getattr(search.stats, f))
    return sorted(search.found.values(), key=lambda p: p.label.serialize())
