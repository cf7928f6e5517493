"""Exhaustive reference miner for small networks.

Every subset of a network's temporal edges is tried; the subset counts as a
pattern occurrence when its CIG is connected, and occurrences are grouped by
the canonical label of that CIG after the mode's label transform.
"""

from __future__ import annotations

from .canon import canonical_label
from .cig import construct_cig
from .miner import Embedding, MinerConfig, Pattern, transform_cig
from .temporal import DataSet, TemporalNetwork

DEFAULT_EDGE_CAP = 8


class EdgeCapError(ValueError):
    pass


def subset_labels(network: TemporalNetwork, config: MinerConfig, cache: dict | None = None):
    """``(label, node tuple)`` for every connected edge subset of ``network``."""
    cache = {} if cache is None else cache
    m = len(network)
    edges = network.edges
    out = []
    for mask in range(1, 1 << m):
        nodes = tuple(i for i in range(m) if mask >> i & 1)
        sub = TemporalNetwork.from_edges([edges[i] for i in nodes], network.name)
        cig = construct_cig(sub, config.eps)
        if not cig.is_connected():
            continue
        cig = transform_cig(cig, config.iso)
        key = (tuple(cig.labels), tuple(cig.edges))
        lab = cache.get(key)
        if lab is None:
            lab = cache[key] = canonical_label(cig)
        out.append((lab, nodes))
    return out


def oracle_mine(ds: DataSet, config: MinerConfig, edge_cap: int = DEFAULT_EDGE_CAP,
                occurrences: list | None = None) -> list[Pattern]:
    """Frequent patterns by brute force; same result shape as :func:`mine`.

    Pattern codes are ``None`` (no growth tree exists) and each embedding
    lists the subset's data-CIG nodes in ascending order. ``occurrences``, if
    given, is filled with each network's ``(label, nodes)`` list so several
    thresholds can share one enumeration.
    """
    for net in ds:
        if len(net) > edge_cap:
            raise EdgeCapError(f"network {net.name!r} has {len(net)} edges, cap is {edge_cap}")
    if occurrences is None or not occurrences:
        cache: dict = {}
        per_net = [subset_labels(net, config, cache) for net in ds]
        if occurrences is not None:
            occurrences.extend(per_net)
    else:
        per_net = occurrences
    thr = config.threshold(len(ds))
    groups: dict = {}
    for gi, occ in enumerate(per_net):
        for lab, nodes in occ:
            groups.setdefault(lab, []).append(Embedding(gi, nodes))
    result = []
    for lab, embs in groups.items():
        nets = sorted({e.network for e in embs})
        if len(nets) >= thr:
            result.append(Pattern(lab, None, len(nets), tuple(nets), embs))
    result.sort(key=lambda p: p.label.serialize())
    return result
