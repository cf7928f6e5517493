"""Frequent pattern mining in continuous-time temporal networks via
constrained interval graphs."""

from .canon import CanonicalLabel, brute_force_isomorphic, canonical_label, is_min_code
from .cig import Cig, ReconstructionError, construct_cig, reconstruct
from .intervaltree import IntervalTree
from .miner import (ConfigError, Embedding, IsoMode, MinerConfig, Pattern, mine, preprocess,
                    transform_labels)
from .oracle import oracle_mine
from .temporal import (DataSet, Interval, ParseError, TemporalEdge, TemporalNetwork,
                       ValidationError, merge_contacts, parse_edge_list, parse_sociopatterns,
                       serialize_edge_list, split_by_window)

__version__ = "0.1.0"

__all__ = [
    "CanonicalLabel", "Cig", "ConfigError", "DataSet", "Embedding", "Interval", "IntervalTree",
    "IsoMode", "MinerConfig", "ParseError", "Pattern", "ReconstructionError", "TemporalEdge",
    "TemporalNetwork", "ValidationError", "brute_force_isomorphic", "canonical_label",
    "construct_cig", "is_min_code", "merge_contacts", "mine", "oracle_mine", "parse_edge_list",
    "parse_sociopatterns", "preprocess", "reconstruct", "serialize_edge_list", "split_by_window",
    "transform_labels",
]
