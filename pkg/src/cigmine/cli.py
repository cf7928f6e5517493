"""Command-line front end: ``convert``, ``mine`` and ``oracle``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .miner import ConfigError, IsoMode, MinerConfig, mine
from .oracle import DEFAULT_EDGE_CAP, EdgeCapError, oracle_mine
from .report import build_report
from .temporal import (DataSet, ParseError, ValidationError, merge_contacts, parse_edge_list,
                       parse_sociopatterns, serialize_edge_list, split_by_window)

log = logging.getLogger("cigmine")

EXIT_USAGE = 1
EXIT_DATA = 2
EDGE_SUFFIX = ".txt"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _min_supp(text: str) -> int | float:
    try:
        return float(text) if any(c in text for c in ".eE") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid support threshold {text!r}") from None


def _windows(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid window list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cigmine", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    conv = sub.add_parser("convert", help="turn contact or edge-list data into per-window edge lists")
    conv.add_argument("input", type=Path)
    conv.add_argument("--format", choices=("edgelist", "sociopatterns"), default="edgelist")
    conv.add_argument("--resolution", type=float, default=20.0,
                      help="contact sampling step in seconds (sociopatterns format)")
    conv.add_argument("--windows", type=_windows, default=None,
                      help="comma-separated boundaries t0,t1,...; window k is [t_k, t_k+1)")
    conv.add_argument("--out", type=Path, required=True)

    for name in ("mine", "oracle"):
        p = sub.add_parser(name, help="frequent pattern search" if name == "mine"
                           else "exhaustive reference search for small networks")
        p.add_argument("--data", type=Path, required=True, help="directory of edge-list files")
        p.add_argument("--min-supp", type=_min_supp, required=True, help="N (networks) or fraction 0.x")
        p.add_argument("--iso", choices=("e", "i", "es", "is"), default="e")
        p.add_argument("--duration-bin", type=float)
        p.add_argument("--delay-bin", type=float)
        p.add_argument("--max-edges", type=int)
        p.add_argument("--eps", type=float, default=0.0, help="time tolerance for overlap tests")
        p.add_argument("--out", type=Path, required=True)
        p.add_argument("--with-support-ids", action="store_true",
                       help="print origin vertex identifiers instead of v0, v1, ...")
        if name == "mine":
            p.add_argument("--workers", type=int, default=1)
        else:
            p.add_argument("--edge-cap", type=int, default=DEFAULT_EDGE_CAP)
    return ap


def load_dataset(directory: Path) -> DataSet:
    if not directory.is_dir():
        raise DataError(f"{directory} is not a directory")
    files = sorted(p for p in directory.iterdir() if p.is_file() and not p.name.startswith("."))
    if not files:
        raise DataError(f"no edge-list files in {directory}")
    nets = []
    for path in files:
        try:
            with path.open() as fh:
                nets.append(parse_edge_list(fh, path.stem))
        except (ParseError, ValidationError) as exc:
            raise DataError(f"{path}: {exc}") from None
    return DataSet(tuple(nets))


def _config(args) -> MinerConfig:
    try:
        iso = IsoMode(args.iso, args.duration_bin, args.delay_bin)
        return MinerConfig(args.min_supp, iso, args.max_edges, args.eps, getattr(args, "workers", 1))
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


def _config_echo(args, cfg: MinerConfig, n_networks: int) -> dict:
    echo = {
        "command": args.command,
        "data": str(args.data),
        "min_supp": cfg.min_supp,
        "threshold": cfg.threshold(n_networks),
        "networks": n_networks,
        "iso": cfg.iso.as_dict(),
        "max_pattern_edges": cfg.max_pattern_edges,
        "eps": cfg.eps,
    }
    if args.command == "mine":
        echo["workers"] = cfg.workers
    else:
        echo["edge_cap"] = args.edge_cap
    return echo


def cmd_mine(args) -> int:
    cfg = _config(args)  # flag errors surface before any data is read
    t0 = time.perf_counter()
    ds = load_dataset(args.data)
    t1 = time.perf_counter()
    if args.command == "oracle":
        try:
            patterns = oracle_mine(ds, cfg, args.edge_cap)
        except EdgeCapError as exc:
            raise DataError(str(exc)) from None
    else:
        patterns = mine(ds, cfg)
    t2 = time.perf_counter()
    report = build_report(ds, patterns, _config_echo(args, cfg, len(ds)),
                          with_support_ids=args.with_support_ids)
    t3 = time.perf_counter()
    report.timings = {"load": t1 - t0, "mine": t2 - t1, "report": t3 - t2}
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(report.to_json())
    print(report.summary())
    return 0


def cmd_convert(args) -> int:
    try:
        with args.input.open() as fh:
            if args.format == "sociopatterns":
                network = merge_contacts(parse_sociopatterns(fh), args.resolution, args.input.stem)
            else:
                network = parse_edge_list(fh, args.input.stem)
    except OSError as exc:
        raise DataError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    except (ParseError, ValidationError) as exc:
        raise DataError(f"{args.input}: {exc}") from None

    if args.windows is not None:
        try:
            ds, dropped = split_by_window(network, args.windows)
        except ValidationError as exc:
            raise UsageError(str(exc)) from None
        if dropped:
            print(f"dropped {dropped} edge(s) outside all windows")
    else:
        ds = DataSet((network,))

    args.out.mkdir(parents=True, exist_ok=True)
    written = [net for net in ds if len(net)]
    for net in written:
        with (args.out / f"{net.name}{EDGE_SUFFIX}").open("w") as fh:
            serialize_edge_list(net, fh)
    print("network  |V|  |E|")
    for net in written:
        print(f"{net.name}  {len(net.vertices)}  {len(net)}")
    if written:
        nv = sum(len(n.vertices) for n in written) / len(written)
        ne = sum(len(n) for n in written) / len(written)
        print(f"networks={len(written)} avg|V|={nv:.2f} avg|E|={ne:.2f}")
    else:
        print("networks=0")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "convert":
            return cmd_convert(args)
        return cmd_mine(args)
    except UsageError as exc:
        print(f"cigmine: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"cigmine: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
