"""
stable-index コマンドライン

  stable-index theta FILE | --family SPEC [--explain] [--algorithm ...]
  stable-index witness N M
  stable-index set N | --n 7..14
  stable-index gaps N | --n 7..14
  stable-index enumerate N [--workers W] [--sample S --seed X] [--output PATH]
  stable-index verify N|A..B [--exhaustive]
  stable-index construct SPEC

stdout は結果のみ（text / csv / json）。ログと witness の FamilySpec は stderr。
終了コード: 0 成功, 2 入力エラー, 3 到達不能な指数, 4 列挙上限超過, 1 内部エラー
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import structlog
from pydantic import BaseModel

from . import __version__
from .config import StableIndexConfig, load_config
from .core import (
    Digraph,
    Theta,
    explain,
    format_edge_list,
    oracle_stable_index,
    parse_edge_list,
    stable_index,
)
from .enumerate import (
    EnumSummary,
    Partition,
    enumerate_exhaustive,
    enumerate_random,
    save_summary,
    summary_to_csv,
)
from .errors import InputError, ParseError, StableIndexError, handle_error
from .families import build_family, parse_family_spec
from .logging_setup import setup_logging
from .schemas import (
    ConstructDocument,
    EnumSummaryDocument,
    GapDocument,
    IndexSetDocument,
    ThetaDocument,
    VerifyDocument,
    WitnessDocument,
)
from .theorem import gaps, theta_set, verify_theorem, witness

logger = structlog.get_logger(__name__)

FORMATS = ("text", "csv", "json")
ALGORITHMS = ("bounded", "cycle", "bitset", "oracle")


class _ArgumentParser(argparse.ArgumentParser):
    """引数エラーを ParseError にする（終了コード 2 を統一経路で返すため）"""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ParseError(message)


def parse_order_range(text: str) -> List[int]:
    """'7' または '7..14'"""
    lo_text, sep, hi_text = text.partition("..")
    try:
        lo = int(lo_text)
        hi = int(hi_text) if sep else lo
    except ValueError:
        raise ParseError(f"expected an order or a range like 7..14, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise ParseError(f"invalid order range {text!r}")
    return list(range(lo, hi + 1))


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(documents: Sequence[BaseModel] | BaseModel) -> str:
    if isinstance(documents, BaseModel):
        return documents.model_dump_json(indent=2) + "\n"
    return json.dumps([d.model_dump(mode="json") for d in documents], indent=2) + "\n"


def _emit(text: str) -> None:
    sys.stdout.write(text)


# === サブコマンド ===


def _read_digraph(args: argparse.Namespace) -> tuple[str, Digraph]:
    if args.family and args.path:
        raise ParseError("give either an edge-list path or --family, not both")
    if args.family:
        spec = parse_family_spec(args.family)
        return spec.canonical(), build_family(spec)
    if not args.path:
        raise ParseError("missing input: an edge-list path, '-' for stdin, or --family")
    if args.path == "-":
        return "<stdin>", parse_edge_list(sys.stdin.read())
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {args.path}: {e.strerror}", path=args.path) from e
    return args.path, parse_edge_list(text)


def cmd_theta(args: argparse.Namespace, config: StableIndexConfig) -> int:
    source, D = _read_digraph(args)
    if args.algorithm == "oracle":
        theta = oracle_stable_index(D, config.oracle_max_length, config.oracle_budget)
    else:
        theta = stable_index(D, args.algorithm)
    explanation = explain(D) if args.explain else None
    logger.info("theta_computed", source=source, n=D.order, theta=str(theta), algorithm=args.algorithm)

    if args.format == "json":
        _emit(_json_text(ThetaDocument.build(source, D, theta, args.algorithm, explanation)))
    elif args.format == "csv":
        header = ["source", "n", "theta", "algorithm"]
        row: List[Any] = [source, D.order, str(theta), args.algorithm]
        if explanation is not None:
            header += ["u", "v", "length"]
            row += [_blank(explanation.u), _blank(explanation.v), _blank(explanation.length)]
        _emit(_csv_text(header, [row]))
    else:
        line = f"theta={theta} algorithm={args.algorithm}"
        if explanation is not None and explanation.u is not None:
            line += f" u={explanation.u} v={explanation.v} length={explanation.length}"
        _emit(line + "\n")
    return 0


def _blank(value: Optional[int]) -> Any:
    return "" if value is None else value


def cmd_witness(args: argparse.Namespace, config: StableIndexConfig) -> int:
    m = Theta.parse(args.m)
    w = witness(args.n, m)
    if args.format == "json":
        _emit(_json_text(WitnessDocument.from_witness(w)))
    elif args.format == "csv":
        _emit(_csv_text(["u", "v"], w.digraph.sorted_arcs()))
    else:
        _emit(format_edge_list(w.digraph))
    print(w.family.canonical(), file=sys.stderr)
    return 0


def _orders(args: argparse.Namespace) -> List[int]:
    if args.n is not None and args.n_range is not None:
        raise ParseError("give either N or --n, not both")
    if args.n_range is not None:
        return parse_order_range(args.n_range)
    if args.n is None:
        raise ParseError("missing order: N or --n A..B")
    return [args.n]


def cmd_set(args: argparse.Namespace, config: StableIndexConfig) -> int:
    sets = [theta_set(n) for n in _orders(args)]
    if args.format == "json":
        _emit(_json_text([IndexSetDocument.from_index_set(s) for s in sets]))
    elif args.format == "csv":
        rows: List[List[Any]] = []
        for s in sets:
            rows += [[s.n, m] for m in s.finite_members]
            if s.has_infinity:
                rows.append([s.n, "inf"])
        _emit(_csv_text(["n", "theta"], rows))
    elif len(sets) == 1:
        _emit(sets[0].describe() + "\n")
    else:
        _emit("".join(f"{s.n}: {s.describe()}\n" for s in sets))
    return 0


def cmd_gaps(args: argparse.Namespace, config: StableIndexConfig) -> int:
    reports = [gaps(n, with_witnesses=args.with_witnesses) for n in _orders(args)]
    if args.format == "json":
        _emit(_json_text([GapDocument.from_report(r) for r in reports]))
    elif args.format == "csv":
        _emit(_csv_text(["n", "gap"], [[r.n, g] for r in reports for g in r.gaps]))
    else:
        lines = []
        for r in reports:
            body = ",".join(str(g) for g in r.gaps)
            lines.append(body if len(reports) == 1 else f"{r.n}: {body}")
        _emit("\n".join(lines) + "\n")
    return 0


def cmd_enumerate(args: argparse.Namespace, config: StableIndexConfig) -> int:
    if args.sample is not None:
        summary = enumerate_random(args.n, args.sample, config.seed)
    else:
        summary = enumerate_exhaustive(
            Partition.full(args.n), ceiling=config.enum_ceiling, workers=config.workers
        )
    if args.output:
        save_summary(summary, Path(args.output))
        logger.info("summary_saved", path=args.output)
    _emit(_format_summary(summary, args.format))
    return 0


def _format_summary(summary: EnumSummary, fmt: str) -> str:
    if fmt == "json":
        return _json_text(EnumSummaryDocument.from_summary(summary))
    if fmt == "csv":
        return summary_to_csv(summary)
    lines = [f"{theta}\t{count}" for theta, count in summary.sorted_items()]
    lines.append(f"total\t{summary.total}")
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace, config: StableIndexConfig) -> int:
    reports = [
        verify_theorem(n, exhaustive=args.exhaustive, ceiling=config.enum_ceiling, workers=config.workers)
        for n in parse_order_range(args.target)
    ]
    if args.format == "json":
        _emit(_json_text([VerifyDocument.from_report(r) for r in reports]))
    elif args.format == "csv":
        rows = [
            [r.n, str(m.member), m.family.canonical() if m.family else "", str(m.computed or ""), m.ok]
            for r in reports
            for m in r.members
        ]
        _emit(_csv_text(["n", "member", "family", "computed", "ok"], rows))
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.ok else "FAIL"
            line = f"n={r.n} {status} members={len(r.members)} elapsed={r.elapsed:.3f}s"
            if r.exhaustive_checked:
                line += f" exhaustive={'ok' if r.exhaustive_ok else 'mismatch'}"
            lines.append(line)
            for m in r.members:
                if not m.ok:
                    lines.append(f"  {m.member}: {m.error or f'computed {m.computed}'}")
        _emit("\n".join(lines) + "\n")
    return 0 if all(r.ok for r in reports) else 1


def cmd_construct(args: argparse.Namespace, config: StableIndexConfig) -> int:
    spec = parse_family_spec(args.spec)
    D = build_family(spec)
    if args.format == "json":
        _emit(_json_text(ConstructDocument.build(spec, D)))
    elif args.format == "csv":
        _emit(_csv_text(["u", "v"], D.sorted_arcs()))
    else:
        _emit(format_edge_list(D, comment=spec.canonical()))
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace, StableIndexConfig], int]] = {
    "theta": cmd_theta,
    "witness": cmd_witness,
    "set": cmd_set,
    "gaps": cmd_gaps,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "construct": cmd_construct,
}


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")

    parser = _ArgumentParser(prog="stable-index", description="Stable index of digraphs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--env-file", help=".env file to load (default: ./.env if present)")
    parser.add_argument("--log-level", help="log level (default: INFO)")
    parser.add_argument("--log-format", choices=("console", "json"), help="log format on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("theta", parents=[common], help="stable index of one digraph")
    p.add_argument("path", nargs="?", help="edge-list file, '-' for stdin")
    p.add_argument("--family", help="family spec such as g:2,2,3")
    p.add_argument("--explain", action="store_true", help="show the first vertex pair with two walks")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="bounded")

    p = sub.add_parser("witness", parents=[common], help="digraph of order N with stable index M")
    p.add_argument("n", type=int)
    p.add_argument("m", help="positive integer or inf")

    for name, help_text in (("set", "achievable index set"), ("gaps", "values in [1, s(n)] not achievable")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("n", type=int, nargs="?")
        p.add_argument("--n", dest="n_range", help="order range such as 7..14")
        if name == "gaps":
            p.add_argument("--with-witnesses", action="store_true", help="witness every member as well")

    p = sub.add_parser("enumerate", parents=[common], help="histogram of stable indices over all digraphs")
    p.add_argument("n", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--sample", type=int, help="sample this many digraphs instead of enumerating all")
    p.add_argument("--seed", type=int)
    p.add_argument("--ceiling", type=int, help="largest order allowed for exhaustive enumeration")
    p.add_argument("--output", help="write the summary document to this path")

    p = sub.add_parser("verify", parents=[common], help="check witnesses for every member of the index set")
    p.add_argument("target", help="order or range such as 7..12")
    p.add_argument("--exhaustive", action="store_true", help="also enumerate every digraph (small n)")
    p.add_argument("--workers", type=int)
    p.add_argument("--ceiling", type=int)

    p = sub.add_parser("construct", parents=[common], help="edge list of a family member")
    p.add_argument("spec", help="family spec such as G:4,3,3,1,8")
    return parser


def _load(args: argparse.Namespace) -> StableIndexConfig:
    return load_config(
        env_file=Path(args.env_file) if args.env_file else None,
        log_level=args.log_level,
        log_format=args.log_format,
        workers=getattr(args, "workers", None),
        seed=getattr(args, "seed", None),
        enum_ceiling=getattr(args, "ceiling", None),
    )


def _fail(exception: BaseException, component: str) -> int:
    event = handle_error(exception, component)
    prefix = "error" if isinstance(exception, StableIndexError) else "internal error"
    print(f"{prefix}: {event.message}", file=sys.stderr)
    return event.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    try:
        args = build_parser().parse_args(argv)
        config = _load(args)
    except SystemExit as e:
        return int(e.code or 0)
    except StableIndexError as e:
        return _fail(e, "cli")

    setup_logging(config.log_level, config.log_format)
    try:
        return COMMANDS[args.command](args, config)
    except Exception as e:  # noqa: BLE001
        return _fail(e, f"cli.{args.command}")


def run_main() -> None:
    """エントリーポイント用のラッパー関数"""
    sys.exit(main())


if __name__ == "__main__":
    run_main()
