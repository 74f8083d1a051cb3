"""Command-line entry point: ``bartree <command> [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .bars import BarParams, bar_tree, describe
from .detect import CompareMode
from .errors import BarTreeError
from .harvester import Harvester
from .lexer import DEFAULT_TAG_CLASSES
from .pipeline import analyze, page_fingerprint
from .records import TargetConfig
from .roi import RoiSpec

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _attr(value: str) -> tuple[str, str]:
    label, sep, text = value.partition("=")
    if not sep or not label:
        raise argparse.ArgumentTypeError(f"expected LABEL=TEXT, got {value!r}")
    return label, text


def _fraction(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true")

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("--target-id", required=True)
    target.add_argument("--store", required=True, type=Path, help="registry JSON file")
    target.add_argument("--html", type=Path, help="read the page from a local file instead of fetching")

    parser = _Parser(prog="bartree", description="RoI fingerprinting and template-change checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("init", parents=[common], help="register a target")
    p.add_argument("--config", type=Path, help="target config JSON (overrides the flags below)")
    p.add_argument("--target-id")
    p.add_argument("--url")
    p.add_argument("--roi-file", type=Path)
    p.add_argument("--attr", action="append", type=_attr, default=[], metavar="LABEL=TEXT")
    p.add_argument("--I", dest="I", type=_fraction)
    p.add_argument("--r", dest="r", type=_fraction)
    p.add_argument("--mode", choices=[m.value for m in CompareMode], default="full-delta")
    p.add_argument("--store", required=True, type=Path)
    p.add_argument("--html", type=Path, help="register from a local copy of the page")

    p = sub.add_parser("check", parents=[common, target], help="recheck a target's template")
    p.add_argument("--mode", choices=[m.value for m in CompareMode])

    sub.add_parser("extract", parents=[common, target], help="extract a labeled record")

    p = sub.add_parser("fingerprint", parents=[common], help="fingerprint a local page")
    p.add_argument("--html", required=True, type=Path)
    p.add_argument("--roi-file", required=True, type=Path)
    p.add_argument("--attr", action="append", type=_attr, default=[], metavar="LABEL=TEXT")
    p.add_argument("--occurrence", type=int)
    p.add_argument("--I", dest="I", type=_fraction)
    p.add_argument("--r", dest="r", type=_fraction)
    p.add_argument("--bars", action="store_true", help="also print the bar table")

    p = sub.add_parser("bench", parents=[common], help="run the synthetic benchmark")
    p.add_argument("--classes", type=int, nargs="+", default=[5, 10, 15, 20, 25])
    p.add_argument("--pages", type=int, default=40, help="pages per class")
    p.add_argument("--mutation-rate", type=float, default=0.75)
    p.add_argument("--modes", nargs="+", choices=[m.value for m in CompareMode],
                   default=[m.value for m in CompareMode])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=5)
    return parser


def _read_file(path: Path, what: str) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {what} {str(path)!r}: {exc.strerror}") from None


def _params(args: argparse.Namespace) -> BarParams | None:
    if args.I is None and args.r is None:
        return None
    if args.I is None or args.r is None:
        raise UsageError("--I and --r must be given together")
    return BarParams(args.I, args.r)


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_fingerprint(args: argparse.Namespace) -> int:
    html = _read_file(args.html, "HTML file")
    roi = _read_file(args.roi_file, "RoI file").decode("utf-8")
    spec = RoiSpec(roi, tuple(args.attr), args.occurrence)
    analysis = analyze(html, spec, DEFAULT_TAG_CLASSES)
    fp = page_fingerprint(analysis, _params(args))
    out = fp.to_dict()
    if args.bars and not args.json:
        print(describe(bar_tree(analysis.profile, fp.params)), file=sys.stderr)
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def _config_from_args(args: argparse.Namespace) -> TargetConfig:
    if args.config is not None:
        _read_file(args.config, "config file")
        config = TargetConfig.load(args.config)
        roi_path = Path(config.roi_file)
    else:
        missing = [f for f in ("target_id", "url", "roi_file") if getattr(args, f) is None]
        if missing:
            raise UsageError("init needs --config or " + ", ".join(
                "--" + m.replace("_", "-") for m in missing))
        roi_path = args.roi_file
        config = TargetConfig(
            args.target_id, args.url, str(args.roi_file), tuple(args.attr), _params(args),
            mode=CompareMode(args.mode),
        )
    if not roi_path.is_file():
        raise UsageError(f"RoI file not found: {str(roi_path)!r}")
    return config


def cmd_init(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    html = _read_file(args.html, "HTML file") if args.html else None
    record = Harvester(args.store).register_target(config, html=html)
    fp = record.fingerprint
    _emit(args, {"target_id": config.target_id, "fingerprint": fp.to_dict()},
          f"registered {config.target_id}: d_max={fp.d_max} A_total={fp.A_total} "
          f"delta={fp.delta}")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    html = _read_file(args.html, "HTML file") if args.html else None
    mode = CompareMode(args.mode) if args.mode else None
    report, action = Harvester(args.store).check_target(args.target_id, mode, html=html)
    payload = report.to_dict()
    payload["action"] = action.value
    diff = ", ".join(sorted(report.differing)) or "none"
    _emit(args, payload, f"{args.target_id}: {action.value} (mode {report.mode.value}, "
                         f"differing: {diff}, delta case {report.delta_case.value})")
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    html = _read_file(args.html, "HTML file") if args.html else None
    rec = Harvester(args.store).extract_record(args.target_id, html=html)
    lines = [f"{k}: {v}" for k, v in rec.fields.items()]
    lines += [f"warning: {w}" for w in rec.warnings]
    _emit(args, rec.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    from .bench import BenchConfig, run_bench

    if any(not 1 <= d <= 25 for d in args.classes):
        raise UsageError("--classes values must lie in [1, 25]")
    try:
        config = BenchConfig(
            classes=tuple(args.classes), pages_per_class=args.pages,
            mutation_rate=args.mutation_rate,
            modes=tuple(CompareMode(m) for m in args.modes),
            seed=args.seed, repeats=args.repeats,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_bench(config)
    _emit(args, report.to_dict(), report.table())
    return EXIT_OK


COMMANDS = {
    "init": cmd_init,
    "check": cmd_check,
    "extract": cmd_extract,
    "fingerprint": cmd_fingerprint,
    "bench": cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BarTreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
