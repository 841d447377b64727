"""Command line front end.

Every command prints a human-readable section, a ``---`` line, and then
``key=value`` records.  Exit status is 0 on success, 1 when the checked
property is false, and 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import analysis
from .codes import SlidingBlockCode, apply_code, parse_code_file
from .core import Side, format_point, format_word, parse_point
from .extension import Verdict, aut_roundtrip, extend
from .formats import FormatError
from .oracles import BUILTIN_ORACLES, builtin_oracle, oracle_from_code
from .presentations import EmptyShiftError, ShiftPresentation, contains_point, parse_shift_file

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    def __init__(self):
        self.human: list[str] = []
        self.records: list[str] = []

    def say(self, line: str) -> None:
        self.human.append(line)

    def record(self, line: str) -> None:
        self.records.append(line)

    def emit(self, out) -> None:
        for line in self.human:
            print(line, file=out)
        print("---", file=out)
        for line in self.records:
            print(line, file=out)


def _load(paths: Sequence[str]) -> tuple[dict[str, ShiftPresentation], dict[str, SlidingBlockCode]]:
    shifts: dict[str, ShiftPresentation] = {}
    texts = []
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        try:
            found = parse_shift_file(text)
        except FormatError as exc:
            raise UsageError(f"{path}: {exc}") from None
        shifts.update(found)
        texts.append((path, text))
    codes: dict[str, SlidingBlockCode] = {}
    for path, text in texts:
        try:
            codes.update(parse_code_file(text, shifts))
        except FormatError as exc:
            raise UsageError(f"{path}: {exc}") from None
    return shifts, codes


def _pick(items: dict, name: str | None, kind: str):
    if name is None:
        if len(items) != 1:
            raise UsageError(f"choose a {kind} with --{kind} ({', '.join(items) or 'none defined'})")
        return next(iter(items.values()))
    if name not in items:
        raise UsageError(f"unknown {kind} {name!r}")
    return items[name]


def _flag(value: bool) -> str:
    return str(value).lower()


# -- commands -----------------------------------------------------------------


def cmd_check(args, report: Report) -> int:
    shifts, _ = _load(args.files)
    X = _pick(shifts, args.shift, "shift")
    r = analysis.check_theorem_hypotheses(X, args.scope, args.period_bound)
    report.say(f"shift {X.name or '?'}: {'hypotheses hold' if r.holds else 'hypotheses fail'}")
    if r.witness is not None:
        report.say(f"  witness orbit {format_word(r.witness.canonical)} ({r.reason})")
    if not r.complete:
        report.say(f"  synchronization verified for periods up to {r.period_bound}")
    for line in r.records():
        report.record(line)
    return EXIT_OK if r.holds else EXIT_FALSE


def cmd_entropy(args, report: Report) -> int:
    shifts, _ = _load(args.files)
    X = _pick(shifts, args.shift, "shift")
    tol = 1e-9
    h = analysis.entropy(X, tol)
    report.say(f"entropy of {X.name or '?'}: {h.value:.9f} bits, in [{h.lower!r}, {h.upper!r}]")
    report.record(f"entropy={h.value:.6f} bracket={tol:g}")
    return EXIT_OK


def cmd_orbits(args, report: Report) -> int:
    shifts, _ = _load(args.files)
    X = _pick(shifts, args.shift, "shift")
    orbits = analysis.enumerate_periodic_orbits(X, args.max)
    report.say(f"{len(orbits)} periodic orbits of period at most {args.max}")
    report.record(f"orbits={len(orbits)} max={args.max}")
    for s in orbits:
        report.record(f"orbit={format_word(s.canonical)} period={s.period}")
    return EXIT_OK


def cmd_apply(args, report: Report) -> int:
    shifts, codes = _load(args.files)
    c = _pick(codes, args.code, "code")
    try:
        x = parse_point(args.point, c.domain.alphabet)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not contains_point(c.domain.with_side(x.side), x):
        report.say(f"point {format_point(x)} is not in the domain of {c.name}")
        report.record("in_domain=false")
        return EXIT_FALSE
    y = apply_code(c, x, check=False)
    report.say(f"{format_point(x)} -> {format_point(y)}")
    report.record(f"image={format_point(y)}")
    return EXIT_OK


def _resolve_oracle(args):
    if args.oracle.startswith("example:") or args.oracle in ("5.1", "5.2", "5.3", "5.4", "5.5"):
        try:
            return builtin_oracle(args.oracle), None, None
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    shifts, codes = _load(args.files)
    name = args.oracle.removeprefix("code:")
    c = _pick(codes, name, "code")
    X = _pick(shifts, args.shift, "shift") if args.shift else None
    Y = _pick(shifts, args.codomain, "shift") if args.codomain else None
    return oracle_from_code(c), X, Y


def _extension_report(o, result, report: Report) -> int:
    report.say(f"oracle {o.name}: {result.verdict.value}")
    if result.verdict is Verdict.OBSTRUCTION:
        report.say(f"  no continuous extension at {format_point(result.target)}")
        for a in result.approximations:
            report.say(f"  scale {a.scale}: {a.count} limit windows")
    for line in result.records():
        report.record(line)
    return EXIT_OK if result.verdict is Verdict.EXTENDED else EXIT_FALSE


def cmd_extend(args, report: Report) -> int:
    o, X, Y = _resolve_oracle(args)
    result = extend(o, X, Y, args.period_max, args.scale_max)
    return _extension_report(o, result, report)


def cmd_example(args, report: Report) -> int:
    name = args.name if args.name.startswith("example:") else f"example:{args.name}"
    if name not in BUILTIN_ORACLES:
        raise UsageError(f"unknown example {args.name!r}; choose from 5.1 to 5.5")
    o = builtin_oracle(name)
    result = extend(o, period_max=args.period_max, scale_max=args.scale_max)
    _extension_report(o, result, report)
    # the example is reproduced when the engine finds the obstruction
    return EXIT_OK if result.verdict is Verdict.OBSTRUCTION else EXIT_FALSE


def cmd_roundtrip(args, report: Report) -> int:
    shifts, codes = _load(args.files)
    f = _pick(codes, args.code, "code")
    g = _pick(codes, args.inverse, "code")
    X = _pick(shifts, args.shift, "shift") if args.shift else f.domain
    try:
        ok = aut_roundtrip(f, g, X, args.period_max or 6, args.scale_max or 8)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report.say(f"restriction and extension of {f.name} {'agree' if ok else 'disagree'}")
    report.record(f"roundtrip={_flag(ok)}")
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symshift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="check synchronization and isolation hypotheses")
    p.add_argument("files", nargs="+")
    p.add_argument("--shift")
    p.add_argument("--scope", choices=["two", "one"], default="two")
    p.add_argument("--period-bound", type=int, default=analysis.DEFAULT_PERIOD_BOUND)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("entropy", help="topological entropy in bits")
    p.add_argument("files", nargs="+")
    p.add_argument("--shift")
    p.set_defaults(run=cmd_entropy)

    p = sub.add_parser("orbits", help="list periodic orbits")
    p.add_argument("files", nargs="+")
    p.add_argument("--shift")
    p.add_argument("--max", type=int, default=6)
    p.set_defaults(run=cmd_orbits)

    p = sub.add_parser("apply", help="apply a sliding block code to a point")
    p.add_argument("files", nargs="+")
    p.add_argument("--code")
    p.add_argument("--point", required=True)
    p.set_defaults(run=cmd_apply)

    for verb, fn, help_text in (
        ("extend", cmd_extend, "extend an oracle to periodic points"),
        ("example", cmd_example, "reproduce a counterexample map"),
    ):
        p = sub.add_parser(verb, help=help_text)
        if verb == "extend":
            p.add_argument("files", nargs="*")
            p.add_argument("--oracle", required=True)
            p.add_argument("--shift")
            p.add_argument("--codomain")
        else:
            p.add_argument("name")
        p.add_argument("--scale-max", type=int)
        p.add_argument("--period-max", type=int)
        p.set_defaults(run=fn)

    p = sub.add_parser("roundtrip", help="restrict an automorphism and extend it back")
    p.add_argument("files", nargs="+")
    p.add_argument("--code", required=True)
    p.add_argument("--inverse", required=True)
    p.add_argument("--shift")
    p.add_argument("--scale-max", type=int)
    p.add_argument("--period-max", type=int)
    p.set_defaults(run=cmd_roundtrip)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    report = Report()
    try:
        code = args.run(args, report)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR
    except (EmptyShiftError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR
    report.emit(out)
    return code


def main() -> None:
    sys.exit(run())
