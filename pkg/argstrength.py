#!/usr/bin/env python3
"""
argstrength - coherent probability bounds and argument strength.

    python argstrength.py check bet2.arg
    python argstrength.py strength a1.arg a2.arg a3.arg a4.arg --json
    python argstrength.py ellsberg --variant exact

Exit status: 0 success, 1 usage/parse/file error, 2 incoherent premises.
"""

import argparse
import dataclasses
import json
import logging
import math
import sys
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from coherence import (
    Analysis,
    CoherenceVerdict,
    IncoherentPremisesError,
    analyze,
    check_coherence,
    enumerate_constituents,
)
from config import (
    VARIANTS,
    get_max_atoms,
    get_places,
    get_variant,
    load_config,
    set_max_atoms,
    set_places,
    set_variant,
)
from dsl import ParseError, parse_argument, render_event, render_formula
from ellsberg import Choice, Variant, predict_from_ratings, table1
from logger import log, set_console_level
from model import ArgStrengthError, Argument, ConclusionInterval, Witness
from strength import PreferenceOrder, rank, strength

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCOHERENT = 2


class UsageError(Exception):
    """Bad command line."""
    pass


class CliError(Exception):
    """A failure to report to the user with exit status 1."""
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse would exit with 2, which is reserved for incoherence
        raise UsageError(message)


@dataclass(frozen=True)
class Settings:
    json: bool
    places: int
    max_atoms: int
    witness: bool


# --- Formatting --------------------------------------------------------------


def round_half_up(value: Fraction, places: int) -> str:
    """Exact round-half-up of a rational, as fixed-point text with exactly `places` decimals."""
    q = math.floor(value * 10 ** places + Fraction(1, 2))
    # string construction and "f" formatting are exact at any precision
    return format(Decimal(f"{q}E-{places}"), "f")


def number(value: Fraction, places: int) -> dict:
    return {"exact": str(value), "decimal": round_half_up(value, places)}


def world_label(atoms: tuple[str, ...], world: tuple[bool, ...]) -> str:
    return " ".join(a if v else f"¬{a}" for a, v in zip(atoms, world))


def witness_record(witness: Witness | None, places: int) -> list | None:
    if witness is None:
        return None
    return [
        {"world": dict(zip(witness.atoms, world)), "weight": number(weight, places)}
        for world, weight in zip(witness.worlds, witness.weights)
    ]


def witness_text(witness: Witness) -> str:
    return ", ".join(
        f"{world_label(witness.atoms, world)}: {weight}"
        for world, weight in zip(witness.worlds, witness.weights)
        if weight
    )


def coherence_record(verdict: CoherenceVerdict) -> dict:
    return {
        "status": verdict.status.value,
        "zero_layers": [[render_formula(event) for event in layer] for layer in verdict.zero_layers],
    }


def interval_record(interval: ConclusionInterval, settings: Settings) -> dict:
    record = {
        "interval": {
            "lower": number(interval.lower, settings.places),
            "upper": number(interval.upper, settings.places),
        },
        "vacuous_reason": interval.vacuous_reason,
    }
    if settings.witness:
        record["witnesses"] = {
            "lower": witness_record(interval.lower_witness, settings.places),
            "upper": witness_record(interval.upper_witness, settings.places),
        }
    return record


def strength_record(interval: ConclusionInterval, places: int) -> dict:
    score = strength(interval)
    return {
        "value": number(score.value, places),
        "precision_factor": number(score.precision_factor, places),
        "location_factor": number(score.location_factor, places),
    }


def emit(document: dict) -> None:
    print(json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False))


def document(command: str, status: str, records: list, **extra) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "status": status, "records": records, **extra}


# --- Loading -----------------------------------------------------------------


def load_argument(path: str, settings: Settings) -> Argument:
    """Read and parse a `.arg` file; an unlabelled argument is named after its file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise CliError(f"{path}: cannot read file ({e})") from None
    try:
        argument = parse_argument(text, settings.max_atoms)
    except ParseError as e:
        raise CliError(f"{path}:{e}") from None
    if not argument.label:
        argument = dataclasses.replace(argument, label=Path(path).stem)
    log.debug(f"Loaded '{argument.label}' from {path}")
    return argument


def analyze_files(paths: list[str], settings: Settings) -> list[tuple[str, Analysis]]:
    return [(path, analyze(load_argument(path, settings), settings.max_atoms)) for path in paths]


def report_incoherent(command: str, path: str, analysis: Analysis, settings: Settings) -> int:
    label = analysis.argument.label
    log.info(f"'{label}' ({path}) is incoherent; aborting {command}")
    if settings.json:
        record = {"label": label, "file": path, "coherence": coherence_record(analysis.verdict)}
        emit(document(command, "incoherent", [record]))
    print(f"{path}: premises of '{label}' are incoherent", file=sys.stderr)
    return EXIT_INCOHERENT


def order_record(order: PreferenceOrder) -> list[list[str]]:
    return order.labels()


# --- Commands ----------------------------------------------------------------


def cmd_check(args, settings: Settings) -> int:
    """Coherence of the premises; exit 0 coherent, 2 incoherent."""
    argument = load_argument(args.file, settings)
    space = enumerate_constituents(argument.atoms, argument.constraints, settings.max_atoms)
    verdict = check_coherence(space, argument.premises)

    if settings.json:
        record = {"label": argument.label, "file": args.file, "coherence": coherence_record(verdict)}
        if settings.witness:
            record["witness"] = witness_record(verdict.witness, settings.places)
        emit(document("check", verdict.status.value, [record]))
    else:
        print(f"{argument.label}: {verdict.status.value}")
        for i, layer in enumerate(verdict.zero_layers, start=1):
            print(f"  zero layer {i}: {', '.join(render_formula(e) for e in layer)}")
        if settings.witness and verdict.witness is not None:
            print(f"  witness: {witness_text(verdict.witness)}")
    return EXIT_OK if verdict.is_coherent else EXIT_INCOHERENT


def _print_interval_line(label: str, interval: ConclusionInterval, settings: Settings, with_strength: bool) -> None:
    p = settings.places
    line = f"{label:<16} [{round_half_up(interval.lower, p)}, {round_half_up(interval.upper, p)}]"
    line += f"  exact [{interval.lower}, {interval.upper}]"
    if with_strength:
        score = strength(interval)
        line += f"  s = {round_half_up(score.value, p)} ({score.value})"
    print(line)
    if interval.vacuous_reason:
        print(f"  vacuous: {interval.vacuous_reason}")
    if settings.witness:
        if interval.lower_witness is not None:
            print(f"  lower witness: {witness_text(interval.lower_witness)}")
        if interval.upper_witness is not None:
            print(f"  upper witness: {witness_text(interval.upper_witness)}")


def _interval_command(command: str, args, settings: Settings, with_strength: bool, with_order: bool) -> int:
    analyses = analyze_files(args.files, settings)
    for path, analysis in analyses:
        if analysis.interval is None:
            return report_incoherent(command, path, analysis, settings)

    records = []
    for path, analysis in analyses:
        record = {
            "label": analysis.argument.label,
            "file": path,
            "conclusion": render_event(analysis.argument.conclusion),
            "coherence": coherence_record(analysis.verdict),
            **interval_record(analysis.interval, settings),
        }
        if with_strength:
            record["strength"] = strength_record(analysis.interval, settings.places)
        records.append(record)

    order = rank([(a.argument.label, a.interval) for _, a in analyses]) if with_order else None

    if settings.json:
        extra = {"order": order_record(order)} if order is not None else {}
        emit(document(command, "ok", records, **extra))
    else:
        for _, analysis in analyses:
            _print_interval_line(analysis.argument.label, analysis.interval, settings, with_strength)
        if order is not None:
            print(f"order: {order}")
    return EXIT_OK


def cmd_bounds(args, settings: Settings) -> int:
    """Best-possible coherent bounds on the conclusion."""
    return _interval_command("bounds", args, settings, with_strength=False, with_order=False)


def cmd_strength(args, settings: Settings) -> int:
    """Bounds and strength per file; a preference order once there are two or more."""
    return _interval_command("strength", args, settings, with_strength=True, with_order=len(args.files) >= 2)


def cmd_rank(args, settings: Settings) -> int:
    """Preference order of the arguments by strength."""
    return _interval_command("rank", args, settings, with_strength=True, with_order=True)


def cmd_ellsberg(args, settings: Settings) -> int:
    """The four Ellsberg arguments, their strengths and the induced strategy."""
    variant = Variant(args.variant or get_variant())
    rows = table1(variant)
    prediction = predict_from_ratings(*(row.score.value for row in rows))
    order = rank([(row.label, row.interval) for row in rows])

    if settings.json:
        records = [
            {
                "bet": row.bet,
                "label": row.label,
                "conclusion": f"P({row.event})",
                **interval_record(row.interval, settings),
                "strength": strength_record(row.interval, settings.places),
            }
            for row in rows
        ]
        emit(document(
            "ellsberg", "ok", records,
            variant=variant.value,
            preferences={"bet1_vs_bet2": prediction.choice12.value, "bet3_vs_bet4": prediction.choice34.value},
            strategy=prediction.strategy.value,
            order=order_record(order),
        ))
        return EXIT_OK

    p = settings.places
    print(f"Ellsberg urn, {variant.value} variant: {VARIANTS[variant.value]}")
    print(f"{'bet':<6} {'arg':<4} {'conclusion':<12} {'interval':<20} {'s':<8} exact s")
    for row in rows:
        interval = f"[{round_half_up(row.interval.lower, p)}, {round_half_up(row.interval.upper, p)}]"
        print(f"{row.bet:<6} {row.label:<4} {'P(' + row.event + ')':<12} {interval:<20} "
              f"{round_half_up(row.score.value, p):<8} {row.score.value}")
    print(f"preferences: {_preference_text(prediction.choice12, Choice.BET1, Choice.BET2)}, "
          f"{_preference_text(prediction.choice34, Choice.BET3, Choice.BET4)}")
    print(f"order: {order}")
    print(f"strategy: {prediction.strategy.value}")
    return EXIT_OK


def _preference_text(choice: Choice, first: Choice, second: Choice) -> str:
    if choice is Choice.TIE:
        return f"{first.value} ~ {second.value}"
    other = second if choice is first else first
    return f"{choice.value} ≻ {other.value}"


def _rating(text: str) -> Fraction:
    try:
        return Fraction(text.replace(",", "."))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rating: '{text}'") from None


def cmd_predict(args, settings: Settings) -> int:
    """Bet choices and strategy predicted from four argument ratings."""
    prediction = predict_from_ratings(*args.ratings)
    if settings.json:
        record = {
            "ratings": [str(r) for r in args.ratings],
            "choice12": prediction.choice12.value,
            "choice34": prediction.choice34.value,
            "strategy": prediction.strategy.value,
        }
        emit(document("predict", "ok", [record]))
    else:
        print(f"{_preference_text(prediction.choice12, Choice.BET1, Choice.BET2)}, "
              f"{_preference_text(prediction.choice34, Choice.BET3, Choice.BET4)}")
        print(f"strategy: {prediction.strategy.value}")
    return EXIT_OK


SETTERS = {
    "max_atoms": (int, set_max_atoms),
    "places": (int, set_places),
    "variant": (str, set_variant),
}


def cmd_config(args, settings: Settings) -> int:
    """Show the stored settings, or change one of them."""
    if args.key is not None:
        if args.value is None:
            raise CliError(f"missing value for '{args.key}'")
        convert, setter = SETTERS[args.key]
        try:
            setter(convert(args.value))
        except ValueError as e:
            raise CliError(str(e)) from None
        log.info(f"Set {args.key} = {args.value}")

    config = load_config()
    if settings.json:
        emit(document("config", "ok", [{"key": key, "value": config[key]} for key in sorted(SETTERS)]))
    else:
        for key in sorted(SETTERS):
            print(f"{key} = {config[key]}")
    return EXIT_OK


# --- Argument parsing --------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _places(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: '{text}'") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must not be negative: {value}")
    return value


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Accepted before or after the subcommand; the subcommand copies only set what was given.
    flag = argparse.SUPPRESS if suppress else False
    value = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=flag, help="machine-readable output")
    parser.add_argument("--places", type=_places, default=value, help="decimal places for display (config default 4)")
    parser.add_argument("--max-atoms", type=_positive_int, default=value, help="atom budget (config default 20)")
    parser.add_argument("--witness", action="store_true", default=flag, help="include attaining distributions")
    parser.add_argument("-v", "--verbose", action="store_true", default=flag, help="debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="argstrength", description="Coherent probability bounds and argument strength.")
    _add_global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _add_global_flags(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", parents=[common], help="check coherence of the premises")
    check.add_argument("file")
    check.set_defaults(handler=cmd_check)

    bounds = sub.add_parser("bounds", parents=[common], help="propagate bounds to the conclusion")
    bounds.add_argument("files", nargs=1, metavar="file")
    bounds.set_defaults(handler=cmd_bounds)

    for name, handler, text in (
        ("strength", cmd_strength, "bounds and strength of each argument"),
        ("rank", cmd_rank, "order arguments by strength"),
    ):
        command = sub.add_parser(name, parents=[common], help=text)
        command.add_argument("files", nargs="+", metavar="file")
        command.set_defaults(handler=handler)

    ellsberg = sub.add_parser("ellsberg", parents=[common], help="reproduce the Ellsberg argument table")
    ellsberg.add_argument("--variant", choices=sorted(VARIANTS), default=None)
    ellsberg.set_defaults(handler=cmd_ellsberg)

    predict = sub.add_parser("predict", parents=[common], help="predict bet choices from four ratings")
    predict.add_argument("ratings", nargs=4, type=_rating, metavar="rating")
    predict.set_defaults(handler=cmd_predict)

    configure = sub.add_parser("config", parents=[common], help="show or change stored settings")
    configure.add_argument("key", nargs="?", choices=sorted(SETTERS))
    configure.add_argument("value", nargs="?")
    configure.set_defaults(handler=cmd_config)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if args.verbose:
        set_console_level(logging.DEBUG)
    settings = Settings(
        json=args.json,
        places=args.places if args.places is not None else get_places(),
        max_atoms=args.max_atoms if args.max_atoms is not None else get_max_atoms(),
        witness=args.witness,
    )
    log.info(f"Running '{args.command}'")

    try:
        return args.handler(args, settings)
    except IncoherentPremisesError as e:
        log.info(f"'{args.command}' stopped: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INCOHERENT
    except (CliError, ArgStrengthError) as e:
        log.info(f"'{args.command}' failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        log.exception(f"Unexpected error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
