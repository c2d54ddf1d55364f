"""Command-line entry point: ``qcardgame {query,entanglement,analyze,play}``.

Exit status is 0 on success, 2 for usage or parse errors and 1 when an
internal check fails (including a non-separable entanglement verdict).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .entanglement import DEFAULT_TOL, separability_report
from .errors import CardGameError
from .game import Strategy, exact_analysis, monte_carlo
from .oracle import build_oracle, format_row, parse_row
from .query import run_query
from .rng import MASK64

PLAY_FIELDS = ["strategy", "rounds", "seed", "alice_wins", "bob_wins", "refusals", "alice_mean_payoff"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    cards: str | None = None
    strategy: str | None = None
    rounds: int | None = None
    seed: int = 0
    format: str = "text"
    show_stages: bool = False
    workers: int | None = None


ZERO_SNAP = 1e-14


def fmt_num(x: float) -> float:
    """Round to 10 significant digits; rounding noise and -0.0 become 0.0."""
    x = float(x)
    if abs(x) < ZERO_SNAP:
        return 0.0
    return float(f"{x:.10g}")


def _num_text(x: float) -> str:
    return f"{fmt_num(x):.10g}"


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _stage_pairs(state: np.ndarray) -> list[list[float]]:
    return [[fmt_num(a.real), fmt_num(a.imag)] for a in state]


def _frac(x: Fraction) -> str:
    return str(x)


def _parse_cards(cfg: RunConfig):
    if cfg.cards is None:
        raise UsageError(f"{cfg.command} requires --cards")
    try:
        return parse_row(cfg.cards)
    except CardGameError as e:
        raise UsageError(str(e)) from None


def _parse_strategy(cfg: RunConfig) -> Strategy:
    if cfg.strategy is None:
        raise UsageError(f"{cfg.command} requires --strategy")
    try:
        return Strategy.parse(cfg.strategy)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_query(cfg: RunConfig) -> tuple[int, str]:
    row = _parse_cards(cfg)
    transcript = run_query(build_oracle(row))
    if transcript.result != row:
        return 1, f"query returned {format_row(transcript.result)} for cards {cfg.cards}\n"
    if cfg.format == "json":
        doc = {
            "cards": cfg.cards,
            "result": format_row(transcript.result),
            "stages": [_stage_pairs(s) for s in transcript.stages],
        }
        return 0, _dumps(doc) + "\n"
    lines = [f"cards: {cfg.cards}", f"result: {format_row(transcript.result)}"]
    if cfg.show_stages:
        names = ["initial", "after H layer", "after oracle", "after H layer"]
        for i, (name, state) in enumerate(zip(names, transcript.stages)):
            lines.append(f"stage {i} ({name}):")
            for idx, a in enumerate(state):
                lines.append(f"  |{idx:03b}> {_num_text(a.real)} {_num_text(a.imag)}")
    return 0, "\n".join(lines) + "\n"


def cmd_entanglement(cfg: RunConfig) -> tuple[int, str]:
    row = _parse_cards(cfg)
    report = separability_report(run_query(build_oracle(row)), DEFAULT_TOL)
    status = 0 if report.separable else 1
    if cfg.format == "json":
        doc = {
            "cards": cfg.cards,
            "stages": [
                {"purities": [fmt_num(p) for p in st.purities], "separable": st.separable}
                for st in report.stages
            ],
            "separable": report.separable,
        }
        return status, _dumps(doc) + "\n"
    lines = [f"cards: {cfg.cards}"]
    for i, st in enumerate(report.stages):
        purities = " ".join(_num_text(p) for p in st.purities)
        lines.append(f"stage {i}: purities {purities} {'product' if st.separable else 'ENTANGLED'}")
    lines.append(f"separable: {'yes' if report.separable else 'no'}")
    return status, "\n".join(lines) + "\n"


def cmd_analyze(cfg: RunConfig) -> tuple[int, str]:
    strategy = _parse_strategy(cfg)
    res = exact_analysis(strategy)
    if res.p_alice_win + res.p_bob_win + res.p_refuse != 1:
        return 1, "probabilities do not sum to 1\n"
    values = {
        "p_alice_win": res.p_alice_win,
        "p_bob_win": res.p_bob_win,
        "p_refuse": res.p_refuse,
        "alice_expected_payoff": res.alice_expected_payoff,
    }
    if cfg.format == "json":
        doc = {"strategy": strategy.value, **{k: _frac(v) for k, v in values.items()}}
        return 0, _dumps(doc) + "\n"
    lines = [f"strategy: {strategy.value}"]
    lines += [f"{k}: {_frac(v)} ({_num_text(float(v))})" for k, v in values.items()]
    if res.note:
        lines.append(f"note: {res.note}")
    return 0, "\n".join(lines) + "\n"


def cmd_play(cfg: RunConfig) -> tuple[int, str]:
    strategy = _parse_strategy(cfg)
    if cfg.rounds is None or cfg.rounds < 1:
        raise UsageError("play requires --rounds >= 1")
    if not 0 <= cfg.seed <= MASK64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    s = monte_carlo(strategy, cfg.rounds, cfg.seed, workers=cfg.workers)
    if s.alice_wins + s.bob_wins + s.refusals != s.rounds:
        return 1, "round counts do not add up\n"
    row = {
        "strategy": strategy.value,
        "rounds": s.rounds,
        "seed": s.seed,
        "alice_wins": s.alice_wins,
        "bob_wins": s.bob_wins,
        "refusals": s.refusals,
        "alice_mean_payoff": fmt_num(s.alice_mean_payoff),
    }
    if cfg.format == "json":
        return 0, _dumps(row) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=PLAY_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerow({**row, "alice_mean_payoff": _num_text(s.alice_mean_payoff)})
        return 0, buf.getvalue()
    row["alice_mean_payoff"] = _num_text(s.alice_mean_payoff)
    return 0, "".join(f"{k}: {v}\n" for k, v in row.items())


COMMANDS = {
    "query": cmd_query,
    "entanglement": cmd_entanglement,
    "analyze": cmd_analyze,
    "play": cmd_play,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcardgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, formats in [
        ("query", ["text", "json"]),
        ("entanglement", ["text", "json"]),
        ("analyze", ["text", "json"]),
        ("play", ["text", "json", "csv"]),
    ]:
        p = sub.add_parser(name)
        if name in ("query", "entanglement"):
            p.add_argument("--cards", help="upper faces as three bits, e.g. 001")
        if name in ("analyze", "play"):
            p.add_argument("--strategy", help=", ".join(s.value for s in Strategy))
        if name == "play":
            p.add_argument("--rounds", type=int)
            p.add_argument("--seed", type=int, default=0)
        if name == "query":
            p.add_argument("--show-stages", action="store_true")
        p.add_argument("--format", choices=formats, default="text")
    return parser


def main(argv: list[str] | None = None, *, workers: int | None = None) -> int:
    """Run the CLI. ``workers`` parallelizes ``play``; output does not depend on it."""
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        cards=getattr(args, "cards", None),
        strategy=getattr(args, "strategy", None),
        rounds=getattr(args, "rounds", None),
        seed=getattr(args, "seed", 0),
        format=args.format,
        show_stages=getattr(args, "show_stages", False),
        workers=workers,
    )
    try:
        status, out = COMMANDS[cfg.command](cfg)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {cfg.command}: error: {e}", file=sys.stderr)
        return 2
    except CardGameError as e:
        print(f"{parser.prog} {cfg.command}: internal error: {e}", file=sys.stderr)
        return 1
    # a failed entanglement verdict is still a report; other failures are diagnostics
    stream = sys.stdout if status == 0 or cfg.command == "entanglement" else sys.stderr
    stream.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
