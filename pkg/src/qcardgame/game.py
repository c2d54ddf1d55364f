"""
The three-card game: shuffling, Bob's strategies, settlement, Monte Carlo
estimation and exact enumeration.

Alice's box holds a circle/circle card, a dot/dot card and a mixed card.
Shaking it produces one of 12 equally likely arrangements (6 slot orders
times 2 orientations of the mixed card; flipping a double-faced card changes
nothing observable). Bob draws a card without flipping it; Alice wins a coin
when its hidden face matches the shown one and loses a coin otherwise. Bob
may refuse a round, which settles at 0 for both.

Randomness per round, in order of consumption from the round's substream:

* ``shuffle``: one ``below(12)`` draw (arrangement index, see ``ARRANGEMENTS``)
* ``naive``, ``always-refuse``, ``quantum``: one ``below(3)`` for the drawn slot
* ``peek-same``: one ``below(3)`` for the peeked slot, which is also drawn
* ``peek-other``: ``below(3)`` for the peeked slot, then ``below(2)`` picking
  the drawn slot among the remaining two in ascending order

The quantum query never consumes randomness.
"""
from __future__ import annotations

import itertools
import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import AmbiguousRow, EmptyRun, SlotOutOfRange
from .oracle import UpperRow, as_row, build_oracle
from .query import run_query
from .rng import MASK64, SplitMix64


class Pattern(IntEnum):
    CIRCLE = 0
    DOT = 1

    def flipped(self) -> "Pattern":
        return Pattern(1 - self)


class CardKind(Enum):
    CIRCLE_CIRCLE = "CC"
    DOT_DOT = "DD"
    MIXED = "CD"


class Slot(NamedTuple):
    kind: CardKind
    up: Pattern


BoxArrangement = tuple[Slot, Slot, Slot]


class Strategy(str, Enum):
    NAIVE = "naive"
    ALWAYS_REFUSE = "always-refuse"
    PEEK_SAME = "peek-same"
    PEEK_OTHER = "peek-other"
    QUANTUM = "quantum"

    @classmethod
    def parse(cls, name: str) -> "Strategy":
        try:
            return cls(name)
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {name!r}; valid names: {valid}") from None


class Decision(Enum):
    PLAY = "play"
    REFUSE = "refuse"


def _slot(kind: CardKind, mixed_up: Pattern) -> Slot:
    if kind is CardKind.CIRCLE_CIRCLE:
        return Slot(kind, Pattern.CIRCLE)
    if kind is CardKind.DOT_DOT:
        return Slot(kind, Pattern.DOT)
    return Slot(kind, mixed_up)


ARRANGEMENTS: tuple[BoxArrangement, ...] = tuple(
    tuple(_slot(kind, mixed_up) for kind in order)  # type: ignore[misc]
    for order in itertools.permutations(CardKind)
    for mixed_up in Pattern
)


def check_arrangement(arr: Sequence[Slot]) -> BoxArrangement:
    arr = tuple(Slot(CardKind(k), Pattern(u)) for k, u in arr)
    if len(arr) != 3 or {s.kind for s in arr} != set(CardKind):
        raise ValueError(f"box must hold one card of each kind, got {arr}")
    for s in arr:
        if s.kind is not CardKind.MIXED and s != _slot(s.kind, s.up):
            raise ValueError(f"{s.kind.name} card cannot show {s.up.name}")
    return arr  # type: ignore[return-value]


def shuffle(rng: SplitMix64) -> BoxArrangement:
    """Uniform arrangement from a single bias-free ``below(12)`` draw."""
    return ARRANGEMENTS[rng.below(len(ARRANGEMENTS))]


def upper_row(arr: BoxArrangement) -> UpperRow:
    return tuple(int(s.up) for s in arr)  # type: ignore[return-value]


def draw(arr: BoxArrangement, slot: int) -> tuple[Pattern, Pattern]:
    """(shown, down) faces of the card in ``slot``, taken out without flipping."""
    if not 0 <= slot < len(arr):
        raise SlotOutOfRange(f"slot {slot} out of range 0..2")
    card = arr[slot]
    down = card.up.flipped() if card.kind is CardKind.MIXED else card.up
    return card.up, down


def decide_quantum(row: Sequence[int], shown: Pattern) -> Decision:
    """Refuse when the shown face is the row's minority pattern.

    The minority face can only be shown by the matching double-faced card,
    so playing it is a certain loss for Bob.
    """
    row = as_row(row)
    weight = sum(row)
    if weight in (0, 3):
        raise AmbiguousRow(f"row {row} has no minority pattern")
    minority = Pattern.DOT if weight == 1 else Pattern.CIRCLE
    return Decision.REFUSE if Pattern(shown) == minority else Decision.PLAY


Info = Union[None, tuple[int, Pattern], UpperRow]


@dataclass(frozen=True)
class RoundOutcome:
    arrangement: BoxArrangement
    info: Info  # None, (peeked slot, pattern) or the full upper row
    drawn_slot: int
    shown: Pattern
    decision: Decision
    alice_payoff: int

    @property
    def bob_payoff(self) -> int:
        return -self.alice_payoff


def _choices(strategy: Strategy) -> list[tuple[int | None, int]]:
    """Equally likely (peeked slot, drawn slot) pairs for a strategy."""
    if strategy is Strategy.PEEK_SAME:
        return [(p, p) for p in range(3)]
    if strategy is Strategy.PEEK_OTHER:
        return [(p, d) for p in range(3) for d in range(3) if d != p]
    return [(None, d) for d in range(3)]


def resolve_round(
    strategy: Strategy, arr: BoxArrangement, peek_slot: int | None, draw_slot: int, rng=None
) -> RoundOutcome:
    """Play one round once the random choices are fixed."""
    info: Info = None
    if strategy is Strategy.QUANTUM:
        info = run_query(build_oracle(upper_row(arr)), rng).result
    elif peek_slot is not None:
        info = (peek_slot, arr[peek_slot].up)

    shown, down = draw(arr, draw_slot)

    if strategy is Strategy.NAIVE:
        decision = Decision.PLAY
    elif strategy is Strategy.QUANTUM:
        decision = decide_quantum(info, shown)  # type: ignore[arg-type]
    elif strategy is Strategy.PEEK_OTHER:
        decision = Decision.PLAY if info[1] == shown else Decision.REFUSE  # type: ignore[index]
    else:
        # always-refuse; peek-same too, since a peek at the drawn card leaves the 2/3 match odds unchanged
        decision = Decision.REFUSE

    if decision is Decision.REFUSE:
        payoff = 0
    else:
        payoff = 1 if down == shown else -1
    return RoundOutcome(arr, info, draw_slot, shown, decision, payoff)


def play_round(strategy: Strategy, rng: SplitMix64) -> RoundOutcome:
    strategy = Strategy(strategy)
    arr = shuffle(rng)
    if strategy is Strategy.PEEK_SAME:
        peek = draw_slot = rng.below(3)
    elif strategy is Strategy.PEEK_OTHER:
        peek = rng.below(3)
        draw_slot = [s for s in range(3) if s != peek][rng.below(2)]
    else:
        peek, draw_slot = None, rng.below(3)
    return resolve_round(strategy, arr, peek, draw_slot, rng)


@dataclass(frozen=True)
class PayoffSummary:
    strategy: Strategy
    rounds: int
    seed: int
    alice_wins: int
    bob_wins: int
    refusals: int

    @property
    def alice_mean_payoff(self) -> float:
        return (self.alice_wins - self.bob_wins) / self.rounds


def _tally(strategy: Strategy, seed: int, start: int, stop: int) -> tuple[int, int, int]:
    alice = bob = refused = 0
    for i in range(start, stop):
        payoff = play_round(strategy, SplitMix64.for_round(seed, i)).alice_payoff
        if payoff > 0:
            alice += 1
        elif payoff < 0:
            bob += 1
        else:
            refused += 1
    return alice, bob, refused


def monte_carlo(
    strategy: Strategy, rounds: int, seed: int = 0, workers: int | None = None
) -> PayoffSummary:
    """Play ``rounds`` independent rounds; round i uses substream (seed, i).

    ``workers`` > 1 spreads contiguous blocks of rounds over processes. The
    counts are integer sums, so the summary does not depend on ``workers``.
    """
    strategy = Strategy(strategy)
    if rounds < 1:
        raise EmptyRun("rounds must be at least 1")
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")

    if workers is None or workers <= 1:
        counts = [_tally(strategy, seed, 0, rounds)]
    else:
        workers = min(workers, os.cpu_count() or 1, rounds) or 1
        bounds = [rounds * w // workers for w in range(workers + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(
                pool.map(
                    _tally,
                    [strategy] * workers,
                    [seed] * workers,
                    bounds[:-1],
                    bounds[1:],
                )
            )
    alice, bob, refused = (sum(c[j] for c in counts) for j in range(3))
    return PayoffSummary(strategy, rounds, seed, alice, bob, refused)


PEEK_OTHER_NOTE = (
    "With one classical peek at another card and the option to refuse, "
    "Bob already breaks even; the quantum query keeps the same payoff "
    "while letting him play twice as often (2/3 vs 1/3 of rounds)."
)


@dataclass(frozen=True)
class ExactResult:
    strategy: Strategy
    p_alice_win: Fraction
    p_bob_win: Fraction
    p_refuse: Fraction
    note: str = ""

    @property
    def alice_expected_payoff(self) -> Fraction:
        return self.p_alice_win - self.p_bob_win

    @property
    def p_play(self) -> Fraction:
        return 1 - self.p_refuse

    @property
    def p_alice_win_given_play(self) -> Fraction | None:
        return self.p_alice_win / self.p_play if self.p_play else None


def exact_analysis(strategy: Strategy) -> ExactResult:
    """Exact outcome probabilities by enumerating arrangements and Bob's uniform choices."""
    strategy = Strategy(strategy)
    choices = _choices(strategy)
    weight = Fraction(1, len(ARRANGEMENTS) * len(choices))
    totals = {1: Fraction(0), -1: Fraction(0), 0: Fraction(0)}
    for arr in ARRANGEMENTS:
        for peek, slot in choices:
            totals[resolve_round(strategy, arr, peek, slot).alice_payoff] += weight
    note = PEEK_OTHER_NOTE if strategy is Strategy.PEEK_OTHER else ""
    return ExactResult(strategy, totals[1], totals[-1], totals[0], note)
