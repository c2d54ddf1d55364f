from collections import Counter
from fractions import Fraction
from itertools import product
from math import sqrt

import pytest

from qcardgame.errors import AmbiguousRow, EmptyRun, SlotOutOfRange
from qcardgame.game import (
    ARRANGEMENTS,
    CardKind,
    Decision,
    Pattern,
    Slot,
    Strategy,
    check_arrangement,
    decide_quantum,
    draw,
    exact_analysis,
    monte_carlo,
    play_round,
    resolve_round,
    shuffle,
    upper_row,
)
from qcardgame.oracle import ALL_ROWS
from qcardgame.rng import SplitMix64

from . import enumeration as en
from .conftest import cached_monte_carlo

CC, DD, MX = CardKind.CIRCLE_CIRCLE, CardKind.DOT_DOT, CardKind.MIXED
C, D = Pattern.CIRCLE, Pattern.DOT


def test_pattern_encoding():
    assert int(C) == 0 and int(D) == 1


def test_twelve_distinct_valid_arrangements():
    assert len(set(ARRANGEMENTS)) == 12
    for arr in ARRANGEMENTS:
        assert check_arrangement(arr) == arr
        assert sum(upper_row(arr)) in (1, 2)


def test_check_arrangement_rejects():
    with pytest.raises(ValueError):
        check_arrangement([(CC, C), (CC, C), (MX, D)])
    with pytest.raises(ValueError):
        check_arrangement([(CC, D), (DD, D), (MX, D)])


def test_shuffle_uniform():
    rng = SplitMix64(1234)
    n = 120_000
    counts = Counter(shuffle(rng) for _ in range(n))
    sigma = sqrt((1 / 12) * (11 / 12) / n)
    assert set(counts) == set(ARRANGEMENTS)
    for arr in ARRANGEMENTS:
        assert abs(counts[arr] / n - 1 / 12) <= 5 * sigma


def test_shuffle_deterministic():
    a, b = SplitMix64(77), SplitMix64(77)
    assert [shuffle(a) for _ in range(50)] == [shuffle(b) for _ in range(50)]


def test_upper_row_examples():
    arr = (Slot(CC, C), Slot(DD, D), Slot(MX, C))
    assert upper_row(arr) == (0, 1, 0)
    for arr in ARRANGEMENTS:
        mixed_up = next(s.up for s in arr if s.kind is MX)
        row = upper_row(arr)
        if mixed_up is C:
            assert row.count(1) == 1
        else:
            assert row.count(0) == 1


def test_draw():
    arr = (Slot(CC, C), Slot(DD, D), Slot(MX, C))
    assert draw(arr, 0) == (C, C)
    assert draw(arr, 1) == (D, D)
    assert draw(arr, 2) == (C, D)
    assert draw((Slot(MX, D), Slot(DD, D), Slot(CC, C)), 0) == (D, C)
    with pytest.raises(SlotOutOfRange):
        draw(arr, 3)


def test_decide_quantum_examples():
    assert decide_quantum((0, 0, 1), D) is Decision.REFUSE
    assert decide_quantum((0, 0, 1), C) is Decision.PLAY
    assert decide_quantum((1, 1, 0), D) is Decision.PLAY
    assert decide_quantum((1, 1, 0), C) is Decision.REFUSE
    for row in [(0, 0, 0), (1, 1, 1)]:
        with pytest.raises(AmbiguousRow):
            decide_quantum(row, C)


def test_quantum_never_plays_certain_loss_and_plays_only_undetermined():
    by_info = {}
    for arr in ARRANGEMENTS:
        row = upper_row(arr)
        for slot in range(3):
            shown, down = draw(arr, slot)
            decision = decide_quantum(row, shown)
            if decision is Decision.REFUSE:
                # minority face only appears on the matching double card
                assert down == shown
            else:
                by_info.setdefault((tuple(sorted(row)), shown), set()).add(down)
    assert by_info
    for downs in by_info.values():
        assert downs == {C, D}


@pytest.mark.parametrize("strategy", list(Strategy))
def test_settlement_invariants(strategy):
    rng = SplitMix64(3)
    for _ in range(500):
        out = play_round(strategy, rng)
        shown, down = draw(out.arrangement, out.drawn_slot)
        assert out.shown == shown
        if out.decision is Decision.REFUSE:
            assert out.alice_payoff == 0
        else:
            assert out.alice_payoff == (1 if down == shown else -1)
        assert out.alice_payoff + out.bob_payoff == 0


def test_quantum_round_info_is_true_row():
    rng = SplitMix64(8)
    for _ in range(2000):
        out = play_round(Strategy.QUANTUM, rng)
        assert out.info == upper_row(out.arrangement)


def test_peek_other_draws_a_different_slot():
    rng = SplitMix64(9)
    for _ in range(500):
        out = play_round(Strategy.PEEK_OTHER, rng)
        assert out.info[0] != out.drawn_slot
        out = play_round(Strategy.PEEK_SAME, rng)
        assert out.info[0] == out.drawn_slot


def test_round_draw_counts():
    # documented consumption, ignoring the rare rejection retry
    for strategy, draws in [
        (Strategy.NAIVE, 2),
        (Strategy.QUANTUM, 2),
        (Strategy.PEEK_SAME, 2),
        (Strategy.PEEK_OTHER, 3),
    ]:
        rng = SplitMix64(0)
        play_round(strategy, rng)
        assert rng.draws == draws


# --- exact analysis --------------------------------------------------------


def test_exact_naive():
    r = exact_analysis(Strategy.NAIVE)
    assert (r.p_alice_win, r.p_bob_win, r.p_refuse) == (Fraction(2, 3), Fraction(1, 3), 0)
    assert r.alice_expected_payoff == Fraction(1, 3)


def test_exact_quantum():
    r = exact_analysis(Strategy.QUANTUM)
    assert r.p_refuse == Fraction(1, 3)
    assert r.p_alice_win == r.p_bob_win == Fraction(1, 3)
    assert r.alice_expected_payoff == 0
    assert r.p_play == Fraction(2, 3)
    assert r.p_alice_win_given_play == Fraction(1, 2)


def test_exact_always_refuse():
    r = exact_analysis(Strategy.ALWAYS_REFUSE)
    assert r.p_refuse == 1 and r.alice_expected_payoff == 0
    assert r.p_alice_win_given_play is None


def test_exact_peek_strategies():
    same = exact_analysis(Strategy.PEEK_SAME)
    assert same.p_refuse == 1 and same.alice_expected_payoff == 0
    other = exact_analysis(Strategy.PEEK_OTHER)
    assert other.p_refuse == Fraction(2, 3)
    assert other.alice_expected_payoff == 0
    assert other.note


@pytest.mark.parametrize("strategy", list(Strategy))
def test_exact_probabilities_sum_to_one(strategy):
    r = exact_analysis(strategy)
    assert r.p_alice_win + r.p_bob_win + r.p_refuse == 1
    assert all(isinstance(p, Fraction) for p in (r.p_alice_win, r.p_bob_win, r.p_refuse))


CHOICES_AND_RULES = {
    Strategy.NAIVE: (en.no_info, lambda info, shown: True),
    Strategy.ALWAYS_REFUSE: (en.no_info, lambda info, shown: False),
    Strategy.PEEK_SAME: (en.peek_same, lambda info, shown: False),
    Strategy.PEEK_OTHER: (en.peek_other, lambda info, shown: info == shown),
    Strategy.QUANTUM: (
        en.full_row,
        lambda row, shown: shown != (en.DOT if sum(row) == 1 else en.CIRCLE),
    ),
}


@pytest.mark.parametrize("strategy", list(Strategy))
def test_exact_matches_48_box_enumeration(strategy):
    r = exact_analysis(strategy)
    assert (r.p_alice_win, r.p_bob_win, r.p_refuse) == en.score(*CHOICES_AND_RULES[strategy])


def _all_rules(keys):
    for bits in product((False, True), repeat=len(keys)):
        table = dict(zip(keys, bits))
        yield table


def test_peek_same_rule_is_optimal():
    payoffs = []
    for table in _all_rules([en.CIRCLE, en.DOT]):
        payoffs.append(en.payoff(en.score(en.peek_same, lambda info, shown, t=table: t[info])))
    assert len(payoffs) == 4
    assert exact_analysis(Strategy.PEEK_SAME).alice_expected_payoff == min(payoffs) == 0


def test_peek_other_rule_is_optimal():
    keys = list(product((en.CIRCLE, en.DOT), repeat=2))
    payoffs = []
    for table in _all_rules(keys):
        payoffs.append(
            en.payoff(en.score(en.peek_other, lambda info, shown, t=table: t[(info, shown)]))
        )
    assert len(payoffs) == 16
    assert exact_analysis(Strategy.PEEK_OTHER).alice_expected_payoff == min(payoffs) == 0


def test_quantum_rule_is_optimal_over_row_shown_rules():
    # rule depends on (minority pattern, shown): 4 cells
    keys = list(product((en.CIRCLE, en.DOT), repeat=2))
    payoffs = []
    for table in _all_rules(keys):

        def rule(row, shown, t=table):
            minority = en.DOT if sum(row) == 1 else en.CIRCLE
            return t[(minority, shown)]

        payoffs.append(en.payoff(en.score(en.full_row, rule)))
    assert exact_analysis(Strategy.QUANTUM).alice_expected_payoff == min(payoffs) == 0


def test_resolve_round_enumeration_is_exhaustive():
    seen = set()
    for arr in ARRANGEMENTS:
        for slot in range(3):
            seen.add((arr, slot, resolve_round(Strategy.NAIVE, arr, None, slot).alice_payoff))
    assert len(seen) == 36


# --- Monte Carlo -----------------------------------------------------------


def test_monte_carlo_naive():
    s = cached_monte_carlo(Strategy.NAIVE, 100_000, 42)
    assert s.alice_wins + s.bob_wins + s.refusals == s.rounds
    assert s.alice_mean_payoff == (s.alice_wins - s.bob_wins) / s.rounds
    assert abs(s.alice_mean_payoff - 1 / 3) <= 5 * sqrt(8 / 9) / sqrt(100_000)


def test_monte_carlo_quantum():
    s = cached_monte_carlo(Strategy.QUANTUM, 100_000, 42)
    sigma = sqrt(2 / 3) / sqrt(100_000)
    assert abs(s.alice_mean_payoff) <= 5 * sigma


@pytest.mark.parametrize("n", [1, 17, 1000])
def test_monte_carlo_always_refuse(n):
    s = monte_carlo(Strategy.ALWAYS_REFUSE, n, 5)
    assert s.refusals == n and s.alice_mean_payoff == 0


@pytest.mark.parametrize("strategy", list(Strategy))
def test_monte_carlo_agrees_with_exact(strategy):
    n = 100_000
    s = cached_monte_carlo(strategy, n, 42)
    exact = exact_analysis(strategy)
    for count, p in [
        (s.alice_wins, exact.p_alice_win),
        (s.bob_wins, exact.p_bob_win),
        (s.refusals, exact.p_refuse),
    ]:
        sigma = sqrt(float(p * (1 - p)) / n)
        assert abs(count / n - float(p)) <= 5 * sigma


def test_monte_carlo_errors():
    with pytest.raises(EmptyRun):
        monte_carlo(Strategy.NAIVE, 0, 1)
    with pytest.raises(ValueError):
        monte_carlo(Strategy.NAIVE, 10, -1)
    with pytest.raises(ValueError):
        monte_carlo("poker", 10, 1)


def test_monte_carlo_accepts_strategy_names():
    assert monte_carlo("naive", 100, 1) == monte_carlo(Strategy.NAIVE, 100, 1)


@pytest.mark.parametrize("strategy", [Strategy.NAIVE, Strategy.PEEK_OTHER, Strategy.QUANTUM])
def test_parallel_matches_serial(strategy):
    serial = monte_carlo(strategy, 6000, 2026)
    assert monte_carlo(strategy, 6000, 2026, workers=3) == serial
    assert monte_carlo(strategy, 6000, 2026, workers=4) == serial


def test_round_results_independent_of_order():
    # round i depends only on (seed, i)
    a = [play_round(Strategy.NAIVE, SplitMix64.for_round(7, i)) for i in range(50)]
    b = [play_round(Strategy.NAIVE, SplitMix64.for_round(7, i)) for i in reversed(range(50))]
    assert a == b[::-1]


def test_different_seeds_differ():
    assert monte_carlo(Strategy.NAIVE, 2000, 1) != monte_carlo(Strategy.NAIVE, 2000, 2)


def test_every_row_reachable_only_with_mixed_weights():
    rows = {upper_row(a) for a in ARRANGEMENTS}
    assert rows == {r for r in ALL_ROWS if sum(r) in (1, 2)}
