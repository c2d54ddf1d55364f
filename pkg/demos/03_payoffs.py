"""
Who wins the card game
======================

Exact outcome probabilities for each of Bob's strategies, followed by a
seeded Monte Carlo run of the same strategies. The naive game favours Alice
(she wins 2/3 of rounds); the quantum query with refusal makes it fair.
"""

# %%
from qcardgame.game import Strategy, exact_analysis, monte_carlo

ROUNDS = 20_000

# %%
print(f"{'strategy':<14}{'alice':>8}{'bob':>8}{'refuse':>8}{'payoff':>8}")
for s in Strategy:
    r = exact_analysis(s)
    print(f"{s.value:<14}{str(r.p_alice_win):>8}{str(r.p_bob_win):>8}"
          f"{str(r.p_refuse):>8}{str(r.alice_expected_payoff):>8}")

# %%
q = exact_analysis(Strategy.QUANTUM)
print("quantum: P(Alice wins | Bob plays) =", q.p_alice_win_given_play)
print(exact_analysis(Strategy.PEEK_OTHER).note)

# %%
for s in Strategy:
    summary = monte_carlo(s, ROUNDS, seed=42)
    exact = float(exact_analysis(s).alice_expected_payoff)
    print(f"{s.value:<14} sampled {summary.alice_mean_payoff:+.4f}   exact {exact:+.4f}")
