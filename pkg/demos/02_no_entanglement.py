"""
No entanglement at any stage
============================

A pure 3-qubit state is a product state exactly when each single-qubit
marginal is pure. We check the purity of every marginal after every layer of
the query circuit, and contrast it with a GHZ state.
"""

# %%
import numpy as np

from qcardgame.entanglement import check_product, separability_report
from qcardgame.oracle import ALL_ROWS, build_oracle, format_row
from qcardgame.query import run_query

# %%
for row in ALL_ROWS:
    report = separability_report(run_query(build_oracle(row)))
    purities = [min(s.purities) for s in report.stages]
    print(format_row(row), "min purity per stage:", np.round(purities, 12), report.separable)

# %%
ghz = np.zeros(8, dtype=complex)
ghz[[0, 7]] = 1 / np.sqrt(2)
print("GHZ:", check_product(ghz))
