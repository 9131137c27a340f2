"""
How many input clusterings are enough?
======================================

Pivot run on R sampled input clusterings has an expected cost of at most
g(R) times the cost of Pivot on the full input. This script tabulates g and
the resulting consensus bound, then checks the normal approximation behind
g against the exact binomial tail.
"""

import numpy as np
from scipy import stats

from pivotcc.bounds import FULL_INPUT_BOUND, bound_table, sampling_error

table = bound_table([1, 2, 5, 10, 20, 50, 100, 1000])
print(table.to_csv())

# the bound tends to the full-input constant as R grows
print("limit", FULL_INPUT_BOUND)

# A pair that agrees in a fraction p < 1/2 of the inputs is misjudged when
# a majority of the R samples happen to agree. Compare the approximation
# with the exact tail P[Bin(R, p) > R/2].
for R in (10, 50, 200):
    p = np.array([0.1, 0.3, 0.45])
    exact = stats.binom.sf(np.floor(R / 2), R, p)
    approx = [sampling_error(R, float(x)) for x in p]
    print(R, np.round(exact, 4), np.round(approx, 4))
