"""
Transfer entropy between two series
===================================

Transfer entropy from ``x`` to ``y`` at lag L is the conditional
dependence of ``y[t]`` on ``x[t-L]`` given ``y[t-L]``.
"""

import numpy as np

from copula_cda import transfer_entropy

rng = np.random.default_rng(1)
T = 2000
x = rng.normal(size=T)
y = np.empty(T)
y[0] = rng.normal()
y[1:] = x[:-1] + rng.normal(size=T - 1)

for lag in (1, 2, 3):
    print(f"lag {lag}: TE(x->y) = {transfer_entropy(x, y, lag):+.4f}   TE(y->x) = {transfer_entropy(y, x, lag):+.4f}")
print(f"closed form at lag 1: {0.5 * np.log(2):.4f}")
