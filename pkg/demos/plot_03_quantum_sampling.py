"""
Sampling quantum correlations and the Gram oracle
=================================================

Draw seeded correlations from three sources, check the quadric bounds, and
compare the analytic membership test with a semidefinite Gram search.
"""

import numpy as np

from chshgeom import (
    SOURCES,
    gram_feasible,
    gram_search,
    iterated_chsh_values,
    quadric_form,
    quantum_margin,
    quantum_membership_analytic,
    sample_correlations,
)

for source in SOURCES:
    q = sample_correlations(20_000, seed=0, source=source)
    v = quadric_form(q)
    it = iterated_chsh_values(q)
    print(f"{source:18s} quadric in [{v.min():+.4f}, {v.max():+.4f}]  |iterated| <= {np.abs(it).max():.4f}")

# same seed, same numbers
assert np.array_equal(sample_correlations(5, 3, "pure-state"), sample_correlations(5, 3, "pure-state"))

# uniform points: the two oracles agree away from the boundary
rng = np.random.default_rng(1)
q = rng.uniform(-1, 1, (300, 4))
q = q[np.abs(quantum_margin(q)) > 1e-6]
analytic = quantum_membership_analytic(q)
gram = np.array([gram_feasible(x, 100) for x in q])
print(f"{len(q)} uniform points, {analytic.mean():.1%} quantum, disagreements: {np.count_nonzero(analytic != gram)}")

# one search in detail
params, lam = gram_search(np.array([0.7, 0.7, 0.7, -0.7]), 100)
print(f"0.7*n4: best (s, t) = ({params.s:.4f}, {params.t:.4f}), smallest eigenvalue {lam:.4f}")
