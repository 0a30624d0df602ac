"""
PR-box decomposition above a CHSH facet
=======================================

A correlation that violates CHSH splits uniquely into four local boxes on the
violated facet plus one PR box.  Quantum points never need more than
sqrt(2) - 1 of PR box.
"""

import math

import numpy as np

from chshgeom import SOURCES, chsh_values, decompose, local_rate_check, sample_correlations, symmetric_rate_bound

tsirelson = np.array([1.0, 1.0, 1.0, -1.0]) / math.sqrt(2)
d = decompose(tsirelson)
print("facet:", d.facet)
print("local weights:", d.eta_local, " PR weight:", d.eta_nl)
print("reconstruction:", d.reconstruct())
print("local-rate residual:", local_rate_check(d), " symmetric bound holds:", symmetric_rate_bound(d))

# a half PR box, half l1 mixture
print(decompose([1, 1, 1, 0]))

q = np.vstack([sample_correlations(50_000, k, s) for k, s in enumerate(SOURCES)])
q = q[chsh_values(q).max(axis=1) >= 1]
rates = np.array([decompose(x).eta_nl for x in q])
resid = np.array([local_rate_check(decompose(x)) for x in q])
print(f"{len(q)} violating samples: max PR weight {rates.max():.6f} (bound {math.sqrt(2) - 1:.6f})")
print(f"smallest local-rate residual {resid.min():.3e}")
