"""
The Tsirelson bound and the boundary family
===========================================

Maximise CHSH along the planar family of quantum correlations and check that
the whole family sits on the quadric qHq = 1.
"""

import math

import numpy as np

from chshgeom import (
    Direction,
    boundary_point,
    chsh_values,
    correlation,
    maximize_chsh,
    quadric_form,
    quantum_membership_analytic,
    singlet_state,
)

g = np.arange(200) * math.pi / 396
a, b = np.meshgrid(g, g, indexing="ij")
best = maximize_chsh(a, b)
i, j = np.unravel_index(np.argmax(best), best.shape)
print(f"max CHSH {best.max():.15f} at alpha={g[i]:.6f}, beta={g[j]:.6f}  (sqrt 2 = {math.sqrt(2):.15f})")

# the singlet with the textbook angles reaches the same value
alice = [Direction.in_plane(t) for t in (0.0, math.pi / 2)]
bob = [Direction.in_plane(t) for t in (math.pi / 4, 3 * math.pi / 4)]
q = correlation(singlet_state(), *alice, *bob)
print("singlet correlations:", q, " best CHSH:", chsh_values(q).max())

# every boundary point has quadric 1 and passes the analytic membership test
g = np.linspace(0.01, math.pi / 2 - 0.01, 60)
a, b = np.meshgrid(g, g, indexing="ij")
pts = boundary_point(a, b)
dev = np.abs(quadric_form(pts) - 1).max()
print(f"boundary family: max |qHq - 1| = {dev:.2e}, all in Q: {bool(np.all(quantum_membership_analytic(pts)))}")
