"""
Local and no-signaling polytopes
================================

The eight local boxes, the eight PR boxes, and the Hadamard map that turns
the local polytope into an octahedron.
"""

import numpy as np

from chshgeom import HADAMARD, LOCAL_BOXES, PR_BOXES, chsh_values, in_local, in_nosignaling, quadric_form

np.set_printoptions(precision=4, suppress=True)

# local boxes come in +/- pairs; H sends the first four to the unit vectors
print("local boxes:\n", LOCAL_BOXES)
print("H @ l_k:\n", LOCAL_BOXES[:4] @ HADAMARD.T)

# 2H is a reflection: PR boxes are eigenvectors with eigenvalues -1, 1, 1, 1
for n in PR_BOXES[:4]:
    print(n, "->", 2 * HADAMARD @ n)

# CHSH values: the local boxes saturate at 1, PR boxes reach 2
print("CHSH on l1:", chsh_values(LOCAL_BOXES[0]))
print("CHSH on n4:", chsh_values(PR_BOXES[3]))

# the quadric is 1 on every local box and 2 on the PR box n4
print("quadric on local boxes:", quadric_form(LOCAL_BOXES))
print("quadric on n4:", quadric_form(PR_BOXES[3]))

# membership on a handful of points
pts = np.array([[0.5, 0.5, 0.5, -0.5], [0.9, 0.9, 0.9, -0.9], [1.0, 1.0, 1.0, -1.0]])
print("in L:", in_local(pts), " in P:", in_nosignaling(pts))
