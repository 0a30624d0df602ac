"""Splitting a CHSH-violating correlation into local boxes plus one PR box.

A point of the no-signaling cube that lies on or beyond a CHSH facet of the
local polytope is a unique convex combination of the facet's four local
vertices and the PR box sitting above that facet.  The PR weight is the
excess of the CHSH value over 1; quantum points keep it below ``sqrt 2 - 1``
and, in addition, force a minimum amount of local content.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsideLocalPolytope, NotChshFacet, NotDecomposable, NotSymmetric
from .geometry import (
    CHSH_FACETS,
    DEFAULT_TOL,
    FacetId,
    _as_q,
    chsh_values,
    facet_vertices,
    pr_box_above,
)

__all__ = [
    "SYMMETRIC_LOCAL_WEIGHT",
    "Decomposition",
    "pr_rate",
    "select_facet",
    "decompose",
    "local_rate_check",
    "symmetric_rate_bound",
]

SYMMETRIC_LOCAL_WEIGHT = 0.5 * (1.0 - 1.0 / math.sqrt(2.0))

_NEGATIVE_WEIGHT_TOL = 1e-8


@dataclass(frozen=True)
class Decomposition:
    """``q = sum_k eta_local[k] * facet_vertices(facet)[k] + eta_nl * pr_box_above(facet)``."""

    facet: FacetId
    eta_local: tuple
    eta_nl: float

    def __post_init__(self):
        if not self.facet.is_chsh:
            raise NotChshFacet(f"{self.facet} is not a CHSH facet")
        weights = tuple(float(w) for w in self.eta_local)
        if len(weights) != 4:
            raise ValueError("a facet decomposition has exactly four local weights")
        object.__setattr__(self, "eta_local", weights)
        object.__setattr__(self, "eta_nl", float(self.eta_nl))
        if min(weights + (self.eta_nl,)) < -1e-10:
            raise ValueError("decomposition weights must be non-negative")
        if abs(sum(weights) + self.eta_nl - 1.0) > 1e-10:
            raise ValueError("decomposition weights must sum to 1")

    @property
    def vertices(self):
        return facet_vertices(self.facet)

    @property
    def pr_box(self):
        return pr_box_above(self.facet)

    @property
    def local_weight(self):
        return sum(self.eta_local)

    def reconstruct(self):
        return np.asarray(self.eta_local) @ self.vertices + self.eta_nl * self.pr_box


def _require_chsh(facet):
    if not facet.is_chsh:
        raise NotChshFacet(f"{facet} is not a CHSH facet")


def pr_rate(q, facet):
    """Weight of the PR box above ``facet``: the facet's CHSH value minus 1.

    Negative for points strictly below the facet.  Broadcasts over stacks.
    """
    _require_chsh(facet)
    value = _as_q(q) @ facet.functional - 1.0
    return value.item() if np.ndim(value) == 0 else value


def select_facet(q):
    """CHSH facet with the largest signed value and that value.

    Values within 1e-12 of the maximum count as ties; among those the facet
    with the lexicographically largest ``(sign, i, j)`` wins.
    """
    values = chsh_values(q)
    top = values.max()
    tied = [f for f, v in zip(CHSH_FACETS, values) if v >= top - 1e-12]
    facet = max(tied, key=lambda f: (f.sign, f.i, f.j))
    return facet, float(facet.value(q))


def decompose(q, tol=DEFAULT_TOL):
    """Unique local-plus-PR decomposition of a point on or above a CHSH facet.

    Raises
    ------
    InsideLocalPolytope
        Every CHSH value is below ``1 - tol``; the point has infinitely many
        purely local decompositions and no PR weight.
    NotDecomposable
        The point is outside the no-signaling cube, or its projection onto
        the facet falls outside the facet's simplex.
    """
    q = _as_q(q)
    if q.shape != (4,):
        raise ValueError("decompose takes a single correlation vector")
    if np.any(np.abs(q) > 1.0 + tol):
        raise NotDecomposable("point lies outside the no-signaling polytope")
    facet, value = select_facet(q)
    if value < 1.0 - tol:
        raise InsideLocalPolytope(f"largest CHSH value {value:.17g} is below 1")

    eta = min(max(value - 1.0, 0.0), 1.0)
    if eta >= 1.0 - 1e-15:
        return Decomposition(facet, (0.0, 0.0, 0.0, 0.0), 1.0)

    residual = (q - eta * pr_box_above(facet)) / (1.0 - eta)
    bary = np.linalg.solve(facet_vertices(facet).T, residual)
    if bary.min() < -_NEGATIVE_WEIGHT_TOL:
        raise NotDecomposable(
            f"point is not above the simplex of {facet} (barycentric {bary.min():.3g})"
        )
    # the facet's affine hull already forces sum(bary) == 1; check it
    if abs(bary.sum() - 1.0) > 1e-9:
        raise NotDecomposable(f"barycentric coordinates sum to {bary.sum():.17g}")
    bary = np.clip(bary, 0.0, None)
    bary /= bary.sum()
    weights = (1.0 - eta) * bary
    return Decomposition(facet, tuple(weights), eta)


def local_rate_check(d):
    """Residual of ``sum(eta_k) >= 1 - 2 sqrt(eta_1 eta_4 + eta_2 eta_3)``.

    Non-negative for every quantum point; it vanishes exactly on the
    boundary family where ``q^T H q = 1`` (relative to the facet's frame).
    """
    e1, e2, e3, e4 = d.eta_local
    return sum(d.eta_local) - (1.0 - 2.0 * math.sqrt(max(e1 * e4 + e2 * e3, 0.0)))


def symmetric_rate_bound(d, tol=1e-10):
    """For equal local weights ``eta_0``, whether ``eta_0 >= (1 - 1/sqrt 2) / 2``.

    Raises NotSymmetric when the weights differ by more than ``tol``.
    """
    spread = max(d.eta_local) - min(d.eta_local)
    if spread > tol:
        raise NotSymmetric(f"local weights differ by {spread:.3g}")
    eta0 = sum(d.eta_local) / 4.0
    return eta0 >= SYMMETRIC_LOCAL_WEIGHT - tol
