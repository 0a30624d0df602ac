"""Exact geometry of two-party, two-setting correlation vectors.

A correlation vector ``q = (q11, q12, q21, q22)`` collects the expectations of
the product of Alice's and Bob's +/-1 outcomes for each pair of settings.
Three nested convex bodies live in R^4:

* the local polytope L (an octahedron spanned by the eight local boxes),
* the quantum body Q,
* the no-signaling polytope P (the unit cube, adding the eight PR boxes).

Every function here accepts either a single vector (anything convertible to
an array of shape ``(4,)``, including :class:`CorrelationVector`) or a stack of
vectors of shape ``(..., 4)`` and broadcasts over the leading axes.  Scalar
inputs give Python scalars back.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DegenerateAngles

__all__ = [
    "DEFAULT_TOL",
    "CorrelationVector",
    "VertexCatalog",
    "VERTICES",
    "LOCAL_BOXES",
    "PR_BOXES",
    "CANONICAL_VERTICES",
    "HADAMARD",
    "HADAMARD_EXACT",
    "FacetId",
    "FACETS",
    "TRIVIAL_FACETS",
    "CHSH_FACETS",
    "QuadricReport",
    "BoundaryParams",
    "hadamard_transform",
    "quadric_form",
    "chsh_values",
    "facet_values",
    "facet_vertices",
    "pr_box_above",
    "relabel",
    "in_local",
    "in_local_l1",
    "in_nosignaling",
    "quantum_margins",
    "quantum_margin",
    "quantum_membership_analytic",
    "iterated_chsh_values",
    "iterated_chsh",
    "boundary_theta",
    "boundary_params",
    "boundary_point_raw",
    "boundary_point",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class CorrelationVector:
    """A point ``(p11, p12, p21, p22)`` of R^4.

    Components only have to be finite.  Points outside the cube are allowed
    so that infeasible data (scaled PR boxes, bad experimental rows) can be
    represented and then rejected by the membership predicates.
    """

    p11: float
    p12: float
    p21: float
    p22: float

    def __post_init__(self):
        for name in ("p11", "p12", "p21", "p22"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_sequence(cls, values):
        values = list(values)
        if len(values) != 4:
            raise ValueError(f"expected 4 components, got {len(values)}")
        return cls(*values)

    def as_array(self):
        return np.array([self.p11, self.p12, self.p21, self.p22])

    def __array__(self, dtype=None, copy=None):
        return np.array([self.p11, self.p12, self.p21, self.p22], dtype=dtype)

    def __iter__(self):
        return iter((self.p11, self.p12, self.p21, self.p22))

    def __neg__(self):
        return CorrelationVector(-self.p11, -self.p12, -self.p21, -self.p22)

    def __mul__(self, factor):
        return CorrelationVector(*(factor * x for x in self))

    __rmul__ = __mul__


def _frozen(rows):
    arr = np.array(rows, dtype=float)
    arr.setflags(write=False)
    return arr


def _signed_pairs(rows):
    return list(rows) + [[-x for x in row] for row in rows]


# Row k of each block is the k-th vertex, negatives follow in the same order.
LOCAL_BOXES = _frozen(_signed_pairs([
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
]))
PR_BOXES = _frozen(_signed_pairs([
    [-1, 1, 1, 1],
    [1, -1, 1, 1],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
]))
CANONICAL_VERTICES = _frozen(_signed_pairs(np.eye(4, dtype=int).tolist()))


class VertexCatalog(NamedTuple):
    local: np.ndarray
    pr: np.ndarray
    canonical: np.ndarray


VERTICES = VertexCatalog(LOCAL_BOXES, PR_BOXES, CANONICAL_VERTICES)

_HADAMARD_SIGNS = (
    (1, 1, 1, 1),
    (1, 1, -1, -1),
    (1, -1, 1, -1),
    (1, -1, -1, 1),
)
HADAMARD_EXACT = tuple(tuple(Fraction(s, 4) for s in row) for row in _HADAMARD_SIGNS)
HADAMARD = _frozen([[float(x) for x in row] for row in HADAMARD_EXACT])


def _as_q(q):
    arr = np.asarray(q, dtype=float)
    if arr.shape[-1:] != (4,):
        raise ValueError(f"correlation vectors need a trailing axis of length 4, got shape {arr.shape}")
    return arr


def _out(value):
    """Unwrap 0-d results into Python scalars."""
    if np.ndim(value) == 0:
        value = np.asarray(value).item()
    return value


def hadamard_transform(q):
    """Return ``Hq``, rotating L onto the canonical octahedron co{+/-e_k}.

    ``H`` is symmetric with ``H @ H = I / 4``, so applying the transform twice
    scales the input by a quarter.
    """
    return _as_q(q) @ HADAMARD


def quadric_form(q):
    """The indefinite quadratic form ``q^T H q``.

    Evaluated through the expanded expression
    ``(q11 + q12 + q21 - q22)**2 / 4 + (q11*q22 - q12*q21)``, whose signature is
    (-, +, +, +) with the negative axis along the PR box n1.
    """
    q = _as_q(q)
    q11, q12, q21, q22 = np.moveaxis(q, -1, 0)
    return _out(0.25 * (q11 + q12 + q21 - q22) ** 2 + (q11 * q22 - q12 * q21))


# ---------------------------------------------------------------------------
# Facets of L
# ---------------------------------------------------------------------------

_SETTINGS = ((1, 1), (1, 2), (2, 1), (2, 2))


@dataclass(frozen=True)
class FacetId:
    """One of the 16 facets of the local polytope.

    A trivial facet is ``sign * q_ij <= 1``; a CHSH facet is
    ``sign * (sum(q) / 2 - q_ij) <= 1``.
    """

    kind: str
    i: int
    j: int
    sign: int

    def __post_init__(self):
        if self.kind not in ("trivial", "chsh"):
            raise ValueError(f"unknown facet kind {self.kind!r}")
        if self.i not in (1, 2) or self.j not in (1, 2):
            raise ValueError("setting indices must be 1 or 2")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def index(self):
        """Position of ``q_ij`` inside a correlation vector."""
        return 2 * (self.i - 1) + (self.j - 1)

    @property
    def is_chsh(self):
        return self.kind == "chsh"

    @property
    def functional(self):
        """Coefficient vector ``w`` so that the facet reads ``w . q <= 1``."""
        w = np.zeros(4)
        w[self.index] = 1.0
        if self.is_chsh:
            w = 0.5 - w
        return self.sign * w

    def value(self, q):
        return _out(_as_q(q) @ self.functional)

    def __str__(self):
        return f"{self.kind}({self.i},{self.j},{'+' if self.sign > 0 else '-'})"


TRIVIAL_FACETS = tuple(FacetId("trivial", i, j, s) for s in (1, -1) for i, j in _SETTINGS)
CHSH_FACETS = tuple(FacetId("chsh", i, j, s) for s in (1, -1) for i, j in _SETTINGS)
FACETS = TRIVIAL_FACETS + CHSH_FACETS

_FACET_MATRIX = _frozen([f.functional for f in FACETS])
_CHSH_MATRIX = _frozen([f.functional for f in CHSH_FACETS])


def chsh_values(q):
    """The eight signed CHSH functionals ``+/-(sum(q)/2 - q_ij)``.

    Ordered as ``CHSH_FACETS``: settings (1,1), (1,2), (2,1), (2,2) with the
    positive sign, then the same four negated.  Local points give values in
    [-1, 1], quantum points in [-sqrt 2, sqrt 2], PR boxes reach 2.
    """
    return _as_q(q) @ _CHSH_MATRIX.T


def facet_values(q):
    """Values of all 16 facet functionals, in ``FACETS`` order."""
    return _as_q(q) @ _FACET_MATRIX.T


# Index permutations; each is an involution and they generate the relabelings
# used to carry statements about the (2,2) facet to every other facet.
_SWAP_ALICE = np.array([2, 3, 0, 1])
_SWAP_BOB = np.array([1, 0, 3, 2])
_SWAP_PARTIES = np.array([0, 2, 1, 3])


def relabel(q, swap_alice=False, swap_bob=False, swap_parties=False, negate=False):
    """Apply a setting/party relabeling and optionally an outcome flip.

    All of these maps send L, Q and P onto themselves.  Parties are swapped
    last, after any setting swaps.
    """
    q = _as_q(q)
    if swap_alice:
        q = q[..., _SWAP_ALICE]
    if swap_bob:
        q = q[..., _SWAP_BOB]
    if swap_parties:
        q = q[..., _SWAP_PARTIES]
    return -q if negate else q.copy()


_BASE_FACET_VERTICES = np.array([LOCAL_BOXES[0], LOCAL_BOXES[1], LOCAL_BOXES[2], LOCAL_BOXES[7]])
_BASE_PR = PR_BOXES[3]


def _facet_map(facet):
    return dict(swap_alice=facet.i == 1, swap_bob=facet.j == 1, negate=facet.sign < 0)


def facet_vertices(facet):
    """The four local boxes spanning a CHSH facet, as rows.

    For the (2,2,+) facet the order is ``l1, l2, l3, -l4``; every other CHSH
    facet uses the image of that list under the relabeling carrying (2,2,+)
    onto it, so weight ``k`` plays the same role on every facet.
    """
    if not facet.is_chsh:
        raise ValueError(f"{facet} is not a CHSH facet")
    out = relabel(_BASE_FACET_VERTICES, **_facet_map(facet))
    out.setflags(write=False)
    return out


def pr_box_above(facet):
    """The PR box lying beyond a CHSH facet (CHSH value 2)."""
    if not facet.is_chsh:
        raise ValueError(f"{facet} is not a CHSH facet")
    return relabel(_BASE_PR, **_facet_map(facet))


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def in_local(q, tol=DEFAULT_TOL):
    """True when all 16 facet inequalities of L hold to within ``tol``."""
    return _out(np.all(facet_values(q) <= 1.0 + tol, axis=-1))


def in_local_l1(q, tol=DEFAULT_TOL):
    """Membership in L through the canonical-octahedron test ``|Hq|_1 <= 1``."""
    return _out(np.abs(hadamard_transform(q)).sum(axis=-1) <= 1.0 + tol)


def in_nosignaling(q, tol=DEFAULT_TOL):
    return _out(np.all(np.abs(_as_q(q)) <= 1.0 + tol, axis=-1))


# The three ways of splitting the four components into two pairs.  Flipping
# the sign of a row or column of q changes two components, which leaves
# |ab - cd| and the square-root side untouched for every pairing, so the
# pairings are the whole symmetry orbit of the inequality.
_PAIRINGS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


def quantum_margins(q):
    """Slack of the quantum-body inequality for each pairing of components.

    For the pairing ``(a, b | c, d)`` the slack is
    ``sqrt(1-a^2) sqrt(1-b^2) + sqrt(1-c^2) sqrt(1-d^2) - |ab - cd|``.
    Components are clipped to [-1, 1] first; callers must reject points
    outside the cube separately.
    """
    q = np.clip(_as_q(q), -1.0, 1.0)
    root = np.sqrt((1.0 - q) * (1.0 + q))
    cols = []
    for a, b, c, d in _PAIRINGS:
        rhs = root[..., a] * root[..., b] + root[..., c] * root[..., d]
        lhs = np.abs(q[..., a] * q[..., b] - q[..., c] * q[..., d])
        cols.append(rhs - lhs)
    return np.stack(cols, axis=-1)


def quantum_margin(q):
    """Smallest slack over the pairing orbit; negative outside Q.

    Points outside the cube get ``-inf``.
    """
    q = _as_q(q)
    margin = quantum_margins(q).min(axis=-1)
    margin = np.where(np.all(np.abs(q) <= 1.0, axis=-1), margin, -np.inf)
    return _out(margin)


def quantum_membership_analytic(q, tol=DEFAULT_TOL):
    """Closed-form membership test for the quantum body Q."""
    q = _as_q(q)
    inside_cube = np.all(np.abs(q) <= 1.0 + tol, axis=-1)
    ok = np.all(quantum_margins(q) >= -tol, axis=-1)
    return _out(inside_cube & ok)


# ---------------------------------------------------------------------------
# Quadric bounds
# ---------------------------------------------------------------------------

_PR_AXES = PR_BOXES[:4]


def iterated_chsh_values(q):
    """The four iterated-CHSH quadrics, one per choice of "time" PR box.

    Entry k is ``(-(n_k.q)^2 + sum_{m != k} (n_m.q)^2) / 8``.  Entry 0 is the
    quadric form ``q^T H q`` itself.
    """
    sq = (_as_q(q) @ _PR_AXES.T) ** 2
    return (sq.sum(axis=-1, keepdims=True) - 2.0 * sq) / 8.0


@dataclass(frozen=True)
class QuadricReport:
    quadric_value: float
    iterated: tuple
    within_bounds: bool


def iterated_chsh(q, tol=DEFAULT_TOL):
    """Quadric form plus all four iterated-CHSH values for one vector.

    ``within_bounds`` is True when every iterated value lies in
    ``[-1 - tol, 1 + tol]``, a necessary condition for membership in Q.
    """
    q = _as_q(q)
    if q.shape != (4,):
        raise ValueError("iterated_chsh takes a single vector; use iterated_chsh_values for stacks")
    values = iterated_chsh_values(q)
    return QuadricReport(
        quadric_value=float(quadric_form(q)),
        iterated=tuple(float(v) for v in values),
        within_bounds=bool(np.all(np.abs(values) <= 1.0 + tol)),
    )


# ---------------------------------------------------------------------------
# Boundary parametrization above the (2,2) facet
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryParams:
    alpha: float
    beta: float
    theta: float


def boundary_theta(alpha, beta):
    """Angle between the half-sum vectors that maximises the (2,2) CHSH value.

    Uses ``atan2(sin(alpha + beta), cos(alpha - beta))``.  Raises
    :class:`DegenerateAngles` when ``cos(alpha - beta)`` vanishes, where the
    maximiser is not pinned down.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    c = np.cos(alpha - beta)
    if np.any(np.abs(c) < 1e-12):
        raise DegenerateAngles("cos(alpha - beta) vanishes; theta is undetermined")
    return _out(np.arctan2(np.sin(alpha + beta), c))


def boundary_params(alpha, beta):
    return BoundaryParams(float(alpha), float(beta), float(boundary_theta(alpha, beta)))


def boundary_point_raw(alpha, beta, theta):
    """``(cos(a+b-t), cos(a-b-t), cos(a-b+t), cos(a+b+t))``, broadcast over inputs."""
    alpha, beta, theta = np.broadcast_arrays(
        np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float), np.asarray(theta, dtype=float)
    )
    return np.stack(
        [
            np.cos(alpha + beta - theta),
            np.cos(alpha - beta - theta),
            np.cos(alpha - beta + theta),
            np.cos(alpha + beta + theta),
        ],
        axis=-1,
    )


def boundary_point(alpha, beta):
    """Point of the boundary of Q above the (2,2) facet with ``q^T H q = 1``.

    ``cos(alpha)`` and ``cos(beta)`` are the lengths of Alice's and Bob's
    half-sum vectors; the angle between them is chosen to maximise CHSH.
    """
    return boundary_point_raw(alpha, beta, boundary_theta(alpha, beta))
