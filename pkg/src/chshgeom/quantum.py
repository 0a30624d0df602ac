"""Quantum correlations: spin measurements, Tsirelson vectors, and a Gram oracle.

Correlation vectors realised by quantum mechanics arise in two equivalent
ways.  Physically, as ``q_ij = tr(rho (A_i x B_j))`` for a two-qubit state and
spin observables along unit directions.  Geometrically, as inner products
``q_ij = x_i . y_j`` of four unit vectors in R^4.  The second description makes
membership a positive-semidefinite completion problem, which
:func:`gram_feasible` solves by brute force as an oracle independent of the
closed-form test in :mod:`chshgeom.geometry`.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import InvalidState, NonUnitDirection, UnknownSource
from .geometry import _as_q, hadamard_transform

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "IDENTITY2",
    "SOURCES",
    "Direction",
    "TsirelsonQuadruple",
    "HalfSumFrame",
    "GramParameters",
    "spin_operator",
    "validate_state",
    "singlet_state",
    "maximally_mixed_state",
    "pure_state_density",
    "correlation",
    "correlation_from_observables",
    "chsh_operators",
    "iterated_chsh_operator",
    "tsirelson_correlation",
    "half_sum_frame",
    "planar_quadruple",
    "gram_matrix",
    "min_eigenvalue",
    "gram_search",
    "gram_feasible",
    "random_direction",
    "haar_pure_state",
    "random_density_matrix",
    "sample_correlations",
    "random_correlation",
    "chsh_profile",
    "maximize_chsh",
]

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
_PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])

SOURCES = ("pure-state", "mixed-state", "tsirelson-vectors")

PSD_TOL = 1e-9


@dataclass(frozen=True)
class Direction:
    """Unit vector in physical space selecting a spin measurement."""

    ux: float
    uy: float
    uz: float

    def __post_init__(self):
        norm = math.sqrt(self.ux**2 + self.uy**2 + self.uz**2)
        if abs(norm - 1.0) > 1e-9:
            raise NonUnitDirection(f"direction has norm {norm!r}, expected 1")

    @classmethod
    def from_angles(cls, polar, azimuth=0.0):
        """Direction at ``polar`` angle from +z and ``azimuth`` about z."""
        s = math.sin(polar)
        return cls(s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar))

    @classmethod
    def in_plane(cls, angle):
        """Direction in the x-z plane, ``angle`` measured from +z towards +x."""
        return cls(math.sin(angle), 0.0, math.cos(angle))

    def as_array(self):
        return np.array([self.ux, self.uy, self.uz])


def _direction_array(u):
    if isinstance(u, Direction):
        return u.as_array()
    arr = np.asarray(u, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"direction must have 3 components, got shape {arr.shape}")
    norm = np.linalg.norm(arr)
    if abs(norm - 1.0) > 1e-9:
        raise NonUnitDirection(f"direction has norm {norm!r}, expected 1")
    return arr


def spin_operator(u):
    """``u_x X + u_y Y + u_z Z``, the +/-1 valued spin observable along ``u``."""
    return np.tensordot(_direction_array(u), _PAULIS, axes=1)


def validate_state(rho, atol=1e-12):
    """Return ``rho`` as a 4x4 complex array, raising InvalidState if unphysical."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidState(f"two-qubit state must be 4x4, got {rho.shape}")
    if not np.allclose(rho, rho.conj().T, rtol=0, atol=atol):
        raise InvalidState("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise InvalidState(f"density matrix has trace {np.trace(rho).real!r}")
    if np.linalg.eigvalsh(rho)[0] < -1e-10:
        raise InvalidState("density matrix has a negative eigenvalue")
    return rho


def pure_state_density(psi):
    psi = np.asarray(psi, dtype=complex).reshape(4)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def singlet_state():
    """Density matrix of ``(|01> - |10>) / sqrt 2``; its correlations are ``-u.v``."""
    return pure_state_density(np.array([0, 1, -1, 0]) / math.sqrt(2))


def maximally_mixed_state():
    return np.eye(4, dtype=complex) / 4


def correlation_from_observables(rho, a1, a2, b1, b2):
    """``q_ij = tr(rho (A_i x B_j))`` for arbitrary 2x2 observables."""
    rho = validate_state(rho)
    q = [np.trace(rho @ np.kron(a, b)).real for a in (a1, a2) for b in (b1, b2)]
    return np.array(q)


def correlation(rho, u1, u2, v1, v2):
    """Correlation vector of spin measurements along ``u_i`` (Alice) and ``v_j`` (Bob)."""
    return correlation_from_observables(
        rho, spin_operator(u1), spin_operator(u2), spin_operator(v1), spin_operator(v2)
    )


def chsh_operators(a1, a2, b1, b2):
    """The four CHSH operators ``C_ij = (sum_kl A_k x B_l) / 2 - A_i x B_j``."""
    products = [np.kron(a, b) for a in (a1, a2) for b in (b1, b2)]
    total = 0.5 * sum(products)
    return [total - p for p in products]


def iterated_chsh_operator(rho, a1, a2, b1, b2):
    """Iterated CHSH evaluated directly on a state and four observables.

    Entry ``k`` is ``sum_m |tr(rho C_m)|^2 / 2 - |tr(rho C_k)|^2`` with ``C``
    from :func:`chsh_operators`.  Quantum mechanics keeps every entry in
    [-1, 1]; the values equal :func:`chshgeom.geometry.iterated_chsh_values`
    of the corresponding correlation vector.
    """
    rho = validate_state(rho)
    c = np.array([abs(np.trace(rho @ op)) ** 2 for op in chsh_operators(a1, a2, b1, b2)])
    return 0.5 * c.sum() - c


# ---------------------------------------------------------------------------
# Tsirelson vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TsirelsonQuadruple:
    """Unit vectors ``x1, x2`` (Alice) and ``y1, y2`` (Bob) in R^4."""

    x1: np.ndarray
    x2: np.ndarray
    y1: np.ndarray
    y2: np.ndarray

    def __post_init__(self):
        for name in ("x1", "x2", "y1", "y2"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.ndim != 1 or v.size > 4:
                raise ValueError(f"{name} must be a vector with at most 4 components")
            v = np.pad(v, (0, 4 - v.size))
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"{name} is not a unit vector (norm {np.linalg.norm(v)!r})")
            v.setflags(write=False)
            object.__setattr__(self, name, v)


def tsirelson_correlation(quad):
    """``q_ij = x_i . y_j``."""
    return np.array([np.dot(x, y) for x in (quad.x1, quad.x2) for y in (quad.y1, quad.y2)])


@dataclass(frozen=True)
class HalfSumFrame:
    a: np.ndarray
    a_perp: np.ndarray
    b: np.ndarray
    b_perp: np.ndarray

    def inner_products(self):
        """``(a.b, a_perp.b, a.b_perp, a_perp.b_perp)``, which equals ``Hq``."""
        return np.array([
            self.a @ self.b,
            self.a_perp @ self.b,
            self.a @ self.b_perp,
            self.a_perp @ self.b_perp,
        ])


def half_sum_frame(quad):
    """Half sums and half differences of Alice's and Bob's vectors.

    Because the inputs are unit vectors, ``a`` is orthogonal to ``a_perp`` and
    ``|a|^2 + |a_perp|^2 = 1`` (likewise for ``b``).
    """
    return HalfSumFrame(
        a=0.5 * (quad.x1 + quad.x2),
        a_perp=0.5 * (quad.x1 - quad.x2),
        b=0.5 * (quad.y1 + quad.y2),
        b_perp=0.5 * (quad.y1 - quad.y2),
    )


def planar_quadruple(alpha, beta, theta):
    """Coplanar unit vectors with ``|a| = cos(alpha)``, ``|b| = cos(beta)`` and
    angle ``theta`` between ``a`` and ``b``.

    Their correlation vector is ``boundary_point_raw(alpha, beta, theta)``.
    """
    def unit(phi):
        return np.array([math.cos(phi), math.sin(phi), 0.0, 0.0])

    return TsirelsonQuadruple(
        unit(alpha), unit(-alpha), unit(theta - beta), unit(theta + beta)
    )


# ---------------------------------------------------------------------------
# Gram feasibility oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GramParameters:
    """Free inner products ``s = x1.x2`` and ``t = y1.y2`` of a Gram completion."""

    s: float
    t: float


def gram_matrix(q, s, t):
    """Gram matrix of ``(x1, x2, y1, y2)`` with the cross block fixed by ``q``."""
    q11, q12, q21, q22 = _as_q(q)
    return np.array([
        [1.0, s, q11, q12],
        [s, 1.0, q21, q22],
        [q11, q21, 1.0, t],
        [q12, q22, t, 1.0],
    ])


def min_eigenvalue(m):
    """Smallest eigenvalue of a real symmetric matrix, with a residual check."""
    w, v = np.linalg.eigh(m)
    residual = np.linalg.norm(m @ v[:, 0] - w[0] * v[:, 0])
    if residual > 1e-10:
        raise np.linalg.LinAlgError(f"eigen-solver residual {residual:.3g} exceeds 1e-10")
    return float(w[0])


def _min_eig_grid(q, s, t):
    """Vectorised smallest eigenvalue of ``gram_matrix(q, s, t)`` over arrays s, t.

    The Gram matrix is ``I + N`` with ``N`` symmetric and zero on the diagonal,
    so ``N`` has the depressed characteristic polynomial
    ``x^4 + c2 x^2 + c1 x + c0``.  All four roots are real; Ferrari's method
    expresses them through the non-negative roots ``z`` of the resolvent cubic,
    which are found trigonometrically.  Accurate to ~1e-10, which is enough to
    rank grid cells; decisions use :func:`min_eigenvalue`.
    """
    a, b, c, d = _as_q(q)
    c2 = -(s * s + t * t + a * a + b * b + c * c + d * d)
    c1 = -2.0 * (s * a * c + s * b * d + a * b * t + c * d * t)
    c0 = (s * t) ** 2 + (a * d) ** 2 + (b * c) ** 2 - 2.0 * (s * t * a * d + s * t * b * c + a * d * b * c)

    # resolvent cubic z^3 + A z^2 + B z + C
    A = 2.0 * c2
    B = c2 * c2 - 4.0 * c0
    C = -c1 * c1
    P = B - A * A / 3.0
    Q = 2.0 * A**3 / 27.0 - A * B / 3.0 + C
    m = np.sqrt(np.maximum(-P / 3.0, 0.0))
    safe_m = np.where(m > 0, m, 1.0)
    cos3 = np.where(m > 0, -Q / (2.0 * safe_m**3), 0.0)
    phi = np.arccos(np.clip(cos3, -1.0, 1.0)) / 3.0
    z = np.stack([2.0 * m * np.cos(phi - 2.0 * np.pi * k / 3.0) for k in range(3)]) - A / 3.0
    r = np.sqrt(np.sort(np.maximum(z, 0.0), axis=0))
    lam = np.where(c1 >= 0, -(r[0] + r[1] + r[2]) / 2.0, (r[0] - r[1] - r[2]) / 2.0)
    return 1.0 + lam


def gram_search(q, grid_resolution=200):
    """Maximise the smallest Gram eigenvalue over ``(s, t)`` in [-1, 1]^2.

    The smallest eigenvalue is concave in ``(s, t)``, so a grid scan followed
    by a Nelder-Mead polish from the best cell reaches the global maximum.
    The polish is skipped when the scan already found a PSD completion.
    Returns ``(GramParameters, smallest_eigenvalue)``.
    """
    if grid_resolution < 100:
        raise ValueError("grid_resolution must be at least 100")
    q = _as_q(q)
    grid = np.linspace(-1.0, 1.0, grid_resolution)
    s, t = np.meshgrid(grid, grid, indexing="ij")
    scan = _min_eig_grid(q, s, t)
    k = np.unravel_index(np.argmax(scan), scan.shape)
    best = np.array([s[k], t[k]])
    best_val = min_eigenvalue(gram_matrix(q, *best))
    if best_val >= PSD_TOL:
        return GramParameters(*best), best_val

    def objective(x):
        x = np.clip(x, -1.0, 1.0)
        return -np.linalg.eigvalsh(gram_matrix(q, x[0], x[1]))[0]

    h = grid[1] - grid[0]
    simplex = np.array([best, best + [h, 0.0], best + [0.0, h]])
    res = minimize(
        objective,
        best,
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-13, "fatol": 1e-15, "maxiter": 4000},
    )
    x = np.clip(res.x, -1.0, 1.0)
    val = min_eigenvalue(gram_matrix(q, *x))
    if val > best_val:
        best, best_val = x, val
    return GramParameters(float(best[0]), float(best[1])), best_val


def gram_feasible(q, grid_resolution=200):
    """Brute-force membership in Q via a positive-semidefinite Gram completion.

    ``q`` is quantum exactly when some choice of ``x1.x2`` and ``y1.y2`` makes
    the Gram matrix of four unit vectors PSD.
    """
    q = _as_q(q)
    if np.any(np.abs(q) > 1.0):
        return False
    _, lam = gram_search(q, grid_resolution)
    return lam >= -PSD_TOL


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def random_direction(rng, size=None):
    """Uniform unit vector(s) on the 2-sphere."""
    shape = (3,) if size is None else (*np.atleast_1d(size), 3)
    v = rng.standard_normal(shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def haar_pure_state(rng, size=None):
    """Haar-random two-qubit state vector(s) from normalised complex Gaussians."""
    shape = (4,) if size is None else (*np.atleast_1d(size), 4)
    psi = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return psi / np.linalg.norm(psi, axis=-1, keepdims=True)


def random_density_matrix(rng, size=None):
    """``G G^dagger / tr(G G^dagger)`` for a complex Ginibre matrix ``G``."""
    shape = (4, 4) if size is None else (*np.atleast_1d(size), 4, 4)
    g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    rho = g @ np.conj(np.swapaxes(g, -1, -2))
    return rho / np.trace(rho, axis1=-2, axis2=-1)[..., None, None]


def _random_spins(rng, n):
    # (n, 4 directions, 2, 2) in the order u1, u2, v1, v2
    dirs = random_direction(rng, (n, 4))
    return np.einsum("nkd,dab->nkab", dirs, _PAULIS)


def sample_correlations(n, seed, source):
    """``n`` quantum correlation vectors drawn from ``source``, shape ``(n, 4)``.

    Sources:

    ``pure-state``
        Haar-random pure state, independent uniform measurement directions.
    ``mixed-state``
        Normalised Ginibre density matrix, uniform directions.
    ``tsirelson-vectors``
        Inner products of four independent uniform points on the unit sphere
        of R^4.

    The output depends only on ``(n, seed, source)``.
    """
    if source not in SOURCES:
        raise UnknownSource(f"unknown source {source!r}; choose from {', '.join(SOURCES)}")
    rng = np.random.default_rng(seed)
    if source == "tsirelson-vectors":
        v = rng.standard_normal((n, 4, 4))
        v /= np.linalg.norm(v, axis=-1, keepdims=True)
        x, y = v[:, :2], v[:, 2:]
        return np.einsum("nid,njd->nij", x, y).reshape(n, 4)

    if source == "pure-state":
        psi = haar_pure_state(rng, n)
        rho = np.einsum("ni,nj->nij", psi, psi.conj())
    else:
        rho = random_density_matrix(rng, n)
    spins = _random_spins(rng, n)
    a, b = spins[:, :2], spins[:, 2:]
    # tr(rho (A x B)) with rho indexed as rho[(a b), (a' b')]
    rho = rho.reshape(n, 2, 2, 2, 2)
    q = np.einsum("nabcd,nica,njdb->nij", rho, a, b)
    return q.real.reshape(n, 4)


def random_correlation(seed, source):
    """A single seeded quantum correlation vector; see :func:`sample_correlations`."""
    return sample_correlations(1, seed, source)[0]


# ---------------------------------------------------------------------------
# CHSH along the boundary
# ---------------------------------------------------------------------------

def chsh_profile(alpha, beta, theta):
    """(2,2) CHSH value of coplanar Tsirelson vectors with half-sum lengths
    ``cos(alpha)``, ``cos(beta)`` at relative angle ``theta``."""
    return np.cos(alpha - beta) * np.cos(theta) + np.sin(alpha + beta) * np.sin(theta)


def maximize_chsh(alpha, beta):
    """Closed-form ``max_theta chsh_profile = sqrt(cos^2(a-b) + sin^2(a+b))``."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    value = np.hypot(np.cos(alpha - beta), np.sin(alpha + beta))
    return value.item() if value.ndim == 0 else value
