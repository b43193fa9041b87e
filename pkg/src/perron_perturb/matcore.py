"""Nonnegative-matrix and singular M-matrix machinery.

Spectral radii and Perron vectors for small dense nonnegative matrices,
irreducibility via strong connectivity of the positive-entry digraph, the
non-zero-projection (NZP) check on perturbation vectors, and the adjugate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .exceptions import NotSimple

TOL_EIG_FACTOR = 1e-9    # eigenvalue residual, relative to max(1, ||H||_inf)
TOL_CLUSTER_FACTOR = 1e-8  # simplicity decision, relative to max(1, rho)
TOL_NZP = 1e-10


@dataclass(frozen=True)
class NonnegativeMatrix:
    """A dense square matrix with entrywise-nonnegative entries."""

    entries: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.entries, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
            raise ValueError("entries must form a square matrix of dimension >= 1")
        if not np.all(np.isfinite(M)):
            raise ValueError("entries must be finite")
        if np.any(M < 0):
            raise ValueError("entries must be nonnegative")
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SingularMMatrix:
    """A = rho(H) I - H for a nonnegative H; zero is an eigenvalue."""

    entries: np.ndarray
    rho: float

    def __post_init__(self):
        M = np.asarray(self.entries, dtype=float).copy()
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PerronPair:
    """Unit right/left eigenvectors of H at its spectral radius."""

    z_r: np.ndarray
    z_l: np.ndarray
    simple: bool


@dataclass(frozen=True)
class NzpReport:
    """Non-zero-projection check: z_l^T v and w^T z_r both away from zero."""

    lv: float
    wr: float
    holds: bool


def is_irreducible(H: NonnegativeMatrix) -> bool:
    """True iff the digraph on strictly positive entries is strongly connected."""
    M = H.entries > 0
    n = H.n
    if n == 1:
        return True
    reach = (M | np.eye(n, dtype=bool)).astype(float)
    for _ in range(int(np.ceil(np.log2(n))) + 1):
        reach = (reach @ reach) > 0
        reach = reach.astype(float)
    return bool(reach.all())


def spectral_radius(H: NonnegativeMatrix) -> tuple[float, bool]:
    """Spectral radius of H and whether it is an algebraically simple eigenvalue.

    Simplicity is decided by clustering the computed characteristic roots:
    exactly one root (with multiplicity) may lie within tol_cluster of rho.
    """
    rs = poly.roots(poly.char_poly(H.entries))
    vals = np.asarray(rs.values)
    rho = float(np.max(np.abs(vals)))
    tol = TOL_CLUSTER_FACTOR * max(1.0, rho)
    at_rho = np.abs(vals - rho) <= tol
    simple = bool(at_rho.sum() == 1)
    return rho, simple


def perron_pair(H: NonnegativeMatrix) -> PerronPair:
    """Sign-normalized right/left unit eigenvectors of H at rho(H).

    Computed as the singular vectors of rho*I - H at its smallest singular
    value. Raises NotSimple when rho(H) is not algebraically simple.
    """
    rho, simple = spectral_radius(H)
    if not simple:
        raise NotSimple("spectral radius is not a simple eigenvalue")
    A = rho * np.eye(H.n) - H.entries
    z_r = _null_vector(A)
    z_l = _null_vector(A.T)
    z_r = _sign_normalize(z_r)
    z_l = _sign_normalize(z_l)
    return PerronPair(z_r=z_r, z_l=z_l, simple=True)


def _null_vector(A: np.ndarray) -> np.ndarray:
    _, _, Vt = np.linalg.svd(A)
    return Vt[-1]


def _sign_normalize(z: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(z)))
    if z[k] < 0:
        z = -z
    return z / np.linalg.norm(z)


def check_nzp(H: NonnegativeMatrix, v: np.ndarray, w: np.ndarray) -> NzpReport:
    """NZP condition: z_l^T v != 0 and w^T z_r != 0 (thresholded at TOL_NZP)."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    pair = perron_pair(H)
    lv = float(pair.z_l @ v)
    wr = float(w @ pair.z_r)
    return NzpReport(lv=lv, wr=wr, holds=abs(lv) > TOL_NZP and abs(wr) > TOL_NZP)


def to_m_matrix(H: NonnegativeMatrix) -> SingularMMatrix:
    """The singular M-matrix rho(H)*I - H."""
    rho, _ = spectral_radius(H)
    return SingularMMatrix(entries=rho * np.eye(H.n) - H.entries, rho=rho)


def adjugate(A: np.ndarray) -> np.ndarray:
    """Adjugate via the Faddeev-LeVerrier recurrence: A adj(A) = det(A) I."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n == 1:
        return np.ones((1, 1))
    _, M = poly.faddeev_leverrier(A)
    return (-1.0) ** (n - 1) * M
