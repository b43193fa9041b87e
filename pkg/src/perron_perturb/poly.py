"""Real-coefficient polynomial machinery.

Characteristic polynomials come from the Faddeev-LeVerrier recurrence (whose
intermediate matrices also yield the adjugate), minimal polynomials from a
Krylov rank test on vectorized matrix powers, complex roots from simultaneous
Aberth-Ehrlich iteration, and half-plane classification from the Routh array.

Coefficients are always stored in ascending degree order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConvergenceFailure, IllConditioned

EPS_LEAD_FACTOR = 1e-12  # degree trimming, relative to max |coeff|
TOL_CONJ = 1e-9          # conjugate pairing of roots of real polynomials
TOL_CLUSTER = 1e-8       # greedy multiplicity clustering
TOL_RANK = 1e-9          # singular-value cutoff for minimal-poly degree
TOL_PIVOT_FACTOR = 1e-12  # Routh pivot considered zero below this, scaled
MAX_ROOT_ITER = 200
ROOT_TOL = 1e-13


@dataclass(frozen=True)
class RealPolynomial:
    """A real polynomial given by its coefficients in ascending degree order."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("coefficient sequence must be nonempty")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @property
    def eps_lead(self) -> float:
        return EPS_LEAD_FACTOR * max(abs(c) for c in self.coeffs)

    @property
    def degree(self) -> int:
        """Index of the last coefficient exceeding the trimming threshold.

        Returns -1 for the identically zero polynomial.
        """
        eps = self.eps_lead
        for k in range(len(self.coeffs) - 1, -1, -1):
            if abs(self.coeffs[k]) > eps:
                return k
        return -1

    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    def trimmed(self) -> "RealPolynomial":
        d = self.degree
        if d < 0:
            return RealPolynomial((0.0,))
        return RealPolynomial(self.coeffs[: d + 1])

    def __call__(self, x):
        """Horner evaluation; accepts scalars or arrays, real or complex."""
        x = np.asarray(x)
        acc = np.zeros_like(x, dtype=complex) if np.iscomplexobj(x) else np.zeros_like(x, dtype=float)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RealPolynomial":
        if len(self.coeffs) == 1:
            return RealPolynomial((0.0,))
        return RealPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def eval_matrix(self, A: np.ndarray) -> np.ndarray:
        """Evaluate the polynomial at a square matrix (matrix Horner)."""
        n = A.shape[0]
        acc = np.zeros((n, n))
        for c in reversed(self.coeffs):
            acc = acc @ A + c * np.eye(n)
        return acc


@dataclass(frozen=True)
class RootSet:
    """Clustered roots with multiplicities and a scaled residual.

    ``residual`` is the maximum relative backward error |p(z)| / sum_i |c_i||z|^i
    over all roots.
    """

    roots: tuple[complex, ...]
    counts: tuple[int, ...]
    residual: float

    @property
    def values(self) -> tuple[complex, ...]:
        """All roots, repeated according to multiplicity."""
        out = []
        for z, m in zip(self.roots, self.counts):
            out.extend([z] * m)
        return tuple(out)

    def __len__(self) -> int:
        return sum(self.counts)


class HurwitzStatus(enum.Enum):
    ALL_OPEN_RIGHT = "AllOpenRight"
    NOT_ALL_OPEN_RIGHT = "NotAllOpenRight"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class HurwitzVerdict:
    status: HurwitzStatus
    first_failure: int | None = None


def faddeev_leverrier(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Run the Faddeev-LeVerrier recurrence on a square matrix.

    Returns ``(coeffs, M_n)`` where ``coeffs`` are the ascending coefficients
    of the monic characteristic polynomial and ``M_n`` is the final recurrence
    matrix, from which ``adj(A) = (-1)**(n-1) * M_n``.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    I = np.eye(n)
    M = I.copy()
    c = np.zeros(n + 1)
    c[n] = 1.0
    for k in range(1, n + 1):
        if k > 1:
            M = A @ M + c[n - k + 1] * I
        AM = A @ M
        c[n - k] = -np.trace(AM) / k
    return c, M


def char_poly(A: np.ndarray) -> RealPolynomial:
    """Monic characteristic polynomial det(lambda*I - A), ascending coeffs."""
    c, _ = faddeev_leverrier(A)
    return RealPolynomial(tuple(c))


def minimal_poly(A: np.ndarray, tol_rank: float = TOL_RANK) -> RealPolynomial:
    """Monic minimal polynomial via Krylov rank on vectorized powers.

    The degree is the least d for which vec(A^d) lies in the span of the
    lower powers, decided by a singular-value cutoff of ``tol_rank`` times the
    largest singular value. Raises IllConditioned when the rank decision has
    no clear gap (< factor 10 between the decisive singular values).
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    scale = max(1.0, float(np.abs(A).max()))
    B = A / scale
    powers = [np.eye(n)]
    for _ in range(n):
        powers.append(powers[-1] @ B)
    cols = [P.reshape(-1) for P in powers]
    for d in range(1, n + 1):
        K = np.stack(cols[: d + 1], axis=1)
        s = np.linalg.svd(K, compute_uv=False)
        cutoff = tol_rank * s[0]
        if s[-1] <= cutoff:
            if s[-1] > 0 and s[-2] / s[-1] < 10.0 and s[-2] <= 10.0 * cutoff:
                raise IllConditioned(
                    f"ambiguous rank decision at degree {d}: "
                    f"sigma={s[-2]:.3e},{s[-1]:.3e}"
                )
            _, _, Vt = np.linalg.svd(K)
            q = Vt[-1]
            if abs(q[d]) < 1e-8 * np.abs(q).max():
                raise IllConditioned("null vector has negligible leading coefficient")
            q = q / q[d]
            # undo the scaling A = scale * B
            coeffs = tuple(q[k] * scale ** (d - k) for k in range(d + 1))
            return RealPolynomial(coeffs)
    # degree n: the characteristic polynomial annihilates A
    return char_poly(A)


def _aberth(monic: np.ndarray) -> np.ndarray:
    """All roots of a monic polynomial (ascending coeffs) of degree >= 3."""
    d = len(monic) - 1
    radius = 1.0 + float(np.abs(monic[:-1]).max())
    angles = 2.0 * np.pi * (np.arange(d) + 0.35) / d + 0.4
    z = radius * np.exp(1j * angles)
    dcoeffs = monic[1:] * np.arange(1, d + 1)
    active = np.ones(d, dtype=bool)
    for _ in range(MAX_ROOT_ITER):
        p = np.zeros(d, dtype=complex)
        for c in monic[::-1]:
            p = p * z + c
        dp = np.zeros(d, dtype=complex)
        for c in dcoeffs[::-1]:
            dp = dp * z + c
        # relative backward-error scale for the stopping test
        az = np.abs(z)
        bscale = np.zeros(d)
        for c in np.abs(monic[::-1]):
            bscale = bscale * az + c
        newly_done = np.abs(p) <= 8.0 * np.finfo(float).eps * np.maximum(bscale, 1e-300)
        dp = np.where(dp == 0, np.finfo(float).tiny, dp)
        newton = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - newton * s
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        step = np.where(active & ~newly_done, newton / denom, 0.0)
        z = z - step
        active &= ~(newly_done | (np.abs(step) <= ROOT_TOL * (1.0 + np.abs(z))))
        if not active.any():
            return z
    raise ConvergenceFailure(
        f"Aberth-Ehrlich did not converge in {MAX_ROOT_ITER} iterations (degree {d})"
    )


def _pair_conjugates(z: np.ndarray, tol: float = TOL_CONJ) -> np.ndarray:
    """Snap near-real roots to the real axis and enforce exact conjugate pairs."""
    z = np.array(z, dtype=complex)
    n = len(z)
    used = np.zeros(n, dtype=bool)
    for i in range(n):
        if abs(z[i].imag) <= tol * (1.0 + abs(z[i])):
            z[i] = z[i].real
            used[i] = True
    order = np.argsort(-np.abs(z.imag))
    for i in order:
        if used[i]:
            continue
        best, best_d = -1, np.inf
        for j in range(n):
            if j == i or used[j] or z[i].imag * z[j].imag >= 0:
                continue
            dist = abs(z[i] - np.conj(z[j]))
            if dist < best_d:
                best, best_d = j, dist
        if best >= 0 and best_d <= tol * (1.0 + abs(z[i])) * 2.0:
            m = 0.5 * (z[i] + np.conj(z[best]))
            z[i], z[best] = m, np.conj(m)
            used[i] = used[best] = True
    return z


def _cluster(z: np.ndarray, tol: float = TOL_CLUSTER) -> tuple[tuple, tuple]:
    centers: list[complex] = []
    counts: list[int] = []
    for zi in z:
        for k, c in enumerate(centers):
            if abs(zi - c) <= tol * (1.0 + abs(c)):
                counts[k] += 1
                break
        else:
            centers.append(complex(zi))
            counts.append(1)
    return tuple(centers), tuple(counts)


def roots(p: RealPolynomial) -> RootSet:
    """All complex roots of a real polynomial, conjugate-paired and clustered."""
    d = p.degree
    if d < 1:
        raise ValueError("root finding requires degree >= 1")
    c = np.asarray(p.coeffs[: d + 1], dtype=float)
    eps = p.eps_lead
    # factor out (near-)zero roots so the iteration starts from a clean origin
    nzero = 0
    while nzero < d and abs(c[nzero]) <= eps:
        nzero += 1
    core = c[nzero:]
    deg = len(core) - 1
    monic = core / core[-1]
    if deg == 0:
        z = np.zeros(0, dtype=complex)
    elif deg == 1:
        z = np.array([-monic[0]], dtype=complex)
    elif deg == 2:
        b, c0 = monic[1], monic[0]
        disc = b * b - 4.0 * c0
        if disc >= 0:
            q = -0.5 * (b + np.sign(b or 1.0) * np.sqrt(disc))
            r1 = q
            r2 = c0 / q if q != 0 else 0.0
            z = np.array([r1, r2], dtype=complex)
        else:
            re, im = -0.5 * b, 0.5 * np.sqrt(-disc)
            z = np.array([re + 1j * im, re - 1j * im])
    else:
        z = _aberth(monic)
    z = np.concatenate([z, np.zeros(nzero, dtype=complex)])
    z = _pair_conjugates(z)
    scale = np.array([max(sum(abs(ci) * abs(zi) ** k for k, ci in enumerate(c)), 1e-300) for zi in z])
    residual = float(np.max(np.abs(p(z)) / scale)) if len(z) else 0.0
    centers, counts = _cluster(z)
    return RootSet(roots=centers, counts=counts, residual=residual)


def routh_hurwitz(p: RealPolynomial) -> HurwitzVerdict:
    """Decide whether every root of p lies in the open RIGHT half plane.

    Applies the classical Routh array to p(-lambda). A pivot within tolerance
    of zero yields Marginal rather than an epsilon-perturbed continuation.
    """
    d = p.degree
    if d < 1:
        raise ValueError("Routh-Hurwitz requires degree >= 1")
    c = np.asarray(p.coeffs[: d + 1], dtype=float)
    q = c * (-1.0) ** np.arange(d + 1)  # p(-lambda)
    a = q[::-1]  # descending
    tol_pivot = TOL_PIVOT_FACTOR * np.abs(a).max()
    width = (d // 2) + 1
    row0 = np.zeros(width)
    row1 = np.zeros(width)
    row0[: len(a[0::2])] = a[0::2]
    row1[: len(a[1::2])] = a[1::2]
    first_col = [row0[0]]
    rows = [row0, row1]
    for idx in range(1, d + 1):
        prev, cur = rows[idx - 1], rows[idx]
        if abs(cur[0]) <= tol_pivot and idx < d + 1:
            # a zero pivot in any working row is a degenerate (marginal) case,
            # except the very last row which only gets read, not divided by
            if idx < d:
                return HurwitzVerdict(HurwitzStatus.MARGINAL, first_failure=idx)
        first_col.append(cur[0])
        if idx == d:
            break
        nxt = np.zeros(width)
        for i in range(width - 1):
            nxt[i] = (cur[0] * prev[i + 1] - prev[0] * cur[i + 1]) / cur[0]
        rows.append(nxt)
    col = np.asarray(first_col)
    if np.any(np.abs(col) <= tol_pivot):
        idx = int(np.argmax(np.abs(col) <= tol_pivot))
        return HurwitzVerdict(HurwitzStatus.MARGINAL, first_failure=idx)
    signs = np.sign(col)
    changes = np.nonzero(signs[1:] != signs[:-1])[0]
    if len(changes) == 0:
        return HurwitzVerdict(HurwitzStatus.ALL_OPEN_RIGHT)
    return HurwitzVerdict(HurwitzStatus.NOT_ALL_OPEN_RIGHT, first_failure=int(changes[0]) + 1)
