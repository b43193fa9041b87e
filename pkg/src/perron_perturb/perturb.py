"""Analysis of the rank-one perturbation family B(t) = A + t v w^T.

Covers the perturbation polynomial p_vw (finite large-t eigenvalue limits),
eigenvalue curve tracing over a t-grid, closed forms for n = 2 and n = 3,
large-t asymptotic branches, and the eventual-stability classifier.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import matcore, poly
from .exceptions import (
    ConvergenceFailure,
    DimensionMismatch,
    NonsingularConstantTerm,
    NotNonderogatory,
)
from .matcore import TOL_NZP, NonnegativeMatrix, NzpReport, SingularMMatrix
from .poly import HurwitzStatus, RealPolynomial, RootSet

MAX_N = 16
_EMPTY_ROOTS = RootSet(roots=(), counts=(), residual=0.0)


@dataclass
class PerturbationProblem:
    """A bundled instance: H, A = rho(H) I - H, perturbation vectors, flags."""

    H: NonnegativeMatrix
    A: SingularMMatrix
    v: np.ndarray
    w: np.ndarray
    rho: float
    simple: bool
    irreducible: bool
    nzp: NzpReport
    wv: float
    _min_poly: RealPolynomial | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.H.n

    def minimal_poly(self) -> RealPolynomial:
        if self._min_poly is None:
            self._min_poly = poly.minimal_poly(self.A.entries)
        return self._min_poly

    def moments(self, count: int) -> np.ndarray:
        """The sequence w^T A^j v for j = 0 .. count-1."""
        out = np.empty(count)
        x = self.v.copy()
        for j in range(count):
            out[j] = self.w @ x
            x = self.A.entries @ x
        return out


def make_problem(H, v, w) -> PerturbationProblem:
    """Validate and assemble a PerturbationProblem from H, v, w."""
    if not isinstance(H, NonnegativeMatrix):
        H = NonnegativeMatrix(np.asarray(H, dtype=float))
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != (H.n,) or w.shape != (H.n,):
        raise DimensionMismatch("v and w must be length-n vectors")
    if not (np.all(np.isfinite(v)) and np.all(np.isfinite(w))):
        raise ValueError("v and w must be finite")
    if np.any(v < 0) or np.any(w < 0):
        raise ValueError("v and w must be entrywise nonnegative")
    rho, simple = matcore.spectral_radius(H)
    A = matcore.to_m_matrix(H)
    irreducible = matcore.is_irreducible(H)
    if simple:
        nzp = matcore.check_nzp(H, v, w)
    else:
        nzp = NzpReport(lv=float("nan"), wr=float("nan"), holds=False)
    return PerturbationProblem(
        H=H, A=A, v=v, w=w, rho=rho, simple=simple,
        irreducible=irreducible, nzp=nzp, wv=float(w @ v),
    )


def b_of_t(prob: PerturbationProblem, t: float) -> np.ndarray:
    """The perturbed matrix A + t v w^T."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return prob.A.entries + t * np.outer(prob.v, prob.w)


def eigenvalues(M: np.ndarray, max_n: int = MAX_N, check: bool = True) -> RootSet:
    """Full spectrum of a real square matrix, conjugate-paired and clustered.

    Computed by QR iteration (LAPACK): the char-poly + root-finder route loses
    the small eigenvalues once the spectrum spans many orders of magnitude,
    as it does for B(t) at large t. With ``check`` on, each distinct
    eigenvalue is verified by the smallest singular value of M - lambda I,
    which is recorded (scaled) as the residual.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if n > max_n:
        raise DimensionMismatch(f"matrix dimension {n} exceeds max_n={max_n}")
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    centers, counts = poly._cluster(vals)
    residual = 0.0
    if check:
        scale = 1.0 + np.abs(M).max()
        for lam in centers:
            smin = np.linalg.svd(M - lam * np.eye(n), compute_uv=False)[-1]
            residual = max(residual, smin / scale)
            if smin > 1e-5 * scale:
                raise ConvergenceFailure(
                    f"computed eigenvalue {lam} fails the residual check "
                    f"(sigma_min={smin:.3e})"
                )
    return RootSet(roots=tuple(centers), counts=tuple(counts), residual=residual)


def p_vw_lemma16(prob: PerturbationProblem) -> RealPolynomial:
    """p_vw from the minimal-polynomial coefficient formula.

    With m_A(lambda) = sum_k m_k lambda^k of degree l, the i-th coefficient is
    sum over k - j = i + 1 of m_k * (w^T A^j v), for i = 0 .. l-1.
    """
    m = prob.minimal_poly()
    l = m.degree
    s = prob.moments(l)
    mc = m.coeffs
    c = [sum(mc[i + 1 + j] * s[j] for j in range(l - i)) for i in range(l)]
    if not c:
        c = [0.0]
    return RealPolynomial(tuple(c))


def p_vw_det_oracle(prob: PerturbationProblem) -> RealPolynomial:
    """p_vw as det(lambda I - A) - det(lambda I - (A + v w^T)).

    Only valid for nonderogatory A (minimal polynomial = characteristic
    polynomial); raises NotNonderogatory otherwise.
    """
    pA = poly.char_poly(prob.A.entries)
    m = prob.minimal_poly()
    n = prob.n
    scale = max(1.0, max(abs(c) for c in pA.coeffs))
    if m.degree != n or any(
        abs(a - b) > 1e-8 * scale for a, b in zip(m.coeffs, pA.coeffs)
    ):
        raise NotNonderogatory("minimal polynomial differs from characteristic")
    pB = poly.char_poly(prob.A.entries + np.outer(prob.v, prob.w))
    diff = np.asarray(pA.coeffs) - np.asarray(pB.coeffs)
    return RealPolynomial(tuple(diff[:n]) if n >= 1 else (0.0,))


def default_sample_points(prob: PerturbationProblem, count: int = 8) -> np.ndarray:
    """Points on the circle |lambda| = 1 + rho, rotated off the spectrum."""
    radius = 1.0 + prob.rho
    angles = 2.0 * np.pi * np.arange(count) / count + 0.5 * (np.sqrt(5.0) - 1.0)
    return radius * np.exp(1j * angles)


def factorization_residual(prob, t, sample_points=None) -> float:
    """Residual of det(lI - B(t)) = det(lI - A)/m_A(l) * (m_A(l) - t p_vw(l)).

    Max over sample points of |LHS - RHS| / (1 + |LHS|). Sample points must
    stay away from the eigenvalues of A. The LHS determinant is evaluated
    pointwise by LU factorization: expanding the characteristic polynomial of
    B(t) first loses the low-order coefficients once t is large.
    """
    if sample_points is None:
        sample_points = default_sample_points(prob)
    pts = np.asarray(sample_points, dtype=complex)
    B = b_of_t(prob, t)
    n = B.shape[0]
    pA = poly.char_poly(prob.A.entries)
    m = prob.minimal_poly()
    pvw = p_vw_lemma16(prob)
    lhs = np.array([np.linalg.det(lam * np.eye(n) - B) for lam in pts])
    rhs = pA(pts) / m(pts) * (m(pts) - t * pvw(pts))
    return float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(lhs))))


@dataclass(frozen=True)
class EigenCurveSet:
    """Matched eigenvalue paths of B(t) over a log-spaced t-grid."""

    t_grid: tuple[float, ...]
    paths: tuple[tuple[complex, ...], ...]  # paths[i][j]: path i at t_grid[j]
    a_eigs: RootSet
    pvw_roots: RootSet


def _match_columns(prev: np.ndarray, cur: np.ndarray) -> np.ndarray:
    """Greedy minimal-distance assignment of cur to the order of prev."""
    n = len(prev)
    d = np.abs(prev[:, None] - cur[None, :])
    out = np.empty(n, dtype=complex)
    rows_free = np.ones(n, dtype=bool)
    cols_free = np.ones(n, dtype=bool)
    for _ in range(n):
        masked = np.where(rows_free[:, None] & cols_free[None, :], d, np.inf)
        i, j = np.unravel_index(np.argmin(masked), masked.shape)
        out[i] = cur[j]
        rows_free[i] = False
        cols_free[j] = False
    return out


def trace_eigenvalues(prob, t_min: float, t_max: float, points: int) -> EigenCurveSet:
    """Eigenvalues of B(t) on a log grid, matched into continuous paths."""
    if t_min <= 0 or t_min > t_max:
        raise ValueError("need 0 < t_min <= t_max")
    if t_min == t_max:
        grid = np.array([t_min])
    else:
        if points < 2:
            raise ValueError("points must be >= 2")
        grid = np.geomspace(t_min, t_max, points)
    cols = []
    for t in grid:
        try:
            cols.append(np.asarray(eigenvalues(b_of_t(prob, t)).values))
        except ConvergenceFailure as exc:
            raise ConvergenceFailure(f"eigenvalue solve failed at t={t}: {exc}") from exc
    paths = np.empty((prob.n, len(grid)), dtype=complex)
    paths[:, 0] = cols[0]
    for j in range(1, len(grid)):
        paths[:, j] = _match_columns(paths[:, j - 1], cols[j])
    pvw = p_vw_lemma16(prob)
    pvw_roots = poly.roots(pvw) if pvw.degree >= 1 else _EMPTY_ROOTS
    return EigenCurveSet(
        t_grid=tuple(float(t) for t in grid),
        paths=tuple(tuple(row) for row in paths),
        a_eigs=eigenvalues(prob.A.entries),
        pvw_roots=pvw_roots,
    )


@dataclass(frozen=True)
class N2ClosedForm:
    """Closed-form n = 2 data: the t-parametrized quadratic and its limits.

    The eigenvalues of B(t) away from those of A solve
    lambda^2 - lambda (mu + t w^T v) + t w^T adj(A) v = 0, stored here as
    ``base`` + t * ``t_part``. For w^T v != 0, the bounded eigenvalue tends to
    ``zeta`` with first-order correction ``r``/t; for w^T v = 0 both
    eigenvalues escape along the vertical line Re = mu / 2.
    """

    mu: float
    base: RealPolynomial    # lambda^2 - mu lambda
    t_part: RealPolynomial  # w^T adj(A) v - (w^T v) lambda
    zeta: float | None
    r: float | None
    asymptote_re: float | None

    def quadratic_at(self, t: float) -> RealPolynomial:
        b = np.zeros(3)
        b[: len(self.base.coeffs)] += self.base.coeffs
        tp = np.zeros(3)
        tp[: len(self.t_part.coeffs)] += self.t_part.coeffs
        return RealPolynomial(tuple(b + t * tp))


def closed_form_n2(prob: PerturbationProblem) -> N2ClosedForm:
    if prob.n != 2:
        raise DimensionMismatch("closed_form_n2 requires n = 2")
    A = prob.A.entries
    mu = float(np.trace(A))
    g = float(prob.w @ matcore.adjugate(A) @ prob.v)
    s = prob.wv
    base = RealPolynomial((0.0, -mu, 1.0))
    t_part = RealPolynomial((g, -s))
    if s > TOL_NZP:
        zeta = g / s
        M = zeta * np.eye(2) - A
        q = float(np.linalg.solve(M.T, prob.w) @ np.linalg.solve(M, prob.v))
        r = -1.0 / q
        return N2ClosedForm(mu=mu, base=base, t_part=t_part, zeta=zeta, r=r,
                            asymptote_re=None)
    return N2ClosedForm(mu=mu, base=base, t_part=t_part, zeta=None, r=None,
                        asymptote_re=0.5 * mu)


@dataclass(frozen=True)
class N3ClosedForm:
    """The n = 3 perturbation quadratic and its real-part sign certificate."""

    pvw_quadratic: RealPolynomial
    re_sign_value: float  # -w^T (p2 I + A) v; > 0 certifies open-RHP roots


def closed_form_n3(prob: PerturbationProblem) -> N3ClosedForm:
    if prob.n != 3:
        raise DimensionMismatch("closed_form_n3 requires n = 3")
    pA = poly.char_poly(prob.A.entries)
    scale = max(1.0, max(abs(c) for c in pA.coeffs))
    if abs(pA.coeffs[0]) > 1e-10 * scale:
        raise NonsingularConstantTerm(
            f"characteristic constant term {pA.coeffs[0]:.3e} is not zero"
        )
    p1, p2 = pA.coeffs[1], pA.coeffs[2]
    s0, s1, s2 = prob.moments(3)
    quad = RealPolynomial((p1 * s0 + p2 * s1 + s2, p2 * s0 + s1, s0))
    return N3ClosedForm(pvw_quadratic=quad, re_sign_value=-(p2 * s0 + s1))


class AsymptoticCase(enum.Enum):
    WV_POSITIVE = "WvPositive"
    WV_ZERO_WAV_NONZERO = "WvZeroWAvNonzero"
    WV_ZERO_WAV_ZERO = "WvZeroWAvZero"


@dataclass(frozen=True)
class DivergentBranch:
    """One eigenvalue branch escaping to infinity: leading * t**power + constant."""

    leading: complex
    power: float
    constant: complex | None
    description: str


@dataclass(frozen=True)
class AsymptoticReport:
    case: AsymptoticCase
    divergent_branches: tuple[DivergentBranch, ...]
    finite_limits: RootSet
    n_divergent: int


def asymptotics(prob: PerturbationProblem) -> AsymptoticReport:
    """Large-t behaviour of the eigenvalues of B(t).

    One linear branch t w^T v when w^T v > 0; a pair of square-root branches
    with constant term w^T A^2 v / (2 w^T A v) when w^T v = 0 and w^T A v != 0;
    otherwise only the divergent-branch count is reported.
    """
    pvw = p_vw_lemma16(prob)
    m = prob.minimal_poly()
    l = m.degree
    finite = poly.roots(pvw) if pvw.degree >= 1 else _EMPTY_ROOTS
    n_div = l - max(pvw.degree, 0)
    s0, s1, s2 = prob.moments(3) if prob.n >= 1 else (0.0, 0.0, 0.0)
    if s0 > TOL_NZP:
        branch = DivergentBranch(
            leading=complex(s0), power=1.0, constant=None,
            description=f"{s0:.6g}*t + O(1) along the positive real axis",
        )
        return AsymptoticReport(AsymptoticCase.WV_POSITIVE, (branch,), finite, n_div)
    if abs(s1) > TOL_NZP:
        const = 0.5 * s2 / s1
        lead = complex(np.sqrt(s1)) if s1 > 0 else 1j * np.sqrt(-s1)
        branches = tuple(
            DivergentBranch(
                leading=sign * lead, power=0.5, constant=complex(const),
                description=f"{'+' if sign > 0 else '-'}sqrt({s1:.6g}*t) "
                            f"+ {const:.6g} + O(1/sqrt(t))",
            )
            for sign in (+1.0, -1.0)
        )
        return AsymptoticReport(
            AsymptoticCase.WV_ZERO_WAV_NONZERO, branches, finite, n_div
        )
    return AsymptoticReport(AsymptoticCase.WV_ZERO_WAV_ZERO, (), finite, n_div)


class Stability(enum.Enum):
    EVENTUALLY_STABLE = "EventuallyStable"
    EVENTUALLY_UNSTABLE = "EventuallyUnstable"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Stability
    witness_roots: RootSet | None = None
    t1_estimate: float | None = None
    reason: str = ""


def classify(prob: PerturbationProblem, with_threshold: bool = False,
             t_max: float = 1e3) -> StabilityVerdict:
    """Eventual right-half-plane stability of the eigenvalues of B(t).

    For w^T v > 0 the verdict is the Routh-Hurwitz classification of p_vw;
    for w^T v = 0 with w^T A v != 0 the square-root branches decide; the
    remaining cases are Indeterminate.
    """
    if not prob.simple:
        return StabilityVerdict(Stability.INDETERMINATE,
                                reason="rho(H) is not a simple eigenvalue")
    if not prob.nzp.holds:
        return StabilityVerdict(Stability.INDETERMINATE,
                                reason="NZP condition fails")
    if prob.wv > TOL_NZP:
        pvw = p_vw_lemma16(prob)
        if pvw.degree < 1:
            # no finite limits: the only branch escapes along the positive axis
            t1 = estimate_threshold(prob, t_max) if with_threshold else None
            return StabilityVerdict(Stability.EVENTUALLY_STABLE,
                                    witness_roots=_EMPTY_ROOTS, t1_estimate=t1)
        verdict = poly.routh_hurwitz(pvw)
        witnesses = poly.roots(pvw)
        if verdict.status is HurwitzStatus.ALL_OPEN_RIGHT:
            t1 = estimate_threshold(prob, t_max) if with_threshold else None
            return StabilityVerdict(Stability.EVENTUALLY_STABLE,
                                    witness_roots=witnesses, t1_estimate=t1)
        if verdict.status is HurwitzStatus.NOT_ALL_OPEN_RIGHT:
            return StabilityVerdict(Stability.EVENTUALLY_UNSTABLE,
                                    witness_roots=witnesses,
                                    reason="p_vw has roots outside the open right half plane")
        return StabilityVerdict(Stability.INDETERMINATE, witness_roots=witnesses,
                                reason="marginal Routh array pivot")
    s0, s1, s2 = prob.moments(3)
    if abs(s1) > TOL_NZP:
        if s1 > 0:
            return StabilityVerdict(
                Stability.EVENTUALLY_UNSTABLE,
                reason=f"real divergent branch -sqrt({s1:.6g}*t) escapes leftward",
            )
        const_re = 0.5 * s2 / s1
        if const_re <= 0:
            return StabilityVerdict(
                Stability.EVENTUALLY_UNSTABLE,
                reason=f"square-root branches approach Re = {const_re:.6g} <= 0",
            )
        return StabilityVerdict(
            Stability.INDETERMINATE,
            reason="square-root branch constant has positive real part; "
                   "no criterion covers this case",
        )
    return StabilityVerdict(
        Stability.INDETERMINATE,
        reason="w^T v = 0 and w^T A v = 0: only the divergent-branch count is known",
    )


def min_real_part(prob: PerturbationProblem, t: float) -> float:
    """min Re over the spectrum of B(t)."""
    vals = eigenvalues(b_of_t(prob, t), check=False).values
    return min(z.real for z in vals)


def estimate_threshold(prob, t_max: float, t_min: float = 1e-3,
                       points: int = 200) -> float | None:
    """Smallest t* with min Re(eig(B(t))) > 0 for all sampled t in [t*, t_max].

    Scans a log grid, then refines the last stability transition by bisection.
    Returns None when even t_max is not stable.
    """
    grid = np.geomspace(t_min, t_max, points)
    stable = np.array([min_real_part(prob, t) > 0 for t in grid])
    if not stable[-1]:
        return None
    if stable.all():
        return float(grid[0])
    j_bad = int(np.nonzero(~stable)[0][-1])
    lo, hi = grid[j_bad], grid[j_bad + 1]
    for _ in range(60):
        if hi / lo < 1.0 + 1e-9:
            break
        mid = np.sqrt(lo * hi)
        if min_real_part(prob, mid) > 0:
            hi = mid
        else:
            lo = mid
    return float(hi)
