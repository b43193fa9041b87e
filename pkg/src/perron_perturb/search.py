"""Counterexample families from the literature and randomized falsification.

``paper_family`` builds the shifted-Jordan-cycle matrices whose rank-one
perturbations refute eventual stability from dimension four on;
``falsify`` samples random problems and returns every one classified
EventuallyUnstable, after an eigenvalue spot-check.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import matcore, perturb
from .exceptions import GenerationFailure
from .matcore import NonnegativeMatrix
from .perturb import PerturbationProblem, Stability, StabilityVerdict, make_problem
from .poly import RealPolynomial

log = logging.getLogger(__name__)

THREADS_ENV = "PERRON_PERTURB_THREADS"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    samples: int
    seed: int = 0
    entry_scale: float = 1.0
    sparsity: float = 0.0
    wv_mode: str = "any"  # "any" | "positive" | "zero"
    allow_reducible: bool = False
    inject_paper: bool = False
    max_retries: int = 1000

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if not 0.0 <= self.sparsity <= 1.0:
            raise ValueError("sparsity must be in [0, 1]")
        if self.wv_mode not in ("any", "positive", "zero"):
            raise ValueError("wv_mode must be 'any', 'positive' or 'zero'")


@dataclass(frozen=True)
class CounterexampleRecord:
    prob: PerturbationProblem
    verdict: StabilityVerdict
    pvw: RealPolynomial
    seed: int
    sample_index: int

    def to_dict(self) -> dict:
        witnesses = []
        if self.verdict.witness_roots is not None:
            witnesses = [[z.real, z.imag] for z in self.verdict.witness_roots.values]
        return {
            "seed": self.seed,
            "index": self.sample_index,
            "H": self.prob.H.entries.tolist(),
            "v": self.prob.v.tolist(),
            "w": self.prob.w.tolist(),
            "rho": self.prob.rho,
            "wv": self.prob.wv,
            "status": self.verdict.status.value,
            "reason": self.verdict.reason,
            "pvw_coeffs": list(self.pvw.coeffs),
            "witness_roots": witnesses,
        }


def paper_family(n: int) -> NonnegativeMatrix:
    """The dimension-n counterexample pattern: 0.1 I + superdiagonal ones
    plus 10**-n in the (n, 1) entry; its spectral radius is 0.2."""
    if n < 4:
        raise ValueError("the family is defined for n >= 4")
    H = 0.1 * np.eye(n)
    H[np.arange(n - 1), np.arange(1, n)] = 1.0
    H[n - 1, 0] = 10.0 ** (-n)
    return NonnegativeMatrix(H)


def paper_counterexample_4() -> PerturbationProblem:
    """The exact dimension-four counterexample instance."""
    return make_problem(
        paper_family(4),
        np.array([2.0, 0.1, 0.1, 2.0]),
        np.array([2.0, 0.1, 2.0, 0.1]),
    )


def example_small_3() -> PerturbationProblem:
    """3x3 instance whose eigencurves dip into the left half plane near t = 0.1."""
    H = np.array([[0.1, 1.0, 0.0], [0.0, 0.1, 1.0], [1e-4, 0.0, 0.1]])
    return make_problem(H, np.array([0.6, 0.1, 0.3]), np.array([0.5, 1.0, 1.0]))


def example_circulant_3(variant: bool = False) -> PerturbationProblem:
    """Circulant 3x3 instance with w^T v = 0; ``variant`` takes w = e_2
    (w^T A v = 0 as well, three divergent branches)."""
    H = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    v = np.array([1.0, 0.0, 0.0])
    w = np.array([0.0, 1.0, 0.0]) if variant else np.array([0.0, 6.0, 1.0])
    return make_problem(H, v, w)


def random_problem(config: SearchConfig, index: int) -> PerturbationProblem:
    """Deterministic function of (seed, index): a valid random problem.

    Rejection-samples until H is irreducible (unless allowed reducible), its
    spectral radius is simple, NZP holds, and the w^T v mode constraint is met.
    """
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(index,)))
    n = config.n
    for _ in range(config.max_retries):
        H = rng.uniform(0.0, config.entry_scale, (n, n))
        if config.sparsity > 0:
            H *= rng.random((n, n)) >= config.sparsity
        if config.wv_mode == "zero":
            order = rng.permutation(n)
            split = int(rng.integers(1, n))
            v = np.zeros(n)
            w = np.zeros(n)
            v[order[:split]] = rng.uniform(0.0, config.entry_scale, split)
            w[order[split:]] = rng.uniform(0.0, config.entry_scale, n - split)
        else:
            v = rng.uniform(0.0, config.entry_scale, n)
            w = rng.uniform(0.0, config.entry_scale, n)
            if config.sparsity > 0:
                v *= rng.random(n) >= config.sparsity
                w *= rng.random(n) >= config.sparsity
        if not v.any() or not w.any():
            continue
        if config.wv_mode == "positive" and w @ v <= 1e-12:
            continue
        Hm = NonnegativeMatrix(H)
        if not config.allow_reducible and not matcore.is_irreducible(Hm):
            continue
        prob = make_problem(Hm, v, w)
        if not prob.simple or not prob.nzp.holds:
            continue
        return prob
    raise GenerationFailure(
        f"no valid problem after {config.max_retries} draws (seed={config.seed}, "
        f"index={index})"
    )


def _spot_check_unstable(prob: PerturbationProblem) -> bool:
    """Confirm instability empirically: min Re(eig(B(t))) <= 0 at some large t."""
    for t in (1e3, 1e5):
        if perturb.min_real_part(prob, t) <= 1e-6:
            return True
    return False


def _evaluate(config: SearchConfig, index: int) -> CounterexampleRecord | None:
    if index < 0:
        prob = paper_counterexample_4()
    else:
        prob = random_problem(config, index)
    verdict = perturb.classify(prob)
    if verdict.status is not Stability.EVENTUALLY_UNSTABLE:
        return None
    if not _spot_check_unstable(prob):
        log.warning("dropping candidate %d: Hurwitz verdict not confirmed by "
                    "eigenvalue spot-check", index)
        return None
    return CounterexampleRecord(
        prob=prob, verdict=verdict, pvw=perturb.p_vw_lemma16(prob),
        seed=config.seed, sample_index=index,
    )


def falsify(config: SearchConfig) -> list[CounterexampleRecord]:
    """All sampled problems classified EventuallyUnstable, in index order.

    With ``inject_paper`` and n = 4, the known dimension-four counterexample
    is evaluated first (index -1). Parallelism is capped by the
    PERRON_PERTURB_THREADS environment variable; results are merged in index
    order, so the output is independent of scheduling.
    """
    indices = list(range(config.samples))
    if config.inject_paper and config.n == 4:
        indices = [-1] + indices
    workers = int(os.environ.get(THREADS_ENV, "1") or "1")
    if workers > 1 and len(indices) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _evaluate(config, i), indices))
    else:
        results = [_evaluate(config, i) for i in indices]
    return [r for r in results if r is not None]
