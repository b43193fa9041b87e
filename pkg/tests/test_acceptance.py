"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; any assertion failure marks the corresponding criterion as failed.
"""

import time

import numpy as np
import pytest

import perron_perturb as pp
from perron_perturb.perturb import Stability
from perron_perturb.poly import HurwitzStatus, RealPolynomial

from conftest import assert_spectra_close, random_problems


def report(num, text):
    print(f"ACCEPTANCE {num:>2}: PASS - {text}")


def test_criterion_01_counterexample_regression(cx4):
    start = time.perf_counter()
    pvw = pp.p_vw_lemma16(cx4)
    np.testing.assert_allclose(pvw.coeffs, (-4.0866, 1.3747, -5.5330, 4.4100),
                               atol=5e-5)
    rs = pp.roots(pvw)
    assert_spectra_close(rs.values,
                         [1.4710, -0.1082 + 0.7863j, -0.1082 - 0.7863j], 5e-4)
    assert pp.classify(cx4).status is Stability.EVENTUALLY_UNSTABLE
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(1, f"4x4 counterexample p_vw, roots, verdict ({elapsed * 1e3:.0f} ms)")


def test_criterion_02_counterexample_spectrum(cx4):
    vals = pp.eigenvalues(cx4.H.entries).values
    assert_spectra_close(vals, [0.0, 0.1 + 0.1j, 0.1 - 0.1j, 0.2], 1e-10)
    assert abs(cx4.rho - 0.2) <= 1e-12
    report(2, "4x4 spectrum {0, 0.1+-0.1i, 0.2}, rho = 0.2")


def test_criterion_03_small_3x3_regression(ex33):
    assert abs(ex33.rho - 0.1464) <= 5e-5
    vals = pp.eigenvalues(pp.b_of_t(ex33, 0.1)).values
    assert_spectra_close(vals, [0.2661, -0.0284 + 0.2495j, -0.0284 - 0.2495j],
                         5e-4)
    assert pp.classify(ex33).status is Stability.EVENTUALLY_STABLE
    t1 = pp.estimate_threshold(ex33, 1e3)
    assert t1 is not None and np.isfinite(t1) and t1 > 0.1
    report(3, f"3x3 example: rho, B(0.1) spectrum, stable, t* = {t1:.4f} > 0.1")


def test_criterion_04_circulant_regression(ex34, ex34b):
    for t in (1.0, 10.0):
        pB = pp.char_poly(pp.b_of_t(ex34, t))
        np.testing.assert_allclose(pB.coeffs, (-7 * t, 3 + t, -3.0, 1.0),
                                   atol=1e-12)
    t = 1e6
    vals = list(pp.eigenvalues(pp.b_of_t(ex34, t)).values)
    finite = min(vals, key=lambda z: abs(z - 7))
    assert abs(finite - 7.0) <= 1e-3
    moving = [z for z in vals if z is not finite]
    for z in moving:
        assert abs(z.real - (-2.0)) <= 0.05
        assert abs(abs(z.imag) - np.sqrt(t)) <= 5.0
    vals28 = pp.eigenvalues(pp.b_of_t(ex34b, 28.0)).values
    assert_spectra_close(
        vals28, [4.0, -0.5 + 1.5 * np.sqrt(3) * 1j, -0.5 - 1.5 * np.sqrt(3) * 1j],
        1e-9)
    report(4, "circulant example: p_B(t), Puiseux branches at t=1e6, t=28 variant")


def test_criterion_05_oracle_equivalence():
    checked = 0
    seed = 0
    while checked < 200:
        n = 2 + checked % 5
        prob = random_problems(n=n, count=1, seed=5000 + seed)[0]
        seed += 1
        try:
            b = np.asarray(pp.p_vw_det_oracle(prob).coeffs)
        except pp.NotNonderogatory:
            continue
        a = np.asarray(pp.p_vw_lemma16(prob).coeffs)
        scale = max(1.0, np.abs(a).max())
        assert np.max(np.abs(a - b)) <= 1e-8 * scale
        checked += 1
    report(5, "lemma-16 formula = determinant oracle on 200 random problems")


def test_criterion_06_factorization_identity():
    rng = np.random.default_rng(606)
    for k in range(200):
        n = 2 + k % 5
        prob = random_problems(n=n, count=1, seed=6000 + k)[0]
        t = 10.0 ** rng.uniform(-3, 2)  # t in (0, 100]
        assert pp.factorization_residual(prob, t) <= 1e-8
    report(6, "characteristic-polynomial factorization residual <= 1e-8, 200 cases")


def test_criterion_07_real_eigenvalues_positive():
    t_grid = np.geomspace(1e-3, 1e3, 50)
    violations = 0
    for k in range(500):
        n = 2 + k % 5
        prob = random_problems(n=n, count=1, seed=7000 + k)[0]
        for t in t_grid:
            for z in pp.eigenvalues(pp.b_of_t(prob, t), check=False).values:
                if abs(z.imag) <= 1e-9 and z.real <= -1e-9:
                    violations += 1
    assert violations == 0
    report(7, "real eigenvalues positive on 500 problems x 50 t-points")


def test_criterion_08_n2_global_stability():
    t_grid = np.geomspace(1e-3, 1e3, 50)
    probs = (random_problems(n=2, count=100, seed=8000)
             + random_problems(n=2, count=100, seed=8100, wv_mode="zero"))
    for prob in probs:
        bound = -1e-12 * (1 + prob.rho)
        for t in t_grid:
            vals = pp.eigenvalues(pp.b_of_t(prob, t), check=False).values
            assert min(z.real for z in vals) > bound
        if prob.wv == 0.0:
            mu = float(np.trace(prob.A.entries))
            vals = pp.eigenvalues(pp.b_of_t(prob, 1e6), check=False).values
            for z in vals:
                assert abs(z.real - 0.5 * mu) <= 1e-3 * mu
    report(8, "n=2: spectra stay right of the axis; wv=0 asymptote Re = mu/2")


def test_criterion_09_n3_eventual_stability():
    for prob in random_problems(n=3, count=200, seed=9000, wv_mode="positive"):
        assert pp.classify(prob).status is Stability.EVENTUALLY_STABLE
        t1 = pp.estimate_threshold(prob, 1e3, points=100)
        if t1 is None:
            t1 = pp.estimate_threshold(prob, 1e6, points=150)
        assert t1 is not None
        assert pp.min_real_part(prob, 10 * t1) > 0
    report(9, "n=3, wv>0: 200 problems EventuallyStable with verified t*")


def test_criterion_10_n2_refinement():
    for prob in random_problems(n=2, count=50, seed=10000, wv_mode="positive"):
        cf = pp.closed_form_n2(prob)
        errs = []
        for t in (1e3, 1e4):
            vals = pp.eigenvalues(pp.b_of_t(prob, t), check=False).values
            e2 = min(vals, key=lambda z: abs(z - cf.zeta))
            errs.append(abs(e2 - cf.zeta - cf.r / t))
        assert errs[0] >= 50 * errs[1]
    report(10, "n=2 bounded branch: zeta + r/t error falls >= 50x per decade")


def test_criterion_11_routh_vs_roots():
    rng = np.random.default_rng(1111)
    for _ in range(1000):
        deg = int(rng.integers(1, 7))
        roots = []
        while len(roots) < deg:
            re = rng.choice([-1.0, 1.0]) * rng.uniform(0.05, 2.0)
            if deg - len(roots) >= 2 and rng.random() < 0.5:
                im = rng.uniform(0.05, 2.0)
                roots += [re + 1j * im, re - 1j * im]
            else:
                roots.append(complex(re))
        coeffs = np.real(np.poly(np.array(roots)))[::-1]
        lead = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
        p = RealPolynomial(tuple(lead * coeffs))
        expected = HurwitzStatus.ALL_OPEN_RIGHT if min(z.real for z in roots) > 0 \
            else HurwitzStatus.NOT_ALL_OPEN_RIGHT
        assert pp.routh_hurwitz(p).status is expected
    report(11, "Routh-Hurwitz verdict matches root signs on 1000 polynomials")


def test_criterion_12_search_sanity():
    start = time.perf_counter()
    assert pp.falsify(pp.SearchConfig(n=2, samples=10_000, seed=1)) == []
    assert pp.falsify(pp.SearchConfig(n=3, samples=10_000, seed=2,
                                      wv_mode="positive")) == []
    records = pp.falsify(pp.SearchConfig(n=4, samples=20, seed=3,
                                         inject_paper=True))
    assert len(records) >= 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(12, f"search sanity: 0/0 false hits, paper instance found "
               f"({elapsed:.1f} s)")
