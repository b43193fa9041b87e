import numpy as np
import pytest

import perron_perturb as pp


@pytest.fixture(scope="session")
def cx4():
    return pp.paper_counterexample_4()


@pytest.fixture(scope="session")
def ex33():
    return pp.example_small_3()


@pytest.fixture(scope="session")
def ex34():
    return pp.example_circulant_3()


@pytest.fixture(scope="session")
def ex34b():
    return pp.example_circulant_3(variant=True)


def random_problems(n, count, seed, wv_mode="any", entry_scale=1.0, sparsity=0.0):
    cfg = pp.SearchConfig(n=n, samples=count, seed=seed, wv_mode=wv_mode,
                          entry_scale=entry_scale, sparsity=sparsity)
    return [pp.random_problem(cfg, i) for i in range(count)]


def sorted_by_key(values):
    return sorted(values, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def assert_spectra_close(got, expected, tol):
    got = sorted_by_key(list(got))
    expected = sorted_by_key(list(expected))
    assert len(got) == len(expected)
    for g, e in zip(got, expected):
        assert abs(g - e) <= tol, f"{g} vs {e} (tol {tol})"
