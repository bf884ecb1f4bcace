import math

import numpy as np
import pytest
from numpy.polynomial import polynomial as P

from spectral_kcenter import (AssumptionError, DegenerateEigenvalueError,
                              RootFindError, charpoly_eps_slices_1port,
                              charpoly_eps_slices_2port, laplacian, path_graph,
                              perturbed_charpoly_1port,
                              perturbed_eigvec_first_order, perturbed_laplacian,
                              root_series_double, root_series_single,
                              smallest_root_numeric, sym_eigen)


def test_zero_perturbation_returns_eigenvector():
    A = np.diag([1.0, 2.0, 4.0])
    v = perturbed_eigvec_first_order(A, np.zeros((3, 3)), 2, 0.05)
    assert np.allclose(np.abs(v), [0, 1, 0], atol=1e-12)


def test_two_by_two_closed_form():
    A = np.diag([1.0, 2.0])
    Ppert = np.array([[0.0, 1.0], [1.0, 0.0]])
    v = perturbed_eigvec_first_order(A, Ppert, 1, 0.01)
    if v[0] < 0:
        v = -v
    assert np.allclose(v, [1.0, -0.01], atol=1e-12)


def test_degenerate_spectrum_rejected():
    with pytest.raises(DegenerateEigenvalueError):
        perturbed_eigvec_first_order(np.eye(3), np.ones((3, 3)), 1, 0.01)


def _aligned_exact_eigvec(A, Ppert, j, eps):
    dec = sym_eigen(A + eps * Ppert)
    v0 = sym_eigen(A).vectors[:, j - 1]
    overlaps = np.abs(dec.vectors.T @ v0)
    col = int(np.argmax(overlaps))
    v = dec.vectors[:, col]
    return v if v @ v0 >= 0 else -v


def test_first_order_expansion_error_quarters_with_half_eps():
    rng = np.random.default_rng(314)
    for _ in range(5):
        M = rng.normal(size=(6, 6))
        A = M + M.T + np.diag(np.arange(6) * 4.0)  # well-separated spectrum
        Q = rng.normal(size=(6, 6))
        Ppert = (Q + Q.T) / 2
        j = int(rng.integers(1, 7))
        errs = []
        for eps in (2e-3, 1e-3):
            approx = perturbed_eigvec_first_order(A, Ppert, j, eps)
            exact = _aligned_exact_eigvec(A, Ppert, j, eps)
            errs.append(np.linalg.norm(approx / np.linalg.norm(approx) - exact))
        ratio = errs[0] / errs[1]
        assert 3.0 <= ratio <= 5.0


def test_root_series_single_examples():
    rs = root_series_single([0, 1, 1], [1])
    assert (rs.beta1, rs.beta2) == (-1.0, -1.0)
    # exact root of s^2 + s + eps: (-1 + sqrt(1-4 eps))/2 = -eps - eps^2 - ...
    eps = 1e-3
    exact = (-1 + math.sqrt(1 - 4 * eps)) / 2
    assert abs(exact - rs.at(eps)) <= 5 * eps ** 3

    rs = root_series_single([0, 2, 1], [1])
    assert (rs.beta1, rs.beta2) == (-0.5, -0.125)

    rs = root_series_single([0, 1, 1], [1, 1])
    assert (rs.beta1, rs.beta2) == (-1.0, 0.0)


def test_root_series_double_examples():
    gamma = 0.7
    rs = root_series_double([0, 1], [1], [gamma])
    assert (rs.beta1, rs.beta2) == (-1.0, -gamma)
    # s + eps + gamma eps^2 = 0 is solved exactly by the two-term series
    eps = 1e-2
    assert abs(rs.at(eps) + (eps + gamma * eps * eps)) <= 1e-15

    rs = root_series_double([0, 1, 1], [1], [1])
    assert (rs.beta1, rs.beta2) == (-1.0, -2.0)


def test_root_series_hypothesis_violations():
    with pytest.raises(AssumptionError):
        root_series_single([1, 1], [1])       # a0 != 0
    with pytest.raises(AssumptionError):
        root_series_single([0, 0, 1], [1])    # a1 = 0
    with pytest.raises(AssumptionError):
        root_series_single([0, 1], [0, 1])    # b0 = 0
    with pytest.raises(AssumptionError):
        root_series_double([0, 1], [1], [0.0])


def test_smallest_root_examples():
    assert math.isclose(smallest_root_numeric([-1, 0, 1], 0.9), 1.0,
                        rel_tol=1e-12)
    r = smallest_root_numeric([0.01, 1, 1], 0.0)
    assert math.isclose(r, (-1 + math.sqrt(0.96)) / 2, rel_tol=1e-10)


def test_smallest_root_on_perturbed_path_charpoly():
    n, eps = 11, 0.01
    poly = perturbed_charpoly_1port(n, 6, eps)
    root = smallest_root_numeric(poly, eps / n)
    Lt = perturbed_laplacian(laplacian(path_graph(n)), (6,), eps)
    assert abs(root - sym_eigen(Lt).values[0]) <= 1e-9


def test_smallest_root_failure():
    with pytest.raises(RootFindError):
        smallest_root_numeric([1.0, 0.0, 1.0], 0.0)  # s^2 + 1: no real root


def test_root_series_matches_numeric_oracle_on_sample_triples():
    rng = np.random.default_rng(999)
    for _ in range(5):
        deg = int(rng.integers(3, 6))
        a = np.r_[0.0, rng.uniform(0.5, 2.0) * rng.choice([-1, 1]),
                  rng.uniform(-2, 2, deg - 2), 1.0]
        b = np.r_[rng.uniform(0.5, 2.0) * rng.choice([-1, 1]),
                  rng.uniform(-2, 2, deg - 1)]
        c = np.r_[rng.uniform(0.5, 2.0) * rng.choice([-1, 1]),
                  rng.uniform(-2, 2, deg - 2)]
        rs = root_series_double(a, b, c)
        eps = 1e-3
        pe = a.copy()
        pe[: len(b)] += eps * b
        pe[: len(c)] += eps * eps * c
        root = smallest_root_numeric(pe, rs.at(eps))
        assert abs(root - rs.at(eps)) <= 1e-5  # O(eps^3) with headroom


def test_slices_to_series_pipeline_closure():
    # route: characteristic slices -> root series reproduces the quadratic
    # one-port shift coefficients
    for n in (3, 5, 7, 9, 11, 13):
        pstar = (n + 1) // 2
        for j in range(1, n + 1):
            a, (b0, b1) = charpoly_eps_slices_1port(n, j)
            rs = root_series_single(a, [b0, b1])
            assert math.isclose(rs.beta1, 1.0 / n, rel_tol=1e-9)
            expect = -((n * n - 1) + 12.0 * (j - pstar) ** 2) / (12.0 * n * n)
            assert math.isclose(rs.beta2, expect, rel_tol=1e-9)


def test_two_port_slices_to_series_pipeline():
    a, (b0, b1), (c0,) = charpoly_eps_slices_2port(14, 4, 11)
    rs = root_series_double(a, [b0, b1], [c0])
    assert math.isclose(rs.beta1, 2.0 / 14, rel_tol=1e-12)
    assert math.isclose(rs.beta2, -(14 ** 2 - 4) / (12.0 * 14 ** 2), rel_tol=1e-9)
