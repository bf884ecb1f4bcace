import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_kcenter import (IllPosedError, ParameterError, StabilityError,
                              are_charging_energy, figure1_graph,
                              gramian_extraction_energy, lambda_max, lambda_min,
                              laplacian, lyapunov_solve, path_charpoly_lowcoeffs,
                              path_graph, relabel, stochastic, sym_eigen,
                              tridiag_charpoly)
from numpy.polynomial import polynomial as P


def test_sym_eigen_small_paths():
    assert np.allclose(sym_eigen(laplacian(path_graph(3))).values, [0, 1, 3],
                       atol=1e-9)
    assert np.allclose(sym_eigen(laplacian(path_graph(2))).values, [0, 2],
                       atol=1e-9)
    assert np.allclose(sym_eigen(np.eye(2)).values, [1, 1])


def test_sym_eigen_contract():
    A = laplacian(figure1_graph())
    dec = sym_eigen(A)
    assert np.all(np.diff(dec.values) >= -1e-12)
    assert np.allclose(dec.vectors.T @ dec.vectors, np.eye(11), atol=1e-9)
    tol = 1e-9 * (1 + np.linalg.norm(A, "fro"))
    assert np.linalg.norm(A @ dec.vectors - dec.vectors * dec.values) <= tol


def test_sym_eigen_rejects_nonsymmetric():
    with pytest.raises(ParameterError):
        sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_rayleigh_bounds():
    rng = np.random.default_rng(5)
    for g in (path_graph(6), figure1_graph()):
        A = laplacian(g)
        lo, hi = lambda_min(A), lambda_max(A)
        for _ in range(20):
            x = rng.normal(size=g.n)
            q = x @ A @ x / (x @ x)
            assert lo - 1e-9 <= q <= hi + 1e-9


def test_lambda_extremes_examples():
    assert abs(lambda_min(laplacian(path_graph(9)))) <= 1e-9
    assert abs(lambda_max(laplacian(path_graph(3))) - 3) <= 1e-9
    assert abs(lambda_max(stochastic(path_graph(3), 0.25)) - 1) <= 1e-9


def test_tridiag_charpoly_examples():
    assert np.allclose(tridiag_charpoly([], [], []), [1.0])
    assert np.allclose(tridiag_charpoly([1, 1], [-1], [-1]), [0, -2, 1])
    assert np.allclose(tridiag_charpoly([1, 2, 1], [-1, -1], [-1, -1]),
                       [0, 3, -4, 1])


def test_tridiag_charpoly_shape_error():
    with pytest.raises(ParameterError):
        tridiag_charpoly([1, 2, 3], [-1], [-1, -1])


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_tridiag_charpoly_vs_lu_determinant(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 9))
    a = rng.uniform(-2, 2, m)
    # unreduced: keep off-diagonals away from zero
    b = rng.uniform(0.2, 2, max(m - 1, 0)) * rng.choice([-1, 1], max(m - 1, 0))
    c = rng.uniform(0.2, 2, max(m - 1, 0)) * rng.choice([-1, 1], max(m - 1, 0))
    Q = np.diag(a)
    for i in range(m - 1):
        Q[i + 1, i] = b[i]
        Q[i, i + 1] = c[i]
    psi = tridiag_charpoly(a, b, c)
    for s in rng.uniform(-3, 3, 5):
        det = np.linalg.det(s * np.eye(m) - Q)
        assert abs(P.polyval(s, psi) - det) <= 1e-8 * max(1.0, abs(det))


def test_path_charpoly_lowcoeffs_examples():
    assert path_charpoly_lowcoeffs(2) == (2, 1, 0, 2)
    c1, c2, _, cn1 = path_charpoly_lowcoeffs(3)
    assert (c1, c2, cn1) == (3, 4, 4)
    assert path_charpoly_lowcoeffs(5)[:3] == (5, 20, 21)


def test_path_charpoly_lowcoeffs_vs_eigenvalue_product():
    # oracle: det(sI + L_n) = prod (s + lambda_j) with the closed-form
    # path eigenvalues
    for n in range(2, 13):
        lam = [2 * (1 - math.cos(math.pi * j / n)) for j in range(n)]
        poly = np.array([1.0])
        for l in lam:
            poly = np.convolve(poly, [l, 1.0])
        c1, c2, c3, cn1 = path_charpoly_lowcoeffs(n)
        assert abs(poly[1] - c1) <= 1e-8 * max(1, abs(c1))
        assert abs(poly[2] - c2) <= 1e-8 * max(1, abs(c2))
        if n >= 3:
            assert abs(poly[3] - c3) <= 1e-8 * max(1, abs(c3))
        assert abs(poly[n - 1] - cn1) <= 1e-8 * max(1, abs(cn1))


def test_lyapunov_examples():
    assert np.allclose(lyapunov_solve(-np.eye(3), np.eye(3)), np.eye(3) / 2)
    X = lyapunov_solve(np.diag([-1.0, -2.0]), np.eye(2))
    assert np.allclose(X, np.diag([0.5, 0.25]))


def test_lyapunov_random_residual():
    rng = np.random.default_rng(42)
    M = rng.normal(size=(5, 5))
    A = -(M @ M.T + 5 * np.eye(5))
    W = rng.normal(size=(5, 5))
    W = W @ W.T
    X = lyapunov_solve(A, W)
    resid = np.linalg.norm(A.T @ X + X @ A + W, "fro")
    assert resid <= 1e-9 * (1 + np.linalg.norm(W, "fro"))


def test_lyapunov_rejects_unstable():
    with pytest.raises(StabilityError):
        lyapunov_solve(np.diag([-1.0, 0.0]), np.eye(2))
    with pytest.raises(StabilityError):
        lyapunov_solve(laplacian(path_graph(3)), np.eye(3))


def test_charging_energy_single_capacitor():
    # one unit capacitor charged through its own port: stored energy 1/2,
    # regularization adds O(rho)
    for rho in (1e-4, 1e-6, 1e-8):
        v = are_charging_energy(np.zeros((1, 1)), (1,), rho)
        assert abs(v - 0.5) <= 2 * rho + 1e-9


def test_charging_energy_prefers_the_center():
    L = laplacian(path_graph(3))
    assert are_charging_energy(L, (2,)) < are_charging_energy(L, (1,))
    # mirror symmetry
    assert math.isclose(are_charging_energy(L, (1,)),
                        are_charging_energy(L, (3,)), rel_tol=1e-9)


def test_charging_energy_monotone_in_rho():
    L = laplacian(path_graph(3))
    for S in ((2,), (1,)):
        vals = [are_charging_energy(L, S, rho) for rho in (1e-8, 1e-6, 1e-4, 1e-2)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_charging_energy_exceeds_stored_energy():
    for g in (path_graph(4), figure1_graph()):
        L = laplacian(g)
        assert are_charging_energy(L, (1, 2)) > g.n / 2


def test_charging_energy_argmin_stable_in_rho():
    g = path_graph(7)
    L = laplacian(g)
    for rho in (1e-4, 1e-6, 1e-8):
        scores = {j: are_charging_energy(L, (j,), rho) for j in range(1, 8)}
        assert min(scores, key=scores.get) == 4


def test_charging_energy_relabel_invariant():
    g = figure1_graph()
    L = laplacian(g)
    ref = are_charging_energy(L, (3, 8))
    rng = np.random.default_rng(2)
    for _ in range(5):
        perm = {i + 1: int(p) + 1 for i, p in enumerate(rng.permutation(g.n))}
        Lp = laplacian(relabel(g, perm))
        mapped = tuple(sorted((perm[3], perm[8])))
        assert math.isclose(are_charging_energy(Lp, mapped), ref, rel_tol=1e-6)


def test_charging_energy_matches_reference_riccati_solver():
    # independent route: scipy's CARE solver on instances where the pair is
    # stabilizable (it refuses the symmetric/uncontrollable ones that the
    # pencil + least-squares evaluation handles)
    from scipy import linalg as sla

    from spectral_kcenter import random_tree
    rng = np.random.default_rng(8)
    checked = 0
    for seed in range(40):
        g = random_tree(6, seed)
        L = laplacian(g)
        ports = tuple(sorted(
            rng.choice(np.arange(1, 7), size=2, replace=False).tolist()))
        B = np.zeros((6, 2))
        for i, j in enumerate(ports):
            B[j - 1, i] = 1.0
        rho = 1e-6
        try:
            X = sla.solve_continuous_are(L, -B, rho * np.eye(6),
                                         rho * np.eye(2), s=B / 2)
        except Exception:
            continue
        ref = float(np.ones(6) @ X @ np.ones(6))
        assert abs(are_charging_energy(L, ports, rho) - ref) <= 1e-6 * ref
        checked += 1
    assert checked >= 20


def test_charging_energy_parameter_errors():
    L = laplacian(path_graph(3))
    with pytest.raises(ParameterError):
        are_charging_energy(L, ())
    with pytest.raises(ParameterError):
        are_charging_energy(L, (2,), rho=0.0)


def test_gramian_single_capacitor():
    assert math.isclose(gramian_extraction_energy(np.zeros((1, 1)), (1,)), 0.5,
                        rel_tol=1e-12)


def test_gramian_bounds_and_center_preference():
    L3 = laplacian(path_graph(3))
    s_center = gramian_extraction_energy(L3, (2,))
    s_end = gramian_extraction_energy(L3, (1,))
    assert s_center > s_end
    for g in (path_graph(5), figure1_graph()):
        L = laplacian(g)
        v = gramian_extraction_energy(L, (1,))
        assert 0 < v < g.n / 2
