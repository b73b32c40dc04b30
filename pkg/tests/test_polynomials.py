import numpy as np
import pytest

from bitangents.errors import DegenerateElimination, NonConvergence
from bitangents.polynomials import (
    BiPoly,
    UniPoly,
    cluster_roots,
    from_roots,
    resultant_wrt,
    roots_all,
    square_free_part,
)


def hausdorff(a, b):
    a = np.asarray(a)[:, None]
    b = np.asarray(b)[None, :]
    d = np.abs(a - b)
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def test_unipoly_product_difference_of_squares():
    p = UniPoly([1, 1])  # t + 1
    q = UniPoly([-1, 1])  # t - 1
    assert np.allclose(p.mul(q).coeffs, [-1, 0, 1])


def test_unipoly_derivative():
    p = UniPoly([0, 0, 0, 0, 1])  # t^4
    assert np.allclose(p.derivative().coeffs, [0, 0, 0, 4])


def test_bipoly_partial_evaluation():
    # v^2 - u, evaluated at v = 1, leaves 1 - u.
    p = BiPoly([[0, 0, 1], [-1, 0, 0]])
    r = p.eval_v(1.0)
    assert np.allclose(r.coeffs, [1, -1])


def test_bipoly_mul_matches_pointwise():
    rng = np.random.default_rng(3)
    a = BiPoly(rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4)))
    b = BiPoly(rng.normal(size=(2, 5)) + 1j * rng.normal(size=(2, 5)))
    c = a.mul(b)
    for u, v in [(0.3 + 0.1j, -1.2), (1.7, 0.4j), (-0.5 + 0.9j, 0.8 - 0.3j)]:
        assert abs(c(u, v) - a(u, v) * b(u, v)) < 1e-10 * max(1.0, abs(a(u, v) * b(u, v)))


def test_nan_rejected():
    with pytest.raises(ValueError):
        UniPoly([1.0, np.nan])
    with pytest.raises(ValueError):
        BiPoly([[np.inf, 0.0]])


def test_resultant_linear_pair():
    a, b = 2.5 - 0.5j, -1.25 + 2j
    p = BiPoly([[-a], [0]]).add(BiPoly([[0, 1]]))  # v - a  (constant in u)
    q = BiPoly([[-b, 1]])  # v - b
    r = resultant_wrt(p, q, "v")
    assert r.degree == 0
    assert abs(r.coeffs[0] - (a - b)) < 1e-12


def test_resultant_shared_root_example():
    # Res_v(v^2 - u, v - 1) = 1 - u
    p = BiPoly([[0, 0, 1], [-1, 0, 0]])
    q = BiPoly([[-1, 1]])
    r = resultant_wrt(p, q, "v")
    assert np.allclose(r.coeffs, [1, -1], atol=1e-10)


def test_resultant_of_poly_with_itself_vanishes():
    rng = np.random.default_rng(5)
    p = BiPoly(rng.normal(size=(3, 3)))
    r = resultant_wrt(p, p, "v")
    assert np.abs(r.coeffs).max() < 1e-8


def test_resultant_rejects_zero_input():
    p = BiPoly([[0.0]])
    q = BiPoly([[1.0, 1.0]])
    with pytest.raises(DegenerateElimination):
        resultant_wrt(p, q, "v")


def test_resultant_multiplicative():
    rng = np.random.default_rng(11)
    for _ in range(25):
        shape = lambda: rng.integers(1, 4)
        p = BiPoly(rng.normal(size=(shape(), shape() + 1)) + 1j * rng.normal(size=1))
        q = BiPoly(rng.normal(size=(shape(), shape() + 1)) + 1j * rng.normal(size=1))
        r = BiPoly(rng.normal(size=(shape(), shape() + 1)) + 1j * rng.normal(size=1))
        lhs = resultant_wrt(p.mul(q), r, "v")
        rhs = resultant_wrt(p, r, "v").mul(resultant_wrt(q, r, "v"))
        n = max(len(lhs.coeffs), len(rhs.coeffs))
        lc = np.zeros(n, complex)
        rc = np.zeros(n, complex)
        lc[: len(lhs.coeffs)] = lhs.coeffs
        rc[: len(rhs.coeffs)] = rhs.coeffs
        scale = max(np.abs(rc).max(), 1e-30)
        assert np.abs(lc - rc).max() < 1e-6 * scale


def test_roots_quadratic():
    r = roots_all(UniPoly([-1, 0, 1]))
    assert hausdorff(r, [1, -1]) < 1e-12


def test_roots_eighth_roots_of_unity():
    r = roots_all(UniPoly([1, 0, 0, 0, 1]))
    expect = [np.exp(1j * np.pi * (2 * k + 1) / 4) for k in range(4)]
    assert hausdorff(r, expect) < 1e-10


def test_roots_random_sixty_reconstruction():
    rng = np.random.default_rng(6)
    chosen = rng.uniform(-1, 1, size=200) + 1j * rng.uniform(-1, 1, size=200)
    chosen = chosen[np.abs(chosen) < 1.0][:60]
    p = from_roots(chosen)
    r = roots_all(p, tol=1e-10)
    assert hausdorff(r, chosen) < 1e-8


def test_roots_reexpansion_roundtrip():
    rng = np.random.default_rng(23)
    for deg in (7, 18, 40):
        chosen = 2.0 * (rng.uniform(-1, 1, size=deg) + 1j * rng.uniform(-1, 1, size=deg))
        chosen = chosen[np.abs(chosen) < 2.0]
        p = from_roots(chosen)
        r = roots_all(p)
        q = from_roots(r)
        scale = np.abs(p.coeffs).max()
        n = max(len(p.coeffs), len(q.coeffs))
        pc = np.zeros(n, complex)
        qc = np.zeros(n, complex)
        pc[: len(p.coeffs)] = p.coeffs
        qc[: len(q.coeffs)] = q.coeffs
        assert np.abs(pc - qc).max() < 1e-7 * scale
        assert np.all(np.isfinite(r.view(float)))


def test_roots_degree_guard():
    with pytest.raises(ValueError):
        roots_all(UniPoly([3.0]))


def test_square_free_double_root():
    p = UniPoly([1, -2, 1])  # (t-1)^2
    s = square_free_part(p)
    assert np.allclose(s.coeffs, [-1, 1], atol=1e-10)


def test_square_free_triple_quadratic():
    base = UniPoly([1, 0, 1])  # t^2 + 1
    p = base.mul(base).mul(base)
    s = square_free_part(p)
    assert np.allclose(s.coeffs, [1, 0, 1], atol=1e-8)


def test_square_free_idempotent():
    rng = np.random.default_rng(31)
    for _ in range(10):
        roots = rng.normal(size=5) + 1j * rng.normal(size=5)
        doubled = np.concatenate([roots, roots[:2]])
        p = from_roots(doubled)
        s1 = square_free_part(p)
        s2 = square_free_part(s1)
        n = max(len(s1.coeffs), len(s2.coeffs))
        a = np.zeros(n, complex)
        b = np.zeros(n, complex)
        a[: len(s1.coeffs)] = s1.coeffs
        b[: len(s2.coeffs)] = s2.coeffs
        assert np.abs(a - b).max() < 1e-7


def test_cluster_roots_groups_nearby_values():
    roots = np.array([1.0, 1.0 + 1e-8, 5.0, 5.0 - 1e-9j, -2.0])
    clusters = cluster_roots(roots, 1e-6)
    sizes = sorted(len(c) for c in clusters)
    assert sizes == [1, 2, 2]


def test_nonconvergence_is_raised_for_impossible_tolerance():
    # Roots that are not exactly representable keep |p| pinned above zero,
    # so a sub-machine tolerance cannot be met.
    p = from_roots([1 / 3, 1 / 7 + 1e-4j, -2 / 11])
    with pytest.raises(NonConvergence):
        roots_all(p, tol=1e-30)
