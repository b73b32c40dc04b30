import numpy as np
import pytest

from bitangents.projective import (
    MONOMIALS,
    LineParametrization,
    ProjLine,
    ProjPoint,
    TernaryQuartic,
    act_on_line,
    act_on_point,
    act_on_quartic,
    canon,
    canon_dist,
    line_is_real,
    line_parametrization,
    restrict_to_line,
)

CYCLE3 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)


def fermat():
    return TernaryQuartic.from_dict({(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})


def klein():
    return TernaryQuartic.from_dict({(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1})


def test_canon_idempotent_and_projectively_invariant():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        lam = rng.normal() + 1j * rng.normal()
        if abs(lam) < 1e-3:
            lam += 1.0
        c1 = canon(v)
        assert canon_dist(canon(c1), c1) < 1e-10
        assert canon_dist(canon(lam * v), c1) < 1e-10


def test_canon_rejects_zero():
    with pytest.raises(ValueError):
        canon(np.zeros(3))


def test_restrict_fermat_to_z_axis_line():
    # L: z = 0 parametrized by (1,0,0) + t (0,1,0) restricts x^4+y^4+z^4 to 1 + t^4.
    par = LineParametrization(ProjPoint([1, 0, 0]), ProjPoint([0, 1, 0]))
    c = restrict_to_line(fermat(), par)
    assert np.allclose(c, [1, 0, 0, 0, 1])


def test_restrict_klein_degree_collapse_preserved():
    par = LineParametrization(ProjPoint([1, 0, 0]), ProjPoint([0, 1, 0]))
    c = restrict_to_line(klein(), par)
    assert np.allclose(c, [0, 1, 0, 0, 0])


def test_restrict_matches_direct_expansion():
    rng = np.random.default_rng(4)
    for _ in range(30):
        f = TernaryQuartic(rng.normal(size=15) + 1j * rng.normal(size=15))
        line = ProjLine(rng.normal(size=3) + 1j * rng.normal(size=3))
        par = line_parametrization(line)
        c = restrict_to_line(f, par)
        for t in (0.0, 1.0, -2.3, 0.7j, 1.1 - 0.4j):
            direct = f(par.base.v + t * par.direction.v)
            horner = sum(c[k] * t**k for k in range(5))
            assert abs(direct - horner) < 1e-10 * max(1.0, abs(direct))


def test_parametrization_points_lie_on_line():
    rng = np.random.default_rng(9)
    for _ in range(50):
        line = ProjLine(rng.normal(size=3) + 1j * rng.normal(size=3))
        par = line_parametrization(line)
        assert abs(line.v @ par.base.v) < 1e-10
        assert abs(line.v @ par.direction.v) < 1e-10


def test_act_on_quartic_identity():
    f = klein()
    assert act_on_quartic(np.eye(3), f).eq(f)


def test_fermat_invariant_under_coordinate_cycle():
    f = fermat()
    assert act_on_quartic(CYCLE3, f).eq(f)


def test_even_x_quartic_invariant_under_x_sign_flip():
    f = TernaryQuartic.from_dict(
        {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1, (2, 2, 0): -1, (2, 1, 1): 2, (2, 0, 2): -4, (0, 2, 2): -1}
    )
    g = np.diag([-1.0, 1.0, 1.0])
    assert act_on_quartic(g, f).eq(f)


def test_act_on_point_diagonal():
    z3 = np.exp(2j * np.pi / 3)
    p = act_on_point(np.diag([z3, z3**2, 1.0]), ProjPoint([1, 1, 1]))
    assert p.eq(ProjPoint([z3, z3**2, 1]))


def test_line_action_identity():
    line = ProjLine([1, 2, 3])
    assert act_on_line(np.eye(3), line).eq(line)


def test_incidence_preserved_under_action():
    rng = np.random.default_rng(12)
    for _ in range(200):
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        if abs(np.linalg.det(g)) < 1e-2:
            continue
        line = ProjLine(rng.normal(size=3) + 1j * rng.normal(size=3))
        par = line_parametrization(line)
        p = par.point_at(rng.normal() + 1j * rng.normal())
        img_line = act_on_line(g, line)
        img_p = act_on_point(g, p)
        assert abs(img_line.v @ img_p.v) < 1e-8


def test_action_is_compatible_with_composition():
    rng = np.random.default_rng(15)
    z3 = np.exp(2j * np.pi / 3)
    pool = [CYCLE3, np.diag([z3, z3**2, 1.0]), np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1.0]])]
    for _ in range(60):
        g = pool[rng.integers(len(pool))]
        h = pool[rng.integers(len(pool))]
        line = ProjLine(rng.normal(size=3) + 1j * rng.normal(size=3))
        lhs = act_on_line(g @ h, line)
        rhs = act_on_line(g, act_on_line(h, line))
        assert lhs.eq(rhs)


class _RawPar:
    """Parametrization carrying unnormalized spanning vectors."""

    class _P:
        def __init__(self, v):
            self.v = np.asarray(v, dtype=complex)

    def __init__(self, base_v, dir_v):
        self.base = self._P(base_v)
        self.direction = self._P(dir_v)


def test_restriction_transforms_projectively():
    # Restricting the transformed quartic to the exactly transported
    # parametrization agrees with the original restriction up to a scalar.
    rng = np.random.default_rng(21)
    for _ in range(25):
        f = TernaryQuartic(rng.normal(size=15) + 1j * rng.normal(size=15))
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        if abs(np.linalg.det(g)) < 1e-2:
            continue
        line = ProjLine(rng.normal(size=3))
        par = line_parametrization(line)
        gf = act_on_quartic(g, f)
        gpar = _RawPar(g @ par.base.v, g @ par.direction.v)
        c1 = restrict_to_line(f, par)
        c2 = restrict_to_line(gf, gpar)
        n1 = c1 / np.abs(c1).max()
        n2 = c2 / np.abs(c2).max()
        ratio = n2[np.argmax(np.abs(n1))] / n1[np.argmax(np.abs(n1))]
        assert np.abs(n2 - ratio * n1).max() < 1e-7


def test_line_is_real():
    assert line_is_real(ProjLine([1, 1, 1]))
    assert line_is_real(ProjLine([1j, 1j, 1j]))
    assert not line_is_real(ProjLine([1, 1j, 0]))


def test_monomial_order_is_graded_lex():
    assert MONOMIALS[0] == (4, 0, 0)
    assert MONOMIALS[-1] == (0, 0, 4)
    assert len(MONOMIALS) == 15
    assert MONOMIALS.index((2, 1, 1)) == 4
