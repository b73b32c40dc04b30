"""Projective-plane objects: quartic forms, points, lines and group actions.

All homogeneous data is kept in a canonical scale (entry of largest modulus
equal to 1, ties broken by smallest index) so that projectively equal objects
compare entrywise.  Forms transform by f |-> f o g^{-1} and dual coordinates
by the inverse transpose, which makes zero sets transform covariantly.
"""

from __future__ import annotations

import numpy as np

# Quartic monomials x^i y^j z^k, i+j+k = 4, graded-lexicographic.
MONOMIALS: tuple[tuple[int, int, int], ...] = tuple(
    (i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)
)
MONOMIAL_INDEX = {m: n for n, m in enumerate(MONOMIALS)}

MATCH_TOL = 1e-6
REAL_TOL = 1e-6


def canon(values: np.ndarray) -> np.ndarray:
    """Rescale so the entry of largest modulus is exactly 1.

    Ties are broken toward the smallest flat index, which keeps the map
    deterministic and projectively invariant.
    """
    v = np.asarray(values, dtype=complex)
    flat = v.ravel()
    mags = np.abs(flat)
    top = mags.max()
    if top == 0.0:
        raise ValueError("cannot canonicalize the zero vector")
    pivot = np.nonzero(mags >= top * (1.0 - 1e-12))[0][0]
    return v / flat[pivot]


def canon_dist(a: np.ndarray, b: np.ndarray) -> float:
    """Largest entrywise distance between two canonical forms."""
    return float(np.abs(a - b).max())


class ProjPoint:
    """Point of the projective plane with canonically scaled coordinates."""

    __slots__ = ("v",)

    def __init__(self, coords):
        v = np.asarray(coords, dtype=complex).reshape(3)
        if not np.all(np.isfinite(v.view(float))):
            raise ValueError("point coordinates must be finite")
        self.v = canon(v)
        self.v.flags.writeable = False

    def eq(self, other: "ProjPoint", tol: float = MATCH_TOL) -> bool:
        return canon_dist(self.v, other.v) < tol

    def __repr__(self):
        return f"ProjPoint({np.round(self.v, 6)})"


class ProjLine:
    """Line a*x + b*y + c*z = 0 stored by canonical dual coordinates."""

    __slots__ = ("v",)

    def __init__(self, coords):
        v = np.asarray(coords, dtype=complex).reshape(3)
        if not np.all(np.isfinite(v.view(float))):
            raise ValueError("line coordinates must be finite")
        self.v = canon(v)
        self.v.flags.writeable = False

    def eq(self, other: "ProjLine", tol: float = MATCH_TOL) -> bool:
        return canon_dist(self.v, other.v) < tol

    def contains(self, p: ProjPoint, tol: float = 1e-8) -> bool:
        return abs(self.v @ p.v) < tol

    def __repr__(self):
        return f"ProjLine({np.round(self.v, 6)})"


class TernaryQuartic:
    """Degree-4 form in x, y, z by its 15 canonical coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=complex).reshape(15)
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("quartic coefficients must be finite")
        self.coeffs = canon(c)
        self.coeffs.flags.writeable = False

    @classmethod
    def from_dict(cls, terms: dict[tuple[int, int, int], complex]) -> "TernaryQuartic":
        c = np.zeros(15, dtype=complex)
        for mon, val in terms.items():
            c[MONOMIAL_INDEX[mon]] = val
        return cls(c)

    def __call__(self, p) -> complex:
        x, y, z = np.asarray(p, dtype=complex).reshape(3)
        return complex(
            sum(c * x**i * y**j * z**k for c, (i, j, k) in zip(self.coeffs, MONOMIALS))
        )

    def gradient(self, p) -> np.ndarray:
        x, y, z = np.asarray(p, dtype=complex).reshape(3)
        g = np.zeros(3, dtype=complex)
        for c, (i, j, k) in zip(self.coeffs, MONOMIALS):
            if i:
                g[0] += c * i * x ** (i - 1) * y**j * z**k
            if j:
                g[1] += c * j * x**i * y ** (j - 1) * z**k
            if k:
                g[2] += c * k * x**i * y**j * z ** (k - 1)
        return g

    def eq(self, other: "TernaryQuartic", tol: float = MATCH_TOL) -> bool:
        return canon_dist(self.coeffs, other.coeffs) < tol

    def __repr__(self):
        return f"TernaryQuartic({np.round(self.coeffs, 6)})"


class LineParametrization:
    """Affine chart t -> base + t*direction on a projective line.

    The point at t = infinity is ``direction``.  Both spanning points lie on
    the line and are projectively distinct.
    """

    __slots__ = ("base", "direction")

    def __init__(self, base: ProjPoint, direction: ProjPoint):
        if canon_dist(base.v, direction.v) < 1e-10:
            raise ValueError("base and direction must be projectively distinct")
        self.base = base
        self.direction = direction

    def point_at(self, t: complex) -> ProjPoint:
        return ProjPoint(self.base.v + t * self.direction.v)


def line_parametrization(line: ProjLine) -> LineParametrization:
    """Deterministic spanning pair for a line.

    Takes the two standard basis vectors least aligned with the dual vector
    and projects them onto the line, so repeated runs produce identical
    fixtures.
    """
    order = np.argsort(np.abs(line.v), kind="stable")
    i1, i2 = sorted(int(k) for k in order[:2])
    w = np.conj(line.v)
    norm2 = float((line.v @ w).real)
    pts = []
    for idx in (i1, i2):
        e = np.zeros(3, dtype=complex)
        e[idx] = 1.0
        pts.append(e - (line.v[idx] / norm2) * w)
    base, direction = ProjPoint(pts[0]), ProjPoint(pts[1])
    return LineParametrization(base, direction)


def restrict_to_line(f: TernaryQuartic, par: LineParametrization) -> np.ndarray:
    """Coefficients c[0..4] of f(base + t*direction) as a polynomial in t.

    The expansion is exact (binomial convolution per monomial), and genuine
    degree collapse is preserved rather than renormalized away.
    """
    b = par.base.v
    d = par.direction.v
    out = np.zeros(5, dtype=complex)
    binom = [[1], [1, 1], [1, 2, 1], [1, 3, 3, 1], [1, 4, 6, 4, 1]]
    for c, (i, j, k) in zip(f.coeffs, MONOMIALS):
        if c == 0:
            continue
        term = np.ones(1, dtype=complex)
        for power, axis in ((i, 0), (j, 1), (k, 2)):
            if power == 0:
                continue
            fac = np.array(
                [binom[power][l] * b[axis] ** (power - l) * d[axis] ** l for l in range(power + 1)],
                dtype=complex,
            )
            term = np.convolve(term, fac)
        out[: len(term)] += c * term
    return out


def substitute_coeffs(coeffs: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Coefficient vector of the quartic composed with the linear map ``m``.

    Works on raw (unnormalized) coefficient vectors, so it is linear in
    ``coeffs`` and safe to apply to members of parametric families.
    """
    rows = [np.asarray(m[r], dtype=complex) for r in range(3)]
    out = np.zeros(15, dtype=complex)
    for c, (i, j, k) in zip(np.asarray(coeffs, dtype=complex).reshape(15), MONOMIALS):
        if c == 0:
            continue
        # Expand (row_x . v)^i (row_y . v)^j (row_z . v)^k on a dense cube.
        cube = np.zeros((5, 5, 5), dtype=complex)
        cube[0, 0, 0] = c
        for power, row in ((i, rows[0]), (j, rows[1]), (k, rows[2])):
            for _ in range(power):
                nxt = np.zeros_like(cube)
                nxt[1:, :, :] += row[0] * cube[:-1, :, :]
                nxt[:, 1:, :] += row[1] * cube[:, :-1, :]
                nxt[:, :, 1:] += row[2] * cube[:, :, :-1]
                cube = nxt
        for a in range(5):
            for b in range(5 - a):
                out[MONOMIAL_INDEX[(a, b, 4 - a - b)]] += cube[a, b, 4 - a - b]
    return out


def act_on_quartic(g: np.ndarray, f: TernaryQuartic) -> TernaryQuartic:
    """Transformed form f o g^{-1} in canonical scale."""
    ginv = np.linalg.inv(np.asarray(g, dtype=complex))
    return TernaryQuartic(substitute_coeffs(f.coeffs, ginv))


def act_on_point(g: np.ndarray, p: ProjPoint) -> ProjPoint:
    return ProjPoint(np.asarray(g, dtype=complex) @ p.v)


def act_on_line(g: np.ndarray, line: ProjLine) -> ProjLine:
    """Dual action: a point on ``line`` maps to a point on the image line."""
    ginv = np.linalg.inv(np.asarray(g, dtype=complex))
    return ProjLine(ginv.T @ line.v)


def line_is_real(line: ProjLine, tol: float = REAL_TOL) -> bool:
    """True when some complex rescaling makes all three coordinates real.

    Equivalent to the rank-1 condition on the 2x3 matrix stacking the vector
    with its conjugate: all 2x2 minors must vanish.
    """
    v = line.v
    w = np.conj(v)
    for a in range(3):
        for b in range(a + 1, 3):
            if abs(v[a] * w[b] - v[b] * w[a]) >= tol:
                return False
    return True
