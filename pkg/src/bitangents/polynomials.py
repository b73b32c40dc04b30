"""Dense complex polynomials in one and two variables.

This is the numeric substrate for the bitangent solver: univariate and
bivariate arithmetic, Sylvester resultants (evaluated by interpolation at
roots of unity), simultaneous root finding (Aberth-Ehrlich with Newton
polishing) and square-free reduction by root clustering.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateElimination, NonConvergence

# Relative threshold below which trailing coefficients are dropped.
DROP_TOL = 1e-12


def _as_coeffs(values) -> np.ndarray:
    c = np.atleast_1d(np.asarray(values, dtype=complex))
    if c.ndim != 1:
        raise ValueError("coefficient array must be one-dimensional")
    if not np.all(np.isfinite(c.view(float))):
        raise ValueError("polynomial coefficients must be finite")
    return c


def _trim(c: np.ndarray, rel_tol: float = DROP_TOL) -> np.ndarray:
    scale = np.abs(c).max() if c.size else 0.0
    if scale == 0.0:
        return np.zeros(1, dtype=complex)
    keep = np.nonzero(np.abs(c) > rel_tol * scale)[0]
    if keep.size == 0:
        return np.zeros(1, dtype=complex)
    return c[: keep[-1] + 1].copy()


class UniPoly:
    """Univariate polynomial; ``coeffs[i]`` multiplies ``t**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, trim: bool = True):
        c = _as_coeffs(coeffs)
        self.coeffs = _trim(c) if trim else c.copy()
        self.coeffs.flags.writeable = False

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.abs(self.coeffs).max() <= tol)

    def __call__(self, t: complex):
        # Horner; supports scalar or ndarray argument.
        acc = np.zeros_like(np.asarray(t, dtype=complex))
        for c in self.coeffs[::-1]:
            acc = acc * t + c
        return acc if acc.shape else complex(acc)

    def add(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        c = np.zeros(n, dtype=complex)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += other.coeffs
        return UniPoly(c)

    def mul(self, other: "UniPoly") -> "UniPoly":
        return UniPoly(np.convolve(self.coeffs, other.coeffs))

    def scale(self, a: complex) -> "UniPoly":
        return UniPoly(self.coeffs * a)

    def derivative(self) -> "UniPoly":
        if self.degree == 0:
            return UniPoly([0.0])
        return UniPoly(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def monic(self) -> "UniPoly":
        return UniPoly(self.coeffs / self.coeffs[-1])

    def __repr__(self):
        return f"UniPoly(degree={self.degree})"


def from_roots(roots) -> UniPoly:
    """Monic polynomial with the given roots."""
    c = np.ones(1, dtype=complex)
    for r in roots:
        c = np.convolve(c, np.array([-r, 1.0], dtype=complex))
    return UniPoly(c, trim=False)


class BiPoly:
    """Bivariate polynomial on a dense grid; ``grid[i, j]`` multiplies ``u**i v**j``."""

    __slots__ = ("grid",)

    def __init__(self, grid, trim: bool = True):
        g = np.atleast_2d(np.asarray(grid, dtype=complex))
        if not np.all(np.isfinite(g.view(float))):
            raise ValueError("polynomial coefficients must be finite")
        if trim:
            g = self._trim_grid(g)
        self.grid = g.copy()
        self.grid.flags.writeable = False

    @staticmethod
    def _trim_grid(g: np.ndarray) -> np.ndarray:
        scale = np.abs(g).max()
        if scale == 0.0:
            return np.zeros((1, 1), dtype=complex)
        mask = np.abs(g) > DROP_TOL * scale
        rows = np.nonzero(mask.any(axis=1))[0]
        cols = np.nonzero(mask.any(axis=0))[0]
        return g[: rows[-1] + 1, : cols[-1] + 1]

    @property
    def degree_u(self) -> int:
        return self.grid.shape[0] - 1

    @property
    def degree_v(self) -> int:
        return self.grid.shape[1] - 1

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.abs(self.grid).max() <= tol)

    def __call__(self, u: complex, v: complex) -> complex:
        pu = u ** np.arange(self.grid.shape[0])
        pv = v ** np.arange(self.grid.shape[1])
        return complex(pu @ self.grid @ pv)

    def add(self, other: "BiPoly") -> "BiPoly":
        nu = max(self.grid.shape[0], other.grid.shape[0])
        nv = max(self.grid.shape[1], other.grid.shape[1])
        g = np.zeros((nu, nv), dtype=complex)
        g[: self.grid.shape[0], : self.grid.shape[1]] += self.grid
        g[: other.grid.shape[0], : other.grid.shape[1]] += other.grid
        return BiPoly(g)

    def mul(self, other: "BiPoly") -> "BiPoly":
        a, b = self.grid, other.grid
        g = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=complex)
        for i in range(a.shape[0]):
            for j in range(a.shape[1]):
                if a[i, j] != 0:
                    g[i : i + b.shape[0], j : j + b.shape[1]] += a[i, j] * b
        return BiPoly(g)

    def scale(self, a: complex) -> "BiPoly":
        return BiPoly(self.grid * a)

    def derivative(self, var: str) -> "BiPoly":
        if var == "u":
            if self.grid.shape[0] == 1:
                return BiPoly(np.zeros((1, 1)))
            return BiPoly(self.grid[1:, :] * np.arange(1, self.grid.shape[0])[:, None])
        if var == "v":
            if self.grid.shape[1] == 1:
                return BiPoly(np.zeros((1, 1)))
            return BiPoly(self.grid[:, 1:] * np.arange(1, self.grid.shape[1])[None, :])
        raise ValueError(f"unknown variable {var!r}")

    def eval_u(self, u: complex) -> UniPoly:
        """Partial evaluation at ``u``; returns a polynomial in ``v``."""
        pu = u ** np.arange(self.grid.shape[0])
        return UniPoly(pu @ self.grid)

    def eval_v(self, v: complex) -> UniPoly:
        """Partial evaluation at ``v``; returns a polynomial in ``u``."""
        pv = v ** np.arange(self.grid.shape[1])
        return UniPoly(self.grid @ pv)

    def coeffs_in(self, var: str) -> list[UniPoly]:
        """Coefficients with respect to ``var``, each a polynomial in the other variable."""
        if var == "v":
            return [UniPoly(self.grid[:, j]) for j in range(self.grid.shape[1])]
        if var == "u":
            return [UniPoly(self.grid[i, :]) for i in range(self.grid.shape[0])]
        raise ValueError(f"unknown variable {var!r}")

    def __repr__(self):
        return f"BiPoly(degree_u={self.degree_u}, degree_v={self.degree_v})"


def sylvester_det(pc: np.ndarray, qc: np.ndarray, m: int, n: int) -> complex:
    """Determinant of the Sylvester matrix for coefficient vectors of degrees m, n.

    ``pc``/``qc`` are ascending coefficient vectors padded to lengths m+1, n+1.
    """
    size = m + n
    if size == 0:
        return 1.0 + 0j
    s = np.zeros((size, size), dtype=complex)
    prow = pc[::-1]  # descending
    qrow = qc[::-1]
    for k in range(n):
        s[k, k : k + m + 1] = prow
    for k in range(m):
        s[n + k, k : k + n + 1] = qrow
    sign, logdet = np.linalg.slogdet(s)
    if sign == 0:
        return 0.0 + 0j
    return complex(sign * np.exp(logdet))


def resultant_wrt(p: BiPoly, q: BiPoly, var: str) -> UniPoly:
    """Resultant of ``p`` and ``q`` viewed as univariate in ``var``.

    The Sylvester determinant is recovered by evaluating at scaled roots of
    unity in the surviving variable and interpolating with an inverse FFT.
    Vanishes where the two polynomials share a root in ``var`` or where both
    leading coefficients vanish.
    """
    if var not in ("u", "v"):
        raise ValueError(f"unknown variable {var!r}")
    if p.is_zero() or q.is_zero():
        raise DegenerateElimination("resultant of an identically zero polynomial")
    if var == "u":
        # Swap the grid axes and reuse the var == 'v' path.
        p = BiPoly(p.grid.T)
        q = BiPoly(q.grid.T)
    m, n = p.degree_v, q.degree_v
    if m == 0 and n == 0:
        return UniPoly([1.0])
    # Degree bound for the resultant in the surviving variable.
    bound = p.degree_u * n + q.degree_u * m
    npts = bound + 1
    # Sample radius keyed to the coefficient magnitude so determinant values
    # stay inside double range across the circle.
    scale = max(np.abs(p.grid).max(), np.abs(q.grid).max())
    radius = 1.0 if scale == 0 else float(np.clip(scale ** (-1.0 / max(m + n, 1)), 0.25, 4.0))
    pts = radius * np.exp(2j * np.pi * np.arange(npts) / npts)
    upow = pts[:, None] ** np.arange(p.grid.shape[0])[None, :]
    pvals = upow @ p.grid  # (npts, m+1) coefficient rows in v
    upow = pts[:, None] ** np.arange(q.grid.shape[0])[None, :]
    qvals = upow @ q.grid
    dets = np.array(
        [sylvester_det(pvals[k], qvals[k], m, n) for k in range(npts)]
    )
    coeffs = np.fft.fft(dets) / npts / radius ** np.arange(npts)
    return UniPoly(coeffs)


def _fujiwara_bound(c: np.ndarray) -> float:
    """Upper bound for root moduli of the polynomial with ascending coeffs ``c``."""
    n = len(c) - 1
    lead = abs(c[-1])
    terms = [abs(c[n - k]) / lead for k in range(1, n + 1)]
    terms[-1] *= 0.5
    vals = [t ** (1.0 / k) for k, t in enumerate(terms, start=1) if t > 0]
    return 2.0 * max(vals) if vals else 1.0


def roots_all(
    p: UniPoly,
    tol: float = 1e-10,
    max_iter: int = 200,
    seed: int = 0,
) -> np.ndarray:
    """All roots of ``p`` by simultaneous Aberth-Ehrlich iteration.

    Returns ``p.degree`` roots with multiplicity clusters as repeated values.
    Each root r satisfies ``|p(r)| <= tol * max|coeff| * max(1, |r|)**deg``
    after Newton polishing, else ``NonConvergence`` is raised.
    """
    c = p.coeffs
    n = len(c) - 1
    if n < 1:
        raise ValueError("roots_all requires degree >= 1")
    scale = np.abs(c).max()
    if abs(c[-1]) <= DROP_TOL * scale:
        raise ValueError("leading coefficient below drop tolerance")
    c = c / c[-1]
    cmax = np.abs(c).max()
    dc = c[1:] * np.arange(1, n + 1)

    rng = np.random.default_rng(seed)
    radius = _fujiwara_bound(c)
    angles = 2 * np.pi * (np.arange(n) + 0.5) / n + 0.3
    z = radius * np.exp(1j * (angles + 0.05 * rng.standard_normal(n)))

    def horner(cs, x):
        acc = np.zeros_like(x)
        for a in cs[::-1]:
            acc = acc * x + a
        return acc

    absc = np.abs(c)

    def noise_floor(x):
        # Running error bound for Horner evaluation.
        return 4.0 * n * np.finfo(float).eps * horner(absc, np.abs(x)).real

    def bound(x):
        return tol * cmax * np.maximum(1.0, np.abs(x)) ** n

    for _ in range(max_iter):
        pv = horner(c, z)
        done = np.abs(pv) <= noise_floor(z)
        if done.all():
            break
        dv = horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(dv != 0, pv / dv, 0.0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = (1.0 / diff).sum(axis=1) - 1.0  # remove diagonal contribution
            denom = 1.0 - w * s
            step = np.where(np.abs(denom) > 1e-300, w / denom, w)
        step = np.where(done, 0.0, step)
        z = z - step
        if not np.all(np.isfinite(z.view(float))):
            raise NonConvergence("Aberth iteration diverged", index=-1)

    # Newton polishing; multiple roots converge linearly but steadily.
    for _ in range(100):
        pv = horner(c, z)
        ok = np.abs(pv) <= noise_floor(z)
        if ok.all():
            break
        dv = horner(dc, z)
        step = np.where((~ok) & (dv != 0), pv / np.where(dv == 0, 1.0, dv), 0.0)
        z = z - step

    bad = np.abs(horner(c, z)) > bound(z)
    if bad.any():
        raise NonConvergence(
            f"{int(bad.sum())} root approximations exceed the residual bound",
            index=int(np.nonzero(bad)[0][0]),
        )
    return z


def cluster_roots(roots: np.ndarray, cluster_tol: float) -> list[np.ndarray]:
    """Partition roots into clusters of pairwise distance below ``cluster_tol``."""
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) < cluster_tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [roots[idx] for idx in groups.values()]


def square_free_part(p: UniPoly, cluster_tol: float = 1e-6, seed: int = 0) -> UniPoly:
    """Monic polynomial with one representative root per root cluster.

    A root of multiplicity k is only located to roughly eps**(1/k) by plain
    iteration, which can exceed ``cluster_tol``.  Clustering therefore uses a
    noise-aware radius, and each size-k cluster mean is re-polished as a
    simple root of the (k-1)-th derivative before a final merge pass.
    """
    if p.degree < 1:
        raise ValueError("square_free_part requires degree >= 1")
    c = p.coeffs / p.coeffs[-1]
    derivs = [c]
    while len(derivs[-1]) > 1:
        d = derivs[-1]
        derivs.append(d[1:] * np.arange(1, len(d)))

    def horner(cs, x):
        acc = 0j
        for a in cs[::-1]:
            acc = acc * x + a
        return acc

    roots = roots_all(p, seed=seed)
    # A multiplicity-k root computed in doubles spreads by roughly eps**(1/k),
    # which reaches ~1e-4 by k=4; the floor absorbs that spread.
    radius = max(cluster_tol, 1e-4)
    reps = []
    for cluster in cluster_roots(roots, radius):
        mean = cluster.mean()
        z = mean
        k = min(len(cluster), len(derivs) - 2)
        g, dg = derivs[k - 1], derivs[k]
        for _ in range(50):
            dv = horner(dg, z)
            if dv == 0:
                break
            step = horner(g, z) / dv
            z -= step
            if abs(step) < 1e-15 * max(1.0, abs(z)):
                break
        if abs(z - mean) > 5 * radius:
            z = mean  # refinement wandered to a different derivative root
        reps.append(z)
    merged = [cl.mean() for cl in cluster_roots(np.array(reps), radius)]
    return from_roots(merged)
