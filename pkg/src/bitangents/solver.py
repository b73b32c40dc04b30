"""The 28-bitangent solver.

A line is bitangent exactly when the restriction of the quartic to it is
proportional to the square of a quadratic.  Writing the restriction in one
of three dual charts gives five coefficients c_i(u, v); eliminating the
square's data leaves two polynomial conditions

    G1 = c3^3 - 4 c4 c3 c2 + 8 c4^2 c1
    G2 = (4 c4 c2 - c3^2)^2 - 64 c4^3 c0

valid where c4 is nonzero.  The solver eliminates u by a Sylvester
resultant, scans the roots in v, back-substitutes, Gauss-Newton polishes
every candidate against the five coefficient-matching equations, and merges
the per-chart results by canonical line equality.  Three charts with
distinct parametrization base points cover the degenerate configurations of
any single chart.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonConvergence, WrongCount
from .polynomials import BiPoly, UniPoly, resultant_wrt, roots_all
from .projective import (
    MATCH_TOL,
    ProjLine,
    ProjPoint,
    TernaryQuartic,
    canon,
    line_is_real,
)


@dataclass(frozen=True)
class SolverConfig:
    accept_tol: float = 1e-8
    match_tol: float = 1e-6
    hyperflex_tol: float = 1e-7
    max_iter: int = 50
    seed: int = 0
    charts: tuple[int, ...] = (0, 1, 2)
    grad_tol: float = 1e-6

    def validated(self) -> "SolverConfig":
        if min(self.accept_tol, self.match_tol, self.hyperflex_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        return self


@dataclass
class Bitangent:
    line: ProjLine
    tangency_quadratic: UniPoly  # monic in the chart parameter below
    tangency_points: tuple[ProjPoint, ProjPoint]
    residual: float
    is_real: bool
    is_hyperflex: bool
    chart: int
    param_base: np.ndarray
    param_direction: np.ndarray


@dataclass
class ChartDiagnostics:
    chart: int
    resultant_degree: int = 0
    candidates: int = 0
    discarded: int = 0
    accepted: int = 0


@dataclass
class SolveDiagnostics:
    charts: list[ChartDiagnostics] = field(default_factory=list)
    merged_count: int = 0
    max_residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "charts": [
                {
                    "chart": c.chart,
                    "resultantDegree": c.resultant_degree,
                    "candidates": c.candidates,
                    "discarded": c.discarded,
                    "accepted": c.accepted,
                }
                for c in self.charts
            ],
            "mergedCount": self.merged_count,
            "maxResidual": self.max_residual,
        }


@dataclass
class BitangentSet:
    items: list[Bitangent]
    source: TernaryQuartic
    diagnostics: SolveDiagnostics

    @property
    def lines(self) -> list[ProjLine]:
        return [b.line for b in self.items]

    def __len__(self):
        return len(self.items)


def perfect_square_conditions(c) -> tuple[complex, complex]:
    """The two elimination conditions for c4 t^4 + ... + c0 being a square."""
    c0, c1, c2, c3, c4 = (complex(v) for v in c)
    g1 = c3**3 - 4 * c4 * c3 * c2 + 8 * c4**2 * c1
    g2 = (4 * c4 * c2 - c3**2) ** 2 - 64 * c4**3 * c0
    return g1, g2


# Chart k parametrizes lines whose k-th dual coordinate dominates:
#   chart 0: (1, u, v)   base (-u, 1, 0)   direction (-v, 0, 1)
#   chart 1: (u, 1, v)   base (0, -v, 1)   direction (1, -u, 0)
#   chart 2: (u, v, 1)   base (1, 0, -u)   direction (0, 1, -v)
# The parametrization base points sit on different coordinate planes, so a
# tangency point can disable at most two of the three charts.
_U = BiPoly([[0.0], [1.0]], trim=False)
_V = BiPoly([[0.0, 1.0]], trim=False)
_ONE = BiPoly([[1.0]])
_ZERO = BiPoly([[0.0]])
_CHARTS = (
    ((_U.scale(-1), _ONE, _ZERO), (_V.scale(-1), _ZERO, _ONE)),
    ((_ZERO, _V.scale(-1), _ONE), (_ONE, _U.scale(-1), _ZERO)),
    ((_ONE, _ZERO, _U.scale(-1)), (_ZERO, _ONE, _V.scale(-1))),
)


def line_of_chart(chart: int, u: complex, v: complex) -> np.ndarray:
    if chart == 0:
        return np.array([1.0, u, v], dtype=complex)
    if chart == 1:
        return np.array([u, 1.0, v], dtype=complex)
    return np.array([u, v, 1.0], dtype=complex)


def chart_coordinates(chart: int, line: ProjLine) -> tuple[complex, complex]:
    a, b, c = line.v
    if chart == 0:
        return b / a, c / a
    if chart == 1:
        return a / b, c / b
    return a / c, b / c


def chart_parametrization(chart: int, u: complex, v: complex) -> tuple[np.ndarray, np.ndarray]:
    if chart == 0:
        return np.array([-u, 1.0, 0.0], dtype=complex), np.array([-v, 0.0, 1.0], dtype=complex)
    if chart == 1:
        return np.array([0.0, -v, 1.0], dtype=complex), np.array([1.0, -u, 0.0], dtype=complex)
    return np.array([1.0, 0.0, -u], dtype=complex), np.array([0.0, 1.0, -v], dtype=complex)


_BINOM = ([1], [1, 1], [1, 2, 1], [1, 3, 3, 1], [1, 4, 6, 4, 1])


def chart_restriction(f: TernaryQuartic, chart: int) -> list[BiPoly]:
    """Coefficients c_0..c_4 in t of f(base(u,v) + t*direction(u,v))."""
    base, direction = _CHARTS[chart]
    out: list[BiPoly | None] = [None] * 5
    from .projective import MONOMIALS

    for coeff, (i, j, k) in zip(f.coeffs, MONOMIALS):
        if coeff == 0:
            continue
        # t-coefficient list of the product of the three binomial expansions.
        term: list[BiPoly | None] = [_ONE.scale(coeff)]
        for power, axis in ((i, 0), (j, 1), (k, 2)):
            if power == 0:
                continue
            b, d = base[axis], direction[axis]
            bpow = [_ONE]
            dpow = [_ONE]
            for _ in range(power):
                bpow.append(bpow[-1].mul(b))
                dpow.append(dpow[-1].mul(d))
            factor = [
                bpow[power - l].mul(dpow[l]).scale(_BINOM[power][l])
                for l in range(power + 1)
            ]
            new = [None] * (len(term) + power)
            for s, ts in enumerate(term):
                for l, fl in enumerate(factor):
                    prod = ts.mul(fl)
                    new[s + l] = prod if new[s + l] is None else new[s + l].add(prod)
            term = new
        for deg, poly in enumerate(term):
            if poly is None:
                continue
            out[deg] = poly if out[deg] is None else out[deg].add(poly)
    return [p if p is not None else _ZERO for p in out]


def square_system(coeffs: list[BiPoly]) -> tuple[BiPoly, BiPoly]:
    """The bivariate elimination conditions G1(u, v), G2(u, v)."""
    c0, c1, c2, c3, c4 = coeffs
    g1 = c3.mul(c3).mul(c3).add(c4.mul(c3).mul(c2).scale(-4)).add(c4.mul(c4).mul(c1).scale(8))
    inner = c4.mul(c2).scale(4).add(c3.mul(c3).scale(-1))
    g2 = inner.mul(inner).add(c4.mul(c4).mul(c4).mul(c0).scale(-64))
    return g1, g2


def _square_coeff_vector(q1: complex, q0: complex) -> np.ndarray:
    """Ascending t-coefficients of (t^2 + q1 t + q0)^2."""
    return np.array(
        [q0 * q0, 2 * q1 * q0, q1 * q1 + 2 * q0, 2 * q1, 1.0], dtype=complex
    )


def _polish_in_chart(
    coeffs: list[BiPoly],
    derivs_u: list[BiPoly],
    derivs_v: list[BiPoly],
    u0: complex,
    v0: complex,
    cfg: SolverConfig,
):
    """Gauss-Newton refinement of (u, v, q1, q0, alpha); None on failure."""
    c = np.array([p(u0, v0) for p in coeffs])
    scale = np.abs(c).max()
    if scale == 0 or abs(c[4]) < 1e-8 * scale:
        return None
    u, v = complex(u0), complex(v0)
    alpha = c[4]
    q1 = c[3] / (2 * c[4])
    q0 = (4 * c[4] * c[2] - c[3] ** 2) / (8 * c[4] ** 2)
    theta = np.array([u, v, q1, q0, alpha], dtype=complex)
    best = None
    for _ in range(cfg.max_iter):
        u, v, q1, q0, alpha = theta
        c = np.array([p(u, v) for p in coeffs])
        sq = _square_coeff_vector(q1, q0)
        r = c - alpha * sq
        scale = max(np.abs(c).max(), 1e-300)
        rel = np.abs(r).max() / scale
        if best is None or rel < best[0]:
            best = (rel, theta.copy())
        if rel < 1e-2 * cfg.accept_tol:
            break
        jac = np.zeros((5, 5), dtype=complex)
        jac[:, 0] = [p(u, v) for p in derivs_u]
        jac[:, 1] = [p(u, v) for p in derivs_v]
        jac[:, 2] = -alpha * np.array([0.0, 2 * q0, 2 * q1, 2.0, 0.0])
        jac[:, 3] = -alpha * np.array([2 * q0, 2 * q1, 2.0, 0.0, 0.0])
        jac[:, 4] = -sq
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        theta = theta + step
        if not np.all(np.isfinite(theta.view(float))):
            return None
    rel, theta = best
    if rel > cfg.accept_tol:
        return None
    return theta, rel


def _tangency_data(chart, theta, cfg: SolverConfig):
    u, v, q1, q0, _ = theta
    base, direction = chart_parametrization(chart, u, v)
    disc = q1 * q1 - 4 * q0
    s = np.sqrt(disc)
    t1, t2 = (-q1 + s) / 2, (-q1 - s) / 2
    pts = (ProjPoint(base + t1 * direction), ProjPoint(base + t2 * direction))
    hscale = max(1.0, abs(q1) ** 2, abs(q0))
    is_hyper = bool(abs(disc) < cfg.hyperflex_tol * hscale)
    quad = UniPoly([q0, q1, 1.0], trim=False)
    return quad, pts, is_hyper, base, direction


def solve_all(f: TernaryQuartic, cfg: SolverConfig | None = None) -> BitangentSet:
    """All 28 bitangents of a smooth quartic, or ``WrongCount`` with diagnostics."""
    cfg = (cfg or SolverConfig()).validated()
    diagnostics = SolveDiagnostics()
    found: list[Bitangent] = []

    for chart in cfg.charts:
        cd = ChartDiagnostics(chart=chart)
        diagnostics.charts.append(cd)
        coeffs = chart_restriction(f, chart)
        derivs_u = [p.derivative("u") for p in coeffs]
        derivs_v = [p.derivative("v") for p in coeffs]
        g1, g2 = square_system(coeffs)
        g1 = g1.scale(1.0 / np.abs(g1.grid).max())
        g2 = g2.scale(1.0 / np.abs(g2.grid).max())
        res = resultant_wrt(g1, g2, "u")
        if res.is_zero(1e-13):
            continue
        cd.resultant_degree = res.degree
        if res.degree < 1:
            continue
        vroots = roots_all(res, tol=1e-6, seed=cfg.seed)
        for v0 in vroots:
            slice1 = g1.eval_v(v0)
            if slice1.degree < 1 or np.abs(slice1.coeffs).max() < 1e-10 * np.abs(g1.grid).max():
                slice1 = g2.eval_v(v0)
            if slice1.degree < 1:
                continue
            try:
                uroots = roots_all(slice1, tol=1e-5, seed=cfg.seed)
            except NonConvergence:
                continue
            for u0 in uroots:
                cd.candidates += 1
                polished = _polish_in_chart(coeffs, derivs_u, derivs_v, u0, v0, cfg)
                if polished is None:
                    cd.discarded += 1
                    continue
                theta, rel = polished
                quad, pts, is_hyper, base, direction = _tangency_data(chart, theta, cfg)
                line = ProjLine(line_of_chart(chart, theta[0], theta[1]))
                found.append(
                    Bitangent(
                        line=line,
                        tangency_quadratic=quad,
                        tangency_points=pts,
                        residual=rel,
                        is_real=line_is_real(line),
                        is_hyperflex=is_hyper,
                        chart=chart,
                        param_base=base,
                        param_direction=direction,
                    )
                )
                cd.accepted += 1

    merged: list[Bitangent] = []
    for cand in found:
        dup = None
        for i, kept in enumerate(merged):
            if kept.line.eq(cand.line, cfg.match_tol):
                dup = i
                break
        if dup is None:
            merged.append(cand)
        elif cand.residual < merged[dup].residual:
            merged[dup] = cand

    # Deterministic output order regardless of chart scheduling.
    merged.sort(key=lambda b: tuple(np.round(b.line.v.view(float), 9)))
    diagnostics.merged_count = len(merged)
    diagnostics.max_residual = max((b.residual for b in merged), default=0.0)

    for b in merged:
        for p in b.tangency_points:
            if abs(f(p.v)) > 1e-6 or abs(b.line.v @ p.v) > 1e-6:
                raise WrongCount(len(merged), diagnostics)
            grad = f.gradient(p.v)
            if np.abs(grad).max() <= cfg.grad_tol:
                raise WrongCount(len(merged), diagnostics)

    if len(merged) != 28:
        raise WrongCount(len(merged), diagnostics)
    return BitangentSet(items=merged, source=f, diagnostics=diagnostics)


def polish(f: TernaryQuartic, candidate: ProjLine, cfg: SolverConfig | None = None) -> Bitangent:
    """Refine a candidate line to a bitangent; ``NonConvergence`` if it is not one."""
    cfg = (cfg or SolverConfig()).validated()
    order = np.argsort(-np.abs(candidate.v), kind="stable")
    last_error = None
    for chart in order:
        chart = int(chart)
        if abs(candidate.v[chart]) < 0.1 * np.abs(candidate.v).max():
            continue
        u0, v0 = chart_coordinates(chart, candidate)
        coeffs = chart_restriction(f, chart)
        derivs_u = [p.derivative("u") for p in coeffs]
        derivs_v = [p.derivative("v") for p in coeffs]
        polished = _polish_in_chart(coeffs, derivs_u, derivs_v, u0, v0, cfg)
        if polished is None:
            last_error = f"no convergence in chart {chart}"
            continue
        theta, rel = polished
        line = ProjLine(line_of_chart(chart, theta[0], theta[1]))
        if not line.eq(candidate, 1e-2):
            last_error = "converged to a different line"
            continue
        quad, pts, is_hyper, base, direction = _tangency_data(chart, theta, cfg)
        return Bitangent(
            line=line,
            tangency_quadratic=quad,
            tangency_points=pts,
            residual=rel,
            is_real=line_is_real(line),
            is_hyperflex=is_hyper,
            chart=chart,
            param_base=base,
            param_direction=direction,
        )
    raise NonConvergence(last_error or "candidate line has no dominant chart")


def count_real(bset: BitangentSet) -> int:
    return sum(1 for b in bset.items if b.is_real)
