"""Specialization solver for parametric quartic families.

Given a family whose coefficients are affine-linear in the parameters and a
projective transformation g, solves g.f = lambda f for the parameters and
the scale factor: the solution locus is where the family member acquires g
as an extra symmetry.  Candidate lambda values are enumerated from rows of
the coefficient-matching system whose image is proportional to the source;
each candidate reduces the problem to a linear solve whose solution set is
returned as an affine subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .catalog import ENTRIES
from .errors import DegenerateFamily
from .projective import TernaryQuartic, substitute_coeffs


@dataclass(frozen=True)
class ParametricQuartic:
    """Quartic family with coefficients const + lin @ params."""

    param_names: tuple[str, ...]
    const: np.ndarray  # (15,)
    lin: np.ndarray  # (15, k)

    @property
    def arity(self) -> int:
        return len(self.param_names)

    def raw_coeffs(self, params) -> np.ndarray:
        p = np.asarray(params, dtype=complex).reshape(self.arity)
        return self.const + self.lin @ p

    def member(self, params) -> TernaryQuartic:
        return TernaryQuartic(self.raw_coeffs(params))


def _family_from_terms(param_names, const_terms, lin_terms) -> ParametricQuartic:
    from .projective import MONOMIAL_INDEX

    const = np.zeros(15, dtype=complex)
    for mon, val in const_terms.items():
        const[MONOMIAL_INDEX[mon]] = val
    lin = np.zeros((15, len(param_names)), dtype=complex)
    for col, name in enumerate(param_names):
        for mon, val in lin_terms.get(name, {}).items():
            lin[MONOMIAL_INDEX[mon], col] = val
    return ParametricQuartic(tuple(param_names), const, lin)


_FERMAT = {(4, 0, 0): 1.0, (0, 4, 0): 1.0, (0, 0, 4): 1.0}

#: Linear-parameter presentations of the parametric catalog families.  The
#: type XI family is linear in the elementary symmetric combinations
#: e1 = a + b, e2 = a b of its natural parameters, so that presentation is
#: used here.
FAMILIES: dict[str, ParametricQuartic] = {
    "IV": _family_from_terms(
        ("a",), _FERMAT, {"a": {(2, 2, 0): 1.0, (0, 2, 2): 1.0, (2, 0, 2): 1.0}}
    ),
    "V": _family_from_terms(("a",), _FERMAT, {"a": {(2, 2, 0): 1.0}}),
    "VII": _family_from_terms(
        ("a", "b"), _FERMAT, {"a": {(2, 2, 0): 1.0}, "b": {(1, 1, 2): 1.0}}
    ),
    "VIII": _family_from_terms(
        ("a",),
        {(0, 1, 3): 1.0, (4, 0, 0): 1.0, (0, 4, 0): 1.0},
        {"a": {(2, 2, 0): 1.0}},
    ),
    "IX": _family_from_terms(
        ("a", "b"),
        {(3, 0, 1): 1.0, (0, 3, 1): 1.0, (2, 2, 0): 1.0},
        {"a": {(1, 1, 2): 1.0}, "b": {(0, 0, 4): 1.0}},
    ),
    "X": _family_from_terms(
        ("a", "b", "c"),
        _FERMAT,
        {"a": {(2, 2, 0): 1.0}, "b": {(0, 2, 2): 1.0}, "c": {(2, 0, 2): 1.0}},
    ),
    "XI": _family_from_terms(
        ("e1", "e2"),
        {(0, 1, 3): 1.0, (4, 0, 0): 1.0, (3, 1, 0): -1.0},
        {
            "e1": {(3, 1, 0): -1.0, (2, 2, 0): 1.0},
            "e2": {(2, 2, 0): 1.0, (1, 3, 0): -1.0},
        },
    ),
    "XII": _family_from_terms(
        ("a", "b", "c", "d"),
        _FERMAT,
        {
            "a": {(2, 2, 0): 1.0},
            "b": {(2, 1, 1): 1.0},
            "c": {(2, 0, 2): 1.0},
            "d": {(0, 2, 2): 1.0},
        },
    ),
}


def family_for(type_id: str) -> ParametricQuartic:
    entry = ENTRIES[type_id]
    if type_id not in FAMILIES:
        raise DegenerateFamily(
            f"type {type_id} ({entry.group_name}) has no free parameters"
        )
    return FAMILIES[type_id]


def transform_family(family: ParametricQuartic, m: np.ndarray) -> ParametricQuartic:
    """The family composed with the substitution ``m`` (every member f -> f o m)."""
    m = np.asarray(m, dtype=complex)
    const = substitute_coeffs(family.const, m)
    lin = np.column_stack(
        [substitute_coeffs(family.lin[:, j], m) for j in range(family.arity)]
    )
    return ParametricQuartic(family.param_names, const, lin)


@dataclass(frozen=True)
class SpecSolution:
    """One feasible scale factor with its affine solution space of parameters."""

    lam: complex
    point: np.ndarray  # minimum-norm particular solution, shape (k,)
    basis: np.ndarray  # nullspace directions, shape (k, r)

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def contains(self, params, tol: float = 1e-7) -> bool:
        p = np.asarray(params, dtype=complex) - self.point
        if self.basis.shape[1]:
            coef, *_ = np.linalg.lstsq(self.basis, p, rcond=None)
            p = p - self.basis @ coef
        return bool(np.abs(p).max() < tol)


@dataclass
class SpecializationResult:
    solutions: list[SpecSolution]

    @property
    def infeasible(self) -> bool:
        return not self.solutions


def _proportional_row_candidates(src_lin, src_const, img_lin, img_const, tol) -> list[complex]:
    """Scale factors from monomial rows whose image is proportional to the source."""
    cands: list[complex] = []
    for m in range(15):
        row = np.append(src_lin[m], src_const[m])
        img = np.append(img_lin[m], img_const[m])
        if np.abs(row).max() < tol:
            continue
        alpha = (img @ np.conj(row)) / (row @ np.conj(row))
        if np.abs(img - alpha * row).max() < 1e-8 * max(1.0, np.abs(img).max()) and abs(alpha) > tol:
            cands.append(complex(alpha))
    return cands


def _rank_drop_candidates(src_lin, src_const, img_lin, img_const) -> list[complex]:
    """Scale factors where the augmented linear system becomes solvable.

    Solvability of (img_lin - lam*src_lin) p = lam*src_const - img_const
    forces every maximal minor of the augmented matrix to vanish; candidate
    lam values are the common roots of a few random row projections of that
    determinant, each a polynomial in lam of degree at most k+1.
    """
    k = src_lin.shape[1]
    deg = k + 1
    rng = np.random.default_rng(1234)
    root_sets = []
    for _ in range(3):
        proj = rng.normal(size=(deg, 15)) + 1j * rng.normal(size=(deg, 15))
        npts = deg + 1
        pts = np.exp(2j * np.pi * np.arange(npts) / npts)
        vals = []
        for lam in pts:
            aug = np.column_stack([img_lin - lam * src_lin, img_const - lam * src_const])
            vals.append(np.linalg.det(proj @ aug))
        coeffs = np.fft.fft(np.array(vals)) / npts
        mags = np.abs(coeffs)
        if mags.max() < 1e-10:
            continue  # projection degenerate for every lam
        poly = np.trim_zeros(np.where(mags > 1e-10 * mags.max(), coeffs, 0.0), "b")
        if len(poly) <= 1:
            return []  # no lam makes this projection vanish
        root_sets.append(np.roots(poly[::-1]))
    if not root_sets:
        return []
    cands = list(root_sets[0])
    for other in root_sets[1:]:
        cands = [c for c in cands if np.abs(other - c).min() < 1e-6 * max(1.0, abs(c))]
    return [complex(c) for c in cands if abs(c) > 1e-9]


def _lambda_candidates(src_lin, src_const, img_lin, img_const, tol) -> list[complex]:
    cands = _proportional_row_candidates(src_lin, src_const, img_lin, img_const, tol)
    cands += _rank_drop_candidates(src_lin, src_const, img_lin, img_const)
    out: list[complex] = []
    for c in cands:
        if not any(abs(c - o) < 1e-7 * max(1.0, abs(c)) for o in out):
            out.append(c)
    return out


def specialize(
    family: ParametricQuartic,
    g: np.ndarray,
    tol: float = 1e-9,
) -> SpecializationResult:
    """Parameter loci where g becomes a symmetry of the family member.

    Solves (f o g^{-1})(params) = lambda * f(params) over the family.  The
    result lists every feasible lambda with the affine subspace of parameter
    values realizing it; an empty list means no member of the family is
    preserved by g.
    """
    if family.arity == 0:
        raise DegenerateFamily("family has no free parameters")
    ginv = np.linalg.inv(np.asarray(g, dtype=complex))
    img_const = substitute_coeffs(family.const, ginv)
    img_lin = np.column_stack(
        [substitute_coeffs(family.lin[:, j], ginv) for j in range(family.arity)]
    )
    return _solve_blocks(
        [(family.lin, family.const, img_lin, img_const)], family.arity, tol
    )


def specialize_joint(
    family: ParametricQuartic,
    transforms,
    tol: float = 1e-9,
) -> SpecializationResult:
    """Parameters where every listed transformation is simultaneously a symmetry.

    Each transformation gets its own scale factor; the candidate combinations
    are intersected by one joint linear solve.
    """
    blocks = []
    for g in transforms:
        ginv = np.linalg.inv(np.asarray(g, dtype=complex))
        img_const = substitute_coeffs(family.const, ginv)
        img_lin = np.column_stack(
            [substitute_coeffs(family.lin[:, j], ginv) for j in range(family.arity)]
        )
        blocks.append((family.lin, family.const, img_lin, img_const))
    return _solve_blocks(blocks, family.arity, tol)


def _solve_blocks(blocks, arity, tol) -> SpecializationResult:
    cand_sets = [
        _lambda_candidates(lin, const, img_lin, img_const, tol)
        for (lin, const, img_lin, img_const) in blocks
    ]
    if any(not cs for cs in cand_sets):
        return SpecializationResult(solutions=[])
    solutions: list[SpecSolution] = []
    for lams in product(*cand_sets):
        rows = []
        rhs = []
        for lam, (lin, const, img_lin, img_const) in zip(lams, blocks):
            rows.append(img_lin - lam * lin)
            rhs.append(lam * const - img_const)
        mat = np.vstack(rows)
        vec = np.concatenate(rhs)
        sol, *_ = np.linalg.lstsq(mat, vec, rcond=None)
        residual = np.abs(mat @ sol - vec).max()
        scale = max(1.0, np.abs(vec).max(), np.abs(mat).max())
        if residual > 1e-8 * scale:
            continue
        u, s, vh = np.linalg.svd(mat)
        rank = int((s > 1e-9 * max(1.0, s[0] if len(s) else 1.0)).sum())
        basis = vh[rank:].conj().T if rank < arity else np.zeros((arity, 0))
        lam0 = complex(lams[0])
        already = any(
            abs(lam0 - t.lam) < 1e-9 and t.contains(sol) for t in solutions
        )
        if not already:
            solutions.append(SpecSolution(lam=lam0, point=sol, basis=basis))
    return SpecializationResult(solutions=solutions)
