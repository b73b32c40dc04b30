"""Registry of the twelve smooth-quartic symmetry types.

Each entry carries a normal-form equation (possibly with free parameters),
generators of the projective automorphism group, the excluded parameter
loci with the type they promote to, the expected orbit decomposition of the
28 bitangents, and reference parameter values with their real-bitangent
counts.  The registry also hosts the specialization solver that finds the
parameter loci where a family acquires a prescribed extra symmetry, and the
subgroup-lattice report built from it.

Conventions adopted for numerically delicate entries:

* The order-2 circulant generator of the Klein group uses the symmetric
  row arrangement [[A, G, B], [G, B, A], [B, A, G]]; this is the involution
  that actually preserves x^3 y + y^3 z + z^3 x (the plain circulant does
  not).
* The order-48 type III generators are stored with conjugated entries so
  that they preserve the stated equation x^4+y^4+z^4+(4 zeta3 + 2) x^2 y^2;
  the unconjugated pair preserves the complex-conjugate curve.
* The type XII reference example is stored literally (its z^4 sign differs
  from the XII normal form) together with its order-2 generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ArityMismatch, ExcludedParameter
from .groups import FiniteProjGroup, closure
from .orbits import ExpectedPattern, PatternTerm
from .projective import TernaryQuartic

EXCLUSION_TOL = 1e-9

I = 1j
Z3 = np.exp(2j * np.pi / 3)
Z7 = np.exp(2j * np.pi / 7)
Z9 = np.exp(2j * np.pi / 9)
SQRT7I = 1j * np.sqrt(7.0)

# Klein-group circulant entries.
_KA = (Z7**5 - Z7**2) / SQRT7I
_KB = (Z7**6 - Z7) / SQRT7I
_KG = (Z7**3 - Z7**4) / SQRT7I

CYCLE3 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
SWAP_XY = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
ROT4 = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)

GENERATORS: dict[str, list[np.ndarray]] = {
    "I": [
        np.diag([Z7**4, Z7**2, Z7]),
        np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex),
        np.array([[_KA, _KG, _KB], [_KG, _KB, _KA], [_KB, _KA, _KG]]),
    ],
    "II": [CYCLE3, np.array([[-I, 0, 0], [0, 0, 1], [0, I, 0]])],
    "III": [
        np.array([[(1 - I) / 2, (-1 - I) / 2, 0], [(1 - I) / 2, (1 + I) / 2, 0], [0, 0, Z3**2]]),
        np.array([[(1 - I) / 2, (-1 + I) / 2, 0], [(-1 - I) / 2, (-1 - I) / 2, 0], [0, 0, Z3]]),
    ],
    "IV": [CYCLE3, ROT4],
    "V": [np.diag([-1.0 + 0j, 1, 1]), np.diag([I, -I, 1]), ROT4],
    "VI": [np.diag([Z3, 1, Z9])],
    "VII": [np.diag([I, -I, 1]), SWAP_XY],
    "VIII": [np.diag([-1.0 + 0j, 1, Z3])],
    "IX": [np.diag([Z3, Z3**2, 1]), SWAP_XY],
    "X": [np.diag([-1.0 + 0j, 1, 1]), np.diag([1, -1.0 + 0j, 1])],
    "XI": [np.diag([1, 1, Z3])],
    "XII": [np.diag([-1.0 + 0j, 1, 1])],
}


def _q(terms: dict[tuple[int, int, int], complex]) -> TernaryQuartic:
    return TernaryQuartic.from_dict(terms)


def _fermat_terms(extra: dict | None = None) -> dict:
    terms = {(4, 0, 0): 1.0, (0, 4, 0): 1.0, (0, 0, 4): 1.0}
    if extra:
        terms.update(extra)
    return terms


def _equation(type_id: str, params: tuple) -> TernaryQuartic:
    if type_id == "I":
        return _q({(3, 1, 0): 1.0, (0, 3, 1): 1.0, (1, 0, 3): 1.0})
    if type_id == "II":
        return _q(_fermat_terms())
    if type_id == "III":
        return _q(_fermat_terms({(2, 2, 0): 4 * Z3 + 2}))
    if type_id == "IV":
        (a,) = params
        return _q(_fermat_terms({(2, 2, 0): a, (0, 2, 2): a, (2, 0, 2): a}))
    if type_id == "V":
        (a,) = params
        return _q(_fermat_terms({(2, 2, 0): a}))
    if type_id == "VI":
        return _q({(4, 0, 0): 1.0, (1, 3, 0): 1.0, (0, 1, 3): 1.0})
    if type_id == "VII":
        a, b = params
        return _q(_fermat_terms({(2, 2, 0): a, (1, 1, 2): b}))
    if type_id == "VIII":
        (a,) = params
        return _q({(0, 1, 3): 1.0, (4, 0, 0): 1.0, (2, 2, 0): a, (0, 4, 0): 1.0})
    if type_id == "IX":
        a, b = params
        return _q({(3, 0, 1): 1.0, (0, 3, 1): 1.0, (2, 2, 0): 1.0, (1, 1, 2): a, (0, 0, 4): b})
    if type_id == "X":
        a, b, c = params
        return _q(_fermat_terms({(2, 2, 0): a, (0, 2, 2): b, (2, 0, 2): c}))
    if type_id == "XI":
        a, b = params
        # y z^3 + x (x - y)(x - a y)(x - b y)
        e1, e2 = a + b, a * b
        return _q(
            {
                (0, 1, 3): 1.0,
                (4, 0, 0): 1.0,
                (3, 1, 0): -(1 + e1),
                (2, 2, 0): e1 + e2,
                (1, 3, 0): -e2,
            }
        )
    if type_id == "XII":
        if params is None:
            # Reference example, stored as printed; note the z^4 sign.
            return _q(
                {
                    (4, 0, 0): 1.0,
                    (2, 2, 0): -1.0,
                    (2, 0, 2): -4.0,
                    (0, 4, 0): 1.0,
                    (0, 2, 2): -1.0,
                    (0, 0, 4): -1.0,
                }
            )
        a, b, c, d = params
        return _q(
            _fermat_terms({(2, 2, 0): a, (2, 1, 1): b, (2, 0, 2): c, (0, 2, 2): d})
        )
    raise KeyError(type_id)


@dataclass(frozen=True)
class Exclusion:
    predicate: Callable[[tuple], bool]
    promoted_type: str | None
    description: str


def _near(x, y, tol=EXCLUSION_TOL) -> bool:
    return abs(complex(x) - complex(y)) < tol


_A_KLEIN = 1.5 * (-1 + np.sqrt(7) * 1j)

EXCLUSIONS: dict[str, list[Exclusion]] = {
    "I": [],
    "II": [],
    "III": [],
    "VI": [],
    "IV": [
        Exclusion(lambda p: _near(p[0], 0), "II", "a = 0"),
        Exclusion(
            lambda p: _near(p[0], _A_KLEIN) or _near(p[0], np.conj(_A_KLEIN)),
            "I",
            "a = (3/2)(-1 +/- sqrt(-7))",
        ),
        Exclusion(
            lambda p: any(_near(p[0], s) for s in (-1, -2, 2)),
            None,
            "singular member of the pencil",
        ),
    ],
    "V": [
        Exclusion(lambda p: _near(p[0], 0) or _near(p[0], 6) or _near(p[0], -6), "II", "a in {0, 6, -6}"),
        Exclusion(
            lambda p: _near(p[0], 2j * np.sqrt(3)) or _near(p[0], -2j * np.sqrt(3)),
            "III",
            "a = +/- 2 sqrt(-3)",
        ),
        Exclusion(lambda p: _near(abs(complex(p[0])), 2), None, "singular (a = +/-2)"),
    ],
    "VII": [Exclusion(lambda p: _near(p[1], 0), "V", "b = 0")],
    "VIII": [
        Exclusion(lambda p: _near(p[0], 0), "III", "a = 0"),
        Exclusion(lambda p: _near(p[0], 2) or _near(p[0], -2), None, "singular (a = +/-2)"),
    ],
    "IX": [
        Exclusion(lambda p: _near(p[0], 0), "IV", "a = 0 (catalog constraint; see docs)"),
        Exclusion(lambda p: _near(p[1], 0), None, "singular (b = 0)"),
    ],
    "X": [
        Exclusion(
            lambda p: any(_near(p[i], 0) for i in range(3))
            or any(
                _near(p[i], p[j]) or _near(p[i], -p[j])
                for i in range(3)
                for j in range(i + 1, 3)
            ),
            "VII",
            "{+/-a, +/-b, +/-c} not all distinct",
        ),
        Exclusion(
            lambda p: any(_near(abs(complex(p[i])), 2) for i in range(3)),
            None,
            "singular (a coefficient is +/-2)",
        ),
    ],
    "XI": [
        Exclusion(
            lambda p: any(_near(p[i], v) for i in range(2) for v in (0, 1)) or _near(p[0], p[1]),
            None,
            "repeated root of the binary quartic (singular)",
        ),
        Exclusion(lambda p: _near(p[1], 1 - complex(p[0])), "VIII", "b = 1 - a"),
        Exclusion(
            lambda p: _near(p[0], -1) or _near(p[1], -1),
            "VIII",
            "a = -1 or b = -1 (catalog constraint; see docs)",
        ),
        Exclusion(
            lambda p: _near(p[0], Z3) and _near(p[1], Z3**2) or _near(p[0], Z3**2) and _near(p[1], Z3),
            "VI",
            "{a, b} = {zeta3, zeta3^2}",
        ),
        Exclusion(
            lambda p: _near(p[0], Z3) or _near(p[1], Z3),
            "VI",
            "a = zeta3 or b = zeta3 (catalog constraint; see docs)",
        ),
    ],
    "XII": [Exclusion(lambda p: _near(p[1], 0), "X", "b = 0")],
}


def _pattern(group_name: str, group_order: int, rows) -> ExpectedPattern:
    terms = tuple(
        PatternTerm(
            orbit_size=size,
            stab_order=stab,
            iso=iso,
            multiplicity=mult,
            class_group=cg,
            display=display,
            central=central,
        )
        for (size, stab, iso, mult, cg, display, central) in rows
    )
    return ExpectedPattern(group_name=group_name, group_order=group_order, terms=terms)


PATTERNS: dict[str, ExpectedPattern] = {
    "I": _pattern("PSL2(7)", 168, [(28, 6, "S3", 1, "s", "S3", None)]),
    "II": _pattern(
        "C4^2:S3",
        96,
        [(16, 6, "C6", 1, "a", "C6", None), (12, 8, "C8", 1, "b", "C8", None)],
    ),
    "III": _pattern(
        "C4oA4",
        48,
        [(24, 2, "C2", 1, "a", "C2", None), (4, 12, "C12", 1, "b", "C12", None)],
    ),
    "IV": _pattern(
        "S4",
        24,
        [
            (12, 2, "C2", 1, "o", "C2^o", None),
            (12, 2, "C2", 1, "e", "C2^e", None),
            (4, 6, "S3", 1, "s", "S3", None),
        ],
    ),
    "V": _pattern(
        "P",
        16,
        [
            (8, 2, "C2", 1, "c1", "C2^(1)", False),
            (8, 2, "C2", 1, "c2", "C2^(2)", False),
            (8, 2, "C2", 1, "c3", "C2^(3)", False),
            (4, 4, "C4", 1, "z", "C4^Z", True),
        ],
    ),
    "VI": _pattern("C9", 9, [(9, 1, "e", 3, "t", "e", None), (1, 9, "C9", 1, "f", "C9", None)]),
    "VII": _pattern(
        "D8",
        8,
        [
            (8, 1, "e", 1, "t", "e", None),
            (4, 2, "C2", 2, "c1", "C2^(1)", False),
            (4, 2, "C2", 2, "c2", "C2^(2)", False),
            (4, 2, "C2", 1, "z", "C2^Z", True),
        ],
    ),
    "VIII": _pattern(
        "C6",
        6,
        [
            (6, 1, "e", 4, "t", "e", None),
            (3, 2, "C2", 1, "c", "C2", None),
            (1, 6, "C6", 1, "f", "C6", None),
        ],
    ),
    "IX": _pattern(
        "S3",
        6,
        [
            (6, 1, "e", 3, "t", "e", None),
            (3, 2, "C2", 3, "c", "C2", None),
            (1, 6, "S3", 1, "f", "S3", None),
        ],
    ),
    "X": _pattern(
        "K4",
        4,
        [
            (4, 1, "e", 5, "t", "e", None),
            (2, 2, "C2", 2, "L", "C2^L", None),
            (2, 2, "C2", 2, "R", "C2^R", None),
        ],
    ),
    "XI": _pattern("C3", 3, [(3, 1, "e", 9, "t", "e", None), (1, 3, "C3", 1, "f", "C3", None)]),
    "XII": _pattern("C2", 2, [(2, 1, "e", 12, "t", "e", None), (1, 2, "C2", 4, "f", "C2", None)]),
}


@dataclass(frozen=True)
class FigureExample:
    params: tuple | None
    real_count: int | None
    note: str = ""


@dataclass(frozen=True)
class CurveTypeEntry:
    type_id: str
    group_name: str
    group_order: int
    gap_id: str
    param_names: tuple[str, ...]
    generators: tuple
    exclusions: tuple[Exclusion, ...]
    pattern: ExpectedPattern
    figure_examples: tuple[FigureExample, ...]
    notes: str = ""

    def default_params(self) -> tuple | None:
        return self.figure_examples[0].params if self.figure_examples else ()


ENTRIES: dict[str, CurveTypeEntry] = {}


def _register(type_id, group_name, group_order, gap_id, param_names, figure_examples, notes=""):
    ENTRIES[type_id] = CurveTypeEntry(
        type_id=type_id,
        group_name=group_name,
        group_order=group_order,
        gap_id=gap_id,
        param_names=tuple(param_names),
        generators=tuple(GENERATORS[type_id]),
        exclusions=tuple(EXCLUSIONS[type_id]),
        pattern=PATTERNS[type_id],
        figure_examples=tuple(figure_examples),
        notes=notes,
    )


_register("I", "PSL2(7)", 168, "[168,42]", (), [FigureExample((), 4)],
          notes="Klein quartic x^3 y + y^3 z + z^3 x; Hurwitz-maximal symmetry.")
_register("II", "C4^2:S3", 96, "[96,64]", (), [FigureExample((), 4)],
          notes="Fermat quartic x^4 + y^4 + z^4; the four real bitangents are x +/- y +/- z = 0.")
_register("III", "C4oA4", 48, "[48,33]", (), [FigureExample((), None)],
          notes="x^4+y^4+z^4+(4 zeta3+2) x^2 y^2; no real points. Generators stored "
                "entrywise-conjugated so they preserve this sign choice of the coefficient.")
_register("IV", "S4", 24, "[24,12]", ("a",), [FigureExample((-3.0,), 16), FigureExample((-34.0 / 25.0,), 28, "order-24 symmetric quartic with 28 real bitangents")],
          notes="Octahedral pencil x^4+y^4+z^4 + a(x^2 y^2 + y^2 z^2 + z^2 x^2).")
_register("V", "P", 16, "[16,13]", ("a",), [FigureExample((-4.0,), 8)],
          notes="x^4 + y^4 + z^4 + a x^2 y^2 with the order-16 Pauli-type group.")
_register("VI", "C9", 9, "[9,1]", (), [FigureExample((), 4)],
          notes="x^4 + x y^3 + y z^3, cyclic symmetry of order nine.")
_register("VII", "D8", 8, "[8,3]", ("a", "b"), [FigureExample((-3.0, 1.0), 8)],
          notes="x^4+y^4+z^4+a x^2 y^2 + b x y z^2, dihedral of order eight.")
_register("VIII", "C6", 6, "[6,2]", ("a",), [FigureExample((-3.0,), 4)],
          notes="y z^3 + x^4 + a x^2 y^2 + y^4, cyclic of order six.")
_register("IX", "S3", 6, "[6,1]", ("a", "b"), [FigureExample((-25.0, 10.0), 8)],
          notes="x^3 z + y^3 z + x^2 y^2 + a x y z^2 + b z^4. The documented claim "
                "that a = 0 promotes the curve is not borne out numerically; see "
                "the lattice report for the verified promotion locus.")
_register("X", "K4", 4, "[4,2]", ("a", "b", "c"), [FigureExample((-9.0, -3.0, -8.0), 16)],
          notes="x^4+y^4+z^4 + a x^2 y^2 + b y^2 z^2 + c x^2 z^2, Klein four-group.")
_register("XI", "C3", 3, "[3,1]", ("a", "b"), [FigureExample((2.0, 3.0), 4)],
          notes="y z^3 + x(x-y)(x-ay)(x-by). Promotion loci are stored both as the "
                "normal-form conditions (b = 1-a, {a,b} = {zeta3, zeta3^2}) and as "
                "the catalog conditions (a or b in {-1, zeta3}); either rejects.")
_register("XII", "C2", 2, "[2,1]", ("a", "b", "c", "d"),
          [FigureExample(None, 4, "reference example stored as printed")],
          notes="Family x^4+y^4+z^4+x^2(a y^2 + b y z + c z^2) + d y^2 z^2. The "
                "reference example has -z^4 and is kept literally with its order-2 "
                "generator; it happens to admit the full Klein four-group, but its "
                "order-2 restriction reproduces the expected decomposition.")

TYPE_IDS = tuple(ENTRIES)

_GROUP_CACHE: dict[str, FiniteProjGroup] = {}


def group_for(type_id: str) -> FiniteProjGroup:
    """Closure of the type's generators; built once and cached."""
    if type_id not in _GROUP_CACHE:
        entry = ENTRIES[type_id]
        g = closure(entry.generators, cap=200)
        if g.order != entry.group_order:
            raise RuntimeError(
                f"type {type_id}: closure has order {g.order}, expected {entry.group_order}"
            )
        _GROUP_CACHE[type_id] = g
    return _GROUP_CACHE[type_id]


def instantiate(type_id: str, params=None):
    """Quartic, automorphism group and expected pattern for a catalog type.

    ``params=None`` selects the reference example; for type XII that is the
    literally stored quartic rather than a family member.  Raises
    ``ExcludedParameter`` when the parameters sit on an excluded locus
    (within 1e-9) and ``ArityMismatch`` for a wrong parameter count.
    """
    entry = ENTRIES[type_id]
    if params is None:
        params = entry.default_params()
    if params is not None:
        params = tuple(params)
        if len(params) != len(entry.param_names):
            raise ArityMismatch(
                f"type {type_id} takes {len(entry.param_names)} parameters, got {len(params)}"
            )
        for excl in entry.exclusions:
            if excl.predicate(params):
                raise ExcludedParameter(
                    f"type {type_id}: {excl.description}", promoted_type=excl.promoted_type
                )
    quartic = _equation(type_id, params)
    return quartic, group_for(type_id), entry.pattern


def sample_params(type_id: str, rng: np.random.Generator, margin: float = 0.05) -> tuple:
    """Random real parameters clear of every excluded locus by ``margin``."""
    entry = ENTRIES[type_id]
    k = len(entry.param_names)
    if k == 0:
        return ()
    while True:
        params = tuple(float(x) for x in rng.uniform(-5.0, 5.0, size=k))
        if any(abs(p) < 0.3 for p in params):
            continue
        clear = True
        for excl in entry.exclusions:
            for delta in _margin_probe(params, margin):
                if excl.predicate(delta):
                    clear = False
                    break
            if not clear:
                break
        if clear:
            return params


def _margin_probe(params: tuple, margin: float):
    """The point itself plus axis-aligned probes used as a clearance check."""
    yield params
    for i in range(len(params)):
        for s in (-margin, margin):
            probe = list(params)
            probe[i] = probe[i] + s
            yield tuple(probe)
