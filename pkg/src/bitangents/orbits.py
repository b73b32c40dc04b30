"""Group orbits on bitangent sets and Burnside-style decompositions.

An orbit decomposition records, for each orbit of lines, a representative,
the stabilizer subgroup, its conjugacy class among all occurring stabilizers
and its isomorphism tag.  Decompositions aggregate into formal sums of coset
spaces [G/H] that can be compared against expected patterns up to
permutation of same-signature stabilizer classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import NotInvariant
from .groups import FiniteProjGroup, IsoLabel, Subgroup, iso_label, stabilizer, subgroups_conjugate
from .projective import MATCH_TOL, ProjLine, act_on_line, line_is_real


@dataclass
class Orbit:
    member_indices: list[int]
    representative: int
    stabilizer: Subgroup
    iso: IsoLabel
    stab_class_id: int
    is_central_stab: bool
    real_count: int

    @property
    def size(self) -> int:
        return len(self.member_indices)


@dataclass
class OrbitDecomposition:
    group: FiniteProjGroup
    lines: list[ProjLine]
    orbits: list[Orbit]
    action_table: np.ndarray  # (|G|, n) line permutation per element

    def orbit_of_line(self, index: int) -> Orbit:
        for orbit in self.orbits:
            if index in orbit.member_indices:
                return orbit
        raise KeyError(index)


@dataclass(frozen=True)
class BurnsideTerm:
    stab_class_id: int
    orbit_size: int
    stab_order: int
    iso: str
    multiplicity: int
    is_central: bool


@dataclass
class BurnsideElement:
    group_order: int
    terms: tuple[BurnsideTerm, ...]

    def total(self) -> int:
        return sum(t.multiplicity * t.orbit_size for t in self.terms)


@dataclass(frozen=True)
class PatternTerm:
    """One summand multiplicity*[G/H] of an expected decomposition.

    ``class_group`` ties together terms whose stabilizers must be conjugate;
    distinct class groups must be non-conjugate.  ``central`` constrains the
    stabilizer to be (non-)central when not None.
    """

    orbit_size: int
    stab_order: int
    iso: str
    multiplicity: int
    class_group: str
    display: str
    central: bool | None = None


@dataclass
class ExpectedPattern:
    group_name: str
    group_order: int
    terms: tuple[PatternTerm, ...]

    def __post_init__(self):
        total = sum(t.multiplicity * t.orbit_size for t in self.terms)
        if total != 28:
            raise ValueError(f"pattern covers {total} lines, expected 28")
        for t in self.terms:
            if t.orbit_size * t.stab_order != self.group_order:
                raise ValueError("orbit size times stabilizer order must equal group order")


@dataclass
class MatchReport:
    type_id: str | None
    group_order: int
    computed: list[dict]
    expected: list[dict]
    mismatches: list[str]
    assignment: dict[int, str] = field(default_factory=dict)  # stab_class_id -> display name

    @property
    def matched(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "type": self.type_id,
            "groupOrder": self.group_order,
            "computed": self.computed,
            "expected": self.expected,
            "mismatches": self.mismatches,
        }


def _build_action_table(group: FiniteProjGroup, lines: list[ProjLine], match_tol: float) -> np.ndarray:
    stack = np.array([ln.v for ln in lines])
    n = len(lines)
    table = np.zeros((group.order, n), dtype=int)
    for gi, el in enumerate(group.elements):
        for li in range(n):
            img = act_on_line(el.m, lines[li])
            d = np.abs(stack - img.v[None, :]).max(axis=1)
            j = int(d.argmin())
            if d[j] >= match_tol:
                raise NotInvariant(gi, lines[li])
            table[gi, li] = j
    return table


def compute_orbits(
    group: FiniteProjGroup,
    lines: list[ProjLine],
    match_tol: float = MATCH_TOL,
    real_tol: float = 1e-6,
) -> OrbitDecomposition:
    """Orbits, stabilizers and stabilizer conjugacy classes of a line set."""
    table = _build_action_table(group, lines, match_tol)
    n = len(lines)
    seen = set()
    raw_orbits: list[tuple[list[int], Subgroup]] = []
    for i in range(n):
        if i in seen:
            continue
        members = sorted(set(int(table[g, i]) for g in range(group.order)))
        seen |= set(members)
        stab = group.subgroup([g for g in range(group.order) if table[g, i] == i])
        raw_orbits.append((members, stab))

    # Partition the stabilizers into conjugacy classes.
    class_reps: list[Subgroup] = []
    class_ids = []
    for members, stab in raw_orbits:
        for cid, rep in enumerate(class_reps):
            if subgroups_conjugate(group, stab, rep):
                class_ids.append(cid)
                break
        else:
            class_reps.append(stab)
            class_ids.append(len(class_reps) - 1)

    orbits = []
    for (members, stab), cid in zip(raw_orbits, class_ids):
        orbits.append(
            Orbit(
                member_indices=members,
                representative=members[0],
                stabilizer=stab,
                iso=iso_label(stab),
                stab_class_id=cid,
                is_central_stab=stab.is_central(),
                real_count=sum(1 for m in members if line_is_real(lines[m], real_tol)),
            )
        )
    assert sum(o.size for o in orbits) == n
    return OrbitDecomposition(group=group, lines=list(lines), orbits=orbits, action_table=table)


def to_burnside(decomp: OrbitDecomposition) -> BurnsideElement:
    """Aggregate orbits by stabilizer conjugacy class."""
    counter: dict[tuple, int] = {}
    central: dict[tuple, bool] = {}
    for o in decomp.orbits:
        key = (o.stab_class_id, o.size, o.stabilizer.order, o.iso.tag)
        counter[key] = counter.get(key, 0) + 1
        central[key] = o.is_central_stab
    terms = tuple(
        BurnsideTerm(
            stab_class_id=k[0],
            orbit_size=k[1],
            stab_order=k[2],
            iso=k[3],
            multiplicity=v,
            is_central=central[k],
        )
        for k, v in sorted(counter.items(), key=lambda kv: (kv[0][2], kv[0][0]))
    )
    return BurnsideElement(group_order=decomp.group.order, terms=terms)


def format_burnside(
    element: BurnsideElement,
    group_name: str,
    names: dict[int, str] | None = None,
) -> str:
    """Render as a sum of coset spaces, smallest stabilizers first."""
    names = names or {}

    def default_name(term: BurnsideTerm) -> str:
        base = term.iso
        mark = "'" * _same_iso_rank(element, term)
        return base + mark

    parts = []
    for term in sorted(element.terms, key=lambda t: (t.stab_order, names.get(t.stab_class_id, t.iso))):
        nm = names.get(term.stab_class_id) or default_name(term)
        mult = "" if term.multiplicity == 1 else str(term.multiplicity)
        parts.append(f"{mult}[{group_name}/{nm}]")
    return " + ".join(parts)


def _same_iso_rank(element: BurnsideElement, term: BurnsideTerm) -> int:
    rank = 0
    for other in element.terms:
        if other is term:
            break
        if other.iso == term.iso and other.stab_class_id != term.stab_class_id:
            rank += 1
    return rank


def _pattern_classes(pattern: ExpectedPattern) -> dict[str, dict]:
    classes: dict[str, dict] = {}
    for t in pattern.terms:
        cl = classes.setdefault(
            t.class_group,
            {
                "orbit_size": t.orbit_size,
                "stab_order": t.stab_order,
                "iso": t.iso,
                "multiplicity": 0,
                "central": t.central,
                "display": t.display,
            },
        )
        if (cl["orbit_size"], cl["stab_order"], cl["iso"]) != (t.orbit_size, t.stab_order, t.iso):
            raise ValueError("pattern terms in one class group must share a signature")
        cl["multiplicity"] += t.multiplicity
    return classes


def match_expected(
    element: BurnsideElement,
    decomp: OrbitDecomposition,
    pattern: ExpectedPattern,
    type_id: str | None = None,
) -> MatchReport:
    """Compare a computed decomposition with an expected pattern.

    Succeeds when a bijection exists between computed stabilizer classes and
    pattern class groups that preserves (orbit size, stabilizer order, iso
    label, multiplicity) and satisfies every centrality constraint.  Class
    labels with the same signature are interchangeable.
    """
    computed = {}
    for t in element.terms:
        computed[t.stab_class_id] = {
            "orbit_size": t.orbit_size,
            "stab_order": t.stab_order,
            "iso": t.iso,
            "multiplicity": t.multiplicity,
            "central": t.is_central,
        }
    computed_view = [
        {"stabClass": cid, **info} for cid, info in sorted(computed.items())
    ]
    expected_classes = _pattern_classes(pattern)
    expected_view = [
        {"classGroup": cg, **{k: v for k, v in info.items() if k != "display"}}
        for cg, info in expected_classes.items()
    ]

    mismatches: list[str] = []
    if element.group_order != pattern.group_order:
        mismatches.append(
            f"group order {element.group_order} != expected {pattern.group_order}"
        )
    total = element.total()
    if total != 28:
        mismatches.append(f"decomposition covers {total} lines, expected 28")

    assignment: dict[int, str] = {}
    if not mismatches:
        assignment = _find_assignment(computed, expected_classes)
        if assignment is None:
            assignment = {}
            mismatches.append(
                "no signature-preserving bijection between computed stabilizer "
                "classes and expected class groups"
            )
    return MatchReport(
        type_id=type_id,
        group_order=element.group_order,
        computed=computed_view,
        expected=expected_view,
        mismatches=mismatches,
        assignment={cid: expected_classes[cg]["display"] for cid, cg in assignment.items()}
        if assignment
        else {},
    )


def _find_assignment(computed: dict, expected: dict) -> dict | None:
    """Bijection computed stab class -> pattern class group, or None."""
    if len(computed) != len(expected):
        return None
    cids = list(computed)
    for perm in itertools.permutations(expected):
        ok = True
        for cid, cg in zip(cids, perm):
            c, e = computed[cid], expected[cg]
            if (c["orbit_size"], c["stab_order"], c["iso"], c["multiplicity"]) != (
                e["orbit_size"],
                e["stab_order"],
                e["iso"],
                e["multiplicity"],
            ):
                ok = False
                break
            if e["central"] is not None and c["central"] != e["central"]:
                ok = False
                break
        if ok:
            return dict(zip(cids, perm))
    return None


def subgroup_view(sub: Subgroup) -> FiniteProjGroup:
    """Stand-alone group built from a subgroup's elements and parent tables."""
    parent = sub.parent
    members = list(sub.members)  # identity (index 0) sorts first
    remap = {m: i for i, m in enumerate(members)}
    elements = [parent.elements[m] for m in members]
    view = FiniteProjGroup.__new__(FiniteProjGroup)
    view.elements = elements
    view.generator_indices = list(range(1, len(members)))
    view.match_tol = parent.match_tol
    view._stack = np.array([e.m.ravel() for e in elements])
    view.mul_table = np.array(
        [[remap[int(parent.mul_table[a, b])] for b in members] for a in members]
    )
    view.inv_table = np.array([remap[int(parent.inv_table[a])] for a in members])
    view._orders = None
    view._conj_classes = None
    return view


def restrict_action(
    sub: Subgroup,
    lines: list[ProjLine],
    match_tol: float = MATCH_TOL,
) -> tuple[BurnsideElement, OrbitDecomposition]:
    """Orbit decomposition of the line set under a subgroup only."""
    view = subgroup_view(sub)
    decomp = compute_orbits(view, lines, match_tol=match_tol)
    return to_burnside(decomp), decomp


def burnside_equal(a: BurnsideElement, b: BurnsideElement) -> bool:
    """Structural equality up to permutation of same-signature classes."""
    if a.group_order != b.group_order:
        return False
    sig = lambda e: sorted(
        (t.orbit_size, t.stab_order, t.iso, t.multiplicity, t.is_central) for t in e.terms
    )
    return sig(a) == sig(b)
