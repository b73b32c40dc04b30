"""Finite subgroups of PGL3(C) with tolerance-based element identification.

Elements are 3x3 matrices in canonical projective scale.  Closure is a
breadth-first product sweep; after every product the result is
re-canonicalized so floating drift cannot accumulate.  A guard band around
the match tolerance turns silent misidentification into a hard error.
"""

from __future__ import annotations

import numpy as np

from .errors import AmbiguousMatch, CapExceeded
from .projective import MATCH_TOL, ProjLine, act_on_line, canon

AMBIGUITY_FACTOR = 10.0


class ProjTransform:
    """Invertible projective transformation in canonical matrix scale."""

    __slots__ = ("m",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex).reshape(3, 3)
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("matrix entries must be finite")
        m = canon(m)
        if abs(np.linalg.det(m)) <= 1e-8:
            raise ValueError("projective transformation must be invertible")
        self.m = m
        self.m.flags.writeable = False

    def eq(self, other: "ProjTransform", tol: float = MATCH_TOL) -> bool:
        return float(np.abs(self.m - other.m).max()) < tol

    def __repr__(self):
        return f"ProjTransform({np.round(self.m, 5)})"


def _match_index(stack: np.ndarray, cand: np.ndarray, match_tol: float) -> int | None:
    """Index of ``cand`` in the element stack, or None if genuinely new.

    Raises ``AmbiguousMatch`` when the nearest element falls inside the guard
    band (match_tol, AMBIGUITY_FACTOR * match_tol).
    """
    if len(stack) == 0:
        return None
    d = np.abs(stack - cand.ravel()[None, :]).max(axis=1)
    nearest = int(d.argmin())
    if d[nearest] < match_tol:
        others = np.delete(d, nearest)
        if others.size and others.min() < AMBIGUITY_FACTOR * match_tol:
            raise AmbiguousMatch(
                f"two group elements within {AMBIGUITY_FACTOR}x match tolerance"
            )
        return nearest
    if d[nearest] < AMBIGUITY_FACTOR * match_tol:
        raise AmbiguousMatch(
            f"candidate element at ambiguous distance {d[nearest]:.3e}"
        )
    return None


class FiniteProjGroup:
    """Closed finite set of projective transformations with index tables.

    Element 0 is the identity.  ``mul_table[i][j]`` is the index of the
    product element_i @ element_j; ``inv_table[i]`` the index of the inverse.
    """

    def __init__(self, elements: list[ProjTransform], generators: list[int], match_tol: float):
        self.elements = elements
        self.generator_indices = generators
        self.match_tol = match_tol
        self._stack = np.array([e.m.ravel() for e in elements])
        self.mul_table = self._build_mul_table()
        self.inv_table = self._build_inv_table()
        self._orders: list[int] | None = None
        self._conj_classes: list[list[int]] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def _build_mul_table(self) -> np.ndarray:
        n = len(self.elements)
        table = np.zeros((n, n), dtype=int)
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                prod = canon(a.m @ b.m)
                k = _match_index(self._stack, prod, self.match_tol)
                if k is None:
                    raise AmbiguousMatch("product fell outside the closed element set")
                table[i, j] = k
        return table

    def _build_inv_table(self) -> np.ndarray:
        n = len(self.elements)
        inv = np.zeros(n, dtype=int)
        for i in range(n):
            js = np.nonzero(self.mul_table[i] == 0)[0]
            inv[i] = int(js[0])
        return inv

    def element_order(self, i: int) -> int:
        k, acc = 1, i
        while acc != 0:
            acc = self.mul_table[acc, i]
            k += 1
        return k

    def orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [self.element_order(i) for i in range(self.order)]
        return self._orders

    def center(self) -> "Subgroup":
        members = [
            i
            for i in range(self.order)
            if all(self.mul_table[i, j] == self.mul_table[j, i] for j in range(self.order))
        ]
        return Subgroup(self, members)

    def conjugacy_classes(self) -> list[list[int]]:
        if self._conj_classes is not None:
            return self._conj_classes
        seen = set()
        classes = []
        for i in range(self.order):
            if i in seen:
                continue
            orbit = {
                int(self.mul_table[self.mul_table[g, i], self.inv_table[g]])
                for g in range(self.order)
            }
            classes.append(sorted(orbit))
            seen |= orbit
        classes.sort(key=lambda cl: cl[0])
        self._conj_classes = classes
        return classes

    def conjugate_element(self, g: int, h: int) -> int:
        """Index of g h g^{-1}."""
        return int(self.mul_table[self.mul_table[g, h], self.inv_table[g]])

    def subgroup(self, members) -> "Subgroup":
        return Subgroup(self, members)

    def generated_subgroup(self, gens) -> "Subgroup":
        members = {0}
        frontier = [0]
        gens = sorted(set(int(g) for g in gens))
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = int(self.mul_table[a, g])
                    if b not in members:
                        members.add(b)
                        nxt.append(b)
            frontier = nxt
        return Subgroup(self, members)

    def __repr__(self):
        return f"FiniteProjGroup(order={self.order})"


class Subgroup:
    """Subset of a parent group closed under its multiplication table."""

    def __init__(self, parent: FiniteProjGroup, members):
        self.parent = parent
        self.members = tuple(sorted(set(int(m) for m in members)))
        if 0 not in self.members:
            raise ValueError("a subgroup must contain the identity")
        mem = set(self.members)
        for a in self.members:
            for b in self.members:
                if int(parent.mul_table[a, b]) not in mem:
                    raise ValueError("member set is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.members == other.members and self.parent is other.parent

    def __hash__(self):
        return hash(self.members)

    def is_abelian(self) -> bool:
        t = self.parent.mul_table
        return all(t[a, b] == t[b, a] for a in self.members for b in self.members)

    def is_central(self) -> bool:
        t = self.parent.mul_table
        n = self.parent.order
        return all(t[a, g] == t[g, a] for a in self.members for g in range(n))

    def element_orders(self) -> list[int]:
        return [self.parent.element_order(i) for i in self.members]

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={self.members})"


def closure(generators, cap: int = 200, match_tol: float = MATCH_TOL) -> FiniteProjGroup:
    """Product closure of the generators with canonical-scale matching."""
    gens = [g if isinstance(g, ProjTransform) else ProjTransform(g) for g in generators]
    elements = [ProjTransform(np.eye(3))]
    stack = np.array([elements[0].m.ravel()])
    gen_indices = []
    for g in gens:
        k = _match_index(stack, g.m, match_tol)
        if k is None:
            elements.append(g)
            stack = np.vstack([stack, g.m.ravel()])
            gen_indices.append(len(elements) - 1)
        else:
            gen_indices.append(k)
    frontier = list(range(len(elements)))
    while frontier:
        fresh = []
        for i in frontier:
            for gi in gen_indices:
                prod = ProjTransform(elements[i].m @ elements[gi].m)
                k = _match_index(stack, prod.m, match_tol)
                if k is None:
                    elements.append(prod)
                    stack = np.vstack([stack, prod.m.ravel()])
                    fresh.append(len(elements) - 1)
                    if len(elements) > cap:
                        raise CapExceeded(cap)
        frontier = fresh
    return FiniteProjGroup(elements, gen_indices, match_tol)


def stabilizer(group: FiniteProjGroup, line: ProjLine, match_tol: float = MATCH_TOL) -> Subgroup:
    """Elements fixing ``line`` projectively."""
    members = [
        i
        for i, e in enumerate(group.elements)
        if act_on_line(e.m, line).eq(line, match_tol)
    ]
    return Subgroup(group, members)


def subgroups_conjugate(group: FiniteProjGroup, h1: Subgroup, h2: Subgroup) -> bool:
    """Whether g h1 g^{-1} = h2 for some g, by direct sweep over the group."""
    if h1.order != h2.order:
        return False
    target = set(h2.members)
    for g in range(group.order):
        if {group.conjugate_element(g, h) for h in h1.members} == target:
            return True
    return False


class IsoLabel:
    """Coarse isomorphism tag for small stabilizer groups."""

    __slots__ = ("tag",)

    def __init__(self, tag: str):
        self.tag = tag

    def __eq__(self, other):
        return isinstance(other, IsoLabel) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"IsoLabel({self.tag})"

    def __str__(self):
        return self.tag


def iso_label(h: Subgroup) -> IsoLabel:
    """Fingerprint ``h`` as Cn, K4, S3, D8 or other(order, abelian)."""
    n = h.order
    orders = h.element_orders()
    if n in orders:
        return IsoLabel("e" if n == 1 else f"C{n}")
    if n == 4 and all(o in (1, 2) for o in orders):
        return IsoLabel("K4")
    abelian = h.is_abelian()
    if n == 6 and not abelian:
        return IsoLabel("S3")
    if n == 8 and not abelian and sum(1 for o in orders if o == 4) == 2:
        return IsoLabel("D8")
    return IsoLabel(f"other({n},{'abelian' if abelian else 'nonabelian'})")
