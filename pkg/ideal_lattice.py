"""
Graded ideals of a GradedRing.

An ideal is stored in canonical form (sorted element tuple); equality is
tuple equality within the same parent ring. Enumeration grows the lattice
from the zero ideal by adjoining one homogeneous element at a time, which
reaches exactly the homogeneously generated ideals, i.e. the graded ones.
For small rings the result is cross-checked against an independent scan over
all additive subgroups.
"""

from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import numpy as np

import mutations
from graded_algebra import AlgebraError, FiniteRing, GradedRing

# ================= CONFIG =================

ENUMERATION_CAP = 64
ORACLE_CAP = 32

# ================= ERRORS =================

class IdealError(AlgebraError):
    pass

class NotAnIdeal(IdealError):
    pass

class NotGraded(IdealError):
    pass

class NotProper(IdealError):
    pass

class ParentMismatch(IdealError):
    pass

class TooLarge(IdealError):
    pass

class EnumerationMismatch(IdealError):
    pass

class NonHomogeneousGenerator(IdealError):
    def __init__(self, x: int) -> None:
        self.x = x
        super().__init__(f"generator {x} is not homogeneous")

class NonHomogeneousElement(IdealError):
    def __init__(self, a: int) -> None:
        self.a = a
        super().__init__(f"element {a} is not homogeneous")

# ================= CLOSURES =================

def _additive_closure(ring: FiniteRing, seeds: Iterable[int]) -> FrozenSet[int]:
    """
    Subgroup of (R, +) generated by seeds. In a finite group every element
    of it is a finite sum of seeds, so a breadth-first sum search suffices.
    """
    seed_arr = np.array(sorted(set(int(s) for s in seeds)), dtype=np.int64)
    elems = {ring.zero}
    if len(seed_arr) == 0:
        return frozenset(elems)
    frontier = [ring.zero]
    while frontier:
        sums = ring.add[np.ix_(np.array(frontier, dtype=np.int64), seed_arr)].ravel()
        new = set(sums.tolist()) - elems
        elems |= new
        frontier = sorted(new)
    return frozenset(elems)

def _ideal_closure(ring: FiniteRing, gens: Iterable[int]) -> FrozenSet[int]:
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        return frozenset({ring.zero})
    return _additive_closure(ring, ring.mul[:, gens].ravel().tolist())

def _is_ideal(ring: FiniteRing, elems: FrozenSet[int]) -> bool:
    if ring.zero not in elems:
        return False
    arr = np.array(sorted(elems), dtype=np.int64)
    sums = ring.add[np.ix_(arr, arr)]
    prods = ring.mul[:, arr]
    return bool(np.isin(sums, arr).all() and np.isin(prods, arr).all())

def _is_graded(R: GradedRing, elems: FrozenSet[int]) -> bool:
    arr = np.array(sorted(elems), dtype=np.int64)
    return bool(np.isin(R.grading.decomposition[arr], arr).all())

# ================= GRADED IDEAL =================

class GradedIdeal:
    """
    A graded ideal of a GradedRing in canonical (sorted) form.
    """

    def __init__(self, parent: GradedRing, elements: Iterable[int], check: bool = True) -> None:
        """
        @param parent: The ambient graded ring
        @param elements: Members of the ideal
        @param check: Verify the ideal axioms and gradedness
        @raises NotAnIdeal: If the set is not an ideal
        @raises NotGraded: If some homogeneous component of a member is missing
        """
        elems = frozenset(int(a) for a in elements)
        if check:
            if not _is_ideal(parent.ring, elems):
                raise NotAnIdeal(f"{parent.labels_of(elems)} is not an ideal of {parent.name}")
            if not _is_graded(parent, elems):
                raise NotGraded(f"{parent.labels_of(elems)} is not graded in {parent.name}")
        self.parent = parent
        self.element_set = elems
        self.elements = tuple(sorted(elems))
        self.is_proper = parent.ring.one not in elems

    def __contains__(self, a: int) -> bool:
        return a in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedIdeal) and other.parent is self.parent and other.elements == self.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __le__(self, other: "GradedIdeal") -> bool:
        return self.element_set <= other.element_set

    def is_zero(self) -> bool:
        return len(self.elements) == 1

    def components(self) -> Dict[int, FrozenSet[int]]:
        """P cap R_g for every g."""
        return {g: self.element_set & self.parent.component(g) for g in self.parent.group.elements()}

    def homogeneous(self) -> Tuple[int, ...]:
        return tuple(a for a in self.elements if a in self.parent.homogeneous_set)

    def label(self) -> str:
        return self.parent.labels_of(self.elements)

    def __repr__(self) -> str:
        return f"GradedIdeal({self.label()} in {self.parent.name})"

def _same_parent(I: GradedIdeal, J: GradedIdeal) -> None:
    if I.parent is not J.parent:
        raise ParentMismatch(f"ideals live in different rings: {I.parent.name} vs {J.parent.name}")

def zero_ideal(R: GradedRing) -> GradedIdeal:
    return GradedIdeal(R, [R.ring.zero], check=False)

def unit_ideal(R: GradedRing) -> GradedIdeal:
    return GradedIdeal(R, R.ring.elements(), check=False)

def generate_ideal(R: GradedRing, gens: Iterable[int]) -> GradedIdeal:
    """
    Smallest ideal containing homogeneous generators.

    @param R: The graded ring
    @param gens: Homogeneous generators
    @return: The generated ideal (gradedness re-checked)
    @raises NonHomogeneousGenerator: If a generator is not in h(R)
    """
    gens = [int(g) for g in gens]
    for x in gens:
        if not R.is_homogeneous(x):
            raise NonHomogeneousGenerator(x)
    return GradedIdeal(R, _ideal_closure(R.ring, gens))

def ideal_from_elements(R: GradedRing, elements: Iterable[int]) -> GradedIdeal:
    """
    Ideal generated by arbitrary elements; must come out graded.

    @param R: The graded ring
    @param elements: Any element indices
    @return: The generated ideal
    @raises NotGraded: If the generated ideal is not graded
    """
    return GradedIdeal(R, _ideal_closure(R.ring, elements))

# ================= INVENTORY =================

class IdealInventory:
    """
    GI(R): every graded ideal of a ring, deduplicated and ordered by (size, elements).
    """

    def __init__(self, parent: GradedRing, ideals: Iterable[GradedIdeal]) -> None:
        unique: Dict[Tuple[int, ...], GradedIdeal] = {}
        for I in ideals:
            unique.setdefault(I.elements, I)
        self.parent = parent
        self.ideals = tuple(sorted(unique.values(), key=lambda I: (len(I), I.elements)))
        self._by_set = {I.element_set: I for I in self.ideals}

    def __iter__(self) -> Iterator[GradedIdeal]:
        return iter(self.ideals)

    def __len__(self) -> int:
        return len(self.ideals)

    def __contains__(self, I: GradedIdeal) -> bool:
        return I.element_set in self._by_set

    @property
    def zero(self) -> GradedIdeal:
        return self.ideals[0]

    @property
    def unit(self) -> GradedIdeal:
        return self.ideals[-1]

    def proper(self) -> Tuple[GradedIdeal, ...]:
        return tuple(I for I in self.ideals if I.is_proper)

    def find(self, elements: Iterable[int]) -> Optional[GradedIdeal]:
        return self._by_set.get(frozenset(int(a) for a in elements))

def enumerate_graded_ideals(R: GradedRing, cap: int = ENUMERATION_CAP, cross_check: bool = True,
                            oracle_cap: int = ORACLE_CAP) -> IdealInventory:
    """
    Enumerates GI(R).

    @param R: The graded ring
    @param cap: Largest ring order accepted
    @param cross_check: Compare with oracle_graded_ideals when R.order <= oracle_cap
    @return: The inventory of all graded ideals
    @raises TooLarge: If R.order > cap
    @raises EnumerationMismatch: If the oracle disagrees
    """
    if R.order > cap:
        raise TooLarge(f"{R.name} has order {R.order}, enumeration cap is {cap}")
    ring = R.ring
    start = GradedIdeal(R, _ideal_closure(ring, []))
    found: Dict[Tuple[int, ...], GradedIdeal] = {start.elements: start}
    queue = [start]
    while queue:
        I = queue.pop()
        for x in R.homogeneous:
            if x in I:
                continue
            seeds = list(I.elements) + ring.mul[:, x].tolist()
            J = GradedIdeal(R, _additive_closure(ring, seeds))
            if J.elements not in found:
                found[J.elements] = J
                queue.append(J)
    inv = IdealInventory(R, found.values())

    if cross_check and R.order <= oracle_cap:
        oracle = oracle_graded_ideals(R)
        mine = frozenset(I.elements for I in inv)
        if mine != oracle:
            raise EnumerationMismatch(
                f"{R.name}: enumeration and oracle differ by {len(mine ^ oracle)} ideals")
    return inv

def additive_subgroups(ring: FiniteRing) -> FrozenSet[Tuple[int, ...]]:
    """Every subgroup of (R, +), each as a sorted tuple."""
    start = _additive_closure(ring, [])
    found = {tuple(sorted(start))}
    queue = [start]
    while queue:
        H = queue.pop()
        for a in ring.elements():
            if a in H:
                continue
            K = tuple(sorted(_additive_closure(ring, list(H) + [a])))
            if K not in found:
                found.add(K)
                queue.append(frozenset(K))
    return frozenset(found)

def oracle_graded_ideals(R: GradedRing) -> FrozenSet[Tuple[int, ...]]:
    """
    Independent scan: additive subgroups closed under ring multiplication and gradedness.

    @param R: The graded ring
    @return: Element tuples of every graded ideal
    """
    ring = R.ring
    out = set()
    for H in additive_subgroups(ring):
        arr = np.array(H, dtype=np.int64)
        if np.isin(ring.mul[:, arr], arr).all() and _is_graded(R, frozenset(H)):
            out.add(H)
    return frozenset(out)

# ================= OPERATORS =================

def ideal_product(I: GradedIdeal, J: GradedIdeal) -> GradedIdeal:
    """
    IJ, generated by all products ab with a in I, b in J.

    @param I: Graded ideal
    @param J: Graded ideal of the same ring
    @return: The product ideal
    @raises ParentMismatch: If I and J live in different rings
    """
    _same_parent(I, J)
    ring = I.parent.ring
    prods = ring.mul[np.ix_(np.array(I.elements), np.array(J.elements))].ravel()
    return GradedIdeal(I.parent, _ideal_closure(ring, prods.tolist()))

def ideal_sum(I: GradedIdeal, J: GradedIdeal) -> GradedIdeal:
    _same_parent(I, J)
    return GradedIdeal(I.parent, _additive_closure(I.parent.ring, I.elements + J.elements))

def ideal_intersection(I: GradedIdeal, J: GradedIdeal) -> GradedIdeal:
    _same_parent(I, J)
    return GradedIdeal(I.parent, I.element_set & J.element_set)

def ideal_power(P: GradedIdeal, n: int) -> GradedIdeal:
    """
    P^n with P^1 = P; powers of the unit ideal are the unit ideal.

    @param P: Graded ideal
    @param n: Exponent
    @return: P^n, cut short once the powers stabilize
    @raises ValueError: If n < 1
    """
    if n < 1:
        raise ValueError(f"ideal power needs n >= 1, got {n}")
    if not P.is_proper:
        return P
    out = P
    for _ in range(n - 1):
        nxt = ideal_product(out, P)
        if nxt == out:
            break
        out = nxt
    return out

def power_chain(P: GradedIdeal) -> List[GradedIdeal]:
    """
    [P, P^2, ..., P^k] with P^k = P^(k+1). The chain is descending and,
    the ring being finite, stabilizes.
    """
    chain = [P]
    while True:
        nxt = ideal_product(chain[-1], P)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)

def omega_intersection(P: GradedIdeal) -> GradedIdeal:
    """Intersection of all powers of P = the stable value of the power chain."""
    return power_chain(P)[-1]

def colon_set(R: GradedRing, X: Optional[Iterable[int]], a: int) -> FrozenSet[int]:
    """
    (X : a) = {b : ab in X} for an element-set X; (None : a) is empty.

    @param R: The graded ring
    @param X: Element set, or None for the empty map value
    @param a: Element index
    @return: The colon set, not necessarily an ideal
    """
    if X is None:
        return frozenset()
    members = list(X)
    if not members:
        return frozenset()
    return frozenset(int(b) for b in np.flatnonzero(np.isin(R.ring.mul[a], members)))

def colon_ideal(P: GradedIdeal, a: int) -> GradedIdeal:
    """
    (P : a) = {b : ab in P}; graded for homogeneous a (re-checked).

    @param P: Graded ideal
    @param a: Homogeneous element index
    @return: The colon ideal
    @raises NonHomogeneousElement: If a is not in h(R)
    """
    R = P.parent
    if not R.is_homogeneous(a):
        raise NonHomogeneousElement(a)
    if mutations.active("colon-uses-addition"):
        hits = np.flatnonzero(np.isin(R.ring.add[a], P.elements))
        return GradedIdeal(R, hits.tolist(), check=False)
    return GradedIdeal(R, colon_set(R, P.elements, a))

def graded_radical(I: GradedIdeal) -> GradedIdeal:
    """
    Grad(I): elements all of whose homogeneous components have a power in I.

    @param I: Graded ideal
    @return: The graded radical
    The power search for y stops at the first repeat of y, y^2, ...; that
    happens within |R| steps and every power of y appears before it.
    """
    R = I.parent
    ring = R.ring
    rooted: Dict[int, bool] = {}
    for y in R.homogeneous:
        rooted[y] = any(p in I.element_set for p in ring.powers(y))
    dec = R.grading.decomposition
    members = [a for a in ring.elements() if all(rooted[int(c)] for c in dec[a])]
    return GradedIdeal(R, members)
