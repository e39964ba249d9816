"""
Ring constructions with their induced gradings and phi-maps:

- quotient R/P graded by (R/P)_g = (R_g + P)/P, with phi_P
- idealization R(+)M graded by X_g = R_g (+) M_g (abelian G only)
- homogeneous localization S^-1 R, with contraction / extension and phi_S

Every constructed ring goes back through validate_grading(); a failure is a
hard error, never repaired.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import mutations
from graded_algebra import (AlgebraError, FiniteRing, GradedRing, MAX_RING_ORDER, associativity_witness,
                            as_table, component_sets, decomposition_table, graded_ring, subgroup_ok,
                            zero_divisors)
from ideal_lattice import (GradedIdeal, IdealInventory, NotProper, ParentMismatch,
                           enumerate_graded_ideals, zero_ideal)
from phi_classifiers import PhiMap, phi_apply
from ring_log import log_info

# ================= ERRORS =================

class ConstructionError(AlgebraError):
    pass

class ModuleError(ConstructionError):
    pass

class NonAbelianGroup(ConstructionError):
    pass

class NotMultiplicative(ConstructionError):
    pass

class NotHomogeneous(ConstructionError):
    def __init__(self, s: int) -> None:
        self.s = s
        super().__init__(f"element {s} of the multiplicative set is not homogeneous")

class ZeroRingTarget(ConstructionError):
    pass

# ================= GRADED MODULES =================

class GradedModule:
    """
    Finite graded module over a GradedRing, as an addition table plus an
    action table action[r, m] = r.m.
    """

    def __init__(self, base: GradedRing, add, action, zero: int, components,
                 labels: Optional[Sequence[str]] = None, name: str = "") -> None:
        """
        @param base: The graded ring acting on the module
        @param add: Addition table of the carrier
        @param action: base.order x order table of r.m
        @param zero: Index of 0 in the carrier
        @param components: M_g for every group element g
        @raises ModuleError: If a module or grading axiom fails
        """
        add_t = as_table(add, "module addition")
        n = add_t.shape[0]
        act = np.array(action, dtype=np.int64)
        if act.shape != (base.order, n) or act.min() < 0 or act.max() >= n:
            raise ModuleError(f"action table must be {base.order} x {n} with entries in 0..{n - 1}")
        act.setflags(write=False)
        if n > MAX_RING_ORDER:
            raise ModuleError(f"module order {n} exceeds cap {MAX_RING_ORDER}")

        idx = np.arange(n)
        if not (np.array_equal(add_t[zero], idx) and np.array_equal(add_t, add_t.T)):
            raise ModuleError("carrier is not a commutative monoid with the given zero")
        if associativity_witness(add_t) is not None:
            raise ModuleError("carrier addition is not associative")
        neg = np.array([int(np.flatnonzero(add_t[m] == zero)[0]) if (add_t[m] == zero).any() else -1
                        for m in range(n)], dtype=np.int64)
        if (neg < 0).any():
            raise ModuleError("carrier has elements without additive inverse")

        ring = base.ring
        for r in range(base.order):
            row = act[r]
            if not np.array_equal(row[add_t], add_t[np.ix_(row, row)]):
                raise ModuleError(f"r(m+n) != rm + rn for r = {ring.labels[r]}")
        if not np.array_equal(act[ring.add], add_t[act[:, None, :], act[None, :, :]]):
            raise ModuleError("(r+s)m != rm + sm")
        if not np.array_equal(act[ring.mul], act[np.arange(base.order)[:, None, None], act[None, :, :]]):
            raise ModuleError("(rs)m != r(sm)")
        if not np.array_equal(act[ring.one], idx):
            raise ModuleError("1.m != m")

        group = base.group
        comps = component_sets(group, components)
        for g, comp in enumerate(comps):
            if not subgroup_ok(add_t, neg, zero, comp):
                raise ModuleError(f"module component M_{g} is not an additive subgroup")
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        decomposition = decomposition_table(add_t, zero, comps, labels)
        for g in group.elements():
            for h in group.elements():
                target = list(comps[group.op(g, h)])
                block = act[np.ix_(sorted(base.component(g)), sorted(comps[h]))]
                if not np.isin(block, target).all():
                    raise ModuleError(f"R_{g} M_{h} is not inside M_gh")

        self.base = base
        self.order = n
        self.add = add_t
        self.action = act
        self.zero = int(zero)
        self.neg = neg
        self.components = comps
        self.decomposition = decomposition
        self.labels = labels
        self.name = name or f"M{n}"

    def __repr__(self) -> str:
        return f"GradedModule({self.name} over {self.base.name})"

def module_zero_divisors(M: GradedModule) -> FrozenSet[int]:
    """
    Zd(M) = {a in R : am = 0 for some nonzero m}.

    @param M: A graded module
    @return: Indices of the base ring elements that kill a nonzero m
    """
    if mutations.active("module-zero-divisors-empty"):
        return frozenset()
    nonzero = [m for m in range(M.order) if m != M.zero]
    if not nonzero:
        return frozenset()
    hits = (M.action[:, nonzero] == M.zero).any(axis=1)
    return frozenset(int(a) for a in np.flatnonzero(hits))

def zero_module(R: GradedRing) -> GradedModule:
    return GradedModule(R, [[0]], np.zeros((R.order, 1), dtype=np.int64), 0,
                        [[0] for _ in R.group.elements()], labels=["0"], name="0")

def quotient_module(R: GradedRing, I: GradedIdeal, shift: Optional[int] = None) -> GradedModule:
    """
    R/I as an R-module with M_h = (R_(h shift^-1) + I)/I.

    @param R: The base ring
    @param I: A graded ideal of R (the unit ideal gives the zero module)
    @param shift: Group element the grading is shifted by (identity when None)
    @return: The quotient module, or the zero module when I is the unit ideal
    @raises ParentMismatch: If I belongs to another ring
    """
    if I.parent is not R:
        raise ParentMismatch("module ideal must belong to the base ring")
    if not I.is_proper:
        return zero_module(R)
    group = R.group
    shift = group.identity if shift is None else int(shift)
    proj, reps = _cosets(R.ring, I)
    add = proj[R.ring.add[np.ix_(reps, reps)]]
    action = proj[R.ring.mul[:, reps]]
    comps = [sorted(set(proj[sorted(R.component(group.op(h, group.inv(shift))))].tolist()))
             for h in group.elements()]
    labels = [f"[{R.label(a)}]" for a in reps]
    if I.is_zero():
        labels = [R.label(a) for a in reps]
        name = "R" if shift == group.identity else f"R({group.labels[shift]})"
    else:
        name = f"R/{I.label()}" + ("" if shift == group.identity else f"({group.labels[shift]})")
    return GradedModule(R, add, action, int(proj[R.ring.zero]), comps, labels=labels, name=name)

def regular_module(R: GradedRing, shift: Optional[int] = None) -> GradedModule:
    """R over itself, optionally shifted."""
    return quotient_module(R, zero_ideal(R), shift)

# ================= QUOTIENT =================

def _cosets(ring: FiniteRing, I: GradedIdeal) -> Tuple[np.ndarray, List[int]]:
    """Projection onto coset indices; each coset is represented by its least element."""
    proj = np.full(ring.order, -1, dtype=np.int64)
    reps: List[int] = []
    members = np.array(I.elements, dtype=np.int64)
    for a in ring.elements():
        if proj[a] == -1:
            proj[ring.add[a, members]] = len(reps)
            reps.append(a)
    proj.setflags(write=False)
    return proj, reps

class QuotientMap:
    """
    R -> R/P with the induced grading.
    """

    def __init__(self, source: GradedRing, ideal: GradedIdeal, target: GradedRing,
                 projection: np.ndarray, representatives: Sequence[int]) -> None:
        self.source = source
        self.ideal = ideal
        self.target = target
        self.projection = projection
        self.representatives = tuple(representatives)

    def project(self, a: int) -> int:
        return int(self.projection[a])

    def image_ideal(self, I: GradedIdeal) -> GradedIdeal:
        """(I + P)/P."""
        return GradedIdeal(self.target, self.projection[list(I.elements)].tolist())

    def preimage_ideal(self, K: GradedIdeal) -> GradedIdeal:
        members = np.flatnonzero(np.isin(self.projection, K.elements))
        return GradedIdeal(self.source, members.tolist())

    def is_homomorphism(self) -> bool:
        src, tgt, p = self.source.ring, self.target.ring, self.projection
        return bool(np.array_equal(p[src.add], tgt.add[np.ix_(p, p)])
                    and np.array_equal(p[src.mul], tgt.mul[np.ix_(p, p)])
                    and p[src.one] == tgt.one)

def quotient(R: GradedRing, P: GradedIdeal) -> QuotientMap:
    """
    Builds R/P graded by (R/P)_g = (R_g + P)/P.

    @param R: The graded ring
    @param P: A proper graded ideal of R
    @return: The projection together with the graded target
    @raises NotProper: If P is the whole ring
    @raises ParentMismatch: If P belongs to another ring
    """
    if P.parent is not R:
        raise ParentMismatch(f"{P.label()} is not an ideal of {R.name}")
    if not P.is_proper:
        raise NotProper(f"cannot form the quotient of {R.name} by the whole ring")
    ring = R.ring
    proj, reps = _cosets(ring, P)
    add = proj[ring.add[np.ix_(reps, reps)]]
    mul = proj[ring.mul[np.ix_(reps, reps)]]
    if P.is_zero():
        labels = [ring.labels[a] for a in reps]
    else:
        labels = [f"[{ring.labels[a]}]" for a in reps]
    target_ring = FiniteRing(add, mul, int(proj[ring.zero]), int(proj[ring.one]), labels=labels,
                             name=f"{ring.name}/{P.label()}")
    comps = [sorted(set(proj[sorted(R.component(g))].tolist())) for g in R.group.elements()]
    target = graded_ring(target_ring, R.group, comps)
    return QuotientMap(R, P, target, proj, reps)

def induced_phi_P(phi: PhiMap, qmap: QuotientMap, inventory: Optional[IdealInventory] = None) -> PhiMap:
    """
    phi_P(I/P) = (phi(I) + P)/P over every graded ideal of R/P; empty stays empty.

    @param phi: Map on the graded ideals of R
    @param qmap: The quotient R -> R/P
    @param inventory: GI(R/P) if already enumerated
    @return: A custom map keyed by the ideals of R/P
    """
    inventory = inventory or enumerate_graded_ideals(qmap.target)
    entries: Dict[FrozenSet[int], Optional[FrozenSet[int]]] = {}
    for K in inventory:
        value = phi_apply(phi, qmap.preimage_ideal(K))
        entries[K.element_set] = None if value is None else qmap.image_ideal(value).element_set
    return PhiMap.custom(entries, f"{phi.label}_P")

# ================= IDEALIZATION =================

class Idealization:
    """
    X = R(+)M with (x, m1)(y, m2) = (xy, x m2 + y m1); (r, m) has index r*|M| + m.
    """

    def __init__(self, base: GradedRing, module: GradedModule, target: GradedRing) -> None:
        self.base = base
        self.module = module
        self.target = target

    def pair(self, r: int, m: int) -> int:
        return r * self.module.order + m

    def unpair(self, x: int) -> Tuple[int, int]:
        return divmod(x, self.module.order)

    def ideal_plus_module(self, P: GradedIdeal) -> GradedIdeal:
        """P(+)M."""
        if P.parent is not self.base:
            raise ParentMismatch("ideal must belong to the base ring")
        members = [self.pair(p, m) for p in P.elements for m in range(self.module.order)]
        return GradedIdeal(self.target, members)

    def zero_divisor_formula(self) -> FrozenSet[int]:
        """{(a, m) : a in Zd(R) u Zd(M)}."""
        lead = zero_divisors(self.base) | module_zero_divisors(self.module)
        return frozenset(self.pair(a, m) for a in lead for m in range(self.module.order))

    def lifted_phi(self, phi: PhiMap, inventory: IdealInventory) -> PhiMap:
        """
        phi2(P(+)M) = phi(P)(+)M for every proper graded P of R; undefined elsewhere.
        """
        entries: Dict[FrozenSet[int], Optional[FrozenSet[int]]] = {}
        for P in inventory.proper():
            value = phi_apply(phi, P)
            key = self.ideal_plus_module(P).element_set
            entries[key] = None if value is None else self.ideal_plus_module(value).element_set
        return PhiMap.custom(entries, f"{phi.label}(+)M")

def idealization(R: GradedRing, M: GradedModule) -> Idealization:
    """
    Builds R(+)M graded by X_g = R_g (+) M_g.

    @param R: The graded ring
    @param M: A graded R-module
    @return: The idealization with its pairing helpers
    @raises ConstructionError: If |R| * |M| is above MAX_RING_ORDER
    @raises NonAbelianGroup: If the grading group is not abelian
    """
    if not R.group.is_abelian:
        raise NonAbelianGroup(f"R(+)M needs an abelian grading group, {R.group.name} is not")
    if M.base is not R:
        raise ParentMismatch("module is over a different ring")
    ring = R.ring
    nR, nM = R.order, M.order
    size = nR * nM
    if size > MAX_RING_ORDER:
        raise ConstructionError(f"idealization order {size} exceeds cap {MAX_RING_ORDER}")
    add = (ring.add[:, None, :, None] * nM + M.add[None, :, None, :]).reshape(size, size)
    cross = M.add[M.action[:, None, None, :], M.action.T[None, :, :, None]]
    mul = (ring.mul[:, None, :, None] * nM + cross).reshape(size, size)
    labels = [f"({ring.labels[r]},{M.labels[m]})" for r in range(nR) for m in range(nM)]
    target_ring = FiniteRing(add, mul, ring.zero * nM + M.zero, ring.one * nM + M.zero, labels=labels,
                             name=f"{ring.name}(+){M.name}")
    comps = [sorted(r * nM + m for r in R.component(g) for m in M.components[g]) for g in R.group.elements()]
    target = graded_ring(target_ring, R.group, comps)
    return Idealization(R, M, target)

# ================= LOCALIZATION =================

class LocalizationMap:
    """
    R -> S^-1 R. Classes of pairs (a, s) are indexed in order of first
    appearance, scanning s = 1 first, so a/1 classes come first.
    """

    def __init__(self, source: GradedRing, mult_set: FrozenSet[int], target: Optional[GradedRing],
                 canonical: np.ndarray, class_of: Dict[Tuple[int, int], int]) -> None:
        self.source = source
        self.mult_set = mult_set
        self.target = target
        self.canonical = canonical
        self.class_of = class_of
        self.is_zero_ring = target is None

    def fraction(self, a: int, s: int) -> int:
        return self.class_of[(a, s)]

    def is_homomorphism(self) -> bool:
        if self.target is None:
            return True
        src, tgt, c = self.source.ring, self.target.ring, self.canonical
        return bool(np.array_equal(c[src.add], tgt.add[np.ix_(c, c)])
                    and np.array_equal(c[src.mul], tgt.mul[np.ix_(c, c)])
                    and c[src.one] == tgt.one)

def _related(ring: FiniteRing, S: np.ndarray, a: int, s: int, reps_a: np.ndarray, reps_s: np.ndarray) -> np.ndarray:
    """Mask over representatives (b, t): some u in S kills at - bs."""
    diff = ring.add[ring.mul[a, reps_s], ring.neg[ring.mul[reps_a, s]]]
    return (ring.mul[np.ix_(S, diff)] == ring.zero).any(axis=0)

def localize(R: GradedRing, S: Iterable[int]) -> LocalizationMap:
    """
    Homogeneous localization S^-1 R by exhaustive class partition of R x S.

    @param R: The graded ring
    @param S: Multiplicative subset of h(R) containing 1
    @raises NotHomogeneous: If some s is not homogeneous
    @raises NotMultiplicative: If 1 is missing or S is not closed under products
    """
    ring = R.ring
    S = frozenset(int(s) for s in S)
    for s in sorted(S):
        if not R.is_homogeneous(s):
            raise NotHomogeneous(s)
    if ring.one not in S:
        raise NotMultiplicative("multiplicative set must contain 1")
    s_arr = np.array(sorted(S), dtype=np.int64)
    if not np.isin(ring.mul[np.ix_(s_arr, s_arr)], s_arr).all():
        raise NotMultiplicative(f"{R.labels_of(S)} is not closed under multiplication")

    if ring.zero in S:
        log_info(f"0 in S: localization of {R.name} is the zero ring")
        return LocalizationMap(R, S, None, np.zeros(ring.order, dtype=np.int64), {})

    order_s = [ring.one] + [s for s in sorted(S) if s != ring.one]
    class_of: Dict[Tuple[int, int], int] = {}
    reps: List[Tuple[int, int]] = []
    for s in order_s:
        for a in ring.elements():
            if reps:
                mask = _related(ring, s_arr, a, s, np.array([r[0] for r in reps]), np.array([r[1] for r in reps]))
                hits = np.flatnonzero(mask)
                if len(hits):
                    class_of[(a, s)] = int(hits[0])
                    continue
            class_of[(a, s)] = len(reps)
            reps.append((a, s))

    n = len(reps)
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for i, (a, s) in enumerate(reps):
        for j, (b, t) in enumerate(reps):
            st = int(ring.mul[s, t])
            add[i, j] = class_of[(int(ring.add[ring.mul[a, t], ring.mul[b, s]]), st)]
            mul[i, j] = class_of[(int(ring.mul[a, b]), st)]
    labels = [ring.labels[a] if s == ring.one else f"{ring.labels[a]}/{ring.labels[s]}" for a, s in reps]
    target_ring = FiniteRing(add, mul, class_of[(ring.zero, ring.one)], class_of[(ring.one, ring.one)],
                             labels=labels, name=f"S^-1 {ring.name} [S={R.labels_of(S)}]")

    group = R.group
    comps: List[set] = [set() for _ in group.elements()]
    for g in group.elements():
        g_inv = group.inv(g)
        for h in group.elements():
            d = group.op(h, g_inv)
            dens = [s for s in order_s if s in R.component(d)]
            for a in R.component(h):
                for s in dens:
                    comps[g].add(class_of[(a, s)])
    target = graded_ring(target_ring, group, comps)
    canonical = np.array([class_of[(a, ring.one)] for a in ring.elements()], dtype=np.int64)
    canonical.setflags(write=False)
    return LocalizationMap(R, S, target, canonical, class_of)

def _require_target(L: LocalizationMap) -> GradedRing:
    if L.target is None:
        raise ZeroRingTarget(f"localization of {L.source.name} is the zero ring")
    return L.target

def contract(L: LocalizationMap, I: GradedIdeal) -> GradedIdeal:
    """
    I cap R = {a : a/1 in I}.

    @param L: A localization with a nonzero target
    @param I: A graded ideal of S^-1 R
    @return: The contracted graded ideal of R
    @raises ZeroRingTarget: If S^-1 R is the zero ring
    """
    if I.parent is not _require_target(L):
        raise ParentMismatch("ideal does not belong to the localized ring")
    members = np.flatnonzero(np.isin(L.canonical, I.elements))
    return GradedIdeal(L.source, members.tolist())

def extend(L: LocalizationMap, P: GradedIdeal) -> GradedIdeal:
    """
    S^-1 P = {p/s : p in P, s in S}.

    @param L: A localization with a nonzero target
    @param P: A graded ideal of R
    @return: The extended graded ideal of S^-1 R
    """
    target = _require_target(L)
    if P.parent is not L.source:
        raise ParentMismatch("ideal does not belong to the source ring")
    members = {L.class_of[(p, s)] for p in P.elements for s in L.mult_set}
    return GradedIdeal(target, members)

def induced_phi_S(phi: PhiMap, L: LocalizationMap, inventory: Optional[IdealInventory] = None) -> PhiMap:
    """
    phi_S(I) = S^-1 phi(I cap R) over every graded ideal of S^-1 R; empty stays empty.

    @param inventory: GI(S^-1 R) if already enumerated
    @return: A custom map keyed by the ideals of S^-1 R
    """
    inventory = inventory or enumerate_graded_ideals(_require_target(L))
    entries: Dict[FrozenSet[int], Optional[FrozenSet[int]]] = {}
    for K in inventory:
        value = phi_apply(phi, contract(L, K))
        entries[K.element_set] = None if value is None else extend(L, value).element_set
    return PhiMap.custom(entries, f"{phi.label}_S")

def multiplicative_closure(R: GradedRing, gens: Iterable[int]) -> FrozenSet[int]:
    """
    Smallest multiplicative set containing 1 and gens.

    @param R: The graded ring
    @param gens: Element indices
    @return: The closure under products
    """
    ring = R.ring
    out = {ring.one}
    frontier = [ring.one]
    gens = sorted(set(int(g) for g in gens))
    while frontier:
        new = {int(ring.mul[a, g]) for a in frontier for g in gens} - out
        out |= new
        frontier = sorted(new)
    return frozenset(out)
