"""
phi-maps and the ideal classes they define.

Every predicate is an exhaustive scan over homogeneous elements (or over
pairs of graded ideals for the strong variant). Scans run in canonical
element order, so a false verdict carries the lexicographically first
violating witness and reports are reproducible.

phi(P) = None stands for the empty set; P - None = P.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Mapping, Optional, Tuple

import numpy as np

import mutations
from graded_algebra import AlgebraError, GradedRing, regular_elements
from ideal_lattice import (GradedIdeal, IdealInventory, NotProper, ParentMismatch, ideal_power,
                           ideal_product, omega_intersection, zero_ideal)

# ================= PHI MAPS =================

class PhiKind(Enum):
    EMPTY = "empty"
    ZERO = "zero"
    IDENTITY = "identity"
    POWER = "power"
    OMEGA = "omega"
    CUSTOM = "custom"

class PhiError(AlgebraError):
    pass

class CustomTableMiss(PhiError):
    def __init__(self, phi_label: str, ideal_label: str) -> None:
        super().__init__(f"{phi_label} is not defined on {ideal_label}")

class InvalidPhi(PhiError):
    pass

CustomTable = Tuple[Tuple[FrozenSet[int], Optional[FrozenSet[int]]], ...]

@dataclass(frozen=True)
class PhiMap:
    """
    A function GI(R) -> GI(R) u {empty}. Custom maps are finite tables keyed
    by the element set of the argument ideal; None as a value means empty.
    """
    kind: PhiKind
    n: int = 0
    table: Optional[CustomTable] = None
    name: str = ""
    _lookup: Dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind is PhiKind.POWER and self.n < 2:
            raise InvalidPhi(f"power maps need n >= 2, got {self.n}")
        if (self.kind is PhiKind.CUSTOM) != (self.table is not None):
            raise InvalidPhi("a custom table is required exactly for custom maps")
        if self.table is not None:
            self._lookup.update(dict(self.table))

    @property
    def label(self) -> str:
        if self.kind is PhiKind.POWER:
            return f"power:{self.n}"
        if self.kind is PhiKind.CUSTOM:
            return f"custom:{self.name or 'table'}"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "PhiMap":
        """
        @param text: empty | zero | identity | omega | power:n
        @raises InvalidPhi: On anything else
        """
        t = (text or "").strip().lower()
        simple = {"empty": PHI_EMPTY, "zero": PHI_ZERO, "identity": PHI_IDENTITY, "omega": PHI_OMEGA}
        if t in simple:
            return simple[t]
        if t.startswith("power:"):
            try:
                return power_phi(int(t.split(":", 1)[1]))
            except ValueError:
                pass
        raise InvalidPhi(f"unknown phi '{text}' (use empty|zero|identity|omega|power:n)")

    @classmethod
    def custom(cls, entries: Mapping[FrozenSet[int], Optional[FrozenSet[int]]], name: str) -> "PhiMap":
        table = tuple(sorted(((frozenset(k), None if v is None else frozenset(v)) for k, v in entries.items()),
                             key=lambda kv: (len(kv[0]), sorted(kv[0]))))
        return cls(PhiKind.CUSTOM, table=table, name=name)

def power_phi(n: int) -> PhiMap:
    return PhiMap(PhiKind.POWER, n=n)

PHI_EMPTY = PhiMap(PhiKind.EMPTY)
PHI_ZERO = PhiMap(PhiKind.ZERO)
PHI_IDENTITY = PhiMap(PhiKind.IDENTITY)
PHI_OMEGA = PhiMap(PhiKind.OMEGA)

# ================= CONFIG =================

STANDARD_SWEEP = (PHI_EMPTY, PHI_ZERO, power_phi(2), power_phi(3), PHI_OMEGA, PHI_IDENTITY)
# phi_empty <= phi_0 <= phi_omega <= phi_3 <= phi_2 <= phi_1
CHAIN_ORDER = (PHI_EMPTY, PHI_ZERO, PHI_OMEGA, power_phi(3), power_phi(2), PHI_IDENTITY)

# ================= APPLY =================

@lru_cache(maxsize=65536)
def phi_apply(phi: PhiMap, P: GradedIdeal) -> Optional[GradedIdeal]:
    """
    Applies phi to P; the value is normalized into P.

    @return: A graded ideal inside P, or None for the empty set
    @raises CustomTableMiss: If a custom table has no entry for P
    """
    kind = phi.kind
    if kind is PhiKind.EMPTY:
        return None
    if kind is PhiKind.ZERO:
        return zero_ideal(P.parent)
    if kind is PhiKind.IDENTITY:
        return P
    if kind is PhiKind.POWER:
        return ideal_power(P, phi.n)
    if kind is PhiKind.OMEGA:
        return omega_intersection(P)
    if P.element_set not in phi._lookup:
        raise CustomTableMiss(phi.label, P.label())
    value = phi._lookup[P.element_set]
    if value is None:
        return None
    return GradedIdeal(P.parent, value & P.element_set)

def phi_elements(phi: PhiMap, P: GradedIdeal) -> FrozenSet[int]:
    value = phi_apply(phi, P)
    return frozenset() if value is None else value.element_set

# ================= VERDICTS =================

@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.holds

TRUE = Verdict(True)

def _require_proper(P: GradedIdeal) -> None:
    if not P.is_proper:
        raise NotProper(f"{P.label()} is the whole ring {P.parent.name}")

def _hom_array(R: GradedRing) -> np.ndarray:
    return np.array(R.homogeneous, dtype=np.int64)

def _in(values: np.ndarray, members) -> np.ndarray:
    members = list(members)
    if not members:
        return np.zeros(values.shape, dtype=bool)
    return np.isin(values, members)

def _regular_guard(R: GradedRing) -> Tuple[int, ...]:
    """x candidates of the r-scans: h(R) cap r(R)."""
    if mutations.active("drop-regular-guard"):
        return R.homogeneous
    reg = regular_elements(R)
    return tuple(x for x in R.homogeneous if x in reg)

def _rooted(P: GradedIdeal) -> np.ndarray:
    """For each homogeneous y (in h(R) order): some y^n in P, n bounded by the power cycle."""
    ring = P.parent.ring
    return np.array([any(p in P.element_set for p in ring.powers(y)) for y in P.parent.homogeneous], dtype=bool)

# ================= PRIME FAMILY =================

def is_graded_phi_prime(P: GradedIdeal, phi: PhiMap) -> Verdict:
    """
    ab in P - phi(P) with a, b homogeneous forces a in P or b in P.

    @raises NotProper: If P is the whole ring
    """
    _require_proper(P)
    R = P.parent
    hom = _hom_array(R)
    excuse = phi_elements(phi, P)
    b_out = ~_in(hom, P.elements)
    for a in R.homogeneous:
        if a in P:
            continue
        row = R.ring.mul[a, hom]
        mask = _in(row, P.elements) & ~_in(row, excuse) & b_out
        hits = np.flatnonzero(mask)
        if len(hits):
            return Verdict(False, (a, int(hom[hits[0]])))
    return TRUE

def is_graded_prime(P: GradedIdeal) -> Verdict:
    return is_graded_phi_prime(P, PHI_EMPTY)

def is_graded_weakly_prime(P: GradedIdeal) -> Verdict:
    return is_graded_phi_prime(P, PHI_ZERO)

# ================= R FAMILY =================

def is_graded_phi_r_ideal(P: GradedIdeal, phi: PhiMap) -> Verdict:
    """
    xy in P - phi(P), x homogeneous with Ann(x) = {0}, y homogeneous: y in P.

    @raises NotProper: If P is the whole ring
    """
    _require_proper(P)
    R = P.parent
    hom = _hom_array(R)
    excuse = phi_elements(phi, P)
    y_out = ~_in(hom, P.elements)
    for x in _regular_guard(R):
        row = R.ring.mul[x, hom]
        hits = np.flatnonzero(_in(row, P.elements) & ~_in(row, excuse) & y_out)
        if len(hits):
            return Verdict(False, (x, int(hom[hits[0]])))
    return TRUE

def is_graded_r_ideal(P: GradedIdeal) -> Verdict:
    return is_graded_phi_r_ideal(P, PHI_EMPTY)

def is_graded_phi_pr_ideal(P: GradedIdeal, phi: PhiMap) -> Verdict:
    """
    As the phi-r scan, with the conclusion weakened to y^n in P for some n.
    """
    _require_proper(P)
    R = P.parent
    hom = _hom_array(R)
    excuse = phi_elements(phi, P)
    y_out = ~_rooted(P)
    for x in _regular_guard(R):
        row = R.ring.mul[x, hom]
        hits = np.flatnonzero(_in(row, P.elements) & ~_in(row, excuse) & y_out)
        if len(hits):
            return Verdict(False, (x, int(hom[hits[0]])))
    return TRUE

def is_graded_pr_ideal(P: GradedIdeal) -> Verdict:
    return is_graded_phi_pr_ideal(P, PHI_EMPTY)

def annihilator_of_ideal(I: GradedIdeal) -> FrozenSet[int]:
    """Ann(I) = {a : aI = 0}."""
    ring = I.parent.ring
    cols = ring.mul[:, list(I.elements)]
    return frozenset(int(a) for a in np.flatnonzero((cols == ring.zero).all(axis=1)))

def is_graded_strongly_phi_r_ideal(P: GradedIdeal, phi: PhiMap, inv: IdealInventory) -> Verdict:
    """
    For graded I, J with IJ in P, IJ not in phi(P) and Ann(I) = {0}: J in P.
    Witness is the first violating (I, J) in inventory order.

    @raises NotProper: If P is the whole ring
    @raises ParentMismatch: If inv belongs to another ring
    """
    _require_proper(P)
    if inv.parent is not P.parent:
        raise ParentMismatch(f"inventory of {inv.parent.name} used for an ideal of {P.parent.name}")
    zero_only = frozenset({P.parent.ring.zero})
    phi_p = phi_apply(phi, P)
    for I in inv:
        if annihilator_of_ideal(I) != zero_only:
            continue
        for J in inv:
            if J <= P:
                continue
            IJ = ideal_product(I, J)
            if IJ <= P and (phi_p is None or not IJ <= phi_p):
                return Verdict(False, (I, J))
    return TRUE

# ================= PURE / VON NEUMANN REGULAR =================

def _pure_candidates(P: GradedIdeal, phi: PhiMap) -> Tuple[int, ...]:
    excuse = phi_elements(phi, P)
    return tuple(x for x in P.homogeneous() if x not in excuse)

def is_graded_phi_pure(P: GradedIdeal, phi: PhiMap) -> Verdict:
    """
    Every x in (P cap h(R)) - phi(P) has y in P cap h(R) with x = xy.
    """
    _require_proper(P)
    R = P.parent
    pool = np.array(R.homogeneous if mutations.active("pure-witness-anywhere") else P.homogeneous(), dtype=np.int64)
    for x in _pure_candidates(P, phi):
        if not (R.ring.mul[x, pool] == x).any():
            return Verdict(False, (x,))
    return TRUE

def is_graded_phi_vnr(P: GradedIdeal, phi: PhiMap) -> Verdict:
    """
    Every x in (P cap h(R)) - phi(P) has y in P cap h(R) with x = x^2 y.
    """
    _require_proper(P)
    R = P.parent
    pool = np.array(P.homogeneous(), dtype=np.int64)
    mul = R.ring.mul
    for x in _pure_candidates(P, phi):
        base = x if mutations.active("vnr-linear") else int(mul[x, x])
        if not (mul[base, pool] == x).any():
            return Verdict(False, (x,))
    return TRUE

def check_pure_characterization(P: GradedIdeal, phi: PhiMap) -> bool:
    """
    phi-pure agrees with: every nonzero x in (P cap h(R)) - phi(P) has y in P_e with x = xy.
    """
    R = P.parent
    direct = is_graded_phi_pure(P, phi).holds
    p_e = np.array(sorted(P.element_set & R.component(R.group.identity)), dtype=np.int64)
    by_degree = all((R.ring.mul[x, p_e] == x).any()
                    for x in _pure_candidates(P, phi) if x != R.ring.zero)
    return direct == by_degree

def check_vnr_characterization(P: GradedIdeal, phi: PhiMap) -> bool:
    """
    phi-vNr agrees with: every nonzero x in (P cap h(R)) - phi(P) of degree g
    has y in P_(g^-1) with x = x^2 y.
    """
    R = P.parent
    direct = is_graded_phi_vnr(P, phi).holds
    mul = R.ring.mul
    ok = True
    for x in _pure_candidates(P, phi):
        if x == R.ring.zero:
            continue
        g = R.degree(x)
        pool = np.array(sorted(P.element_set & R.component(R.group.inv(g))), dtype=np.int64)
        if not (mul[int(mul[x, x]), pool] == x).any():
            ok = False
            break
    return direct == ok

# ================= CLASSIFICATION =================

PREDICATES: Dict[str, Callable[[GradedIdeal, PhiMap, IdealInventory], Verdict]] = {
    "graded_prime": lambda P, phi, inv: is_graded_prime(P),
    "weakly_prime": lambda P, phi, inv: is_graded_weakly_prime(P),
    "phi_prime": lambda P, phi, inv: is_graded_phi_prime(P, phi),
    "r_ideal": lambda P, phi, inv: is_graded_r_ideal(P),
    "pr_ideal": lambda P, phi, inv: is_graded_pr_ideal(P),
    "phi_r": lambda P, phi, inv: is_graded_phi_r_ideal(P, phi),
    "phi_pr": lambda P, phi, inv: is_graded_phi_pr_ideal(P, phi),
    "strongly_phi_r": lambda P, phi, inv: is_graded_strongly_phi_r_ideal(P, phi, inv),
    "phi_pure": lambda P, phi, inv: is_graded_phi_pure(P, phi),
    "phi_vnr": lambda P, phi, inv: is_graded_phi_vnr(P, phi),
}

@dataclass(frozen=True)
class Classification:
    ideal: GradedIdeal
    phi: PhiMap
    verdicts: Dict[str, Verdict]

def classify(P: GradedIdeal, phi: PhiMap, inv: IdealInventory) -> Classification:
    """
    Runs every predicate on (P, phi).

    @raises NotProper: If P is the whole ring
    """
    _require_proper(P)
    return Classification(P, phi, {name: pred(P, phi, inv) for name, pred in PREDICATES.items()})

def describe_witness(R: GradedRing, witness: Optional[tuple]) -> str:
    if witness is None:
        return "-"
    parts = []
    for w in witness:
        parts.append(w.label() if isinstance(w, GradedIdeal) else R.label(int(w)))
    return "(" + ", ".join(parts) + ")"

# ================= REPLAY =================

def replay_witness(predicate: str, P: GradedIdeal, phi: PhiMap, witness: tuple) -> bool:
    """
    Re-checks a witness against the definition of the predicate.

    @return: True if the witness violates the defining implication
    """
    R = P.parent
    mul = R.ring.mul
    excuse = phi_elements(phi, P)
    if predicate in ("graded_prime", "weakly_prime", "phi_prime"):
        used = {"graded_prime": frozenset(), "weakly_prime": frozenset({R.ring.zero})}.get(predicate, excuse)
        a, b = witness
        ab = int(mul[a, b])
        return (R.is_homogeneous(a) and R.is_homogeneous(b) and ab in P and ab not in used
                and a not in P and b not in P)
    if predicate in ("r_ideal", "phi_r", "pr_ideal", "phi_pr"):
        used = frozenset() if predicate in ("r_ideal", "pr_ideal") else excuse
        x, y = witness
        xy = int(mul[x, y])
        if x not in _regular_guard(R) or not R.is_homogeneous(y) or xy not in P or xy in used:
            return False
        if predicate in ("pr_ideal", "phi_pr"):
            return not any(p in P for p in R.ring.powers(y))
        return y not in P
    if predicate == "strongly_phi_r":
        I, J = witness
        phi_p = phi_apply(phi, P)
        IJ = ideal_product(I, J)
        return (annihilator_of_ideal(I) == frozenset({R.ring.zero}) and IJ <= P
                and (phi_p is None or not IJ <= phi_p) and not J <= P)
    if predicate == "phi_pure":
        (x,) = witness
        pool = R.homogeneous if mutations.active("pure-witness-anywhere") else P.homogeneous()
        return x in P and x not in excuse and not any(int(mul[x, y]) == x for y in pool)
    if predicate == "phi_vnr":
        (x,) = witness
        base = x if mutations.active("vnr-linear") else int(mul[x, x])
        return x in P and x not in excuse and not any(int(mul[base, y]) == x for y in P.homogeneous())
    raise KeyError(predicate)
