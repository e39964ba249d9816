"""
Corpus generation and the theorem suite.

Every registered result is a hypothesis -> conclusion check run over all
(ring, ideal, phi) instances of a deterministic corpus. A violation keeps a
replay closure that re-evaluates the failing instance from scratch.

    corpus = build_corpus(CorpusSpec(max_order=16))
    reports, status = run_all(corpus)
    print(format_reports(reports))
"""

import json
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

import mutations
from constructions import (GradedModule, Idealization, LocalizationMap, QuotientMap, contract, extend, idealization,
                           induced_phi_P, induced_phi_S, localize, module_zero_divisors, multiplicative_closure,
                           quotient, quotient_module, regular_module, zero_module)
from graded_algebra import (ISOMORPHISM_CAP, AlgebraError, CapExceeded, GradedRing, annihilator, cyclic_group,
                            grading_shape, group_ring_graded, is_isomorphic, klein_four, polyquot_graded,
                            product_ring, regular_elements, tables_equal, trivially_graded, units, validate_grading,
                            zero_divisors, zmod_graded)
from ideal_lattice import (ENUMERATION_CAP, ORACLE_CAP, GradedIdeal, IdealInventory, colon_ideal, colon_set,
                           enumerate_graded_ideals, graded_radical, ideal_intersection, ideal_product,
                           oracle_graded_ideals, power_chain)
from phi_classifiers import (CHAIN_ORDER, PHI_EMPTY, PHI_IDENTITY, PHI_OMEGA, PHI_ZERO, STANDARD_SWEEP, PhiMap,
                             Verdict, annihilator_of_ideal, check_pure_characterization,
                             check_vnr_characterization, describe_witness, is_graded_phi_r_ideal,
                             is_graded_prime, is_graded_r_ideal, is_graded_strongly_phi_r_ideal, phi_apply,
                             phi_elements, power_phi)
from ring_log import log_info, log_warn

# ================= CONFIG =================

DEFAULT_MAX_ORDER = 32
LOCALIZATIONS_PER_RING = 2
MODULES_PER_RING = 3

GROUPS = ("trivial", "Z2", "Z3", "Z4", "klein4")
FAMILIES = ("zmod", "products", "polyquot", "grouprings", "idealizations", "quotients", "localizations")

# Literal hypotheses contain 0 in a set required to be regular.
EXPECTED_VACUOUS = frozenset({"Thm1.1", "Thm7"})

# ================= ERRORS =================

class HarnessError(AlgebraError):
    pass

class UnknownTheorem(HarnessError):
    def __init__(self, theorem_id: str) -> None:
        self.theorem_id = theorem_id
        super().__init__(f"unknown theorem '{theorem_id}' (known: {', '.join(THEOREM_IDS)})")

# ================= CORPUS =================

@dataclass(frozen=True)
class CorpusSpec:
    max_order: int = DEFAULT_MAX_ORDER
    groups: Tuple[str, ...] = GROUPS
    families: FrozenSet[str] = frozenset(FAMILIES)
    seeds: Tuple[GradedRing, ...] = ()

    def __post_init__(self) -> None:
        unknown = set(self.groups) - set(GROUPS)
        if unknown:
            raise HarnessError(f"unknown corpus groups {sorted(unknown)} (known: {', '.join(GROUPS)})")
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise HarnessError(f"unknown corpus families {sorted(unknown)} (known: {', '.join(FAMILIES)})")
        if self.max_order < 1:
            raise HarnessError("max_order must be positive")

class RingContext:
    """
    Per-ring caches shared by every check: GI(R), r(R), Zd(R), verdicts.
    """

    def __init__(self, ring: GradedRing) -> None:
        self.ring = ring
        self.inventory = enumerate_graded_ideals(ring, cross_check=False)
        self.proper = self.inventory.proper()
        self.regular = regular_elements(ring)
        self.zero_divisors = zero_divisors(ring)
        self.hom_regular = tuple(a for a in ring.homogeneous if a in self.regular)
        self._verdicts: Dict[tuple, Verdict] = {}
        self._quotients: Dict[GradedIdeal, QuotientMap] = {}

    def phi_r(self, P: GradedIdeal, phi: PhiMap) -> Verdict:
        key = (P, phi, mutations.active_mutations())
        if key not in self._verdicts:
            self._verdicts[key] = is_graded_phi_r_ideal(P, phi)
        return self._verdicts[key]

    def quotient(self, P: GradedIdeal) -> QuotientMap:
        if P not in self._quotients:
            self._quotients[P] = quotient(self.ring, P)
        return self._quotients[P]

class Corpus:
    """
    The rings a verification run iterates, plus the construction maps that
    produced some of them.
    """

    def __init__(self, spec: CorpusSpec, rings: Sequence[GradedRing], quotients: Sequence[QuotientMap],
                 localizations: Sequence[LocalizationMap], idealizations: Sequence[Idealization]) -> None:
        self.spec = spec
        self.rings = tuple(rings)
        self.quotients = tuple(quotients)
        self.localizations = tuple(localizations)
        self.idealizations = tuple(idealizations)
        self._contexts: Dict[int, RingContext] = {}

    def __iter__(self) -> Iterator[GradedRing]:
        return iter(self.rings)

    def __len__(self) -> int:
        return len(self.rings)

    def context(self, R: GradedRing) -> RingContext:
        key = id(R)
        if key not in self._contexts:
            self._contexts[key] = RingContext(R)
        return self._contexts[key]

def _base_rings(spec: CorpusSpec) -> List[GradedRing]:
    limit = spec.max_order
    groups = set(spec.groups)
    rings: List[GradedRing] = []
    if "zmod" in spec.families and "trivial" in groups:
        rings += [zmod_graded(n) for n in range(2, limit + 1)]
    if "products" in spec.families and "trivial" in groups:
        rings += [trivially_graded(product_ring([m, n]))
                  for m in range(2, limit + 1) for n in range(m, limit + 1) if m * n <= limit]
    if "polyquot" in spec.families:
        for k, gname in ((2, "Z2"), (3, "Z3")):
            if gname not in groups:
                continue
            rings += [polyquot_graded(n, c, k) for n in range(2, limit + 1) if n ** k <= limit for c in range(n)]
    if "grouprings" in spec.families:
        named = [("Z2", cyclic_group(2)), ("Z3", cyclic_group(3)), ("Z4", cyclic_group(4)), ("klein4", klein_four())]
        for gname, group in named:
            if gname not in groups:
                continue
            rings += [group_ring_graded(n, group) for n in range(2, limit + 1) if n ** group.order <= limit]
    return rings

def _modules(R: GradedRing, inv: IdealInventory, limit: int) -> List[GradedModule]:
    """R, then R/I for proper nonzero I (largest I first), the zero module, then shifts of R."""
    out: List[GradedModule] = []
    candidates: List[Callable[[], GradedModule]] = [partial(regular_module, R)]
    candidates += [partial(quotient_module, R, I) for I in reversed(inv.proper()) if not I.is_zero()]
    candidates.append(partial(zero_module, R))
    candidates += [partial(regular_module, R, g) for g in R.group.elements() if g != R.group.identity]
    for make in candidates:
        if len(out) >= MODULES_PER_RING:
            break
        M = make()
        if R.order * M.order <= limit:
            out.append(M)
    return out

def _mult_sets(R: GradedRing, gens: Iterable[int]) -> List[FrozenSet[int]]:
    """Distinct closures of single generators, smallest first, zero ring targets skipped."""
    sets = {multiplicative_closure(R, [a]) for a in gens}
    ordered = sorted(sets, key=lambda S: (len(S), sorted(S)))
    return [S for S in ordered if R.ring.zero not in S]

def unit_mult_sets(R: GradedRing) -> List[FrozenSet[int]]:
    """Multiplicative sets inside r(R) used by the localization theorem."""
    hom_units = [a for a in R.homogeneous if a in units(R)]
    return _mult_sets(R, hom_units)[:LOCALIZATIONS_PER_RING]

def _first_copy(S: GradedRing, seen: Dict[tuple, List[GradedRing]]) -> bool:
    """
    Records S in seen unless an isomorphic ring with the same grading shape
    is already there.

     S: Candidate ring
     seen: Rings so far, bucketed by order and grading shape
    : True if S was new
    """
    bucket = seen.setdefault((S.order, grading_shape(S)), [])
    small = S.order <= ISOMORPHISM_CAP
    if any(is_isomorphic(S, T) if small else tables_equal(S, T) for T in bucket):
        return False
    bucket.append(S)
    return True

def build_corpus(spec: CorpusSpec = CorpusSpec()) -> Corpus:
    """
    Builds the deterministic corpus: base families, then quotients,
    localizations and idealizations of the base rings, then seeds.
    Every quotient by a nonzero proper graded ideal is kept as a map; its
    target joins the ring list only when no isomorphic ring is there yet.

    @param spec: Corpus parameters
    @return: The corpus
    @raises CapExceeded: If max_order is above the ideal enumeration cap
    """
    if spec.max_order > ENUMERATION_CAP:
        raise CapExceeded(f"corpus max_order {spec.max_order} exceeds enumeration cap {ENUMERATION_CAP}")
    bases = _base_rings(spec)
    seen: Dict[tuple, List[GradedRing]] = {}
    for R in bases:
        seen.setdefault((R.order, grading_shape(R)), []).append(R)
    quotients: List[QuotientMap] = []
    quotient_rings: List[GradedRing] = []
    localizations: List[LocalizationMap] = []
    idealizations: List[Idealization] = []
    for R in bases:
        inv = enumerate_graded_ideals(R, cross_check=False)
        if "quotients" in spec.families:
            for P in inv.proper():
                if P.is_zero():
                    continue
                qmap = quotient(R, P)
                quotients.append(qmap)
                if _first_copy(qmap.target, seen):
                    quotient_rings.append(qmap.target)
        if "localizations" in spec.families:
            others = [a for a in R.homogeneous if a != R.ring.one and a != R.ring.zero]
            sets = [S for S in _mult_sets(R, others) if len(S) > 1][:LOCALIZATIONS_PER_RING]
            localizations += [localize(R, S) for S in sets]
        if "idealizations" in spec.families and R.group.is_abelian:
            idealizations += [idealization(R, M) for M in _modules(R, inv, spec.max_order)]
    rings = list(bases) + quotient_rings + [L.target for L in localizations]
    rings += [X.target for X in idealizations] + list(spec.seeds)
    log_info(f"corpus: {len(rings)} rings ({len(quotients)} quotients, {len(quotient_rings)} new quotient rings, "
             f"{len(localizations)} localizations, {len(idealizations)} idealizations)")
    return Corpus(spec, rings, quotients, localizations, idealizations)

# ================= REPORTS =================

@dataclass
class Violation:
    theorem_id: str
    ring: str
    ideals: Tuple[str, ...]
    phi: str
    witness: str
    detail: str
    replay: Callable[[], bool] = field(default=lambda: False, compare=False, repr=False)

    def line(self) -> str:
        return (f"ring={self.ring} ideals={' '.join(self.ideals) or '-'} phi={self.phi} "
                f"witness={self.witness} detail={self.detail}")

@dataclass
class TheoremReport:
    theorem_id: str
    instances_checked: int = 0
    hypothesis_satisfied: int = 0
    violations: List[Violation] = field(default_factory=list)
    vacuity_note: Optional[str] = None
    experimental: List[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        if self.violations:
            return "violated"
        if self.hypothesis_satisfied == 0:
            return "expected-vacuous" if self.theorem_id in EXPECTED_VACUOUS else "vacuous"
        return "verified"

    def instance(self, hypothesis: bool) -> bool:
        self.instances_checked += 1
        if hypothesis:
            self.hypothesis_satisfied += 1
        return hypothesis

    def fail(self, R: GradedRing, ideals: Sequence[GradedIdeal], phi: Optional[PhiMap], witness: str,
             detail: str, replay: Callable[[], bool]) -> None:
        self.violations.append(Violation(self.theorem_id, R.name, tuple(I.label() for I in ideals),
                                         phi.label if phi is not None else "-", witness, detail, replay))

def replay(violation: Violation) -> bool:
    """True if re-evaluating the instance reproduces the failure."""
    return bool(violation.replay())

# ================= HELPERS =================

def _is_r_ideal(I: Optional[GradedIdeal]) -> bool:
    return I is not None and I.is_proper and is_graded_r_ideal(I).holds

def nonzero_regular(ctx: RingContext, I: GradedIdeal) -> bool:
    """Every nonzero element of I is regular: the relaxed reading of 'I inside r(R)'."""
    return I.element_set - {ctx.ring.ring.zero} <= ctx.regular

def _values(phi: PhiMap, P: GradedIdeal) -> Optional[Tuple[int, ...]]:
    """Elements of phi(P), or None for the empty map value."""
    value = phi_apply(phi, P)
    return None if value is None else value.elements

def _same_phi_values(a: Optional[GradedIdeal], b: Optional[GradedIdeal]) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return a.element_set == b.element_set

# ================= DEFINITION CHAIN =================

def _monotone_pair(P: GradedIdeal, lo: PhiMap, hi: PhiMap) -> bool:
    """True when the phi-r verdict drops from lo to hi (a failure)."""
    return is_graded_phi_r_ideal(P, lo).holds and not is_graded_phi_r_ideal(P, hi).holds

def check_monotonicity(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for i, lo in enumerate(CHAIN_ORDER):
                for hi in CHAIN_ORDER[i + 1:]:
                    if not phi_elements(lo, P) <= phi_elements(hi, P):
                        continue
                    if report.instance(ctx.phi_r(P, lo).holds) and not ctx.phi_r(P, hi).holds:
                        report.fail(R, [P], hi, describe_witness(R, ctx.phi_r(P, hi).witness),
                                    f"{lo.label}-r but not {hi.label}-r", partial(_monotone_pair, P, lo, hi))

def _weak_equals_plain(P: GradedIdeal) -> bool:
    return is_graded_phi_r_ideal(P, PHI_EMPTY).holds != is_graded_phi_r_ideal(P, PHI_ZERO).holds

def check_named_chain(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            report.instance(True)
            if ctx.phi_r(P, PHI_EMPTY).holds != ctx.phi_r(P, PHI_ZERO).holds:
                report.fail(R, [P], PHI_ZERO, "-", "r-ideal and weakly r-ideal verdicts differ",
                            partial(_weak_equals_plain, P))
            top = max(len(power_chain(P)), 2) + 1
            chain = [PHI_ZERO, PHI_OMEGA] + [power_phi(n) for n in range(top, 1, -1)]
            for lo, hi in zip(chain, chain[1:]):
                if report.instance(ctx.phi_r(P, lo).holds) and not ctx.phi_r(P, hi).holds:
                    report.fail(R, [P], hi, describe_witness(R, ctx.phi_r(P, hi).witness),
                                f"{lo.label}-r but not {hi.label}-r", partial(_monotone_pair, P, lo, hi))

def _omega_vs_powers(P: GradedIdeal, top: int) -> bool:
    omega = is_graded_phi_r_ideal(P, PHI_OMEGA).holds
    return omega != all(is_graded_phi_r_ideal(P, power_phi(n)).holds for n in range(2, top + 1))

def check_omega_powers(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            report.instance(True)
            top = max(len(power_chain(P)), 2)
            omega = ctx.phi_r(P, PHI_OMEGA).holds
            every = all(ctx.phi_r(P, power_phi(n)).holds for n in range(2, top + 1))
            if omega != every:
                report.fail(R, [P], PHI_OMEGA, "-", f"omega-r={omega} but all n-almost ({top} max)={every}",
                            partial(_omega_vs_powers, P, top))

def check_idempotent(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            if not report.instance(len(power_chain(P)) == 1):
                continue
            for phi in (PHI_IDENTITY, power_phi(2), power_phi(3)):
                verdict = ctx.phi_r(P, phi)
                if not verdict.holds:
                    report.fail(R, [P], phi, describe_witness(R, verdict.witness), "idempotent ideal not phi-r",
                                lambda P=P, phi=phi: not is_graded_phi_r_ideal(P, phi).holds)

# ================= QUOTIENT TRANSFER =================

def _quotient_image_r(ctx: RingContext, P: GradedIdeal, base: GradedIdeal) -> bool:
    qmap = ctx.quotient(base)
    return _is_r_ideal(qmap.image_ideal(P))

def check_quotient_literal(corpus: Corpus, report: TheoremReport) -> None:
    relaxed = relaxed_fail = 0
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                value = phi_apply(phi, P)
                if value is None:
                    continue
                literal = value.element_set <= ctx.regular
                if report.instance(literal and ctx.phi_r(P, phi).holds):
                    if not _quotient_image_r(ctx, P, value):
                        report.fail(R, [P], phi, "-", "P/phi(P) is not an r-ideal of R/phi(P)",
                                    lambda ctx=ctx, P=P, value=value: not _quotient_image_r(ctx, P, value))
                if nonzero_regular(ctx, value) and ctx.phi_r(P, phi).holds:
                    relaxed += 1
                    relaxed_fail += not _quotient_image_r(ctx, P, value)
    report.experimental.append(f"relaxed reading (nonzero elements of phi(P) regular): {relaxed} instances, "
                               f"{relaxed_fail} failures")

def _converse_fails(ctx: RingContext, P: GradedIdeal, phi: PhiMap) -> bool:
    value = phi_apply(phi, P)
    return (_is_r_ideal(value) and _quotient_image_r(ctx, P, value)
            and not is_graded_phi_r_ideal(P, phi).holds)

def check_quotient_converse(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                value = phi_apply(phi, P)
                if value is None:
                    continue
                if report.instance(_is_r_ideal(value) and _quotient_image_r(ctx, P, value)):
                    verdict = ctx.phi_r(P, phi)
                    if not verdict.holds:
                        report.fail(R, [P], phi, describe_witness(R, verdict.witness), "P is not phi-r",
                                    partial(_converse_fails, ctx, P, phi))

# ================= COLON / ZERO DIVISORS =================

def colon_statements(ctx: RingContext, P: GradedIdeal, phi: PhiMap) -> Tuple[bool, bool, bool, Optional[int]]:
    """
    The three equivalent statements for (P, phi): phi-r; (P:a) = P u (phi(P):a)
    for all regular homogeneous a; (P:a) = P or (P:a) = (phi(P):a). The last
    item is the first a breaking the set identity.
    """
    R = ctx.ring
    values = _values(phi, P)
    union_ok = either_ok = True
    first_bad = None
    for a in ctx.hom_regular:
        colon = colon_ideal(P, a).element_set
        inner = colon_set(R, values, a)
        if colon != P.element_set | inner:
            union_ok = False
            first_bad = a if first_bad is None else first_bad
        if colon != P.element_set and colon != inner:
            either_ok = False
    return is_graded_phi_r_ideal(P, phi).holds, union_ok, either_ok, first_bad

def check_colon(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                report.instance(True)
                one, two, three, bad = colon_statements(ctx, P, phi)
                if not one == two == three:
                    witness = "-" if bad is None else describe_witness(R, (bad,))
                    report.fail(R, [P], phi, witness, f"statements disagree: (1)={one} (2)={two} (3)={three}",
                                lambda ctx=ctx, P=P, phi=phi: len(set(colon_statements(ctx, P, phi)[:3])) > 1)

def _outside_zd(ctx: RingContext, P: GradedIdeal, phi: PhiMap) -> Tuple[int, ...]:
    excuse = phi_elements(phi, P)
    return tuple(x for x in P.homogeneous() if x not in excuse and x not in ctx.zero_divisors)

def check_zero_divisor_containment(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                if report.instance(ctx.phi_r(P, phi).holds):
                    bad = _outside_zd(ctx, P, phi)
                    if bad:
                        report.fail(R, [P], phi, describe_witness(R, bad[:1]), "regular element in P - phi(P)",
                                    lambda ctx=ctx, P=P, phi=phi: bool(_outside_zd(ctx, P, phi)))

def check_phi_r_vs_r(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                if not report.instance(_is_r_ideal(phi_apply(phi, P))):
                    continue
                if ctx.phi_r(P, phi).holds != ctx.phi_r(P, PHI_EMPTY).holds:
                    report.fail(R, [P], phi, "-", "phi-r and r verdicts differ",
                                lambda P=P, phi=phi: is_graded_phi_r_ideal(P, phi).holds
                                != is_graded_r_ideal(P).holds)

def _radical_of(value: Optional[GradedIdeal]) -> Optional[GradedIdeal]:
    return None if value is None else graded_radical(value)

def _radical_fails(P: GradedIdeal, phi: PhiMap) -> bool:
    rad = graded_radical(P)
    return (_same_phi_values(_radical_of(phi_apply(phi, P)), phi_apply(phi, rad))
            and is_graded_phi_r_ideal(P, phi).holds and not is_graded_phi_r_ideal(rad, phi).holds)

def check_radical_transfer(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            rad = graded_radical(P)
            for phi in STANDARD_SWEEP:
                commutes = _same_phi_values(_radical_of(phi_apply(phi, P)), phi_apply(phi, rad))
                if report.instance(commutes and ctx.phi_r(P, phi).holds):
                    verdict = ctx.phi_r(rad, phi)
                    if not verdict.holds:
                        report.fail(R, [P, rad], phi, describe_witness(R, verdict.witness), "Grad(P) is not phi-r",
                                    partial(_radical_fails, P, phi))

def check_hom_in_zd(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                if not report.instance(_is_r_ideal(phi_apply(phi, P)) and ctx.phi_r(P, phi).holds):
                    continue
                bad = [x for x in P.homogeneous() if x not in ctx.zero_divisors]
                if bad:
                    report.fail(R, [P], phi, describe_witness(R, bad[:1]), "homogeneous element of P is regular",
                                lambda ctx=ctx, P=P: any(x not in ctx.zero_divisors for x in P.homogeneous()))

def _prime_equivalence_fails(ctx: RingContext, P: GradedIdeal, phi: PhiMap) -> bool:
    inside = all(x in ctx.zero_divisors for x in P.homogeneous())
    return is_graded_phi_r_ideal(P, phi).holds != inside

def check_prime_equivalence(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            prime = is_graded_prime(P).holds
            for phi in STANDARD_SWEEP:
                if not report.instance(prime and _is_r_ideal(phi_apply(phi, P))):
                    continue
                if _prime_equivalence_fails(ctx, P, phi):
                    report.fail(R, [P], phi, "-", "phi-r verdict differs from P cap h(R) inside Zd(R)",
                                partial(_prime_equivalence_fails, ctx, P, phi))

def _colon_transfer_fails(P: GradedIdeal, phi: PhiMap, a: int) -> bool:
    colon = colon_ideal(P, a)
    hypothesis = (colon_set(P.parent, _values(phi, P), a) <= phi_elements(phi, colon)
                  and is_graded_phi_r_ideal(P, phi).holds)
    return hypothesis and not is_graded_phi_r_ideal(colon, phi).holds

def check_colon_transfer(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for a in R.homogeneous:
                if a in P:
                    continue
                colon = colon_ideal(P, a)
                for phi in STANDARD_SWEEP:
                    inner = colon_set(R, _values(phi, P), a)
                    if not report.instance(inner <= phi_elements(phi, colon) and ctx.phi_r(P, phi).holds):
                        continue
                    verdict = ctx.phi_r(colon, phi)
                    if not verdict.holds:
                        report.fail(R, [P, colon], phi, describe_witness(R, verdict.witness),
                                    f"(P : {R.label(a)}) is not phi-r", partial(_colon_transfer_fails, P, phi, a))

# ================= STRONG FORM =================

def check_strong_implies_plain(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                strong = is_graded_strongly_phi_r_ideal(P, phi, ctx.inventory).holds
                if report.instance(strong) and not ctx.phi_r(P, phi).holds:
                    report.fail(R, [P], phi, describe_witness(R, ctx.phi_r(P, phi).witness),
                                "strongly phi-r but not phi-r",
                                lambda P=P, phi=phi, inv=ctx.inventory: is_graded_strongly_phi_r_ideal(P, phi, inv).holds
                                and not is_graded_phi_r_ideal(P, phi).holds)

def _faithful_with_regular_element(ctx: RingContext, I: GradedIdeal) -> bool:
    zero_only = frozenset({ctx.ring.ring.zero})
    if annihilator_of_ideal(I) != zero_only:
        return False
    return any(annihilator(ctx.ring, c) == zero_only for c in I.homogeneous())

def check_product_cancellation(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        faithful = [I for I in ctx.inventory if _faithful_with_regular_element(ctx, I)]
        for P in ctx.proper:
            for phi in STANDARD_SWEEP:
                value = phi_apply(phi, P)
                if not (_is_r_ideal(value) and ctx.phi_r(P, phi).holds):
                    report.instance(False)
                    continue
                for I in faithful:
                    for J in ctx.inventory:
                        IJ = ideal_product(I, J)
                        if not report.instance(IJ <= P and not IJ <= value):
                            continue
                        if not J <= P:
                            report.fail(R, [P, I, J], phi, "-", "J is not inside P",
                                        lambda P=P, I=I, J=J, value=value: ideal_product(I, J) <= P
                                        and not ideal_product(I, J) <= value and not J <= P)

# ================= INDUCED QUOTIENT MAPS =================

def _induced_maps(qmap: QuotientMap) -> Dict[PhiMap, PhiMap]:
    target_inv = enumerate_graded_ideals(qmap.target, cross_check=False)
    return {phi: induced_phi_P(phi, qmap, target_inv) for phi in STANDARD_SWEEP}

def check_quotient_phi_literal(corpus: Corpus, report: TheoremReport) -> None:
    relaxed = relaxed_fail = 0
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.inventory:
            literal = P.element_set <= ctx.regular
            relaxed_reading = nonzero_regular(ctx, P)
            above = [I for I in ctx.proper if P <= I]
            maps = _induced_maps(ctx.quotient(P)) if (literal or relaxed_reading) and above else {}
            for I in above:
                for phi in STANDARD_SWEEP:
                    holds = ctx.phi_r(I, phi).holds
                    if not (report.instance(literal and holds) or (relaxed_reading and holds)):
                        continue
                    image = ctx.quotient(P).image_ideal(I)
                    phi_p = maps[phi]
                    quotient_ok = is_graded_phi_r_ideal(image, phi_p).holds
                    if literal:
                        if not quotient_ok:
                            report.fail(R, [P, I], phi, "-", "I/P is not phi_P-r",
                                        lambda image=image, phi_p=phi_p: not is_graded_phi_r_ideal(image, phi_p).holds)
                    else:
                        relaxed += 1
                        relaxed_fail += not quotient_ok
    report.experimental.append(f"relaxed reading (nonzero elements of P regular): {relaxed} instances, "
                               f"{relaxed_fail} failures")

def _lift_fails(ctx: RingContext, P: GradedIdeal, I: GradedIdeal, phi: PhiMap) -> bool:
    qmap = ctx.quotient(P)
    return (_is_r_ideal(P) and _is_r_ideal(qmap.image_ideal(I))
            and not is_graded_phi_r_ideal(I, phi).holds)

def check_quotient_lift(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for P in ctx.proper:
            if not ctx.phi_r(P, PHI_EMPTY).holds:
                continue
            qmap = ctx.quotient(P)
            for I in ctx.proper:
                if not P <= I:
                    continue
                hypothesis = _is_r_ideal(qmap.image_ideal(I))
                for phi in STANDARD_SWEEP:
                    if report.instance(hypothesis) and not ctx.phi_r(I, phi).holds:
                        report.fail(R, [P, I], phi, describe_witness(R, ctx.phi_r(I, phi).witness),
                                    "I is not phi-r", partial(_lift_fails, ctx, P, I, phi))

# ================= PURE / VNR =================

def check_pure(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        for P in corpus.context(R).proper:
            for phi in STANDARD_SWEEP:
                report.instance(True)
                if not check_pure_characterization(P, phi):
                    report.fail(R, [P], phi, "-", "phi-pure verdict differs from the degree-e form",
                                lambda P=P, phi=phi: not check_pure_characterization(P, phi))

def check_vnr(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        for P in corpus.context(R).proper:
            for phi in STANDARD_SWEEP:
                report.instance(True)
                if not check_vnr_characterization(P, phi):
                    report.fail(R, [P], phi, "-", "phi-vNr verdict differs from the inverse-degree form",
                                lambda P=P, phi=phi: not check_vnr_characterization(P, phi))

# ================= IDEALIZATION / LOCALIZATION =================

def check_idealization(corpus: Corpus, report: TheoremReport) -> None:
    for X in corpus.idealizations:
        R = X.base
        ctx = corpus.context(R)
        same_zd = ctx.zero_divisors == module_zero_divisors(X.module)
        x_ctx = corpus.context(X.target)
        for phi in STANDARD_SWEEP:
            lifted = X.lifted_phi(phi, ctx.inventory)
            for P in ctx.proper:
                PM = X.ideal_plus_module(P)
                if report.instance(same_zd and x_ctx.phi_r(PM, lifted).holds) and not ctx.phi_r(P, phi).holds:
                    report.fail(R, [P, PM], phi, describe_witness(R, ctx.phi_r(P, phi).witness),
                                f"P(+){X.module.name} is phi2-r but P is not phi-r",
                                lambda P=P, PM=PM, phi=phi, lifted=lifted: is_graded_phi_r_ideal(PM, lifted).holds
                                and not is_graded_phi_r_ideal(P, phi).holds)

def _localization_instance(L: LocalizationMap, phi_s: PhiMap, P: GradedIdeal, phi: PhiMap,
                           zd: FrozenSet[int]) -> Tuple[bool, Optional[str]]:
    """
    (hypothesis, failure) for one localization instance; failure is None when
    the conclusion holds.
    """
    value = phi_apply(phi, P)
    SP = extend(L, P)
    S_value = None if value is None else extend(L, value)
    target_value = phi_apply(phi_s, SP) if SP.is_proper else None
    contained = S_value is None or (target_value is not None and S_value <= target_value)
    hypothesis = (not (L.mult_set & P.element_set) and is_graded_phi_r_ideal(P, phi).holds and contained)
    if not hypothesis:
        return False, None
    if not SP.is_proper or not is_graded_phi_r_ideal(SP, phi_s).holds:
        return True, "S^-1 P is not phi_S-r"
    if S_value is None or S_value.element_set != SP.element_set:
        if not contract(L, SP).element_set <= zd:
            return True, "S^-1 P cap R is not inside Zd(R)"
    return True, None

def check_localization(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        for S in unit_mult_sets(R):
            L = localize(R, S)
            target_inv = enumerate_graded_ideals(L.target, cross_check=False)
            for phi in STANDARD_SWEEP:
                phi_s = induced_phi_S(phi, L, target_inv)
                for P in ctx.proper:
                    hypothesis, failure = _localization_instance(L, phi_s, P, phi, ctx.zero_divisors)
                    if report.instance(hypothesis) and failure:
                        report.fail(R, [P], phi, R.labels_of(S), failure,
                                    lambda L=L, phi_s=phi_s, P=P, phi=phi, zd=ctx.zero_divisors:
                                    _localization_instance(L, phi_s, P, phi, zd)[1] is not None)

# ================= STRUCTURAL CHECKS =================

def structure_problems(R: GradedRing) -> List[str]:
    problems = []
    try:
        validate_grading(R.ring, R.group, R.components)
    except AlgebraError as e:
        problems.append(f"grading no longer validates: {e}")
    ring = R.ring
    for a in ring.elements():
        total = ring.zero
        for part in R.grading.decomposition[a]:
            total = ring.plus(total, int(part))
        if total != a:
            problems.append(f"components of {R.label(a)} do not sum back")
            break
    reg, zd = regular_elements(R), zero_divisors(R)
    if reg & zd or (reg | zd) != frozenset(ring.elements()):
        problems.append("r(R) and Zd(R) do not partition R")
    reg_arr = np.array(sorted(reg), dtype=np.int64)
    if not np.isin(ring.mul[np.ix_(reg_arr, reg_arr)], reg_arr).all():
        problems.append("r(R) is not multiplicatively closed")
    if reg != units(R):
        problems.append("r(R) differs from the unit group")
    return problems

def check_structure(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        report.instance(True)
        for problem in structure_problems(R):
            report.fail(R, [], None, "-", problem, lambda R=R: bool(structure_problems(R)))

def check_oracle(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        if not report.instance(R.order <= ORACLE_CAP):
            continue
        mine = frozenset(I.elements for I in corpus.context(R).inventory)
        oracle = oracle_graded_ideals(R)
        if mine != oracle:
            report.fail(R, [], None, "-", f"enumeration and oracle differ by {len(mine ^ oracle)} ideals",
                        lambda R=R: frozenset(I.elements for I in enumerate_graded_ideals(R, cross_check=False))
                        != oracle_graded_ideals(R))

def radical_problems(ctx: RingContext, I: GradedIdeal) -> List[str]:
    problems = []
    rad = graded_radical(I)
    if graded_radical(rad) != rad:
        problems.append("Grad is not idempotent")
    if not I <= rad:
        problems.append("I is not inside Grad(I)")
    chain = power_chain(I)
    if any(not b <= a for a, b in zip(chain, chain[1:])):
        problems.append("power chain is not descending")
    if any(not I <= colon_ideal(I, a) for a in ctx.ring.homogeneous):
        problems.append("(I : a) does not contain I")
    return problems

def _radical_meet_fails(I: GradedIdeal, J: GradedIdeal) -> bool:
    meet = graded_radical(ideal_intersection(I, J)).element_set
    return meet != graded_radical(I).element_set & graded_radical(J).element_set

def check_radical(corpus: Corpus, report: TheoremReport) -> None:
    for R in corpus:
        ctx = corpus.context(R)
        rads = {I: graded_radical(I).element_set for I in ctx.proper}
        for I in ctx.proper:
            report.instance(True)
            for problem in radical_problems(ctx, I):
                report.fail(R, [I], None, "-", problem, lambda ctx=ctx, I=I: bool(radical_problems(ctx, I)))
            for J in ctx.proper:
                report.instance(True)
                if graded_radical(ideal_intersection(I, J)).element_set != rads[I] & rads[J]:
                    report.fail(R, [I, J], None, "-", "Grad(I cap J) != Grad(I) cap Grad(J)",
                                partial(_radical_meet_fails, I, J))

def _zd_through_idealization(X: Idealization) -> FrozenSet[int]:
    """Zd(M) read off R(+)M: a with (a, 0)(0, m) = 0 for some nonzero m."""
    M, ring = X.module, X.target.ring
    base_zero = X.base.ring.zero
    nonzero = [X.pair(base_zero, m) for m in range(M.order) if m != M.zero]
    if not nonzero:
        return frozenset()
    lead = [X.pair(a, M.zero) for a in X.base.ring.elements()]
    hits = (ring.mul[np.ix_(lead, nonzero)] == ring.zero).any(axis=1)
    return frozenset(int(a) for a in np.flatnonzero(hits))

def construction_problems(obj) -> List[str]:
    problems = []
    if isinstance(obj, QuotientMap):
        if not obj.is_homomorphism():
            problems.append("projection is not a ring homomorphism")
        for g in obj.source.group.elements():
            image = frozenset(int(obj.projection[a]) for a in obj.source.component(g))
            if image != obj.target.component(g):
                problems.append(f"quotient component {g} is not the image of R_{g}")
        target = obj.target
    elif isinstance(obj, LocalizationMap):
        if not obj.is_homomorphism():
            problems.append("canonical map is not a ring homomorphism")
        target = obj.target
    else:
        if zero_divisors(obj.target) != obj.zero_divisor_formula():
            problems.append("Zd(R(+)M) differs from {(a, m) : a in Zd(R) u Zd(M)}")
        if module_zero_divisors(obj.module) != _zd_through_idealization(obj):
            problems.append(f"Zd({obj.module.name}) differs from the annihilators of 0(+)M in R(+)M")
        target = obj.target
    try:
        validate_grading(target.ring, target.group, target.components)
    except AlgebraError as e:
        problems.append(f"constructed grading fails validation: {e}")
    return problems

def check_constructions(corpus: Corpus, report: TheoremReport) -> None:
    built = list(corpus.quotients) + list(corpus.localizations) + list(corpus.idealizations)
    for obj in built:
        report.instance(True)
        for problem in construction_problems(obj):
            report.fail(obj.target, [], None, "-", problem, lambda obj=obj: bool(construction_problems(obj)))

# ================= REGISTRY =================

CHECKS: Dict[str, Callable[[Corpus, TheoremReport], None]] = {
    "Check.Structure": check_structure,
    "Check.Oracle": check_oracle,
    "Check.Radical": check_radical,
    "Check.Constructions": check_constructions,
    "Prop1.1": check_monotonicity,
    "Prop1.2": check_named_chain,
    "Prop1.3": check_omega_powers,
    "Prop1.4": check_idempotent,
    "Thm1.1": check_quotient_literal,
    "Thm1.2": check_quotient_converse,
    "Thm2": check_colon,
    "Prop2": check_zero_divisor_containment,
    "Thm3": check_phi_r_vs_r,
    "Thm4": check_radical_transfer,
    "Prop3": check_hom_in_zd,
    "Prop4": check_prime_equivalence,
    "Prop5": check_colon_transfer,
    "Prop6": check_strong_implies_plain,
    "Thm6": check_product_cancellation,
    "Thm7": check_quotient_phi_literal,
    "Prop7": check_quotient_lift,
    "PurePropn": check_pure,
    "VnrPropn": check_vnr,
    "Thm8": check_idealization,
    "Thm9": check_localization,
}

THEOREM_IDS = tuple(CHECKS)

# ================= RUNNERS =================

def run_theorem(theorem_id: str, corpus: Corpus) -> TheoremReport:
    """
    Runs one registered check over the corpus.

    @param theorem_id: A key of CHECKS
    @param corpus: The corpus to iterate
    @return: The report; an algebra error inside the check is itself a violation
    @raises UnknownTheorem: If the id is not registered
    """
    if theorem_id not in CHECKS:
        raise UnknownTheorem(theorem_id)
    report = TheoremReport(theorem_id)
    try:
        CHECKS[theorem_id](corpus, report)
    except AlgebraError as e:
        report.violations.append(Violation(theorem_id, "-", (), "-", "-", f"check raised {type(e).__name__}: {e}",
                                           lambda: True))
    if report.hypothesis_satisfied == 0:
        if theorem_id in EXPECTED_VACUOUS:
            report.vacuity_note = "no instance satisfies the literal hypothesis (it requires 0 to be regular)"
        else:
            report.vacuity_note = "no instance satisfies the hypotheses"
        log_warn(f"{theorem_id}: {report.vacuity_note}")
    log_info(f"{theorem_id}: {report.status} ({report.instances_checked} instances, "
             f"{report.hypothesis_satisfied} satisfying, {len(report.violations)} violations)")
    return report

def run_all(corpus: Corpus, theorem_ids: Optional[Sequence[str]] = None) -> Tuple[List[TheoremReport], int]:
    """
    Runs the checks in order. The phi_apply cache is empty on return.

    @param corpus: Rings and construction maps to check
    @param theorem_ids: Registered ids to run, default all
    @return: The reports in registry order and the exit status (0 iff no violations)
    """
    ids = list(theorem_ids) if theorem_ids is not None else list(THEOREM_IDS)
    try:
        reports = [run_theorem(t, corpus) for t in ids]
    finally:
        phi_apply.cache_clear()
    status = 0 if all(r.verified for r in reports) else 1
    return reports, status

def format_reports(reports: Sequence[TheoremReport]) -> str:
    """One block per theorem; no timestamps, fixed ordering."""
    lines = []
    for r in reports:
        lines.append(f"== {r.theorem_id} ==")
        lines.append(f"status: {r.status}")
        lines.append(f"instances: {r.instances_checked}")
        lines.append(f"hypothesis satisfied: {r.hypothesis_satisfied}")
        if r.vacuity_note:
            lines.append(f"vacuity: {r.vacuity_note}")
        for note in r.experimental:
            lines.append(f"experimental: {note}")
        for v in r.violations:
            lines.append(f"violation: {v.line()}")
        lines.append("")
    return "\n".join(lines)

def summary_json(reports: Sequence[TheoremReport], corpus: Optional[Corpus] = None) -> str:
    data = {
        "status": "ok" if all(r.verified for r in reports) else "violations",
        "violations": sum(len(r.violations) for r in reports),
        "active_mutations": sorted(mutations.active_mutations()),
        "theorems": {
            r.theorem_id: {
                "status": r.status,
                "instances": r.instances_checked,
                "hypothesis_satisfied": r.hypothesis_satisfied,
                "violations": [v.line() for v in r.violations],
                "vacuity_note": r.vacuity_note,
                "experimental": list(r.experimental),
            }
            for r in reports
        },
    }
    if corpus is not None:
        data["corpus"] = {"rings": len(corpus), "quotients": len(corpus.quotients),
                          "localizations": len(corpus.localizations), "idealizations": len(corpus.idealizations)}
    return json.dumps(data, indent=2, sort_keys=True)
