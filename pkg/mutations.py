"""
Mutation hook for the verification harness.

A mutation is a named, deliberate defect in one predicate or construction.
Activating one must make at least one registered check report a violation;
the harness test-suite uses this to prove the checks have teeth.

    with mutated("drop-regular-guard"):
        report = run_theorem("Thm2", corpus)
"""

from contextlib import contextmanager
from typing import FrozenSet, Iterator

# ================= CONFIG =================

KNOWN_MUTATIONS = {
    "drop-regular-guard": "phi-r scan ranges over every homogeneous x, not only Ann(x)={0}",
    "pure-witness-anywhere": "phi-pure accepts witnesses y outside P",
    "vnr-linear": "phi-vNr tests x = x*y instead of x = x^2*y",
    "colon-uses-addition": "(P : a) collects b with a+b in P",
    "module-zero-divisors-empty": "Zd(M) is reported as the empty set",
}

_ACTIVE: FrozenSet[str] = frozenset()

# ================= HOOK =================

class UnknownMutation(KeyError):
    pass

def active(name: str) -> bool:
    return name in _ACTIVE

def active_mutations() -> FrozenSet[str]:
    return _ACTIVE

@contextmanager
def mutated(*names: str) -> Iterator[None]:
    """
    Activates the named mutations for the duration of the block.

    @param names: Mutation names from KNOWN_MUTATIONS
    @raises UnknownMutation: If a name is not registered
    """
    global _ACTIVE
    for n in names:
        if n not in KNOWN_MUTATIONS:
            raise UnknownMutation(n)
    previous = _ACTIVE
    _ACTIVE = previous | frozenset(names)
    try:
        yield
    finally:
        _ACTIVE = previous
