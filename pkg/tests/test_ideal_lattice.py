import importlib
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st


# ============================================================
# Helper Functions
# ============================================================

def _import_target_module(monkeypatch, name="ideal_lattice"):
    """
    Imports a module from the project root with sibling imports resolvable.

    @param monkeypatch Pytest fixture used to extend sys.path
    @param name        Module name without .py
    @return Imported module
    @throws FileNotFoundError if the module is not in the project root
    """
    project_root = Path(__file__).resolve().parents[1]
    script_path = project_root / f"{name}.py"

    if not script_path.exists():
        raise FileNotFoundError(f"Could not find {script_path}. Put {name}.py in the project root.")

    monkeypatch.syspath_prepend(str(project_root))
    return importlib.import_module(name)


def _ring(monkeypatch, n):
    return _import_target_module(monkeypatch, "graded_algebra").zmod_graded(n)


def _elements(I):
    return set(I.elements)


# ============================================================
# Unit Tests: Enumeration
# ============================================================

def test_z4_has_three_graded_ideals(monkeypatch):
    """
    Verifies:
    - GI(Z_4) = {0}, {0, 2}, Z_4 in (size, elements) order
    - zero / unit / proper accessors
    """
    m = _import_target_module(monkeypatch)
    inv = m.enumerate_graded_ideals(_ring(monkeypatch, 4))

    assert [I.elements for I in inv] == [(0,), (0, 2), (0, 1, 2, 3)]
    assert inv.zero.is_zero()
    assert not inv.unit.is_proper
    assert len(inv.proper()) == 2


def test_field_has_two_graded_ideals(monkeypatch):
    """
    Verifies:
    - Z_5 has only the zero ideal and itself
    """
    m = _import_target_module(monkeypatch)

    assert len(m.enumerate_graded_ideals(_ring(monkeypatch, 5))) == 2


def test_dual_numbers_graded_ideals(monkeypatch):
    """
    Verifies:
    - Z_2[x]/(x^2) graded by Z_2 has 3 graded ideals
    - (x) splits as P cap R_0 = {0}, P cap R_1 = {0, x}
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    R = ga.polyquot_graded(2, 0, 2)
    inv = m.enumerate_graded_ideals(R)
    X = inv.find([0, 2])

    assert len(inv) == 3
    assert X is not None
    assert X.components() == {0: frozenset({0}), 1: frozenset({0, 2})}
    assert X.label() == "{0, x}"


def test_enumeration_skips_non_graded_ideals(monkeypatch):
    """
    Verifies:
    - In Z_2[Z_2] the ideal (1+t) is an ideal but not graded
    - Enumeration and oracle both leave it out
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    R = ga.group_ring_graded(2, ga.cyclic_group(2))

    with pytest.raises(m.NotGraded):
        m.GradedIdeal(R, [0, 3])
    inv = m.enumerate_graded_ideals(R)
    assert inv.find([0, 3]) is None
    assert (0, 3) not in m.oracle_graded_ideals(R)


def test_enumeration_cap(monkeypatch):
    """
    Verifies:
    - Rings above the cap raise TooLarge
    """
    m = _import_target_module(monkeypatch)

    with pytest.raises(m.TooLarge):
        m.enumerate_graded_ideals(_ring(monkeypatch, 8), cap=4)


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(min_value=2, max_value=32))
def test_zmod_ideals_match_divisors(monkeypatch, n):
    """
    Verifies:
    - |GI(Z_n)| equals the number of divisors of n
    - Enumeration agrees with the oracle scan
    """
    m = _import_target_module(monkeypatch)
    R = _ring(monkeypatch, n)
    inv = m.enumerate_graded_ideals(R, cross_check=False)

    assert len(inv) == sum(1 for d in range(1, n + 1) if n % d == 0)
    assert frozenset(I.elements for I in inv) == m.oracle_graded_ideals(R)


def test_klein_group_ring_matches_oracle(monkeypatch):
    """
    Verifies:
    - Cross-checked enumeration of Z_2[klein4] raises no mismatch
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    R = ga.group_ring_graded(2, ga.klein_four())

    inv = m.enumerate_graded_ideals(R, cross_check=True)
    assert frozenset(I.elements for I in inv) == m.oracle_graded_ideals(R)


# ============================================================
# Unit Tests: Generators
# ============================================================

def test_generate_ideal_rejects_non_homogeneous(monkeypatch):
    """
    Verifies:
    - 1+x is not homogeneous in graded Z_2[x]/(x^2)
    - The error carries the element
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    R = ga.polyquot_graded(2, 0, 2)

    with pytest.raises(m.NonHomogeneousGenerator) as exc:
        m.generate_ideal(R, [3])
    assert exc.value.x == 3


def test_not_an_ideal(monkeypatch):
    """
    Verifies:
    - {0, 2} is not closed under addition in Z_6
    """
    m = _import_target_module(monkeypatch)

    with pytest.raises(m.NotAnIdeal):
        m.GradedIdeal(_ring(monkeypatch, 6), [0, 2])


# ============================================================
# Unit Tests: Operators
# ============================================================

def test_sum_and_intersection_in_z12(monkeypatch):
    """
    Verifies:
    - (4) + (6) = (2) and (4) cap (6) = 0 in Z_12
    """
    m = _import_target_module(monkeypatch)
    R = _ring(monkeypatch, 12)
    I, J = m.generate_ideal(R, [4]), m.generate_ideal(R, [6])

    assert _elements(m.ideal_sum(I, J)) == {0, 2, 4, 6, 8, 10}
    assert m.ideal_intersection(I, J).is_zero()


def test_operators_refuse_ideals_of_different_rings(monkeypatch):
    """
    Verifies:
    - Mixing parents raises ParentMismatch
    """
    m = _import_target_module(monkeypatch)
    I = m.zero_ideal(_ring(monkeypatch, 4))
    J = m.zero_ideal(_ring(monkeypatch, 4))

    with pytest.raises(m.ParentMismatch):
        m.ideal_sum(I, J)


def test_power_chain_of_two_in_z8(monkeypatch):
    """
    Verifies:
    - (2), (2)^2 = (4), (2)^3 = 0 in Z_8
    - The omega value is the last link
    """
    m = _import_target_module(monkeypatch)
    P = m.generate_ideal(_ring(monkeypatch, 8), [2])
    chain = m.power_chain(P)

    assert [_elements(I) for I in chain] == [{0, 2, 4, 6}, {0, 4}, {0}]
    assert _elements(m.ideal_power(P, 2)) == {0, 4}
    assert m.omega_intersection(P).is_zero()


def test_ideal_power_rejects_zero_exponent(monkeypatch):
    m = _import_target_module(monkeypatch)

    with pytest.raises(ValueError):
        m.ideal_power(m.zero_ideal(_ring(monkeypatch, 4)), 0)


def test_colon_ideal_in_z8(monkeypatch):
    """
    Verifies:
    - ({0, 4} : 2) = {0, 2, 4, 6}
    - (empty : a) is empty
    """
    m = _import_target_module(monkeypatch)
    R = _ring(monkeypatch, 8)
    P = m.generate_ideal(R, [4])

    assert _elements(m.colon_ideal(P, 2)) == {0, 2, 4, 6}
    assert m.colon_set(R, None, 2) == frozenset()


def test_colon_ideal_needs_homogeneous_element(monkeypatch):
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    R = ga.polyquot_graded(2, 0, 2)

    with pytest.raises(m.NonHomogeneousElement):
        m.colon_ideal(m.zero_ideal(R), 3)


def test_colon_mutation_changes_the_answer(monkeypatch):
    """
    Verifies:
    - Under colon-uses-addition, ({0, 4} : 2) becomes {b : 2 + b in P}
    """
    mut = _import_target_module(monkeypatch, "mutations")
    m = _import_target_module(monkeypatch)
    P = m.generate_ideal(_ring(monkeypatch, 8), [4])

    with mut.mutated("colon-uses-addition"):
        assert _elements(m.colon_ideal(P, 2)) == {2, 6}
    assert _elements(m.colon_ideal(P, 2)) == {0, 2, 4, 6}


def test_graded_radical(monkeypatch):
    """
    Verifies:
    - Grad(0) in Z_8 is {0, 2, 4, 6}
    - Grad(0) in graded Z_2[x]/(x^2) is (x)
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)

    assert _elements(m.graded_radical(m.zero_ideal(_ring(monkeypatch, 8)))) == {0, 2, 4, 6}
    assert _elements(m.graded_radical(m.zero_ideal(ga.polyquot_graded(2, 0, 2)))) == {0, 2}
