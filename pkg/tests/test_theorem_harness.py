import importlib
import json
from pathlib import Path

import pytest


# ============================================================
# Helper Functions
# ============================================================

def _import_target_module(monkeypatch, name="theorem_harness"):
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


def _corpus(h, families, max_order):
    return h.build_corpus(h.CorpusSpec(max_order=max_order, families=frozenset(families)))


# ============================================================
# Unit Tests: Corpus
# ============================================================

@pytest.mark.parametrize("kwargs", [
    {"groups": ("Z5",)},
    {"families": frozenset({"matrices"})},
    {"max_order": 0},
])
def test_corpus_spec_rejects_bad_parameters(monkeypatch, kwargs):
    h = _import_target_module(monkeypatch)

    with pytest.raises(h.HarnessError):
        h.CorpusSpec(**kwargs)


def test_corpus_above_enumeration_cap(monkeypatch):
    """
    Verifies:
    - max_order beyond the ideal enumeration cap raises CapExceeded
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    h = _import_target_module(monkeypatch)

    with pytest.raises(ga.CapExceeded):
        h.build_corpus(h.CorpusSpec(max_order=65))


def test_corpus_is_deterministic(monkeypatch):
    """
    Verifies:
    - zmod up to 6 gives Z_2 .. Z_6
    - Two builds list the same rings in the same order
    """
    h = _import_target_module(monkeypatch)
    first = _corpus(h, {"zmod"}, 6)
    second = _corpus(h, {"zmod"}, 6)

    assert len(first) == 5
    assert [R.name for R in first] == [R.name for R in second]
    assert [R.order for R in first] == [2, 3, 4, 5, 6]


def test_corpus_constructions_are_recorded(monkeypatch):
    """
    Verifies:
    - Idealizations of the base rings are built and appended as rings
    - Module orders stay within max_order
    """
    h = _import_target_module(monkeypatch)
    corpus = _corpus(h, {"zmod", "idealizations"}, 8)

    assert corpus.idealizations
    assert all(X.target.order <= 8 for X in corpus.idealizations)
    assert all(any(X.target is R for R in corpus) for X in corpus.idealizations)


def test_corpus_quotients_cover_every_ideal(monkeypatch):
    """
    Verifies:
    - Every nonzero proper graded ideal of a base ring gives a quotient map
    - A quotient ring joins the ring list only if nothing isomorphic is there yet
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    h = _import_target_module(monkeypatch)
    corpus = _corpus(h, {"products", "quotients"}, 8)

    assert len(corpus.quotients) == 8
    assert [R.order for R in corpus] == [4, 6, 8, 2, 3, 4]
    assert ga.is_isomorphic(corpus.rings[-1], ga.zmod(4))
    assert all(q.target in corpus.rings or any(ga.is_isomorphic(q.target, R) for R in corpus)
               for q in corpus.quotients)


def test_unit_mult_sets_of_z6(monkeypatch):
    """
    Verifies:
    - Homogeneous units of Z_6 close to {1} and {1, 5}, smallest first
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    h = _import_target_module(monkeypatch)

    assert h.unit_mult_sets(ga.zmod_graded(6)) == [frozenset({1}), frozenset({1, 5})]


# ============================================================
# Unit Tests: Reports
# ============================================================

def test_report_status_values(monkeypatch):
    """
    Verifies:
    - No satisfied hypothesis is vacuous, or expected-vacuous for the literal readings
    - A satisfied hypothesis without violations is verified
    """
    h = _import_target_module(monkeypatch)
    plain, literal = h.TheoremReport("Thm2"), h.TheoremReport("Thm1.1")

    plain.instance(False)
    assert plain.status == "vacuous"
    assert literal.status == "expected-vacuous"
    assert plain.instance(True)
    assert plain.status == "verified"
    assert (plain.instances_checked, plain.hypothesis_satisfied) == (2, 1)


def test_run_theorem_unknown_id(monkeypatch):
    h = _import_target_module(monkeypatch)

    with pytest.raises(h.UnknownTheorem) as exc:
        h.run_theorem("Thm99", _corpus(h, {"zmod"}, 4))
    assert exc.value.theorem_id == "Thm99"


def test_nonzero_regular_reading(monkeypatch):
    """
    Verifies:
    - The zero ideal always passes the relaxed regularity reading
    - (2) in Z_4 fails it; the unit ideal of the field Z_5 passes it
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    il = _import_target_module(monkeypatch, "ideal_lattice")
    h = _import_target_module(monkeypatch)
    R, F = ga.zmod_graded(4), ga.zmod_graded(5)
    ctx = h.RingContext(R)

    assert h.nonzero_regular(ctx, il.zero_ideal(R))
    assert not h.nonzero_regular(ctx, il.generate_ideal(R, [2]))
    assert h.nonzero_regular(h.RingContext(F), il.unit_ideal(F))


def test_run_all_empties_phi_cache(monkeypatch):
    """
    Verifies:
    - run_theorem leaves phi values cached
    - run_all returns with the phi_apply cache empty
    """
    pc = _import_target_module(monkeypatch, "phi_classifiers")
    h = _import_target_module(monkeypatch)
    corpus = _corpus(h, {"zmod"}, 6)

    h.run_theorem("Thm1.1", corpus)
    assert pc.phi_apply.cache_info().currsize > 0
    h.run_all(corpus, ["Thm1.1"])
    assert pc.phi_apply.cache_info().currsize == 0


def test_structure_and_construction_problems_are_empty(monkeypatch):
    """
    Verifies:
    - A valid ring has no structural problems
    - Quotient and idealization maps re-validate cleanly
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    il = _import_target_module(monkeypatch, "ideal_lattice")
    c = _import_target_module(monkeypatch, "constructions")
    h = _import_target_module(monkeypatch)
    R = ga.polyquot_graded(2, 0, 2)

    assert h.structure_problems(R) == []
    assert h.construction_problems(c.quotient(R, il.generate_ideal(R, [2]))) == []
    assert h.construction_problems(c.idealization(R, c.regular_module(R))) == []


# ============================================================
# Integration Tests: Verification Runs
# ============================================================

def test_clean_run_has_no_violations(monkeypatch):
    """
    Verifies:
    - Every registered check passes on a small corpus of all families
    - The literal readings of Thm1.1 and Thm7 are expected-vacuous with a note
    """
    h = _import_target_module(monkeypatch)
    corpus = _corpus(h, h.FAMILIES, 8)
    reports, status = h.run_all(corpus)
    by_id = {r.theorem_id: r for r in reports}

    assert status == 0
    assert [r.theorem_id for r in reports] == list(h.THEOREM_IDS)
    for theorem_id in h.EXPECTED_VACUOUS:
        assert by_id[theorem_id].status == "expected-vacuous"
        assert "0 to be regular" in by_id[theorem_id].vacuity_note
        assert by_id[theorem_id].experimental
    assert by_id["Thm2"].status == "verified"
    assert by_id["Check.Structure"].hypothesis_satisfied == len(corpus)


def test_reports_are_deterministic(monkeypatch):
    """
    Verifies:
    - format_reports and summary_json give identical text across runs
    - The summary carries status, counts and corpus sizes
    """
    h = _import_target_module(monkeypatch)
    ids = ["Prop1.1", "Thm1.1", "Prop2"]
    texts, summaries = [], []
    for _ in range(2):
        corpus = _corpus(h, {"zmod", "quotients"}, 8)
        reports, _ = h.run_all(corpus, ids)
        texts.append(h.format_reports(reports))
        summaries.append(h.summary_json(reports, corpus))

    assert texts[0] == texts[1]
    assert summaries[0] == summaries[1]
    assert "== Thm1.1 ==\nstatus: expected-vacuous" in texts[0]
    data = json.loads(summaries[0])
    assert data["status"] == "ok"
    assert data["violations"] == 0
    assert data["active_mutations"] == []
    assert list(data["theorems"]) == sorted(ids)
    assert data["corpus"]["rings"] == 7
    assert data["corpus"]["quotients"] == 5


def test_default_corpus_verifies(monkeypatch):
    """
    Verifies:
    - Every registered check passes on the default corpus (status 0)
    - Only the ids in EXPECTED_VACUOUS have no satisfied hypothesis
    """
    h = _import_target_module(monkeypatch)
    reports, status = h.run_all(h.build_corpus(h.CorpusSpec()))

    assert status == 0
    for r in reports:
        if r.theorem_id in h.EXPECTED_VACUOUS:
            assert r.status == "expected-vacuous"
        else:
            assert r.status != "vacuous", r.theorem_id


# ============================================================
# Integration Tests: Mutations
# ============================================================

@pytest.mark.parametrize("mutation, theorem_id, families, max_order", [
    ("drop-regular-guard", "Thm2", {"zmod"}, 6),
    ("pure-witness-anywhere", "PurePropn", {"zmod"}, 6),
    ("vnr-linear", "VnrPropn", {"zmod", "products"}, 8),
    ("colon-uses-addition", "Thm2", {"zmod"}, 6),
    ("colon-uses-addition", "Check.Radical", {"zmod"}, 6),
    ("module-zero-divisors-empty", "Check.Constructions", {"zmod", "idealizations"}, 8),
])
def test_mutation_is_caught_and_replays(monkeypatch, mutation, theorem_id, families, max_order):
    """
    Verifies:
    - Each mutation makes the named check report a violation
    - Every violation replays while the mutation is active
    - Without the mutation the same check is clean
    """
    mut = _import_target_module(monkeypatch, "mutations")
    h = _import_target_module(monkeypatch)

    with mut.mutated(mutation):
        report = h.run_theorem(theorem_id, _corpus(h, families, max_order))
        assert report.status == "violated"
        assert all(h.replay(v) for v in report.violations)
        summary = json.loads(h.summary_json([report]))
        assert summary["active_mutations"] == [mutation]

    assert h.run_theorem(theorem_id, _corpus(h, families, max_order)).verified


def test_unknown_mutation(monkeypatch):
    mut = _import_target_module(monkeypatch, "mutations")

    with pytest.raises(mut.UnknownMutation):
        with mut.mutated("no-such-defect"):
            pass
    assert mut.active_mutations() == frozenset()
