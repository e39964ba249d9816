import importlib
from pathlib import Path

import pytest


PROJECT_ROOT = Path(__file__).resolve().parents[1]
SAMPLES = PROJECT_ROOT / "samples"


# ============================================================
# Helper Functions
# ============================================================

def _import_target_module(monkeypatch, name="ring_spec"):
    """
    Imports a module from the project root with sibling imports resolvable.

    @param monkeypatch Pytest fixture used to extend sys.path
    @param name        Module name without .py
    @return Imported module
    @throws FileNotFoundError if the module is not in the project root
    """
    script_path = PROJECT_ROOT / f"{name}.py"

    if not script_path.exists():
        raise FileNotFoundError(f"Could not find {script_path}. Put {name}.py in the project root.")

    monkeypatch.syspath_prepend(str(PROJECT_ROOT))
    return importlib.import_module(name)


# ============================================================
# Unit Tests: Parsing Samples
# ============================================================

def test_parse_table_sample(monkeypatch):
    """
    Verifies:
    - The explicit-table Z_4 sample parses with its named ideals and sets
    - No module line means no module
    """
    m = _import_target_module(monkeypatch)
    spec = m.read_ring_spec(str(SAMPLES / "z4_trivial.ring"))

    assert spec.ring.name == "Z_4"
    assert spec.ring.order == 4
    assert spec.ring.group.order == 1
    assert spec.ideals["P"].elements == (0, 2)
    assert spec.ideals["Z"].is_zero()
    assert spec.msets == {"U": frozenset({1, 3}), "S": frozenset({1})}
    assert spec.module is None


def test_parse_polyquot_sample_with_labels(monkeypatch):
    """
    Verifies:
    - Components given by label land on the right indices
    - The module line builds the regular module
    """
    m = _import_target_module(monkeypatch)
    spec = m.read_ring_spec(str(SAMPLES / "z2x_sq_z2graded.ring"))
    R = spec.ring

    assert R.group.name == "Z_2"
    assert R.component(0) == frozenset({0, 1})
    assert R.component(1) == frozenset({0, 2})
    assert spec.ideals["X"].elements == (0, 2)
    assert spec.module.name == "R"
    assert spec.module.order == 4


def test_structured_forms_pick_their_gradings(monkeypatch):
    """
    Verifies:
    - polyquot without a group line is trivially graded
    - groupring is graded by its group unless told otherwise
    - product builds Z_2 x Z_3
    """
    m = _import_target_module(monkeypatch)

    plain = m.parse_ring_spec("ring: polyquot base=zmod 2, poly=[0, 0, 1]\n").ring
    assert plain.group.order == 1
    graded = m.parse_ring_spec("ring: groupring base=zmod 2, group=zmod 2\n").ring
    assert graded.group.order == 2
    assert graded.component(1) == frozenset({0, 2})
    assert m.parse_ring_spec("ring: product [2, 3]\n").ring.order == 6


def test_module_line_variants(monkeypatch):
    """
    Verifies:
    - quotient ideal=NAME builds R/I
    - zero builds the zero module
    """
    m = _import_target_module(monkeypatch)

    spec = m.parse_ring_spec("ring: zmod 4\nideal P: [2]\nmodule: quotient ideal=P\n")
    assert spec.module.order == 2
    assert m.parse_module(spec.ring, "zero", spec.ideals).order == 1


# ============================================================
# Unit Tests: Parse Errors
# ============================================================

@pytest.mark.parametrize("text, line", [
    ("ring: zmod 4\ncolor: red\n", 2),
    ("ring: zmod 4\nideal P: [2\n", 2),
    ("ring: zmod 4\nideal P: [2, x]\n", 2),
    ("ring: zmod 4\nring: zmod 5\n", 2),
    ("name: lonely\n", 1),
    ("ring: zmod 4\nadd: [[0]]\n", 2),
    ("ring: zmod 4\ngroup: zmod 2\n", 2),
    ("ring: zmod 4\nideal P: [7]\n", 2),
    ("ring: zmod 4\nideal: [2]\n", 2),
    ("ring: zmod 4\n\n# comment\nmodule: weird\n", 4),
    ("ring: cubic 3\n", 1),
    ("ring: zmod 4\ngroup: dihedral\n", 2),
    ("ring: zmod 4\nmodule: quotient ideal=Q\n", 2),
    ("this is not a ring\n", 1),
    ("ring: table\nadd: [[0, 1], [1, 2]]\nmul: [[0, 0], [0, 1]]\n", 2),
    ("ring: table\nadd: [[0, 1], [1, 0]]\nmul: [[0, 0, 0], [0, 1, 2], [0, 2, 1]]\n", 3),
    ("ring: table\nadd: [[0, 1], [1, 0]]\nmul: [[0, 0], [0, true]]\n", 3),
    ("ring: table\nadd: [[0, 1], [1, 0]]\nmul: [[0, 0], [0, 1]]\none: 5\n", 4),
    ("ring: table\nadd: 7\nmul: [[0]]\n", 2),
])
def test_parse_errors_carry_line_numbers(monkeypatch, text, line):
    m = _import_target_module(monkeypatch)

    with pytest.raises(m.ParseError) as exc:
        m.parse_ring_spec(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_invalid_algebra_is_not_a_parse_error(monkeypatch):
    """
    Verifies:
    - Overlapping components parse but fail grading validation
    - A non-distributive table fails ring validation
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    overlap = "ring: zmod 4\ngroup: zmod 2\ncomponent 0: [0, 2]\ncomponent 1: [0, 2]\n"
    table = ("ring: table\nadd: [[0, 1, 2], [1, 2, 0], [2, 0, 1]]\n"
             "mul: [[0, 0, 0], [0, 1, 2], [0, 2, 2]]\n")

    with pytest.raises(ga.NotDirectSum):
        m.parse_ring_spec(overlap)
    with pytest.raises(ga.InvalidStructure):
        m.parse_ring_spec(table)


def test_resolve_names_and_literals(monkeypatch):
    """
    Verifies:
    - Named ideals and sets resolve; JSON lists generate
    - Unknown names raise UnknownIdeal
    """
    m = _import_target_module(monkeypatch)
    spec = m.read_ring_spec(str(SAMPLES / "z4_trivial.ring"))

    assert m.resolve_ideal(spec, "P") is spec.ideals["P"]
    assert m.resolve_ideal(spec, "[2]").elements == (0, 2)
    assert m.resolve_mset(spec, "[1, 3]") == frozenset({1, 3})
    with pytest.raises(m.UnknownIdeal):
        m.resolve_ideal(spec, "Q")
    with pytest.raises(m.UnknownIdeal):
        m.resolve_mset(spec, "T")


# ============================================================
# Unit Tests: Export / Isomorphism
# ============================================================

@pytest.mark.parametrize("sample", ["z4_trivial.ring", "z2x_sq_z2graded.ring"])
def test_export_reparses_to_identical_tables(monkeypatch, sample):
    """
    Verifies:
    - Exported table form rebuilds the same tables, name and components
    """
    m = _import_target_module(monkeypatch)
    R = m.read_ring_spec(str(SAMPLES / sample)).ring
    S = m.parse_ring_spec(m.export_ring(R)).ring

    assert m.tables_equal(R, S)
    assert S.name == R.name
    assert S.components == R.components
    assert m.is_isomorphic(R, S)


def test_export_klein_graded_group_ring(monkeypatch):
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    R = ga.group_ring_graded(2, ga.klein_four())
    text = m.export_ring(R)

    assert "group: klein4" in text
    assert m.parse_ring_spec(text).ring.components == R.components


def test_isomorphism_search(monkeypatch):
    """
    Verifies:
    - Z_6 and Z_2 x Z_3 are isomorphic
    - Z_4, Z_2 x Z_2 and Z_2[x]/(x^2) are pairwise not
    - Z_2[Z_2] is isomorphic to the dual numbers over Z_2
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    z4, klein, dual = ga.zmod(4), ga.product_ring([2, 2]), ga.polyquot(2, [0, 0, 1])

    assert m.is_isomorphic(ga.zmod(6), ga.product_ring([2, 3]))
    assert not m.is_isomorphic(z4, klein)
    assert not m.is_isomorphic(z4, dual)
    assert not m.is_isomorphic(klein, dual)
    assert m.is_isomorphic(ga.group_ring(2, ga.cyclic_group(2)), dual)
    assert not m.is_isomorphic(ga.zmod(4), ga.zmod(5))


def test_isomorphism_compares_grading_shape(monkeypatch):
    """
    Verifies:
    - The same ring graded two ways is not isomorphic as graded rings, above and below the cap
    - Above the cap, equal order and grading shape is accepted
    - A bare table ring ignores the grading
    """
    ga = _import_target_module(monkeypatch, "graded_algebra")
    m = _import_target_module(monkeypatch)
    big = ga.polyquot_graded(5, 0, 2)
    small = ga.polyquot_graded(2, 0, 2)

    assert big.order > ga.ISOMORPHISM_CAP
    assert ga.grading_shape(big) == (2, (5, 5))
    assert not m.is_isomorphic(big, ga.trivially_graded(ga.polyquot(5, [0, 0, 1])))
    assert m.is_isomorphic(big, ga.polyquot_graded(5, 0, 2))
    assert m.is_isomorphic(big, ga.polyquot(5, [0, 0, 1]))
    assert not m.is_isomorphic(small, ga.trivially_graded(ga.polyquot(2, [0, 0, 1])))


# ============================================================
# Unit Tests: Corpus Spec
# ============================================================

def test_corpus_spec_with_seed(monkeypatch, tmp_path):
    """
    Verifies:
    - Keys map onto CorpusSpec fields
    - Seed paths resolve against base_dir
    """
    m = _import_target_module(monkeypatch)
    (tmp_path / "seed.ring").write_text("ring: zmod 9\n", encoding="utf-8")
    text = 'max_order: 6\ngroups: ["trivial"]\nfamilies: ["zmod"]\nseeds: ["seed.ring"]\n'

    spec = m.parse_corpus_spec(text, str(tmp_path))
    assert spec.max_order == 6
    assert spec.groups == ("trivial",)
    assert spec.families == frozenset({"zmod"})
    assert [R.order for R in spec.seeds] == [9]


def test_default_corpus_sample(monkeypatch):
    m = _import_target_module(monkeypatch)
    spec = m.read_corpus_spec(str(SAMPLES / "default.corpus"))

    assert spec.max_order == 16
    assert len(spec.seeds) == 2


@pytest.mark.parametrize("text", [
    'families: ["matrices"]\n',
    'seeds: ["missing.ring"]\n',
    'max_order: big\n',
    'ring: zmod 4\n',
])
def test_corpus_spec_errors(monkeypatch, tmp_path, text):
    m = _import_target_module(monkeypatch)

    with pytest.raises(m.ParseError):
        m.parse_corpus_spec(text, str(tmp_path))
