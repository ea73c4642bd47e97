import json
import random
from itertools import permutations

import pytest

from rcch.axioms import (
    CATALOG_IDS,
    COSETS,
    Catalog,
    EquationSchema,
    build_w1,
    build_w1_w2,
    build_w2,
    catalog_ids,
    check_catalog,
    check_sound,
    dump_catalog,
    h_star,
    instantiate,
    load_catalog,
    load_catalog_file,
    render_report,
    report_json,
    rs_transport,
    verify_h_table,
)
from rcch.axioms.schema import compile_expr, condition_holds
from rcch.circuit import Swap
from rcch.codec import encode_gate, flip_factor, gray_form_first, gray_form_second
from rcch.errors import ConfigError, DimensionTooSmall, FormMismatch, ParseError
from rcch.words import PHH, HGen, Neg, PWord, Word, XGen, flatten, gens_semantics, word_semantics


@pytest.fixture(scope="module")
def generated():
    return rs_transport()


# =================================================
# Schemas and instantiation
# =================================================
@pytest.mark.parametrize("catalog_id, name, count", [
    ("fig8", "fig8:20", 8),
    ("fig8", "fig8:24", 6),
    ("fig7", "fig7:d4*", 1),
])
def test_instance_counts(catalog_id, name, count):
    schema = load_catalog(catalog_id).get(name)
    assert len(instantiate(schema, 8)) == count


def test_instances_are_sampled_deterministically():
    schema = load_catalog("fig6").get("fig6:a2")
    full = instantiate(schema, 8)
    assert len(full) == 28
    sample = instantiate(schema, 8, budget=10, seed=3)
    assert len(sample) == 10
    assert sample == instantiate(schema, 8, budget=10, seed=3)
    keys = [tuple(v for _, v in inst.assignment) for inst in sample]
    assert keys == sorted(keys)


def test_min_dim_is_enforced():
    with pytest.raises(DimensionTooSmall):
        instantiate(load_catalog("fig8").get("fig8:20"), 4)
    report = check_catalog("fig7", dim=4, budget=50)
    d4 = next(r for r in report.results if r.name == "fig7:d4*")
    assert not d4.applicable and d4.instances == 0


def test_conditions():
    assert condition_holds("$a+1 < N", {"a": 6}, 8)
    assert not condition_holds("$a+1 < N", {"a": 7}, 8)
    assert condition_holds("{$a, $b} & {0, 1} == {0}", {"a": 0, "b": 5}, 8)
    assert condition_holds("gray_form_second($a,$b,$c,$d)", {"a": 0, "b": 1, "c": 3, "d": 2}, 8)


@pytest.mark.parametrize("text", ["__import__('os')", "a.real", "1.5 < a", "lambda: 1"])
def test_expression_grammar_is_closed(text):
    with pytest.raises(ParseError):
        compile_expr(text)


def test_schema_validation():
    with pytest.raises(ParseError):
        EquationSchema(name="bad", lhs="Q[$a]")
    with pytest.raises(ParseError):
        EquationSchema(name="bad", lhs="Z[$a]", when="open($a)")
    s = EquationSchema(name="one", lhs="Z[$a]^2", when="$a > 2")
    assert s.when == ["$a > 2"]
    assert s.variables() == ["a"]


def test_macro_patterns():
    s = EquationSchema(name="sigma", lhs="SIGMA[$a,$b,$c,$d] (H[0,1] H[3,2]) SIGMAP[$a,$b,$c,$d]",
                       rhs="(H[$a,$b] H[$c,$d])", distinct=True, min_dim=8)
    for inst in instantiate(s, 8, budget=40, seed=1):
        assert check_sound(inst.lhs, inst.rhs), inst.describe()


# =================================================
# Soundness checks
# =================================================
def test_check_sound_exact():
    assert check_sound(Word(4, [HGen(0, 1), HGen(0, 1)]), Word(4))
    assert not check_sound(Word(4, [Neg(0)]), Word(4))
    assert not check_sound(Word(4), Word(8))


def test_mutated_equation_is_caught():
    good = load_catalog("fig8").get("fig8:20")
    bad = EquationSchema(name="fig8:20-mutated", lhs=good.lhs, rhs="(Z[$a] Z[N-1-$a])", min_dim=8)
    report = check_catalog(Catalog(id="mutated", schemas=[good, bad]), dim=8)
    assert not report.ok
    assert [r.name for r in report.failing] == ["fig8:20-mutated"]
    assert report.failing[0].instances == 8
    assert "FAIL fig8:20-mutated" in render_report(report)


def test_unbuildable_assignments_are_reported():
    # nothing keeps $a+3 below the dimension
    schema = EquationSchema(name="unbounded", lhs="H[$a,$a+1] H[$a+2,$a+3]", rhs="H[$a+2,$a+3] H[$a,$a+1]",
                            min_dim=4)
    insts = instantiate(schema, 4)
    assert len(insts) == 4
    assert [inst.built for inst in insts] == [True, False, False, False]
    assert "IndexOutOfRange" in insts[1].error
    assert "not built" in insts[1].describe()
    report = check_catalog(Catalog(id="unbounded", schemas=[schema]), dim=4)
    assert not report.ok
    result = report.results[0]
    assert (result.instances, result.passed, len(result.failures)) == (4, 1, 3)
    assert all("not built: IndexOutOfRange" in text for text in result.failures)


def test_report_formats():
    report = check_catalog("fig12_13_semantic", dim=8, budget=10)
    assert report.ok
    assert report.skipped
    data = json.loads(report_json(report))
    assert data["catalog"] == "fig12_13_semantic"
    assert "skipped fig13:111-125" in render_report(report)


def test_catalog_ids():
    assert set(CATALOG_IDS) <= set(catalog_ids())
    with pytest.raises(ConfigError):
        load_catalog("fig99")


@pytest.mark.slow
@pytest.mark.parametrize("catalog_id", CATALOG_IDS)
def test_catalogs_are_sound(catalog_id):
    report = check_catalog(catalog_id, dim=8, budget=200, seed=0)
    assert report.ok, render_report(report)


# =================================================
# Face-form words
# =================================================
def test_w1_w2_contract():
    tuples = [t for t in permutations(range(8), 4)
              if gray_form_first(3, *t) or gray_form_second(3, *t)]
    assert tuples
    for a, b, c, d in tuples:
        target = word_semantics(Word(8, [HGen(a, b), HGen(c, d)]))
        w1, w2 = build_w1_w2(a, b, c, d, 3)
        if gray_form_first(3, a, b, c, d):
            assert w2 is None
            assert word_semantics(flatten(w1)) == target
        else:
            assert w1 is None
            assert word_semantics(flatten(w2)) == target


@pytest.mark.parametrize("a, b, c, d", [(0, 3, 1, 2), (0, 1, 7, 6), (2, 13, 5, 10), (0, 3, 15, 12), (7, 6, 8, 9)])
def test_w1_w2_contract_at_four_qubits(a, b, c, d):
    assert gray_form_first(4, a, b, c, d) or gray_form_second(4, a, b, c, d)
    build = build_w1 if gray_form_first(4, a, b, c, d) else build_w2
    target = word_semantics(Word(16, [HGen(a, b), HGen(c, d)]))
    assert word_semantics(flatten(build(a, b, c, d, 4))) == target


def test_base_pair_needs_no_ladder():
    assert build_w2(0, 1, 3, 2, 3) == PWord(8, [PHH((0, 1), (3, 2))])


def test_w1_ladder_and_flips():
    # gray 010, 110, 011, 111: flipped wires 0 and 2, the control on wire 1 reads 1
    swap0, swap1 = encode_gate(Swap(0, 1), 3), encode_gate(Swap(1, 2), 3)
    flip = flip_factor(0, 0, 3)
    expected = swap0 + swap1 + flip + [PHH((0, 1), (3, 2))] + flip + swap1 + swap0
    assert build_w1(3, 4, 2, 5, 3) == PWord(8, expected)
    # a control reading 0 needs no flip
    assert build_w1(0, 3, 1, 2, 3) == PWord(8, swap1 + [PHH((0, 1), (3, 2))] + swap1)


def test_w1_w2_rejections():
    with pytest.raises(FormMismatch):
        build_w1_w2(0, 1, 2, 3, 3)
    with pytest.raises(DimensionTooSmall):
        build_w1_w2(0, 1, 3, 2, 2)
    with pytest.raises(FormMismatch):
        build_w1(0, 1, 3, 2, 3)
    with pytest.raises(FormMismatch):
        build_w2(0, 3, 1, 2, 3)


# =================================================
# Coset transport
# =================================================
def test_h_table_is_exact():
    assert verify_h_table(8) == []


def test_transport_of_random_words():
    rng = random.Random(9)
    for _ in range(20):
        gens = []
        for _ in range(rng.randrange(1, 8)):
            a, b = rng.sample(range(8), 2)
            gens.append(rng.choice([Neg(a), XGen(a, b), HGen(a, b)]))
        for coset, rep in COSETS.items():
            pw, end = h_star(coset, gens, 8)
            assert gens_semantics(list(rep) + gens, 8) == \
                gens_semantics(list(flatten(pw).gens) + list(COSETS[end]), 8)


@pytest.mark.parametrize("generated_name, listed_name", [
    ("DE-ZZ", "A.3.2:DE-ZZ"),
    ("DE-HH", "A.3.2:DE-HH"),
    ("ε-a1*", "A.3.2:ε-a1"),
    ("Z-a3-2", "A.3.2:Z-a3-2"),
    ("H-a3", "A.3.2:H-a3"),
])
def test_generated_equations_match_listing(generated, generated_name, listed_name):
    listed = load_catalog("a32_raw").get(listed_name)
    assert generated.get(generated_name).shape() == listed.shape()


def test_decomposition_equation_holds():
    report = check_catalog(Catalog(id="de", schemas=[rs_transport().get("DE-ZZ")]), dim=8)
    assert report.ok and report.results[0].instances > 0


def test_generated_catalog_roundtrips_through_toml(generated, tmp_path):
    path = tmp_path / "rs.toml"
    path.write_text(dump_catalog(generated), encoding="utf-8")
    (loaded,) = load_catalog_file(path)
    assert loaded.id == generated.id
    assert loaded.schemas == generated.schemas


@pytest.mark.slow
def test_generated_catalog_is_sound(generated):
    report = check_catalog(generated, dim=8, budget=100, seed=0)
    assert report.ok, render_report(report)
