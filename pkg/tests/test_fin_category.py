import pytest
from catlim import FinCategory, InvalidCategory, validate_category
from catlim.generators import mutate_composition, random_preorder_category
from hypothesis import given, settings, strategies as st
from random import Random


def test_terminal_category():
    terminal = FinCategory.terminal()

    assert terminal.validate().is_valid
    assert terminal.is_terminal()
    assert terminal.objects == ["0"]


def test_ordinal():
    chain = FinCategory.ordinal(2)

    assert chain.validate().is_valid
    assert len(chain.objects) == 3
    assert len(chain.morphisms) == 6
    assert chain.compose("1->2", "0->1") == "0->2"
    assert chain.hom("2", "0") == []


def test_from_generators_with_identity_composite():
    category = FinCategory.from_generators(
        "retract",
        ["a", "b"],
        {"s": ("a", "b"), "r": ("b", "a"), "e": ("b", "b")},
        {("r", "s"): "1", ("s", "r"): "e", ("e", "s"): "s", ("r", "e"): "r", ("e", "e"): "e"},
    )

    assert category.validate().is_valid
    assert category.compose("r", "s") == "1_a"


def test_wrong_type_is_reported():
    chain = FinCategory.ordinal(2)
    table = dict(chain.compose_table)
    table[("1->2", "0->1")] = "0->1"
    broken = FinCategory("broken", chain.objects, chain.morphisms, chain.identity, table)

    report = broken.validate()

    assert report.violations == ["composite 1->2∘0->1 = 0->1 has the wrong type"]


def test_validate_category_returns_the_report():
    chain = FinCategory.ordinal(2)
    table = dict(chain.compose_table)
    table[("1->2", "0->1")] = "0->1"
    broken = FinCategory("broken", chain.objects, chain.morphisms, chain.identity, table)

    report = validate_category(broken)

    assert not report.is_valid
    assert any("1->2∘0->1" in violation for violation in report.violations)
    assert validate_category(chain).is_valid
    with pytest.raises(InvalidCategory):
        report.raise_if_invalid()


def test_every_violated_law_is_reported():
    chain = FinCategory.ordinal(2)
    table = dict(chain.compose_table)
    table[("1->2", "0->1")] = "0->1"
    del table[("1_2", "1->2")]
    broken = FinCategory("broken", chain.objects, chain.morphisms, chain.identity, table)

    report = validate_category(broken)

    assert "composite 1->2∘0->1 = 0->1 has the wrong type" in report.violations
    assert "totality gap: 1_2∘1->2 is undefined" in report.violations
    assert "left unit law fails at 1->2" in report.violations


def test_totality_gap_is_reported():
    category = FinCategory.from_generators("gap", ["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")})

    report = category.validate()

    assert "totality gap: g∘f is undefined" in report.violations


def test_associativity_failure_is_reported():
    category = FinCategory.from_generators(
        "twisted",
        ["a"],
        {"x": ("a", "a"), "y": ("a", "a")},
        {("x", "x"): "y", ("y", "y"): "y", ("x", "y"): "x", ("y", "x"): "y"},
    )

    report = category.validate()

    assert not report.is_valid
    assert any(violation.startswith("associativity fails") for violation in report.violations)


def test_product_and_opposite():
    square = FinCategory.product(FinCategory.ordinal(1), FinCategory.ordinal(1))

    assert square.validate().is_valid
    assert len(square.objects) == 4
    assert len(square.morphisms) == 9
    assert square.opposite().validate().is_valid
    assert square.opposite().opposite() is square


def test_to_dict_is_sorted():
    category = FinCategory.from_generators("C", ["b", "a"], {"f": ("b", "a")})

    document = category.to_dict()

    assert document["objects"] == ["a", "b"]
    assert [m["id"] for m in document["morphisms"]] == ["1_a", "f", "1_b"]


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_random_preorders_validate(seed):
    category = random_preorder_category(Random(seed))

    assert category.validate().is_valid


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_redirected_composite_is_caught(seed):
    rng = Random(seed)
    category = random_preorder_category(rng)

    mutated, key = mutate_composition(category, rng)

    assert mutated.compose_table[key] != category.compose_table[key]
    assert not mutated.validate().is_valid
