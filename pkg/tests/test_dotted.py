import pytest
from catlim import (
    CatValued2Functor,
    ClosureViolation,
    DottedFCategory,
    FCategory,
    Fin2Category,
    FinCategory,
    FWeight,
    UnsupportedCombination,
    check_descriptor,
    check_fweighted_equals_dotted,
    dotted_colax_cone_fobject,
    dotted_lax_cone_fobject,
    example_library,
    f_category_of_elements,
    pie_indexing,
    sharp_classifier,
    verify_sharp_adjunction,
    verify_unit_dotted,
)
from catlim.example_library import sample_diagram
from catlim.sharp import verify_dotted_limit_theorem


def chordate_arrow():
    return FCategory.chordate(Fin2Category.locally_discrete(FinCategory.ordinal(1), "2"))


def interval_weight(base):
    interval = CatValued2Functor.constant(base.loose, FinCategory.ordinal(1), "S")
    return FWeight.from_tight_objects(base, interval, {"0": ["0"], "1": ["0"]}, "S")


def test_dotted_objects_are_closed_under_tight_marked_cells():
    dotted = DottedFCategory(chordate_arrow(), ["0->1"], ["0"])

    assert not dotted.validate().is_valid
    with pytest.raises(ClosureViolation) as error:
        dotted.check()
    assert error.value.witness == "0->1"

    assert DottedFCategory(chordate_arrow(), ["0->1"], ["0", "1"]).check().dotted == ["0", "1"]
    assert DottedFCategory(chordate_arrow(), [], ["0"]).validate().is_valid


def test_dotted_lax_limit():
    base = chordate_arrow()
    dotted = DottedFCategory(base, [], ["0", "1"])
    weight = interval_weight(base)

    lax = dotted_lax_cone_fobject(dotted, weight)
    colax = dotted_colax_cone_fobject(dotted, weight)

    assert len(lax.loose.objects) == 3
    assert len(lax.tight_objects()) == 1
    assert len(colax.loose.objects) == 3
    assert len(colax.tight_objects()) == 1
    assert lax.validate().is_valid


def test_dotted_limit_only_checks_dotted_legs():
    base = chordate_arrow()
    weight = interval_weight(base)

    limit = dotted_lax_cone_fobject(DottedFCategory(base, [], ["0"]), weight)
    everything = dotted_lax_cone_fobject(DottedFCategory(base, [], []), weight)

    assert len(limit.tight_objects()) == 2
    assert len(everything.tight_objects()) == 3


def test_f_category_of_elements():
    base = chordate_arrow()

    elements, projection = f_category_of_elements(interval_weight(base))

    assert len(elements.loose.objects) == 4
    assert len(elements.dotted) == 2
    assert elements.validate().is_valid
    assert projection.validate().is_valid


def test_f_weighted_limit_is_dotted_limit_over_elements():
    base = chordate_arrow()
    weight = interval_weight(base)

    report = check_fweighted_equals_dotted(weight, weight)
    terminal = check_fweighted_equals_dotted(FWeight.terminal(base), weight)

    assert report.holds, report.failures
    assert terminal.holds, terminal.failures
    assert terminal.details["tight"] == {"left": 1, "right": 1}


def test_pie_indexing_of_the_examples():
    expected = {
        ("inserter", "p"): "weak",
        ("inserter", "l"): "strong",
        ("inserter", "c"): "strong",
        ("equifier", "p"): "weak",
        ("equifier", "l"): "strong",
        ("equifier", "c"): "strong",
        ("descent", "l"): "strong",
        ("descent", "c"): "strong",
        ("alternating", None): "none",
    }
    for (kind, rigging), classification in expected.items():
        shape, _ = example_library(kind, rigging)
        assert pie_indexing(shape).classification == classification, (kind, rigging)


def test_pie_indexing_relative_to_every_object():
    shape, _ = example_library("alternating")

    report = pie_indexing(shape, shape.loose.objects)

    assert report.classification == "weak"
    assert report.initial_objects == ["4"]
    assert report.to_dict()["caveat"]


def test_descent_initial_object():
    shape, _ = example_library("descent", "l")

    report = pie_indexing(shape)

    assert report.components == [["1", "2", "3"]]
    assert report.initial_objects == ["1"]


def test_unsupported_examples():
    with pytest.raises(UnsupportedCombination):
        example_library("descent", "p")
    with pytest.raises(UnsupportedCombination):
        example_library("alternating", "l")
    with pytest.raises(UnsupportedCombination):
        example_library("inserter")
    with pytest.raises(UnsupportedCombination):
        example_library("pullback", "l")


def test_examples_match_their_descriptors():
    cases = [(kind, rigging) for kind in ("inserter", "equifier", "descent") for rigging in ("l", "c", "p")]
    cases = [case for case in cases if case != ("descent", "p")] + [("alternating", None)]
    for kind, rigging in cases:
        shape, descriptor = example_library(kind, rigging)
        report = check_descriptor(descriptor, shape, sample_diagram(shape))
        assert report.is_valid, (kind, rigging, report.violations)


def test_sharp_classifier_of_the_terminal_weight():
    base = FCategory.chordate(Fin2Category.terminal())
    dotted = DottedFCategory(base, [], ["0"])

    sharp = sharp_classifier(dotted, FWeight.terminal(base))

    assert sharp.verify().is_valid
    assert sharp.weight.value("0").loose.is_terminal()
    assert len(sharp.weight.tight_objects("0")) == 1
    assert verify_unit_dotted(dotted, FWeight.terminal(base), sharp).is_valid


def test_sharp_classifier_without_dotted_objects():
    base = FCategory.chordate(Fin2Category.terminal())
    dotted = DottedFCategory(base, [], [])

    sharp = sharp_classifier(dotted, FWeight.terminal(base))

    assert sharp.verify().is_valid
    assert sharp.weight.tight_objects("0") == set()


def test_sharp_adjunction():
    base = chordate_arrow()
    dotted = DottedFCategory(base, [], ["0", "1"])

    report = verify_sharp_adjunction(dotted, FWeight.terminal(base), interval_weight(base))

    assert report.holds, report.failures
    assert report.details["tight"]["left"] == report.details["tight"]["right"]


def test_dotted_limit_theorem():
    base = chordate_arrow()
    dotted = DottedFCategory(base, [], ["0"])

    report = verify_dotted_limit_theorem(dotted, interval_weight(base))

    assert report.holds, report.failures
    assert report.details["tight"] == {"left": 2, "right": 2}
