import pytest
from catlim import (
    CatValued2Functor,
    ClosureViolation,
    Fin2Category,
    FinCategory,
    MarkedTwoCategory,
    category_of_elements,
    check_weighted_equals_marked,
    marked_colax_cone_category,
    marked_lax_cone_category,
)
from catlim.generators import random_marked_preorder
from catlim.marked import weighted_to_marked_transport
from hypothesis import given, settings, strategies as st
from random import Random


def arrow_base():
    return Fin2Category.locally_discrete(FinCategory.ordinal(1), "2")


def test_marked_lax_cones():
    base = arrow_base()
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    everything = marked_lax_cone_category(MarkedTwoCategory.all_cells(base), constant)
    identities = marked_lax_cone_category(MarkedTwoCategory.identities(base), constant)
    colax = marked_colax_cone_category(MarkedTwoCategory.identities(base), constant)

    assert len(everything.objects) == 2
    assert len(identities.objects) == 3
    assert len(colax.objects) == 3


def test_marked_cones_have_identity_components_at_marked_cells():
    base = arrow_base()
    marked = MarkedTwoCategory(base, ["0->1"])
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    cones = marked_lax_cone_category(marked, constant)

    for x in cones.objects:
        assert cones.object_payload(x).is_marked(marked.sigma)


def test_marked_cells_must_compose():
    base = Fin2Category.locally_discrete(FinCategory.ordinal(2), "3")
    marked = MarkedTwoCategory(base, ["0->1", "1->2"])

    report = marked.validate()

    assert report.violations == ["marked cells are not closed under composition: 1->2∘0->1 = 0->2"]
    with pytest.raises(ClosureViolation) as error:
        marked.check()
    assert error.value.witness == ("1->2", "0->1", "0->2")


def test_identities_are_always_marked():
    base = arrow_base()

    marked = MarkedTwoCategory(base, [])

    assert marked.sigma == {"1_0", "1_1"}
    assert marked.validate().is_valid
    assert marked.to_dict()["marked"] == []


def test_elements_of_the_terminal_weight():
    base = arrow_base()

    elements, projection = category_of_elements(CatValued2Functor.terminal(base))

    assert len(elements.base.objects) == 2
    assert len(elements.base.cells1) == 3
    assert elements.sigma == set(elements.base.cells1)
    assert projection.validate().is_valid


def test_elements_mark_identity_components():
    base = Fin2Category.terminal()

    elements, projection = category_of_elements(CatValued2Functor.constant(base, FinCategory.ordinal(1)))

    assert len(elements.base.objects) == 2
    assert len(elements.base.cells1) == 3
    assert len(elements.sigma) == 2
    assert elements.base.validate().is_valid
    assert elements.validate().is_valid
    assert projection.validate().is_valid


def test_weighted_limit_is_marked_limit_over_elements():
    base = arrow_base()
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    report = check_weighted_equals_marked(interval, interval)

    assert report.holds, report.failures
    assert len(report.left.objects) == 3
    assert report.to_dict()["holds"]
    assert "witness" in report.to_dict()


def test_weighted_limit_with_terminal_weight_over_elements():
    base = arrow_base()
    terminal = CatValued2Functor.terminal(base)
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    report = check_weighted_equals_marked(terminal, interval)

    assert report.holds, report.failures
    assert len(report.right.objects) == 2


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_elements_transport_on_random_preorders(seed):
    rng = Random(seed)
    base = random_marked_preorder(rng, max_objects=2, max_morphisms=3).base
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))
    weight = interval if rng.random() < 0.5 else CatValued2Functor.terminal(base)

    report = check_weighted_equals_marked(weight, interval)
    forward = weighted_to_marked_transport(weight, interval)
    backward = weighted_to_marked_transport(weight, interval, direction="backward")

    assert report.holds, report.failures
    assert forward.validate().is_valid
    for x in forward.source.objects:
        assert backward.on_object(forward.on_object(x)) == x
