from catlim import (
    BarResolution,
    CatValued2Functor,
    Fin2Category,
    FinCategory,
    Functor,
    MarkedCoherenceData,
    MarkedTwoCategory,
    bar_resolution,
    build_delta_sigma,
    classifier,
    cocone_marked_lax_bridge,
    cocones_as_weighted_transformations,
    marked_codescent_cocones,
    marked_weight,
    verify_classifier_adjunction,
    verify_marked_limit_theorem,
)
from catlim.codescent import CoconeBridge
from catlim.generators import random_marked_preorder
from catlim.host import CatHost
from hypothesis import given, settings, strategies as st
from random import Random


def arrow_base():
    return Fin2Category.locally_discrete(FinCategory.ordinal(1), "2")


def test_marked_weight_is_a_2_functor():
    weight = marked_weight()
    delta = build_delta_sigma()
    gen = delta.generator_morphism

    assert weight.validate().is_valid
    assert len(weight.value("[2]").objects) == 3
    assert weight.value("[σ]").is_terminal()
    assert weight.cell(gen["m"]).on_object("1") == "2"
    assert weight.cell(gen["i"]).compose(weight.cell(gen["s"])) == Functor.identity(weight.value("[0]"))


def test_classifier_of_the_terminal_2_functor():
    base = Fin2Category.terminal()

    result = classifier(MarkedTwoCategory.identities(base), CatValued2Functor.terminal(base))

    assert result.value.value("0").is_terminal()
    assert result.unit.validate().is_valid


def test_lax_classifier_on_the_arrow():
    base = arrow_base()

    result = classifier(MarkedTwoCategory.identities(base), CatValued2Functor.terminal(base))

    assert len(result.value.value("0").objects) == 1
    assert len(result.value.value("1").objects) == 2
    assert len(result.value.value("1").morphisms) == 3
    assert result.value.validate().is_valid


def test_marked_classifier_on_the_arrow():
    base = arrow_base()
    marked = MarkedTwoCategory.all_cells(base)

    result = classifier(marked, CatValued2Functor.terminal(base))
    unmarked = classifier(marked, CatValued2Functor.terminal(base), identify_marked=False)

    assert len(result.value.value("1").objects) == 1
    assert len(unmarked.value.value("1").objects) == 2
    assert result.unit.validate(marked.sigma).is_valid


def test_classifier_adjunction():
    base = arrow_base()
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    for marked in (MarkedTwoCategory.identities(base), MarkedTwoCategory.all_cells(base)):
        report = verify_classifier_adjunction(marked, CatValued2Functor.terminal(base), interval)
        assert report.holds, report.failures


def test_marked_limit_theorem():
    base = arrow_base()
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    report = verify_marked_limit_theorem(MarkedTwoCategory.identities(base), interval)

    assert report.holds, report.failures
    assert len(report.left.objects) == 3


def test_cocones_of_constant_coherence_data():
    host = CatHost()
    space = FinCategory.ordinal(1)
    nadir = FinCategory.ordinal(1)
    unit = Functor.identity(space)
    data = MarkedCoherenceData(host, space, space, space, space, {a: unit for a in MarkedCoherenceData.ARROWS})

    cocones = marked_codescent_cocones(data, nadir)
    report = cocones_as_weighted_transformations(data, nadir)

    assert data.validate().is_valid
    assert len(cocones.objects) == 3
    assert len(cocones.morphisms) == 6
    assert report.holds, report.failures
    assert report.left == cocones
    assert len(report.right.objects) == 3
    assert report.witness.forward.source is report.left


def small_marked_base(seed: int) -> MarkedTwoCategory:
    return random_marked_preorder(Random(seed), max_objects=2, max_morphisms=3)


def test_classifier_adjunction_through_cocones():
    base = arrow_base()
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))
    marked = MarkedTwoCategory.all_cells(base)

    report = verify_classifier_adjunction(marked, CatValued2Functor.terminal(base), interval)
    direct = verify_classifier_adjunction(marked, CatValued2Functor.terminal(base), interval, through_cocones=False)

    assert report.holds, report.failures
    assert report.details["cocones"] == len(report.right.objects)
    assert direct.holds
    assert "cocones" not in direct.details


def test_bar_resolution_of_the_terminal_2_functor():
    base = arrow_base()
    marked = MarkedTwoCategory.identities(base)
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    bar = bar_resolution(marked, CatValued2Functor.terminal(base))
    hom = bar.data.hom_diagram(interval)

    assert isinstance(bar, BarResolution)
    assert bar.data.validate().is_valid
    assert len(bar.free.value("1").objects) == 2
    assert len(bar.free2.value("1").objects) == 3
    assert hom.validate().is_valid
    assert len(hom.value("[0]").objects) == 4


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_bar_resolution_is_marked_coherence_data(seed):
    marked = small_marked_base(seed)
    interval = CatValued2Functor.constant(marked.base, FinCategory.ordinal(1))

    bar = bar_resolution(marked, CatValued2Functor.terminal(marked.base))
    report = cocones_as_weighted_transformations(bar.data, interval)

    assert bar.data.validate().is_valid
    assert bar.data.hom_diagram(interval).validate().is_valid
    assert report.holds, report.failures


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_cocone_bridge_round_trip(seed):
    marked = small_marked_base(seed)
    terminal = CatValued2Functor.terminal(marked.base)
    interval = CatValued2Functor.constant(marked.base, FinCategory.ordinal(1))

    bridge = CoconeBridge(marked, terminal, interval)
    report = bridge.report()
    forward = cocone_marked_lax_bridge(marked, terminal, interval)
    backward = cocone_marked_lax_bridge(marked, terminal, interval, direction="backward")

    assert report.holds, report.failures
    for x in bridge.transformations.objects:
        assert backward.on_object(forward.on_object(x)) == x
    for f in bridge.transformations.morphisms:
        assert backward.on_morphism(forward.on_morphism(f)) == f


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_classifier_adjunction_on_random_marked_preorders(seed):
    marked = small_marked_base(seed)
    interval = CatValued2Functor.constant(marked.base, FinCategory.ordinal(1))

    report = verify_classifier_adjunction(marked, CatValued2Functor.terminal(marked.base), interval)

    assert report.holds, report.failures


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_marked_limit_theorem_at_the_extreme_markings(seed):
    base = small_marked_base(seed).base
    interval = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    lax = verify_marked_limit_theorem(MarkedTwoCategory.identities(base), interval)
    strict = verify_marked_limit_theorem(MarkedTwoCategory.all_cells(base), interval)

    assert lax.holds, lax.failures
    assert strict.holds, strict.failures
    assert len(strict.right.objects) <= len(lax.right.objects)
