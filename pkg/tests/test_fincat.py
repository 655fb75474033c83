import pytest
from catlim import FinCategory, Functor, NoLift, SizeOverflow, factorize_functor, find_isomorphism, functor_category, unique_lift
from catlim.fincat import invert_functor
from catlim.functor import enumerate_natural_transformations


def test_functor_category_of_the_arrow():
    arrow = FinCategory.ordinal(1)

    category = functor_category(arrow, arrow)

    assert category.validate().is_valid
    assert len(category.objects) == 3
    assert len(category.morphisms) == 6


def test_functor_category_with_terminal():
    chain = FinCategory.ordinal(2)

    from_terminal = functor_category(FinCategory.terminal(), chain)
    to_terminal = functor_category(chain, FinCategory.terminal())

    assert find_isomorphism(from_terminal, chain) is not None
    assert to_terminal.is_terminal()


def test_functor_category_cap():
    arrow = FinCategory.ordinal(1)

    with pytest.raises(SizeOverflow) as error:
        functor_category(arrow, arrow, cap=2)

    assert error.value.cap == 2


def test_factorize_functor():
    source, target = FinCategory.ordinal(1), FinCategory.ordinal(2)
    functor = Functor(source, target, {"0": "0", "1": "2"}, {"1_0": "1_0", "0->1": "0->2", "1_1": "1_2"})

    e, m = factorize_functor(functor)

    assert m.compose(e) == functor
    assert e.is_surjective_on_objects()
    assert m.is_full_embedding()
    assert e.target.objects == ["0", "2"]


def test_unique_lift():
    source, target = FinCategory.ordinal(1), FinCategory.ordinal(2)
    e, m = factorize_functor(Functor.constant(source, target, "1"))

    lift = unique_lift(e, m, e, m)

    assert lift == Functor.identity(e.target)


def test_unique_lift_of_a_square_that_does_not_commute():
    source, target = FinCategory.ordinal(1), FinCategory.ordinal(2)
    e, m = factorize_functor(Functor.constant(source, target, "1"))
    bottom = Functor.constant(e.target, target, "0")

    with pytest.raises(NoLift):
        unique_lift(e, m, e, bottom)


def test_find_isomorphism_of_a_relabelled_chain():
    chain = FinCategory.ordinal(2)
    relabelled = FinCategory.from_generators(
        "xyz", ["z", "y", "x"], {"u": ("x", "y"), "v": ("y", "z"), "w": ("x", "z")}, {("v", "u"): "w"}
    )

    witness = find_isomorphism(chain, relabelled)

    assert witness is not None
    assert witness.validate().is_valid
    assert witness.forward.object_map == {"0": "x", "1": "y", "2": "z"}
    assert witness.forward.on_morphism("0->2") == "w"


def test_find_isomorphism_rejects():
    span = FinCategory.from_generators("span", ["a", "b", "c"], {"f": ("b", "a"), "g": ("b", "c")})
    cospan = FinCategory.from_generators("cospan", ["a", "b", "c"], {"f": ("a", "b"), "g": ("c", "b")})

    assert find_isomorphism(span, cospan) is None
    assert find_isomorphism(FinCategory.ordinal(1), FinCategory.ordinal(2)) is None


def test_natural_transformations_between_constant_functors():
    arrow = FinCategory.ordinal(1)
    low = Functor(arrow, arrow, {"0": "0", "1": "0"}, {"1_0": "1_0", "1_1": "1_0", "0->1": "1_0"})
    high = Functor(arrow, arrow, {"0": "1", "1": "1"}, {"1_0": "1_1", "1_1": "1_1", "0->1": "1_1"})
    identity = Functor.identity(arrow)

    upward = enumerate_natural_transformations(low, high)

    assert len(upward) == 1
    assert upward[0].components == {"0": "0->1", "1": "0->1"}
    assert enumerate_natural_transformations(high, low) == []
    assert len(enumerate_natural_transformations(identity, high)) == 1
    assert len(enumerate_natural_transformations(identity, identity)) == 1


def test_invert_functor():
    arrow = FinCategory.ordinal(1)
    low = Functor(arrow, arrow, {"0": "0", "1": "0"}, {"1_0": "1_0", "1_1": "1_0", "0->1": "1_0"})
    identity = Functor.identity(arrow)

    assert invert_functor(identity) == identity
    assert invert_functor(low) is None
