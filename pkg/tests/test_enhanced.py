import pytest
from catlim import (
    CatValued2Functor,
    ClosureViolation,
    FCategory,
    Fin2Category,
    FinCategory,
    FWeight,
    TightnessViolation,
    TwoFunctor,
    enumerate_fnat,
    f_functor_check,
    validate_fcategory,
)


def arrow_base():
    return Fin2Category.locally_discrete(FinCategory.ordinal(1), "2")


def test_chordate_and_inchordate():
    base = arrow_base()

    chordate = FCategory.chordate(base)
    inchordate = FCategory.inchordate(base)

    assert chordate.is_chordate() and not chordate.is_inchordate()
    assert inchordate.is_inchordate() and not inchordate.is_chordate()
    assert chordate.validate().is_valid
    assert inchordate.validate().is_valid


def test_tight_part():
    base = Fin2Category.locally_discrete(FinCategory.ordinal(2), "3")
    fcategory = FCategory(base, ["0->1", "1->2", "0->2"])

    tight, inclusion = fcategory.tight_part()

    assert set(tight.cells1) == set(base.cells1)
    assert inclusion.validate().is_valid


def test_validate_fcategory():
    base = Fin2Category.locally_discrete(FinCategory.ordinal(2), "3")

    with pytest.raises(ClosureViolation) as error:
        validate_fcategory(base, ["1_0", "1_1", "1_2", "0->1", "1->2"])
    assert error.value.witness == ("1->2", "0->1", "0->2")

    with pytest.raises(ClosureViolation):
        validate_fcategory(base, ["1_0", "1_1"])

    assert validate_fcategory(base, base.cells1).is_chordate()


def test_f_functor_check():
    base = arrow_base()
    identity = TwoFunctor.identity(base)

    functor = f_functor_check(FCategory.inchordate(base), FCategory.chordate(base), identity)

    assert functor.tight.validate().is_valid
    with pytest.raises(TightnessViolation) as error:
        f_functor_check(FCategory.chordate(base), FCategory.inchordate(base), identity)
    assert error.value.witness == "0->1"


def test_f_weight_from_tight_objects():
    base = FCategory.chordate(arrow_base())
    interval = CatValued2Functor.constant(base.loose, FinCategory.ordinal(1))

    weight = FWeight.from_tight_objects(base, interval, {"0": ["0"], "1": ["0"]})

    assert weight.validate().is_valid
    assert weight.tight_objects("0") == {"0"}
    assert weight.value("1").tight_objects() == {"0"}
    assert weight.to_dict()["tight"] == {"0": ["0"], "1": ["0"]}


def test_f_weight_tight_cells_keep_tight_objects():
    base = FCategory.chordate(arrow_base())
    interval = CatValued2Functor.constant(base.loose, FinCategory.ordinal(1))

    with pytest.raises(TightnessViolation):
        FWeight.from_tight_objects(base, interval, {"0": ["1"], "1": ["0"]})

    loose = FWeight.from_tight_objects(FCategory.inchordate(arrow_base()), interval, {"0": ["1"], "1": ["0"]})
    assert loose.validate().is_valid


def test_enumerate_fnat():
    base = FCategory.chordate(arrow_base())
    interval = CatValued2Functor.constant(base.loose, FinCategory.ordinal(1))
    weight = FWeight.from_tight_objects(base, interval, {"0": ["0"], "1": ["0"]})

    hom = enumerate_fnat(FWeight.terminal(base), weight)

    assert len(hom.loose.objects) == 2
    assert len(hom.tight_objects()) == 1
    assert hom.validate().is_valid
