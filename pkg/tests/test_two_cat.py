from catlim import (
    CatValued2Functor,
    Fin2Category,
    FinCategory,
    LanMonad,
    lan_along_objects,
    lan_extend,
    lan_transpose,
    lax_category,
    pointwise_lan,
    verify_lan_adjunction,
    weighted_limit_in_cat,
)


def arrow_base():
    return Fin2Category.locally_discrete(FinCategory.ordinal(1), "2")


def test_locally_discrete_base_validates():
    base = arrow_base()

    assert base.validate().is_valid
    assert base.nonidentity_cells1() == ["0->1"]
    assert base.nonidentity_cells2() == []


def test_two_category_with_two_cells():
    base = Fin2Category.build(
        "pair",
        ["x", "y"],
        {"f": ("x", "y"), "g": ("x", "y")},
        cells2={"α": ("f", "g")},
    )

    assert base.validate().is_valid
    assert base.cells2_between("f", "g") == ["α"]
    assert base.co().cells2_between("g", "f") == ["α"]


def test_lax_cones_over_a_constant_diagram():
    base = arrow_base()
    terminal = CatValued2Functor.terminal(base)
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    lax = lax_category(terminal, constant)
    strict = lax_category(terminal, constant, strict=True)
    marked = lax_category(terminal, constant, sigma=base.cells1)
    colax = lax_category(terminal, constant, colax=True)

    assert len(lax.objects) == 3
    assert len(strict.objects) == 2
    assert len(marked.objects) == 2
    assert len(colax.objects) == 3
    assert lax.validate().is_valid
    assert colax.validate().is_valid


def test_lax_cone_components_point_along_the_arrow():
    base = arrow_base()
    terminal = CatValued2Functor.terminal(base)
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    lax = lax_category(terminal, constant)
    legs = sorted(
        (cone.component("0").on_object("0"), cone.component("1").on_object("0"))
        for cone in (lax.object_payload(x) for x in lax.objects)
    )

    assert legs == [("0", "0"), ("0", "1"), ("1", "1")]
    for x in lax.objects:
        assert lax.object_payload(x).validate().is_valid


def test_weighted_limit_with_terminal_weight():
    base = arrow_base()
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    limit = weighted_limit_in_cat(CatValued2Functor.terminal(base), constant)

    assert len(limit.objects) == 2
    assert limit.validate().is_valid


def test_lan_along_objects():
    base = arrow_base()

    free = lan_along_objects(CatValued2Functor.terminal(base))

    assert free.validate().is_valid
    assert len(free.value("0").objects) == 1
    assert len(free.value("1").objects) == 2


def test_lan_monad_laws():
    base = arrow_base()
    monad = LanMonad(base)
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    assert monad.verify_monad_laws(constant).is_valid
    assert monad.verify_algebra(constant).is_valid
    assert monad.verify_algebra(CatValued2Functor.terminal(base)).is_valid


def test_pointwise_lan_of_a_point():
    base = arrow_base()
    sub, inclusion = base.sub(["0"], [])

    lan = pointwise_lan(inclusion, CatValued2Functor.terminal(sub))

    assert lan.extension.validate().is_valid
    assert len(lan.extension.value("0").objects) == 1
    assert len(lan.extension.value("1").objects) == 1
    assert lan.unit.validate().is_valid


def test_lan_adjunction_at_a_constant_diagram():
    base = arrow_base()
    sub, inclusion = base.sub(["0"], [])
    lan = pointwise_lan(inclusion, CatValued2Functor.terminal(sub))
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))

    report = verify_lan_adjunction(lan, constant)

    assert report.holds, report.failures
    assert len(report.left.objects) == 2
    assert len(report.right.objects) == 2
    assert len(report.left.morphisms) == 3


def test_lan_extend_and_transpose_are_inverse():
    base = arrow_base()
    sub, inclusion = base.sub(["0"], [])
    lan = pointwise_lan(inclusion, CatValued2Functor.terminal(sub))
    constant = CatValued2Functor.constant(base, FinCategory.ordinal(1))
    strict = lax_category(lan.diagram, constant.precompose(inclusion), strict=True)

    for x in strict.objects:
        beta = strict.object_payload(x)
        extended = lan_extend(lan, constant, beta)
        assert extended.validate().is_valid
        assert lan_transpose(lan, extended) == beta


def test_lan_adjunction_along_the_identity():
    base = arrow_base()
    whole, inclusion = base.sub(base.objects, base.cells1)
    constant = CatValued2Functor.constant(whole, FinCategory.ordinal(1))
    lan = pointwise_lan(inclusion, constant)

    report = verify_lan_adjunction(lan, CatValued2Functor.constant(base, FinCategory.ordinal(1)))

    assert report.holds, report.failures
