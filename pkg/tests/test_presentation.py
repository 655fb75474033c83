import os
import pytest
from catlim import CatPresentation, ClosureOverflow, ValidationError, build_delta_sigma, parse, saturate_presentation

dir_path = os.path.dirname(os.path.realpath(__file__))


def test_free_category_on_a_chain():
    presentation = CatPresentation("chain", ["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")})

    category = saturate_presentation(presentation)

    assert category.validate().is_valid
    assert len(category.morphisms) == 6
    assert category.hom("a", "c") == ["g.f"]
    assert category.generator_morphism == {"f": "f", "g": "g"}


def test_idempotent_relation():
    presentation = CatPresentation("idempotent", ["a"], {"x": ("a", "a")}, [(("x", "x"), ("x",))])

    category = saturate_presentation(presentation)

    assert category.validate().is_valid
    assert len(category.morphisms) == 2
    assert category.compose("x", "x") == "x"


def test_free_loop_overflows():
    presentation = CatPresentation("loop", ["a"], {"x": ("a", "a")})

    with pytest.raises(ClosureOverflow) as error:
        saturate_presentation(presentation, bound=50)

    assert error.value.bound == 50
    assert error.value.live == 51


def test_ill_typed_relation():
    with pytest.raises(ValidationError):
        CatPresentation("bad", ["a", "b"], {"f": ("a", "b")}, [(("f", "f"), ("f",))])

    presentation = CatPresentation("bad", ["a", "b"], {"f": ("a", "b")}, [(("f",), ("f", "f"), "a")])
    with pytest.raises(ValidationError):
        saturate_presentation(presentation)


def test_delta_sigma():
    delta = build_delta_sigma()
    gen = delta.generator_morphism

    assert delta.validate().is_valid
    assert len(delta.hom("[0]", "[2]")) == 3
    assert delta.hom("[0]", "[0]") == ["1_[0]"]
    assert len(delta.hom("[0]", "[1]")) == 2
    assert len(delta.hom("[1]", "[1]")) == 3
    assert len(delta.hom("[σ]", "[σ]")) == 3

    assert delta.compose(gen["j"], gen["k"]) == gen["i"]
    assert delta.compose(gen["p"], gen["s"]) == delta.compose(gen["m"], gen["s"])
    assert delta.compose(gen["p"], gen["t"]) == delta.compose(gen["q"], gen["s"])
    assert delta.compose(gen["p"], gen["s"]) != delta.compose(gen["p"], gen["t"])

    idempotent = delta.compose(gen["s"], gen["i"])
    assert not delta.is_identity(idempotent)
    assert delta.compose(idempotent, idempotent) == idempotent


def test_delta_sigma_is_bounded():
    with pytest.raises(ClosureOverflow):
        build_delta_sigma(bound=3)


def test_evaluate_words():
    delta = build_delta_sigma()

    assert delta.evaluate(("i", "s")) == "1_[0]"
    assert delta.evaluate((), "[1]") == "1_[1]"
    with pytest.raises(ValidationError):
        delta.evaluate(())


def test_delta_sigma_from_definitions():
    with open(os.path.join(dir_path, "fixtures", "delta_sigma.cat"), encoding="utf-8") as file:
        workspace = parse(file.read())
    delta = build_delta_sigma()

    parsed = workspace.get("category", "DeltaSigma")

    assert parsed.morphisms == delta.morphisms
    assert parsed.compose_table == delta.compose_table
