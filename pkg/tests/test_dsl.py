import os
import pytest
from catlim import (
    DSLSyntaxError,
    DuplicateDefinition,
    UnresolvedReference,
    ValidationError,
    emit,
    parse,
    parse_file,
    parse_source,
)

dir_path = os.path.dirname(os.path.realpath(__file__))


def read_fixture(name: str) -> str:
    with open(os.path.join(dir_path, "fixtures", name), encoding="utf-8") as file:
        return file.read()


def test_empty_source():
    workspace = parse("")

    assert len(workspace) == 0
    assert emit(workspace) == ""


def test_comments_and_blank_lines_only():
    workspace = parse("# nothing here\n\n   # still nothing\n")

    assert len(workspace) == 0


def test_syntax_error_position():
    with pytest.raises(DSLSyntaxError) as error:
        parse("category C {\n    objects: a b;\n}")

    assert error.value.line == 2
    assert error.value.column == 16
    assert str(error.value).startswith("2:16: ")


def test_unexpected_character():
    with pytest.raises(DSLSyntaxError) as error:
        parse("category C {\n  objects: a;\n  ?\n}")

    assert (error.value.line, error.value.column) == (3, 3)


def test_unterminated_block():
    with pytest.raises(DSLSyntaxError) as error:
        parse("category C {\n    objects: a;\n")

    assert error.value.line == 2
    assert "end of file" in str(error.value)


def test_unknown_block():
    with pytest.raises(DSLSyntaxError) as error:
        parse("monoid M { }")

    assert (error.value.line, error.value.column) == (1, 1)


def test_duplicate_definition():
    text = "category A {\n    objects: x;\n}\n\ncategory A {\n    objects: y;\n}\n"

    with pytest.raises(DuplicateDefinition) as error:
        parse(text)

    assert error.value.first == "1:1"
    assert error.value.second == "5:1"


def test_unresolved_reference():
    text = "category A {\n    objects: x;\n}\n\nmarked M {\n    base: B;\n    sigma: ;\n}\n"

    with pytest.raises(UnresolvedReference):
        parse(text)


def test_category_with_a_totality_gap():
    text = """
category Chain {
    objects: a, b, c;
    morphisms: f: a -> b, g: b -> c;
}
"""
    with pytest.raises(ValidationError) as error:
        parse(text)

    assert str(error.value).startswith("2:1: ")
    assert "totality gap" in str(error.value)


def test_marked_cells_must_compose():
    text = """
category Chain {
    objects: a, b, c;
    morphisms: f: a -> b, g: b -> c, h: a -> c;
    compose: g . f = h;
}

marked Gap {
    base: Chain;
    sigma: f, g;
}
"""
    with pytest.raises(ValidationError) as error:
        parse(text)

    assert "not closed under composition" in str(error.value)


def test_marked_cells_may_be_paths():
    text = """
category Chain {
    objects: a, b, c;
    morphisms: f: a -> b, g: b -> c, h: a -> c;
    compose: g . f = h;
}

marked Path {
    base: Chain;
    sigma: f, g, g . f;
}
"""
    workspace = parse(text)

    assert workspace.get("marked", "Path").sigma == {"f", "g", "h", "1_a", "1_b", "1_c"}


def test_arrow_fixture():
    workspace = parse_file(os.path.join(dir_path, "fixtures", "arrow.cat"))

    assert len(workspace) == 15
    assert workspace.get("diagram", "R").source is workspace.get("marked", "M").base
    assert workspace.get("f_weight", "S").tight_objects("a") == {"0"}
    assert workspace.get("f_weight", "Unit").tight_objects("b") == {"0"}
    assert workspace.get("dotted", "D").dotted == ["a", "b"]
    assert workspace.to_dict()["definitions"][0] == {"name": "Arrow", "kind": "category", "span": "3:1"}


def test_get_checks_the_kind():
    workspace = parse(read_fixture("arrow.cat"))

    with pytest.raises(UnresolvedReference) as error:
        workspace.get("diagram", "M")
    assert "it is a marked" in str(error.value)


def test_presentation_generators_name_cells():
    text = read_fixture("delta_sigma.cat") + """
marked Degenerate {
    base: DeltaSigma;
    sigma: s, t . i;
}
"""
    with pytest.raises(ValidationError):
        parse(text)


def test_emit_parses_back_to_the_same_definitions():
    for name in ("arrow.cat", "delta_sigma.cat"):
        text = read_fixture(name)

        emitted = emit(parse(text))

        assert parse_source(emitted) == parse_source(text)
