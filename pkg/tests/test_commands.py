import json
import os
from catlim import Settings
from catlim.__main__ import main
from catlim.commands import execute, render
from catlim.parse_arguments import parse_arguments

dir_path = os.path.dirname(os.path.realpath(__file__))
arrow_path = os.path.join(dir_path, "fixtures", "arrow.cat")


def arrow_source() -> str:
    with open(arrow_path, encoding="utf-8") as file:
        return file.read()


def test_validate():
    document, code = execute("validate", arrow_source())

    assert code == 0
    assert len(document["definitions"]) == 15
    assert all(entry["valid"] for entry in document["definitions"])


def test_marked_lax_limit():
    marked, code = execute("limit", arrow_source(), {"kind": "marked-lax", "marked": "M", "diagram": "R"})
    lax, _ = execute("limit", arrow_source(), {"kind": "marked-lax", "marked": "Bare", "diagram": "R"})

    assert code == 0
    assert len(marked["limit"]["objects"]) == 2
    assert len(lax["limit"]["objects"]) == 3


def test_weighted_limit():
    document, code = execute("limit", arrow_source(), {"kind": "weighted", "weight": "W", "diagram": "R"})

    assert code == 0
    assert len(document["limit"]["objects"]) == 3


def test_dotted_lax_limit():
    document, code = execute("limit", arrow_source(), {"kind": "dotted-lax", "dotted": "D", "diagram": "S"})

    assert code == 0
    assert len(document["limit"]["loose"]["objects"]) == 3
    assert len(document["limit"]["tight_objects"]) == 1


def test_missing_option():
    document, code = execute("limit", arrow_source(), {"kind": "marked-lax", "diagram": "R"})

    assert code == 1
    assert document["error"] == "ValidationError"
    assert "--marked" in document["message"]


def test_invalid_definitions():
    source = """
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
    document, code = execute("validate", source)

    assert code == 1
    assert document["error"] == "ValidationError"


def test_syntax_error_document():
    document, code = execute("validate", "category C {\n    objects: a b;\n}")

    assert code == 1
    assert document["error"] == "DSLSyntaxError"
    assert (document["line"], document["column"]) == (2, 16)


def test_duplicate_definition_document():
    document, code = execute("validate", "category A {\n    objects: x;\n}\ncategory A {\n    objects: y;\n}\n")

    assert code == 1
    assert document["first"] == "1:1"
    assert document["second"] == "4:1"


def test_verify_marked_theorems():
    weighted, code = execute("verify", arrow_source(), {"kind": "marked-weighted", "weight": "W", "diagram": "R"})
    theorem, theorem_code = execute(
        "verify", arrow_source(), {"kind": "marked-limit-theorem", "marked": "Bare", "diagram": "R"}
    )

    assert code == 0
    assert weighted["report"]["holds"]
    assert theorem_code == 0
    assert theorem["report"]["holds"]


def test_verify_classifier_adjunction():
    document, code = execute(
        "verify", arrow_source(), {"kind": "classifier-adjunction", "marked": "M", "source": "One", "target": "R"}
    )

    assert code == 0
    assert document["report"]["holds"]
    assert "cocones" in document["report"]


def test_verify_classifier_adjunction_without_cocones():
    document, code = execute(
        "verify",
        arrow_source(),
        {"kind": "classifier-adjunction", "marked": "M", "source": "One", "target": "R", "skip_cocones": True},
    )

    assert code == 0
    assert document["report"]["holds"]
    assert "cocones" not in document["report"]


def test_verify_dotted_theorems():
    sharp, code = execute(
        "verify", arrow_source(), {"kind": "sharp-adjunction", "dotted": "D", "source": "Unit", "target": "S"}
    )
    weighted, weighted_code = execute(
        "verify", arrow_source(), {"kind": "dotted-weighted", "weight": "Unit", "diagram": "S"}
    )

    assert code == 0
    assert sharp["report"]["holds"]
    assert weighted_code == 0
    assert weighted["report"]["holds"]


def test_elements():
    marked, code = execute("elements", arrow_source(), {"kind": "2", "weight": "R"})
    dotted, _ = execute("elements", arrow_source(), {"kind": "F", "weight": "S"})

    assert code == 0
    assert len(marked["elements"]["base"]["objects"]) == 4
    assert dotted["elements"]["dotted"] == ["<a|0>", "<b|0>"]


def test_example():
    document, code = execute("example", None, {"kind": "inserter", "rigging": "p"})

    assert code == 0
    assert document["pie"]["classification"] == "weak"
    assert document["check"]["valid"]


def test_unsupported_example():
    document, code = execute("example", None, {"kind": "descent", "rigging": "p"})

    assert code == 1
    assert document["error"] == "UnsupportedCombination"


def test_pie_with_gamma():
    default, _ = execute("pie", None, {"kind": "alternating"})
    everything, code = execute("pie", None, {"kind": "alternating", "gamma": ["1", "2", "3", "4"]})

    assert code == 0
    assert default["pie"]["classification"] == "none"
    assert everything["pie"]["classification"] == "weak"


def test_harness():
    document, code = execute("harness", None, {"seed": 3, "count": 5})

    assert code == 0
    assert document["mutations_caught"] == 5
    assert document["failures"] == []


def test_workspace_is_required():
    document, code = execute("limit", None, {"kind": "marked-lax"})

    assert code == 1
    assert document["error"] == "ValidationError"


def test_render():
    assert render({"a": 1}, "text") == "a: 1\n"
    assert render({"b": [1, {"c": "x"}]}, "text") == 'b:\n  - 1\n  -\n    c: "x"\n'
    assert render({"b": 1, "a": 2}) == render({"a": 2, "b": 1})
    assert json.loads(render({"a": [1, 2]})) == {"a": [1, 2]}


def test_parse_arguments():
    try:
        command, path, options, out, output_format = parse_arguments(
            ["pie", "--kind", "alternating", "--gamma", "1, 3", "--format", "text"]
        )
        assert command == "pie"
        assert path is None
        assert options["gamma"] == ["1", "3"]
        assert output_format == "text"
        assert out is None
    finally:
        Settings.max_morphisms = 10000
        Settings.max_cone_search = 100000
        Settings.seed = 0


def test_main_writes_output(tmp_path):
    out = tmp_path / "limit.json"
    try:
        code = main(
            ["limit", arrow_path, "--kind", "marked-lax", "--marked", "M", "--diagram", "R", "--out", str(out)]
        )
    finally:
        Settings.max_morphisms = 10000
        Settings.max_cone_search = 100000
        Settings.seed = 0

    assert code == 0
    assert len(json.loads(out.read_text(encoding="utf-8"))["limit"]["objects"]) == 2


def test_main_reports_overflow(tmp_path):
    out = tmp_path / "classify.json"
    try:
        code = main(
            [
                "classify",
                arrow_path,
                "--kind",
                "dagger",
                "--marked",
                "Bare",
                "--diagram",
                "R",
                "--max-morphisms",
                "1",
                "--out",
                str(out),
            ]
        )
    finally:
        Settings.max_morphisms = 10000
        Settings.max_cone_search = 100000
        Settings.seed = 0

    document = json.loads(out.read_text(encoding="utf-8"))
    assert code == 3
    assert document["error"] == "ClosureOverflow"
    assert document["bound"] == 1


def test_main_reports_a_missing_definition_file(tmp_path):
    out = tmp_path / "missing.json"
    missing = tmp_path / "nowhere.cat"
    try:
        code = main(["validate", str(missing), "--out", str(out)])
    finally:
        Settings.max_morphisms = 10000
        Settings.max_cone_search = 100000
        Settings.seed = 0

    document = json.loads(out.read_text(encoding="utf-8"))
    assert code == 1
    assert document["error"] == "DefinitionFileNotFound"
    assert document["path"] == str(missing)
