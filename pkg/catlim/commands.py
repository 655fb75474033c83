import json
import logging
from .classifier import classifier, verify_classifier_adjunction, verify_marked_limit_theorem
from .dotted import (
    check_fweighted_equals_dotted,
    dotted_colax_cone_fobject,
    dotted_lax_cone_fobject,
    f_category_of_elements,
    pie_indexing,
)
from .example_library import check_descriptor, example_library, sample_diagram
from .exceptions import (
    CatlimException,
    ClosureOverflow,
    DefinitionFileNotFound,
    DSLSyntaxError,
    DuplicateDefinition,
    SizeOverflow,
    UnsupportedCombination,
    ValidationError,
)
from .generators import mutate_composition, random_marked_preorder, random_preorder_category
from .marked import (
    EquivalenceReport,
    category_of_elements,
    check_weighted_equals_marked,
    marked_colax_cone_category,
    marked_lax_cone_category,
)
from .settings import Settings
from .sharp import sharp_classifier, verify_sharp_adjunction
from .two_cat import weighted_limit_in_cat
from .workspace import Workspace, parse
from random import Random
from typing import Any, Callable, Dict, List, Optional, Tuple

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_OVERFLOW = 3

COMMANDS = ("validate", "limit", "classify", "elements", "verify", "example", "pie", "harness")
LIMIT_KINDS = ("weighted", "marked-lax", "marked-colax", "dotted-lax", "dotted-colax")
CLASSIFY_KINDS = {"‡": "‡", "dagger": "‡", "#": "#", "sharp": "#"}
ELEMENTS_KINDS = ("2", "F")
VERIFY_KINDS = ("marked-weighted", "classifier-adjunction", "marked-limit-theorem", "sharp-adjunction", "dotted-weighted")

Document = Dict[str, Any]


def _option(command: str, options: Dict[str, Any], key: str) -> Any:
    value = options.get(key)
    if value is None:
        raise ValidationError(f"{command} needs --{key.replace('_', '-')}")
    return value


def _kind(command: str, options: Dict[str, Any], kinds) -> str:
    kind = _option(command, options, "kind")
    if kind not in kinds:
        raise UnsupportedCombination(f"{command} has no kind {kind}; choose among {', '.join(kinds)}")
    return kind


def _same_base(left, right, what: str) -> None:
    if left is not right:
        raise ValidationError(f"{what}: {left.name} and {right.name} are different 2-categories")


def _report_document(command: str, kind: str, report: EquivalenceReport) -> Tuple[Document, int]:
    if report.holds:
        _logger.info(f"{report.title} holds")
        return {"command": command, "kind": kind, "report": report.to_dict()}, EXIT_OK
    _logger.warning(f"{report.title} fails: {'; '.join(report.failures[:3])}")
    return {"command": command, "kind": kind, "report": report.to_dict()}, EXIT_VERIFICATION_FAILED


def run_validate(workspace: Workspace, options: Dict[str, Any]) -> Tuple[Document, int]:
    definitions = [dict(entry, valid=True) for entry in workspace.to_dict()["definitions"]]
    _logger.info(f"{len(definitions)} definitions are valid")
    return {"command": "validate", "definitions": definitions}, EXIT_OK


def run_limit(workspace: Workspace, options: Dict[str, Any]) -> Tuple[Document, int]:
    kind = _kind("limit", options, LIMIT_KINDS)
    if kind == "weighted":
        weight = workspace.get("diagram", _option("limit", options, "weight"))
        diagram = workspace.get("diagram", _option("limit", options, "diagram"))
        _same_base(weight.source, diagram.source, "weighted limit")
        limit = weighted_limit_in_cat(weight, diagram).to_dict()
    elif kind.startswith("marked"):
        marked = workspace.get("marked", _option("limit", options, "marked"))
        diagram = workspace.get("diagram", _option("limit", options, "diagram"))
        _same_base(marked.base, diagram.source, "marked limit")
        build = marked_lax_cone_category if kind == "marked-lax" else marked_colax_cone_category
        limit = build(marked, diagram).to_dict()
    else:
        dotted = workspace.get("dotted", _option("limit", options, "dotted"))
        diagram = workspace.get("f_weight", _option("limit", options, "diagram"))
        _same_base(dotted.base, diagram.base, "dotted limit")
        build = dotted_lax_cone_fobject if kind == "dotted-lax" else dotted_colax_cone_fobject
        limit = build(dotted, diagram).to_dict()
    _logger.info(f"Computed the {kind} limit")
    return {"command": "limit", "kind": kind, "limit": limit}, EXIT_OK


def run_classify(workspace: Workspace, options: Dict[str, Any]) -> Tuple[Document, int]:
    kind = CLASSIFY_KINDS.get(_kind("classify", options, tuple(CLASSIFY_KINDS)))
    if kind == "‡":
        marked = workspace.get("marked", _option("classify", options, "marked"))
        diagram = workspace.get("diagram", _option("classify", options, "diagram"))
        _same_base(marked.base, diagram.source, "classifier")
        result = classifier(marked, diagram)
        document = {
            "classifier": result.value.to_dict(),
            "unit": {d: dict(result.unit.component(d).object_map) for d in marked.base.objects},
        }
    else:
        dotted = workspace.get("dotted", _option("classify", options, "dotted"))
        weight = workspace.get("f_weight", _option("classify", options, "weight"))
        _same_base(dotted.base, weight.base, "classifier")
        sharp = sharp_classifier(dotted, weight)
        document = {"classifier": sharp.weight.to_dict(), "construction": sharp.verify().to_dict()}
    _logger.info(f"Computed the {kind} classifier")
    return dict(document, command="classify", kind=kind), EXIT_OK


def run_elements(workspace: Workspace, options: Dict[str, Any]) -> Tuple[Document, int]:
    kind = _kind("elements", options, ELEMENTS_KINDS)
    if kind == "2":
        marked, _ = category_of_elements(workspace.get("diagram", _option("elements", options, "weight")))
        elements = marked.to_dict()
    else:
        dotted, _ = f_category_of_elements(workspace.get("f_weight", _option("elements", options, "weight")))
        elements = dotted.to_dict()
    return {"command": "elements", "kind": kind, "elements": elements}, EXIT_OK


def run_verify(workspace: Workspace, options: Dict[str, Any]) -> Tuple[Document, int]:
    kind = _kind("verify", options, VERIFY_KINDS)
    through_cocones = not options.get("skip_cocones")
    if kind == "marked-weighted":
        weight = workspace.get("diagram", _option("verify", options, "weight"))
        diagram = workspace.get("diagram", _option("verify", options, "diagram"))
        _same_base(weight.source, diagram.source, kind)
        report = check_weighted_equals_marked(weight, diagram)
    elif kind == "classifier-adjunction":
        marked = workspace.get("marked", _option("verify", options, "marked"))
        source = workspace.get("diagram", _option("verify", options, "source"))
        target = workspace.get("diagram", _option("verify", options, "target"))
        _same_base(marked.base, source.source, kind)
        _same_base(marked.base, target.source, kind)
        report = verify_classifier_adjunction(marked, source, target, through_cocones)
    elif kind == "marked-limit-theorem":
        marked = workspace.get("marked", _option("verify", options, "marked"))
        diagram = workspace.get("diagram", _option("verify", options, "diagram"))
        _same_base(marked.base, diagram.source, kind)
        report = verify_marked_limit_theorem(marked, diagram, through_cocones)
    elif kind == "sharp-adjunction":
        dotted = workspace.get("dotted", _option("verify", options, "dotted"))
        source = workspace.get("f_weight", _option("verify", options, "source"))
        target = workspace.get("f_weight", _option("verify", options, "target"))
        _same_base(dotted.base, source.base, kind)
        _same_base(dotted.base, target.base, kind)
        report = verify_sharp_adjunction(dotted, source, target)
    else:
        weight = workspace.get("f_weight", _option("verify", options, "weight"))
        diagram = workspace.get("f_weight", _option("verify", options, "diagram"))
        _same_base(weight.base, diagram.base, kind)
        report = check_fweighted_equals_dotted(weight, diagram)
    return _report_document("verify", kind, report)


def run_example(workspace: Optional[Workspace], options: Dict[str, Any]) -> Tuple[Document, int]:
    kind = _option("example", options, "kind")
    shape, descriptor = example_library(kind, options.get("rigging"), options.get("depth") or 4)
    check = check_descriptor(descriptor, shape, sample_diagram(shape))
    document = {
        "command": "example",
        "shape": shape.to_dict(),
        "descriptor": descriptor.to_dict(),
        "check": check.to_dict(),
        "pie": pie_indexing(shape).to_dict(),
    }
    if not check.is_valid:
        _logger.warning(f"{kind} does not match its descriptor: {check.violations[0]}")
        return document, EXIT_VERIFICATION_FAILED
    return document, EXIT_OK


def run_pie(workspace: Optional[Workspace], options: Dict[str, Any]) -> Tuple[Document, int]:
    if options.get("dotted"):
        if workspace is None:
            raise ValidationError("pie --dotted needs a definition file")
        shape = workspace.get("dotted", options["dotted"])
    else:
        shape, _ = example_library(_option("pie", options, "kind"), options.get("rigging"), options.get("depth") or 4)
    gamma = options.get("gamma")
    report = pie_indexing(shape, gamma)
    _logger.info(f"{shape.name} is {report.classification} PIE-indexing")
    return {"command": "pie", "dotted": shape.name, "pie": report.to_dict()}, EXIT_OK


def run_harness(workspace: Optional[Workspace], options: Dict[str, Any]) -> Tuple[Document, int]:
    """Random categories must validate; one redirected composite must be caught."""
    seed = Settings.seed if options.get("seed") is None else options["seed"]
    count = 20 if options.get("count") is None else options["count"]
    rng = Random(seed)
    failures: List[str] = []
    caught = 0
    for index in range(count):
        category = random_preorder_category(rng, name=f"P{index}")
        if not category.validate().is_valid:
            failures.append(f"{category.name} does not validate")
            continue
        mutated, key = mutate_composition(category, rng)
        if mutated.validate().is_valid:
            failures.append(f"redirecting {key[0]}∘{key[1]} in {category.name} was not caught")
        else:
            caught += 1
        marked = random_marked_preorder(rng)
        if not marked.validate().is_valid:
            failures.append(f"{marked.name} is not closed under composition")
    document = {
        "command": "harness",
        "seed": seed,
        "count": count,
        "mutations_caught": caught,
        "failures": failures,
    }
    if failures:
        _logger.warning(f"harness found {len(failures)} failures")
        return document, EXIT_VERIFICATION_FAILED
    _logger.info(f"harness passed {count} random categories")
    return document, EXIT_OK


_HANDLERS: Dict[str, Callable[[Optional[Workspace], Dict[str, Any]], Tuple[Document, int]]] = {
    "validate": run_validate,
    "limit": run_limit,
    "classify": run_classify,
    "elements": run_elements,
    "verify": run_verify,
    "example": run_example,
    "pie": run_pie,
    "harness": run_harness,
}
# commands that read definitions
NEEDS_WORKSPACE = ("validate", "limit", "classify", "elements", "verify")


def run(command: str, workspace: Optional[Workspace], options: Optional[Dict[str, Any]] = None) -> Tuple[Document, int]:
    """
    Execute one command against a workspace.

    Returns:
        The JSON-ready result and the exit code: 0 on success, 2 when a verification fails.
    Raises:
        Whatever the underlying operation raises; see error_document.
    """
    if command not in _HANDLERS:
        raise UnsupportedCombination(f"unknown command {command}")
    if command in NEEDS_WORKSPACE and workspace is None:
        raise ValidationError(f"{command} needs a definition file")
    return _HANDLERS[command](workspace, options or {})


def error_document(error: CatlimException) -> Tuple[Document, int]:
    """The diagnostic payload and exit code of an error: 3 for overflow, 1 otherwise."""
    document: Document = {"error": type(error).__name__, "message": str(error)}
    if isinstance(error, ClosureOverflow):
        document.update(name=error.name, bound=error.bound, live=error.live)
        return document, EXIT_OVERFLOW
    if isinstance(error, SizeOverflow):
        document.update(what=error.what, cap=error.cap)
        return document, EXIT_OVERFLOW
    if isinstance(error, DSLSyntaxError):
        document.update(line=error.line, column=error.column)
    elif isinstance(error, DuplicateDefinition):
        document.update(first=error.first, second=error.second)
    elif isinstance(error, DefinitionFileNotFound):
        document.update(path=error.path)
    return document, EXIT_INVALID


def read_definitions(path) -> str:
    """The text of a definition file; a missing file raises DefinitionFileNotFound."""
    try:
        with open(path, encoding="utf-8") as file:
            return file.read()
    except FileNotFoundError:
        raise DefinitionFileNotFound(path)


def execute(command: str, source: Optional[str], options: Optional[Dict[str, Any]] = None) -> Tuple[Document, int]:
    """Parse `source` (when given) and run `command`, turning catlim errors into diagnostic payloads."""
    try:
        workspace = parse(source) if source is not None else None
        return run(command, workspace, options)
    except CatlimException as error:
        document, code = error_document(error)
        if code == EXIT_OVERFLOW:
            _logger.error(document["message"])
        else:
            _logger.warning(document["message"])
        return document, code


def render(document: Document, output_format: str = "json") -> str:
    """JSON with sorted keys, or an indented key: value listing."""
    if output_format == "json":
        return json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    lines: List[str] = []

    def walk(value: Any, indent: str) -> None:
        if isinstance(value, dict):
            for key in sorted(value):
                item = value[key]
                if isinstance(item, (dict, list)) and item:
                    lines.append(f"{indent}{key}:")
                    walk(item, indent + "  ")
                else:
                    lines.append(f"{indent}{key}: {json.dumps(item, ensure_ascii=False)}")
        else:
            for item in value:
                if isinstance(item, (dict, list)) and item:
                    lines.append(f"{indent}-")
                    walk(item, indent + "  ")
                else:
                    lines.append(f"{indent}- {json.dumps(item, ensure_ascii=False)}")

    walk(document, "")
    return "\n".join(lines) + "\n"
