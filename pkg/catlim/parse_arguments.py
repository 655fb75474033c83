from .commands import CLASSIFY_KINDS, ELEMENTS_KINDS, LIMIT_KINDS, VERIFY_KINDS
from .example_library import KINDS, RIGGINGS
from .settings import Settings
from argparse import ArgumentParser
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union


def _parse_definitions(path: Optional[Path]) -> Union[Path, None]:
    if path is None:
        return None
    return Path(path)


def _parse_gamma(gamma: Optional[str]) -> Union[List[str], None]:
    if gamma is None:
        return None
    return [x.strip() for x in gamma.split(",") if x.strip()]


def _common_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "--max-morphisms",
        type=int,
        default=Settings.max_morphisms,
        help="""
    Closure bound: the most morphisms a saturated presentation, classifier or Kan extension value may have.
    """,
    )
    common.add_argument(
        "--max-cone-search",
        type=int,
        default=Settings.max_cone_search,
        help="""
    The most candidates one enumeration of functors, transformations or cones may produce.
    """,
    )
    common.add_argument(
        "--seed",
        type=int,
        default=Settings.seed,
        help="""
    Seed of the randomized harness.
    """,
    )
    common.add_argument(
        "--out",
        type=Path,
        help="""
    Write the result to this file instead of the standard output.
    """,
    )
    common.add_argument(
        "--format",
        choices=["json", "text"],
        default="json",
        help="""
    Output format. json has a stable key order.
    """,
    )
    return common


def _add_definitions(parser: ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "definitions",
        type=Path,
        nargs=None if required else "?",
        help="""
    A file of DSL definitions: category, presentation, functor, natural, two_category, diagram, marked, f_category, f_weight and dotted blocks.
    """,
    )


def parse_arguments(argv: Optional[List[str]] = None) -> Tuple[
    str,
    Union[Path, None],
    Dict[str, Any],
    Union[Path, None],
    str
]:
    """
    Parameters:
        argv (List[str]): Arguments without the program name. Defaults to sys.argv[1:].
    Returns:
        command, definitions_path, options, output_path, output_format
    """
    common = _common_parser()
    parser = ArgumentParser(
        description="Exact computation of marked and dotted limits of finite 2-categories and F-categories."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    validate = subparsers.add_parser("validate", parents=[common], help="Parse and validate every definition.")
    _add_definitions(validate)

    limit = subparsers.add_parser("limit", parents=[common], help="Compute a weighted, marked or dotted limit.")
    _add_definitions(limit)
    limit.add_argument("--kind", required=True, choices=LIMIT_KINDS)
    limit.add_argument(
        "--diagram",
        required=True,
        help="""
    The diagram to take the limit of. For dotted limits, an f_weight.
    """,
    )
    limit.add_argument("--weight", help="Weight of a weighted limit, a diagram on the same base.")
    limit.add_argument("--marked", help="Marked 2-category of a marked limit.")
    limit.add_argument("--dotted", help="Dotted F-category of a dotted limit.")

    classify = subparsers.add_parser("classify", parents=[common], help="Compute A‡ or F#.")
    _add_definitions(classify)
    classify.add_argument("--kind", required=True, choices=list(CLASSIFY_KINDS))
    classify.add_argument("--marked", help="Marked 2-category, for ‡.")
    classify.add_argument("--diagram", help="Diagram A, for ‡.")
    classify.add_argument("--dotted", help="Dotted F-category, for #.")
    classify.add_argument("--weight", help="F-weight F, for #.")

    elements = subparsers.add_parser("elements", parents=[common], help="Build a 2-category or F-category of elements.")
    _add_definitions(elements)
    elements.add_argument(
        "--kind",
        default="2",
        choices=ELEMENTS_KINDS,
        help="""
    2 for the marked 2-category of elements of a diagram, F for the dotted F-category of elements of an f_weight.
    """,
    )
    elements.add_argument("--weight", required=True)

    verify = subparsers.add_parser("verify", parents=[common], help="Check one of the equivalence theorems.")
    _add_definitions(verify)
    verify.add_argument("--kind", required=True, choices=VERIFY_KINDS)
    verify.add_argument("--weight")
    verify.add_argument("--diagram")
    verify.add_argument("--marked")
    verify.add_argument("--dotted")
    verify.add_argument("--source", help="Left side of an adjunction check.")
    verify.add_argument("--target", help="Right side of an adjunction check.")
    verify.add_argument(
        "--skip-cocones",
        action="store_true",
        help="""
    For classifier checks, skip the second comparison through marked codescent cocones.
    """,
    )

    example = subparsers.add_parser("example", parents=[common], help="Build and check a rigged limit shape.")
    example.add_argument("--kind", required=True, choices=KINDS)
    example.add_argument("--rigging", choices=RIGGINGS)
    example.add_argument("--depth", type=int, default=4, help="Truncation depth of the alternating chain.")

    pie = subparsers.add_parser("pie", parents=[common], help="Classify a dotted F-category as PIE-indexing.")
    _add_definitions(pie, required=False)
    pie.add_argument("--dotted", help="A dotted block of the definition file.")
    pie.add_argument("--kind", choices=KINDS, help="An example shape, when no dotted block is given.")
    pie.add_argument("--rigging", choices=RIGGINGS)
    pie.add_argument("--depth", type=int, default=4)
    pie.add_argument(
        "--gamma",
        help="""
    Comma separated objects allowed as initial objects. Defaults to the dotted objects.
    """,
    )

    harness = subparsers.add_parser("harness", parents=[common], help="Check law validation on random categories.")
    harness.add_argument("--count", type=int, default=20)

    args = parser.parse_args(argv)

    # Parse args
    Settings.max_morphisms = args.max_morphisms
    Settings.max_cone_search = args.max_cone_search
    Settings.seed = args.seed

    definitions_path = _parse_definitions(getattr(args, "definitions", None))

    options = {
        key: value
        for key, value in vars(args).items()
        if key not in ("command", "definitions", "max_morphisms", "max_cone_search", "out", "format")
    }
    if "gamma" in options:
        options["gamma"] = _parse_gamma(options["gamma"])

    return (
        args.command,
        definitions_path,
        options,
        args.out,
        args.format
    )
