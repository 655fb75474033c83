import logging
from .diagram import CatValued2Functor
from .dotted import DottedFCategory, dotted_transformations, is_tight_cone
from .enhanced import FCategory, FWeight
from .exceptions import UnsupportedCombination
from .fin_2category import Fin2Category
from .fin_category import FinCategory, ValidationReport
from .presentation import CatPresentation, saturate_presentation
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

_logger = logging.getLogger(__name__)

KINDS = ("inserter", "equifier", "descent", "alternating")
RIGGINGS = ("l", "c", "p")

DESCENT_GENERATORS = {
    "δ0_1": ("1", "2"),
    "δ1_1": ("1", "2"),
    "σ": ("2", "1"),
    "δ0_2": ("2", "3"),
    "δ1_2": ("2", "3"),
    "δ2_2": ("2", "3"),
}
DESCENT_TIGHT = ("δ0_1", "σ", "δ0_2", "δ1_2")
# truncated cosimplicial identities, words in composition order
DESCENT_RELATIONS = [
    (("σ", "δ0_1"), (), "1"),
    (("σ", "δ1_1"), (), "1"),
    (("δ1_2", "δ0_1"), ("δ0_2", "δ0_1"), "1"),
    (("δ2_2", "δ0_1"), ("δ0_2", "δ1_1"), "1"),
    (("δ2_2", "δ1_1"), ("δ1_2", "δ1_1"), "1"),
]
DESCENT_GAP = "the descent equations on the cone 2-cells are not part of the shape; only legs and marked components are checked"
ALTERNATING_CAVEAT = (
    "truncated at a finite depth; the untruncated chain has no initial object, so it is not PIE-indexing, "
    "although its limits still lift to algebras"
)


class ShapeDescriptor:
    """
    The expected shape of the dotted limit of an example.

    Attributes:
        kind (str): inserter, equifier, descent or alternating.
        rigging (Optional[str]): l, c or p; None for alternating.
        colax (bool): Whether the limit is taken over dotted-colax cones.
        tight_legs (List[str]): Objects whose cone legs are tight in the tight part.
        marked_cells (List[str]): 1-cells whose cone components are identities.
        free_cells (List[str]): 1-cells whose cone components are free 2-cells.
        detecting (List[str]): Projections that jointly detect tightness.
        equations (List[str]): Relations of the indexing shape.
        gap (Optional[str]): What the descriptor knowingly leaves unchecked.
        caveat (Optional[str]): Remark on the finite rendition of the shape.
    """

    def __init__(
        self,
        kind: str,
        rigging: Optional[str],
        colax: bool,
        tight_legs: Iterable[str],
        marked_cells: Iterable[str],
        free_cells: Iterable[str],
        detecting: Iterable[str] = (),
        equations: Iterable[str] = (),
        gap: Optional[str] = None,
        caveat: Optional[str] = None,
    ):
        self.kind = kind
        self.rigging = rigging
        self.colax = colax
        self.tight_legs = list(tight_legs)
        self.marked_cells = list(marked_cells)
        self.free_cells = list(free_cells)
        self.detecting = list(detecting)
        self.equations = list(equations)
        self.gap = gap
        self.caveat = caveat

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "kind": self.kind,
            "rigging": self.rigging,
            "colax": self.colax,
            "tight_legs": self.tight_legs,
            "marked_cells": self.marked_cells,
            "free_cells": self.free_cells,
            "detecting": self.detecting,
            "equations": self.equations,
        }
        if self.gap:
            result["gap"] = self.gap
        if self.caveat:
            result["caveat"] = self.caveat
        return result

    def __repr__(self):
        return f'ShapeDescriptor(kind="{self.kind}", rigging="{self.rigging}")'


def _parallel_pair(name: str, with_cells: bool) -> Fin2Category:
    cells1 = {"f": ("x", "y"), "g": ("x", "y")}
    cells2 = {"α": ("f", "g"), "β": ("f", "g")} if with_cells else None
    return Fin2Category.build(name, ["x", "y"], cells1, cells2=cells2)


def _inserter(rigging: str) -> Tuple[DottedFCategory, ShapeDescriptor]:
    base = _parallel_pair(f"{rigging}-inserter", False)
    if rigging == "p":
        tight, sigma, dotted = [], ["g"], ["x"]
    else:
        tight, sigma, dotted = ["g"], ["g"], ["x", "y"]
    shape = DottedFCategory(FCategory(base, tight), sigma, dotted)
    descriptor = ShapeDescriptor("inserter", rigging, rigging == "l", dotted, ["g"], ["f"], ["x"])
    return shape, descriptor


def _equifier(rigging: str) -> Tuple[DottedFCategory, ShapeDescriptor]:
    base = _parallel_pair(f"{rigging}-equifier", True)
    if rigging == "l":
        tight, sigma, dotted, free = ["f"], ["f"], ["x", "y"], ["g"]
    elif rigging == "c":
        tight, sigma, dotted, free = ["g"], ["g"], ["x", "y"], ["f"]
    else:
        tight, sigma, dotted, free = [], ["g"], ["x"], ["f"]
    shape = DottedFCategory(FCategory(base, tight), sigma, dotted)
    descriptor = ShapeDescriptor("equifier", rigging, rigging == "l", dotted, sigma, free, ["x"], ["Sα∘γx = Sβ∘γx"])
    return shape, descriptor


def composition_closure(category: FinCategory, cells: Iterable[str]) -> Set[str]:
    """The smallest set of morphisms containing `cells` and the identities, closed under composition."""
    closed = set(cells) | set(category.identity.values())
    grew = True
    while grew:
        grew = False
        for (g, f), h in category.compose_table.items():
            if g in closed and f in closed and h not in closed:
                closed.add(h)
                grew = True
    return closed


def descent_presentation() -> CatPresentation:
    return CatPresentation("descent", ["1", "2", "3"], DESCENT_GENERATORS, DESCENT_RELATIONS)


def _descent(rigging: str) -> Tuple[DottedFCategory, ShapeDescriptor]:
    if rigging == "p":
        raise UnsupportedCombination("descent objects come in the l and c riggings only")
    category = saturate_presentation(descent_presentation())
    base = Fin2Category.locally_discrete(category, f"{rigging}-descent")
    tight = composition_closure(category, [category.generator_morphism[g] for g in DESCENT_TIGHT])
    shape = DottedFCategory(FCategory(base, tight), tight, category.objects)
    marked = [f for f in base.cells1 if f in tight and not base.is_identity1(f)]
    free = [category.generator_morphism[g] for g in DESCENT_GENERATORS if category.generator_morphism[g] not in tight]
    equations = [f"{'∘'.join(lhs) or '1'} = {'∘'.join(rhs) or '1'}" for lhs, rhs, _ in DESCENT_RELATIONS]
    descriptor = ShapeDescriptor(
        "descent", rigging, rigging == "l", category.objects, marked, free, ["1"], equations, gap=DESCENT_GAP
    )
    return shape, descriptor


def alternating_category(depth: int) -> FinCategory:
    """The chain depth -> ... -> 2 -> 1, with "n->m" for every n > m."""
    objects = [str(n) for n in range(1, depth + 1)]
    arrows = {f"{n}->{m}": (str(n), str(m)) for n in range(1, depth + 1) for m in range(1, n)}
    composites = {
        (f"{m}->{k}", f"{n}->{m}"): f"{n}->{k}"
        for n in range(1, depth + 1)
        for m in range(1, n)
        for k in range(1, m)
    }
    return FinCategory.from_generators(f"N≤{depth}", objects, arrows, composites)


def _alternating(depth: int) -> Tuple[DottedFCategory, ShapeDescriptor]:
    if depth < 1:
        raise UnsupportedCombination("the alternating chain needs at least one object")
    category = alternating_category(depth)
    base = Fin2Category.locally_discrete(category, f"alternating-{depth}")
    tight = [
        f for f, (n, m) in category.morphisms.items()
        if category.is_identity(f) or (int(n) % 2 == 0 and int(m) % 2 == 1)
    ]
    odd = [x for x in category.objects if int(x) % 2 == 1]
    shape = DottedFCategory(FCategory(base, tight), base.cells1, odd, caveat=ALTERNATING_CAVEAT)
    marked = [f for f in base.cells1 if not base.is_identity1(f)]
    descriptor = ShapeDescriptor("alternating", None, False, odd, marked, [], caveat=ALTERNATING_CAVEAT)
    return shape, descriptor


def example_library(kind: str, rigging: Optional[str] = None, depth: int = 4) -> Tuple[DottedFCategory, ShapeDescriptor]:
    """
    The indexing dotted F-category of a rigged limit, with the expected shape of its cones.

    Parameters:
        kind (str): inserter, equifier, descent or alternating.
        rigging (str): l, c or p. l-rigged limits are dotted-colax limits, c- and p-rigged ones
            dotted-lax limits. Must be None for alternating.
        depth (int): Truncation depth of the alternating chain.
    Raises:
        UnsupportedCombination: for an unknown kind or a rigging the kind does not come in.
    """
    if kind == "alternating":
        if rigging is not None:
            raise UnsupportedCombination("alternating limits take no rigging")
        shape, descriptor = _alternating(depth)
    elif kind in ("inserter", "equifier", "descent"):
        if rigging not in RIGGINGS:
            raise UnsupportedCombination(f"{kind} needs a rigging among {', '.join(RIGGINGS)}, not {rigging}")
        builder = {"inserter": _inserter, "equifier": _equifier, "descent": _descent}[kind]
        shape, descriptor = builder(rigging)
    else:
        raise UnsupportedCombination(f"unknown example {kind}")
    shape.check()
    _logger.debug(f"Built {shape}")
    return shape, descriptor


def sample_diagram(shape: DottedFCategory, value: Optional[FinCategory] = None, tight: Iterable[str] = ("0",)) -> FWeight:
    """The constant F-diagram at the F-object (value, tight), by default [1] with tight object 0."""
    value = value or FinCategory.ordinal(1)
    tight = list(tight)
    constant = CatValued2Functor.constant(shape.loose, value, f"S({shape.name})")
    return FWeight.from_tight_objects(shape.base, constant, {d: tight for d in shape.loose.objects})


def check_descriptor(
    descriptor: ShapeDescriptor, shape: DottedFCategory, diagram: FWeight, cap: Optional[int] = None
) -> ValidationReport:
    """
    Compute the dotted limit of `diagram` and check it against `descriptor`: marked components are
    identities, a cone is tight exactly when its legs at tight_legs are tight, and the detecting
    projections detect tightness of cones.
    """
    report = ValidationReport(f"{descriptor.kind} shape")
    limit = dotted_transformations(
        shape, FWeight.terminal(shape.base), diagram, colax=descriptor.colax, cap=cap
    )
    tight = limit.tight_objects()
    free = set()
    for x in limit.loose.objects:
        cone = limit.loose.object_payload(x)
        for f in descriptor.marked_cells:
            if not cone.cell(f).is_identity():
                report.add(f"cone {x} has a non-identity component at marked {f}")
        if (x in tight) != is_tight_cone(cone, diagram, descriptor.tight_legs):
            report.add(f"tightness of cone {x} does not match its legs at {', '.join(descriptor.tight_legs)}")
        if descriptor.detecting and (x in tight) != is_tight_cone(cone, diagram, descriptor.detecting):
            report.add(f"the projections at {', '.join(descriptor.detecting)} do not detect tightness of cone {x}")
        free.update(f for f in descriptor.free_cells if not cone.cell(f).is_identity())
    _logger.debug(f"{limit.loose.name}: {len(limit.loose.objects)} cones, free 2-cells seen at {sorted(free)}")
    return report
