import logging
import networkx as nx
from .enhanced import FCategory, FObject, FWeight
from .exceptions import ClosureViolation
from .fin_2category import TwoFunctor
from .fin_category import ValidationReport
from .lax import LaxTransformation, lax_category
from .marked import Elements, EquivalenceReport, ElementsTransport, MarkedTwoCategory
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

_logger = logging.getLogger(__name__)


class DottedFCategory:
    """
    An F-category with a class Σ of marked 1-cells and a class T of dotted objects.

    Σ contains the identities and is closed under composition. T is closed under tight marked
    1-cells: if a is dotted and f: a -> b is tight and marked, b is dotted.

    Attributes:
        base (FCategory): The F-category.
        sigma (Set[str]): Marked 1-cells.
        dotted (List[str]): Dotted objects, in base order.
        caveat (Optional[str]): A remark carried into reports about this shape.
    """

    base: FCategory
    sigma: Set[str]
    dotted: List[str]
    caveat: Optional[str]

    def __init__(
        self,
        base: FCategory,
        sigma: Iterable[str],
        dotted: Iterable[str],
        name: Optional[str] = None,
        caveat: Optional[str] = None,
    ):
        self.base = base
        self.sigma = set(sigma) | set(base.loose.identity1.values())
        chosen = set(dotted)
        self.dotted = [x for x in base.loose.objects if x in chosen]
        self.name = name or base.name
        self.caveat = caveat

    @property
    def loose(self):
        return self.base.loose

    def is_dotted(self, x: str) -> bool:
        return x in self.dotted

    def marked(self) -> MarkedTwoCategory:
        return MarkedTwoCategory(self.base.loose, self.sigma, f"({self.name}, Σ)")

    def _closure_failures(self) -> List[Tuple[str, Any]]:
        loose = self.base.loose
        failures = []
        for (g, f), h in loose.compose1.items():
            if g in self.sigma and f in self.sigma and h not in self.sigma:
                failures.append((f"{g}∘{f} = {h} is not marked", (g, f, h)))
        for f, (a, b) in loose.cells1.items():
            if a in self.dotted and b not in self.dotted and f in self.sigma and self.base.is_tight(f):
                failures.append((f"{a} is dotted and {f}: {a} -> {b} is tight and marked, but {b} is not dotted", f))
        return failures

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"dotted F-category {self.name}")
        report.extend(self.base.validate())
        for f in sorted(self.sigma):
            if f not in self.base.loose.cells1:
                report.add(f"marked cell {f} is not a 1-cell")
        for message, _ in self._closure_failures():
            report.add(message)
        return report

    def check(self) -> "DottedFCategory":
        """
        Raises:
            ClosureViolation: Σ is not closed under composition or T is not closed under tight marked cells.
        """
        failures = self._closure_failures()
        if failures:
            message, witness = failures[0]
            raise ClosureViolation(message, witness)
        return self

    def co(self) -> "DottedFCategory":
        return DottedFCategory(self.base.co(), self.sigma, self.dotted, self.name + "^co", self.caveat)

    def to_dict(self) -> Dict[str, Any]:
        result = self.base.to_dict()
        result["marked"] = sorted(f for f in self.sigma if not self.base.loose.is_identity1(f))
        result["dotted"] = list(self.dotted)
        return result

    def __repr__(self):
        return f'DottedFCategory(name="{self.name}", dotted="{len(self.dotted)}", marked="{len(self.sigma)}")'


def dotted_transformations(
    dotted: DottedFCategory,
    source: FWeight,
    target: FWeight,
    colax: bool = False,
    cap: Optional[int] = None,
    name: Optional[str] = None,
) -> FObject:
    """
    The hom F-object of dotted-lax (or dotted-colax) transformations source => target.

    The loose part is the category of Σ-lax transformations of the loose parts with their
    modifications. The tight part is the full subcategory of those whose 1-components at the
    dotted objects are tight, that is, send tight objects to tight objects.
    """
    loose = lax_category(
        source.phi_lambda,
        target.phi_lambda,
        sigma=dotted.sigma,
        colax=colax,
        cap=cap,
        name=name or f"[{source.name},{target.name}]{'c' if colax else 'l'},Σ,T",
    )
    tight = [x for x in loose.objects if source.maps_tight(loose.object_payload(x), target, dotted.dotted)]
    _logger.debug(f"{loose.name}: {len(tight)} of {len(loose.objects)} transformations are tight")
    return FObject.full(loose, tight)


def dotted_lax_cone_fobject(dotted: DottedFCategory, diagram: FWeight, cap: Optional[int] = None) -> FObject:
    """The dotted-lax limit of an F-diagram valued in 𝔽: dotted-lax cones Δ1 => diagram."""
    return dotted_transformations(
        dotted, FWeight.terminal(dotted.base), diagram, cap=cap, name=f"{diagram.name}-dotted-laxlim"
    )


def dotted_colax_cone_fobject(dotted: DottedFCategory, diagram: FWeight, cap: Optional[int] = None) -> FObject:
    return dotted_transformations(
        dotted, FWeight.terminal(dotted.base), diagram, colax=True, cap=cap, name=f"{diagram.name}-dotted-colaxlim"
    )


def is_tight_cone(cone: LaxTransformation, diagram: FWeight, objects: Iterable[str]) -> bool:
    """Whether the legs of a cone over `diagram` at `objects` pick tight objects."""
    return all(cone.component(d).on_object("0") in diagram.tight_objects(d) for d in objects)


def _dotted_elements(weight: FWeight, elements: Elements) -> DottedFCategory:
    category = elements.marked.base
    tight = [c for c, (d, _, _) in category.cell1_payloads.items() if weight.base.is_tight(d)]
    dotted = [x for x in category.objects if category.object_payloads[x][1] in weight.tight_objects(category.object_payloads[x][0])]
    return DottedFCategory(FCategory(category, tight), elements.marked.sigma, dotted, f"El({weight.name})")


def f_category_of_elements(weight: FWeight, cap: Optional[int] = None) -> Tuple[DottedFCategory, TwoFunctor]:
    """
    The dotted F-category of elements of an F-weight and its projection to the base.

    Objects are (D, δ ∈ Φλ(D)). A 1-cell (d, ω) is tight when d is tight, marked when ω is an
    identity. The dotted objects are the (D, δ) with δ tight.
    """
    elements = Elements(weight.phi_lambda, cap)
    dotted = _dotted_elements(weight, elements)
    dotted.check()
    return dotted, elements.projection


class FElementsTransport:
    """
    {Φ, S} against the dotted-lax limit of S∘P over the elements of Φ, on loose parts through
    the Cat-weighted transport and then on tight parts.
    """

    def __init__(self, weight: FWeight, diagram: FWeight, cap: Optional[int] = None):
        self.weight = weight
        self.diagram = diagram
        self.transport = ElementsTransport(weight.phi_lambda, diagram.phi_lambda, cap)
        self.dotted = _dotted_elements(weight, self.transport.elements)

    def left_tight(self, beta: LaxTransformation) -> bool:
        return self.weight.maps_tight(beta, self.diagram, self.weight.base.loose.objects)

    def right_tight(self, cone: LaxTransformation) -> bool:
        payloads = self.dotted.loose.object_payloads
        return all(
            cone.component(x).on_object("0") in self.diagram.tight_objects(payloads[x][0]) for x in self.dotted.dotted
        )

    def report(self) -> EquivalenceReport:
        report = self.transport.report()
        report.title = f"{{{self.weight.name},{self.diagram.name}}} ≅ dotted-lax limit over El"
        if not report.holds:
            return report
        left, right = self.transport.left, self.transport.right
        forward = report.witness.forward
        tight_left = tight_right = 0
        for x in left.objects:
            y = forward.on_object(x)
            is_left = self.left_tight(left.object_payload(x))
            is_right = self.right_tight(right.object_payload(y))
            tight_left += is_left
            tight_right += is_right
            if is_left != is_right:
                report.failures.append(f"tightness of {x} is not preserved and reflected")
        report.details["tight"] = {"left": tight_left, "right": tight_right}
        return report


def check_fweighted_equals_dotted(weight: FWeight, diagram: FWeight, cap: Optional[int] = None) -> EquivalenceReport:
    """The F-weighted limit {Φ, S} has the universal property of the dotted-lax limit of S∘P."""
    return FElementsTransport(weight, diagram, cap).report()


class PIEReport:
    """
    Attributes:
        classification (str): "strong", "weak" or "none".
        components (List[List[str]]): Connected components of the marked part.
        initial (Dict[int, str]): The chosen initial object of each component that has one in Γ.
        caveat (Optional[str]): Carried over from the shape.
    """

    classification: str
    components: List[List[str]]
    initial: Dict[int, str]
    caveat: Optional[str]

    def __init__(self, classification: str, components: List[List[str]], initial: Dict[int, str], caveat: Optional[str] = None):
        self.classification = classification
        self.components = components
        self.initial = initial
        self.caveat = caveat

    @property
    def initial_objects(self) -> List[str]:
        return [self.initial[i] for i in sorted(self.initial)]

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "classification": self.classification,
            "components": self.components,
            "initial": self.initial_objects,
        }
        if self.caveat:
            result["caveat"] = self.caveat
        return result

    def __repr__(self):
        return f'PIEReport(classification="{self.classification}")'


def _marked_cells(dotted: DottedFCategory, a: str, b: str) -> List[str]:
    return [f for f in dotted.loose.cells1_between(a, b) if f in dotted.sigma]


def _is_initial(dotted: DottedFCategory, x: str, component: List[str]) -> bool:
    loose = dotted.loose
    for y in component:
        cells = _marked_cells(dotted, x, y)
        if len(cells) != 1 or loose.cells2_between(cells[0], cells[0]) != [loose.identity2[cells[0]]]:
            return False
    return True


def pie_indexing(dotted: DottedFCategory, gamma: Optional[Iterable[str]] = None) -> PIEReport:
    """
    Classify a dotted F-category as weakly or strongly PIE-indexing relative to Γ (the dotted
    objects by default).

    Weak: every connected component of Σ has an initial object in Γ. Strong: furthermore the
    unique marked 1-cell from that object to each object of its component is tight.
    """
    loose = dotted.loose
    gamma = set(dotted.dotted if gamma is None else gamma)
    graph = nx.Graph()
    graph.add_nodes_from(loose.objects)
    for f, (a, b) in loose.cells1.items():
        if f in dotted.sigma and a != b:
            graph.add_edge(a, b)
    order = {x: i for i, x in enumerate(loose.objects)}
    components = sorted((sorted(c, key=order.get) for c in nx.connected_components(graph)), key=lambda c: order[c[0]])

    initial: Dict[int, str] = {}
    weak, strong = True, True
    for index, component in enumerate(components):
        candidates = [x for x in component if x in gamma and _is_initial(dotted, x, component)]
        if not candidates:
            weak = strong = False
            continue
        tight = [x for x in candidates if all(dotted.base.is_tight(_marked_cells(dotted, x, y)[0]) for y in component)]
        initial[index] = (tight or candidates)[0]
        if not tight:
            strong = False
    classification = "strong" if strong else "weak" if weak else "none"
    _logger.debug(f"{dotted.name} has {len(components)} marked components and is {classification} PIE-indexing")
    return PIEReport(classification, components, initial, dotted.caveat)
