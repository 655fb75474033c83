import logging
from .diagram import CatValued2Functor
from .exceptions import ClosureViolation, SizeOverflow, TransportFailure
from .fin_2category import Fin2Category, TwoFunctor
from .fin_category import FinCategory, ValidationReport, pair_id
from .fincat import IsoWitness, invert_functor, payload_functor
from .functor import Functor, NatTransformation
from .lax import LaxTransformation, Modification, lax_category
from .settings import Settings
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

_logger = logging.getLogger(__name__)


class MarkedTwoCategory:
    """
    A 2-category with a class Σ of marked 1-cells containing the identities and closed under
    composition.

    Attributes:
        base (Fin2Category): The underlying 2-category.
        sigma (Set[str]): Marked 1-cells.
    """

    base: Fin2Category
    sigma: Set[str]

    def __init__(self, base: Fin2Category, sigma: Iterable[str], name: Optional[str] = None):
        self.base = base
        self.sigma = set(sigma) | set(base.identity1.values())
        self.name = name or f"({base.name}, Σ)"

    def is_marked(self, f: str) -> bool:
        return f in self.sigma

    def validate(self) -> ValidationReport:
        report = ValidationReport(self.name)
        for f in self.sigma:
            if f not in self.base.cells1:
                report.add(f"marked cell {f} is not a 1-cell")
        for (g, f), h in self.base.compose1.items():
            if g in self.sigma and f in self.sigma and h not in self.sigma:
                report.add(f"marked cells are not closed under composition: {g}∘{f} = {h}")
        return report

    def check(self) -> "MarkedTwoCategory":
        """Raise ClosureViolation with the first offending composite."""
        for (g, f), h in self.base.compose1.items():
            if g in self.sigma and f in self.sigma and h not in self.sigma:
                raise ClosureViolation(f"{g}∘{f} = {h} is not marked", (g, f, h))
        return self

    def co(self) -> "MarkedTwoCategory":
        return MarkedTwoCategory(self.base.co(), self.sigma, self.name + "^co")

    def to_dict(self) -> Dict[str, Any]:
        return {"base": self.base.to_dict(), "marked": sorted(f for f in self.sigma if not self.base.is_identity1(f))}

    def __repr__(self):
        return f'MarkedTwoCategory(name="{self.name}", marked="{len(self.sigma)}")'

    @classmethod
    def all_cells(cls, base: Fin2Category) -> "MarkedTwoCategory":
        return cls(base, base.cells1)

    @classmethod
    def identities(cls, base: Fin2Category) -> "MarkedTwoCategory":
        return cls(base, base.identity1.values())


def marked_lax_category(
    marked: MarkedTwoCategory,
    source: CatValued2Functor,
    target: CatValued2Functor,
    colax: bool = False,
    cap: Optional[int] = None,
    name: Optional[str] = None,
) -> FinCategory:
    """Σ-lax (or Σ-colax) transformations source => target and modifications."""
    return lax_category(source, target, sigma=marked.sigma, colax=colax, cap=cap, name=name)


def marked_lax_cone_category(marked: MarkedTwoCategory, diagram: CatValued2Functor, cap: Optional[int] = None) -> FinCategory:
    """The marked lax limit: Σ-lax cones over `diagram` with summit the terminal category."""
    terminal = CatValued2Functor.terminal(marked.base)
    return marked_lax_category(marked, terminal, diagram, cap=cap, name=f"{diagram.name}-laxlim")


def marked_colax_cone_category(marked: MarkedTwoCategory, diagram: CatValued2Functor, cap: Optional[int] = None) -> FinCategory:
    terminal = CatValued2Functor.terminal(marked.base)
    return marked_lax_category(marked, terminal, diagram, colax=True, cap=cap, name=f"{diagram.name}-colaxlim")


def cone_projections(cones: FinCategory, diagram: CatValued2Functor) -> Dict[str, Functor]:
    """The projections of a lax cone category, one functor into each value of the diagram."""
    projections = {}
    for d in diagram.source.objects:
        value = diagram.value(d)
        object_map = {x: cones.object_payload(x).component(d).on_object("0") for x in cones.objects}
        morphism_map = {m: cones.morphism_payload(m).component(d).components["0"] for m in cones.morphisms}
        projections[d] = Functor(cones, value, object_map, morphism_map)
    return projections


class Elements:
    """
    The marked 2-category of elements of a weight W, with its projection to the base.

    Objects "<D|δ>" are pairs (D, δ ∈ W(D)); 1-cells "<d|δ|ω>" are pairs (d, ω: W(d)δ -> δ');
    2-cells α: (d, ω) => (d', ω') satisfy ω'∘W(α)_δ = ω. Marked 1-cells have ω an identity.
    """

    weight: CatValued2Functor
    marked: MarkedTwoCategory
    projection: TwoFunctor

    def __init__(self, weight: CatValued2Functor, cap: Optional[int] = None):
        self.weight = weight
        limit = Settings.closure_bound(cap)
        base = weight.source
        objects, object_payloads = [], {}
        for D in base.objects:
            for delta in weight.value(D).objects:
                objects.append(pair_id(D, delta))
                object_payloads[pair_id(D, delta)] = (D, delta)

        cells1: Dict[str, Tuple[str, str]] = {}
        cell1_payloads: Dict[str, Tuple[str, str, str]] = {}
        for d, (D1, D2) in base.cells1.items():
            functor, value = weight.cell(d), weight.value(D2)
            for delta in weight.value(D1).objects:
                for omega in value.morphisms:
                    if value.source(omega) != functor.on_object(delta):
                        continue
                    cid = pair_id(d, delta, omega)
                    cells1[cid] = (pair_id(D1, delta), pair_id(D2, value.target(omega)))
                    cell1_payloads[cid] = (d, delta, omega)
                    if len(cells1) > limit:
                        raise SizeOverflow(f"1-cells of the elements of {weight.name}", limit)
        identity1 = {
            pair_id(D, delta): pair_id(base.identity1[D], delta, weight.value(D).identity[delta])
            for D in base.objects
            for delta in weight.value(D).objects
        }
        compose1 = {}
        outgoing: Dict[str, List[str]] = {}
        for cid, (s, _) in cells1.items():
            outgoing.setdefault(s, []).append(cid)
        for first, (_, middle) in cells1.items():
            h, delta1, eta = cell1_payloads[first]
            for second in outgoing.get(middle, []):
                k, _, kappa = cell1_payloads[second]
                D3 = base.target1(k)
                omega = weight.value(D3).compose(kappa, weight.cell(k).on_morphism(eta))
                compose1[(second, first)] = pair_id(base.compose(k, h), delta1, omega)

        cells2: Dict[str, Tuple[str, str]] = {}
        cell2_payloads: Dict[str, Tuple[str, str, str]] = {}
        by_type: Dict[Tuple[str, str], List[str]] = {}
        for cid, (s, t) in cells1.items():
            d, delta, _ = cell1_payloads[cid]
            by_type.setdefault((d, s, t), []).append(cid)
        for alpha, (d, d2) in base.cells2.items():
            D1, D2 = base.cells1[d]
            value = weight.value(D2)
            for (cell, s, t), members in by_type.items():
                if cell != d:
                    continue
                for c1 in members:
                    _, delta, omega = cell1_payloads[c1]
                    for c2 in by_type.get((d2, s, t), []):
                        omega2 = cell1_payloads[c2][2]
                        if value.compose(omega2, weight.two_cell(alpha).components[delta]) == omega:
                            aid = pair_id(alpha, c1, c2)
                            cells2[aid] = (c1, c2)
                            cell2_payloads[aid] = (alpha, c1, c2)
        identity2 = {cid: pair_id(base.identity2[cell1_payloads[cid][0]], cid, cid) for cid in cells1}
        vertical = {}
        by_source2: Dict[str, List[str]] = {}
        for aid, (c1, _) in cells2.items():
            by_source2.setdefault(c1, []).append(aid)
        for a1, (c1, c2) in cells2.items():
            for a2 in by_source2.get(c2, []):
                c3 = cells2[a2][1]
                vertical[(a2, a1)] = pair_id(base.vcompose(cell2_payloads[a2][0], cell2_payloads[a1][0]), c1, c3)
        horizontal = {}
        for b, (k1, k2) in cells2.items():
            for a, (h1, h2) in cells2.items():
                if (k1, h1) in compose1:
                    horizontal[(b, a)] = pair_id(
                        base.hcompose(cell2_payloads[b][0], cell2_payloads[a][0]),
                        compose1[(k1, h1)],
                        compose1[(k2, h2)],
                    )

        elements = Fin2Category(
            f"El({weight.name})",
            objects,
            cells1,
            cells2,
            identity1,
            identity2,
            compose1,
            vertical,
            horizontal,
            object_payloads,
            cell1_payloads,
            cell2_payloads,
        )
        sigma = [
            cid
            for cid, (d, _, omega) in cell1_payloads.items()
            if weight.value(base.target1(d)).is_identity(omega)
        ]
        self.marked = MarkedTwoCategory(elements, sigma, f"El({weight.name})")
        self.projection = TwoFunctor(
            elements,
            base,
            {x: object_payloads[x][0] for x in objects},
            {c: cell1_payloads[c][0] for c in cells1},
            {a: cell2_payloads[a][0] for a in cells2},
        )

    def __repr__(self):
        return f'Elements(weight="{self.weight.name}", objects="{len(self.marked.base.objects)}")'


def category_of_elements(weight: CatValued2Functor, cap: Optional[int] = None) -> Tuple[MarkedTwoCategory, TwoFunctor]:
    """The marked 2-category of elements of `weight` and its projection to the base."""
    elements = Elements(weight, cap)
    return elements.marked, elements.projection


class EquivalenceReport:
    """
    Outcome of comparing two cone categories through explicit functors.

    Attributes:
        title (str): What was compared.
        left (FinCategory): Left-hand side.
        right (FinCategory): Right-hand side.
        witness (Optional[IsoWitness]): The comparison and its inverse, when they exist.
        failures (List[str]): Reasons the comparison failed.
    """

    title: str
    left: FinCategory
    right: FinCategory
    witness: Optional[IsoWitness]
    failures: List[str]

    def __init__(self, title: str, left: FinCategory, right: FinCategory):
        self.title = title
        self.left = left
        self.right = right
        self.witness = None
        self.failures = []
        self.details: Dict[str, Any] = {}

    @property
    def holds(self) -> bool:
        return self.witness is not None and not self.failures

    def compare(self, forward: Functor, backward: Optional[Functor] = None) -> "EquivalenceReport":
        """Record `forward`, checking it is a functor and an isomorphism (with `backward` as inverse)."""
        report = forward.validate()
        if not report.is_valid:
            self.failures.extend(report.violations)
            return self
        if backward is None:
            backward = invert_functor(forward)
            if backward is None:
                self.failures.append("the comparison functor is not bijective")
                return self
        witness = IsoWitness(forward, backward)
        report = witness.validate()
        if not report.is_valid:
            self.failures.extend(report.violations)
            return self
        self.witness = witness
        return self

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "title": self.title,
            "holds": self.holds,
            "left": {"objects": len(self.left.objects), "morphisms": len(self.left.morphisms)},
            "right": {"objects": len(self.right.objects), "morphisms": len(self.right.morphisms)},
            "failures": list(self.failures),
        }
        result.update(self.details)
        if self.witness is not None:
            result["witness"] = self.witness.to_dict()
        return result

    def __repr__(self):
        return f'EquivalenceReport(title="{self.title}", holds="{self.holds}")'


class ElementsTransport:
    """
    Transport between strict transformations W => R and Σ-lax transformations Δ1 => R∘P over
    the elements of W, for a Cat-valued R.
    """

    def __init__(self, weight: CatValued2Functor, diagram: CatValued2Functor, cap: Optional[int] = None):
        self.weight = weight
        self.diagram = diagram
        self.elements = Elements(weight, cap)
        marked, projection = self.elements.marked, self.elements.projection
        self.pulled = diagram.precompose(projection, f"{diagram.name}∘P")
        self.terminal = CatValued2Functor.terminal(marked.base)
        self.left = lax_category(weight, diagram, strict=True, cap=cap, name=f"{{{weight.name},{diagram.name}}}")
        self.right = lax_category(self.terminal, self.pulled, sigma=marked.sigma, cap=cap, name=f"{diagram.name}-Σlaxlim")

    def to_marked(self, beta: LaxTransformation) -> LaxTransformation:
        elements = self.elements.marked.base
        components1, components2 = {}, {}
        terminal = self.terminal.value(elements.objects[0]) if elements.objects else None
        for x in elements.objects:
            D, delta = elements.object_payloads[x]
            value = self.diagram.value(D)
            components1[x] = Functor(
                terminal, value, {"0": beta.component(D).on_object(delta)}, {"1_0": value.identity[beta.component(D).on_object(delta)]}
            )
        for c, (x, y) in elements.cells1.items():
            d, _, omega = elements.cell1_payloads[c]
            D2 = elements.object_payloads[y][0]
            lower = self.pulled.cell(c).compose(components1[x])
            upper = components1[y].compose(self.terminal.cell(c))
            components2[c] = NatTransformation(lower, upper, {"0": beta.component(D2).on_morphism(omega)})
        return LaxTransformation(self.terminal, self.pulled, components1, components2)

    def to_strict(self, alpha: LaxTransformation) -> LaxTransformation:
        base = self.weight.source
        components = {}
        for D in base.objects:
            value = self.weight.value(D)
            object_map = {delta: alpha.component(pair_id(D, delta)).on_object("0") for delta in value.objects}
            morphism_map = {
                u: alpha.cell(pair_id(base.identity1[D], value.source(u), u)).components["0"] for u in value.morphisms
            }
            components[D] = Functor(value, self.diagram.value(D), object_map, morphism_map)
        return LaxTransformation.strict(self.weight, self.diagram, components)

    def modification_to_marked(self, gamma: Modification) -> Modification:
        elements = self.elements.marked.base
        source, target = self.to_marked(gamma.source), self.to_marked(gamma.target)
        components = {}
        for x in elements.objects:
            D, delta = elements.object_payloads[x]
            components[x] = NatTransformation(
                source.component(x), target.component(x), {"0": gamma.component(D).components[delta]}
            )
        return Modification(source, target, components)

    def modification_to_strict(self, lam: Modification) -> Modification:
        base = self.weight.source
        source, target = self.to_strict(lam.source), self.to_strict(lam.target)
        components = {}
        for D in base.objects:
            value = self.weight.value(D)
            components[D] = NatTransformation(
                source.component(D),
                target.component(D),
                {delta: lam.component(pair_id(D, delta)).components["0"] for delta in value.objects},
            )
        return Modification(source, target, components)

    def forward(self) -> Functor:
        return payload_functor(self.left, self.right, self.to_marked, self.modification_to_marked)

    def backward(self) -> Functor:
        return payload_functor(self.right, self.left, self.to_strict, self.modification_to_strict)

    def report(self) -> EquivalenceReport:
        report = EquivalenceReport(f"{{{self.weight.name},{self.diagram.name}}} ≅ Σ-lax limit over El", self.left, self.right)
        try:
            report.compare(self.forward(), self.backward())
        except TransportFailure as error:
            report.failures.append(str(error))
        return report


def weighted_to_marked_transport(
    weight: CatValued2Functor, diagram: CatValued2Functor, direction: str = "forward", cap: Optional[int] = None
) -> Functor:
    """
    The comparison functor between {W, R} and the Σ-lax limit of R∘P over the elements of W.

    Parameters:
        direction (str): "forward" ({W,R} -> marked) or "backward".
    """
    transport = ElementsTransport(weight, diagram, cap)
    return transport.forward() if direction == "forward" else transport.backward()


def check_weighted_equals_marked(weight: CatValued2Functor, diagram: CatValued2Functor, cap: Optional[int] = None) -> EquivalenceReport:
    return ElementsTransport(weight, diagram, cap).report()
