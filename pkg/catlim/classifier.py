import logging
from .codescent import BarResolution, CoconeBridge, MarkedCodescentCocone, WeightedCoconeTransport
from .diagram import CatValued2Functor
from .exceptions import TransportFailure
from .fin_category import pair_id
from .fincat import payload_functor
from .functor import Functor, NatTransformation
from .lax import LaxTransformation, Modification, lax_category
from .marked import EquivalenceReport, MarkedTwoCategory
from .presentation import PresentationBuilder, PresentedCategory, Word, map_word
from typing import Dict, Optional, Tuple

_logger = logging.getLogger(__name__)


class Classifier:
    """
    The marked classifier A‡ of a 2-functor A: C -> Cat, so that strict transformations
    A‡ => B correspond to Σ-lax transformations A => B.

    A‡(x) is presented by objects (f: d -> x, ξ ∈ A(d)) with (f∘e, ξ) = (f, A(e)ξ) for marked e,
    generated by pairs (γ, u) and cells κ(f, k, ξ): (f∘k, ξ) -> (f, A(k)ξ) for unmarked k.

    Attributes:
        marked (MarkedTwoCategory): (C, Σ).
        diagram (CatValued2Functor): A.
        value (CatValued2Functor): A‡.
        unit (LaxTransformation): The Σ-lax unit η: A => A‡.
    """

    marked: MarkedTwoCategory
    diagram: CatValued2Functor
    value: CatValued2Functor
    unit: LaxTransformation

    def __init__(self, marked: MarkedTwoCategory, diagram: CatValued2Functor, bound: Optional[int] = None):
        self.marked = marked
        self.diagram = diagram
        self.builders: Dict[str, PresentationBuilder] = {}
        values: Dict[str, PresentedCategory] = {}
        for x in marked.base.objects:
            self.builders[x] = self._presentation(x)
            values[x] = self.builders[x].saturate(bound)
            _logger.debug(f"{diagram.name}‡({x}) has {len(values[x].objects)} objects and {len(values[x].morphisms)} morphisms")
        self.value = self._functor(values)
        self.unit = self._unit()

    def pair_word(self, x: str, gamma: str, u: str) -> Word:
        base = self.marked.base
        f = base.source2(gamma)
        hom, value = base.hom(base.source1(f), x), self.diagram.value(base.source1(f))
        if hom.is_identity(gamma) and value.is_identity(u):
            return ()
        return (pair_id(gamma, u),)

    def kappa_word(self, f: str, k: str, xi: str) -> Word:
        if self.marked.is_marked(k):
            return ()
        return ("κ" + pair_id(f, k, xi),)

    def class_of(self, x: str, f: str, xi: str) -> str:
        return self.builders[x].class_of((f, xi))

    def _presentation(self, x: str) -> PresentationBuilder:
        base, A = self.marked.base, self.diagram
        builder = PresentationBuilder(f"{A.name}‡({x})")
        for d in base.objects:
            for f in base.hom(d, x).objects:
                for xi in A.value(d).objects:
                    builder.add_object((f, xi), pair_id(f, xi))
        for e in self.marked.sigma:
            if base.is_identity1(e):
                continue
            d2, d = base.cells1[e]
            for f in base.hom(d, x).objects:
                for xi in A.value(d2).objects:
                    builder.identify((base.compose(f, e), xi), (f, A.cell(e).on_object(xi)))

        for d in base.objects:
            hom, value = base.hom(d, x), A.value(d)
            for gamma in hom.morphisms:
                for u in value.morphisms:
                    word = self.pair_word(x, gamma, u)
                    if word:
                        builder.add_generator(
                            word[0], (hom.source(gamma), value.source(u)), (hom.target(gamma), value.target(u)), ("pair", gamma, u)
                        )
            for (gamma2, gamma1), gamma in hom.compose_table.items():
                for (u2, u1), u in value.compose_table.items():
                    builder.add_relation(
                        self.pair_word(x, gamma, u),
                        self.pair_word(x, gamma2, u2) + self.pair_word(x, gamma1, u1),
                        (hom.source(gamma1), value.source(u1)),
                    )

        for k, (d2, d) in base.cells1.items():
            if base.is_identity1(k):
                continue
            functor, value, value2 = A.cell(k), A.value(d), A.value(d2)
            hom = base.hom(d, x)
            for f in hom.objects:
                fk = base.compose(f, k)
                for xi in value2.objects:
                    kappa = self.kappa_word(f, k, xi)
                    if kappa:
                        builder.add_generator(kappa[0], (fk, xi), (f, functor.on_object(xi)), ("kappa", f, k, xi))
                for u in value2.morphisms:
                    if value2.is_identity(u):
                        continue
                    xi, xi2 = value2.source(u), value2.target(u)
                    builder.add_relation(
                        self.kappa_word(f, k, xi2) + self.pair_word(x, base.identity2[fk], u),
                        self.pair_word(x, base.identity2[f], functor.on_morphism(u)) + self.kappa_word(f, k, xi),
                        (fk, xi),
                    )
            for delta in hom.morphisms:
                if hom.is_identity(delta):
                    continue
                f, f2 = hom.morphisms[delta]
                for xi in value2.objects:
                    builder.add_relation(
                        self.pair_word(x, delta, value.identity[functor.on_object(xi)]) + self.kappa_word(f, k, xi),
                        self.kappa_word(f2, k, xi) + self.pair_word(x, base.whisker_right(delta, k), value2.identity[xi]),
                        (base.compose(f, k), xi),
                    )

        for epsilon, (k, k2) in base.cells2.items():
            if base.is_identity2(epsilon):
                continue
            d2, d = base.cells1[k]
            for f in base.hom(d, x).objects:
                for xi in A.value(d2).objects:
                    builder.add_relation(
                        self.pair_word(x, base.identity2[f], A.two_cell(epsilon).components[xi]) + self.kappa_word(f, k, xi),
                        self.kappa_word(f, k2, xi) + self.pair_word(x, base.whisker_left(f, epsilon), A.value(d2).identity[xi]),
                        (base.compose(f, k), xi),
                    )

        for (l, k), lk in base.compose1.items():
            if base.is_identity1(l) or base.is_identity1(k):
                continue
            d3, d = base.source1(k), base.target1(l)
            for f in base.hom(d, x).objects:
                for xi in A.value(d3).objects:
                    builder.add_relation(
                        self.kappa_word(f, lk, xi),
                        self.kappa_word(f, l, A.cell(k).on_object(xi)) + self.kappa_word(base.compose(f, l), k, xi),
                        (base.compose(f, lk), xi),
                    )
        return builder

    def _generator_image(self, g: str, x2: str, payload: Tuple) -> Word:
        base = self.marked.base
        if payload[0] == "pair":
            _, gamma, u = payload
            return self.pair_word(x2, base.whisker_left(g, gamma), u)
        _, f, k, xi = payload
        return self.kappa_word(base.compose(g, f), k, xi)

    def _functor(self, values: Dict[str, PresentedCategory]) -> CatValued2Functor:
        base, A = self.marked.base, self.diagram
        on_cells1 = {}
        for g, (x, x2) in base.cells1.items():
            source, target = values[x], values[x2]
            object_map = {}
            for y in source.objects:
                f, xi = source.object_payload(y)
                object_map[y] = self.class_of(x2, base.compose(g, f), xi)
            payloads = source.presentation.generator_payloads
            morphism_map = {
                m: target.evaluate(
                    map_word(source.word(m), lambda h: self._generator_image(g, x2, payloads[h])),
                    object_map[source.source(m)],
                )
                for m in source.morphisms
            }
            on_cells1[g] = Functor(source, target, object_map, morphism_map)
        on_cells2 = {}
        for delta, (g, g2) in base.cells2.items():
            x, x2 = base.cells1[g]
            source, target = values[x], values[x2]
            components = {}
            for y in source.objects:
                f, xi = source.object_payload(y)
                d = base.source1(f)
                components[y] = target.evaluate(
                    self.pair_word(x2, base.whisker_right(delta, f), A.value(d).identity[xi]),
                    self.class_of(x2, base.compose(g, f), xi),
                )
            on_cells2[delta] = NatTransformation(on_cells1[g], on_cells1[g2], components)
        return CatValued2Functor(f"{A.name}‡", base, values, on_cells1, on_cells2)

    def _unit(self) -> LaxTransformation:
        base, A, Q = self.marked.base, self.diagram, self.value
        components1, components2 = {}, {}
        for d in base.objects:
            unit = base.identity1[d]
            value, target = A.value(d), Q.value(d)
            object_map = {xi: self.class_of(d, unit, xi) for xi in value.objects}
            morphism_map = {
                u: target.evaluate(self.pair_word(d, base.identity2[unit], u), object_map[value.source(u)])
                for u in value.morphisms
            }
            components1[d] = Functor(value, target, object_map, morphism_map)
        for k, (d2, d) in base.cells1.items():
            target = Q.value(d)
            entries = {
                xi: target.evaluate(self.kappa_word(base.identity1[d], k, xi), self.class_of(d, k, xi))
                for xi in A.value(d2).objects
            }
            components2[k] = NatTransformation(
                Q.cell(k).compose(components1[d2]), components1[d].compose(A.cell(k)), entries
            )
        return LaxTransformation(A, Q, components1, components2)

    def cocone(self, bar: BarResolution) -> Tuple[LaxTransformation, Modification]:
        """The universal cocone (yσ, χ) of the bar resolution, with y(f, ξ) = [(f, ξ)]."""
        base, Q = self.marked.base, self.value
        free, free2 = bar.free, bar.free2
        components = {}
        for c in base.objects:
            value, target = free.value(c), Q.value(c)
            object_map = {}
            for y in value.objects:
                f, xi = value.object_payload(y)
                object_map[y] = self.class_of(c, f, xi)
            morphism_map = {}
            for m in value.morphisms:
                gamma, u = value.morphism_payload(m)
                morphism_map[m] = target.evaluate(self.pair_word(c, gamma, u), object_map[value.source(m)])
            components[c] = Functor(value, target, object_map, morphism_map)
        leg = LaxTransformation.strict(free, Q, components)
        arrows = bar.data.arrows
        lower, upper = leg.compose(arrows["s"]), leg.compose(arrows["t"])
        chi = {}
        for c in base.objects:
            value, target = free2.value(c), Q.value(c)
            entries = {}
            for y in value.objects:
                h, inner = value.object_payload(y)
                k, xi = free.value(base.source1(h)).object_payload(inner)
                entries[y] = target.evaluate(self.kappa_word(h, k, xi), self.class_of(c, base.compose(h, k), xi))
            chi[c] = NatTransformation(lower.component(c), upper.component(c), entries)
        return leg.compose(arrows["s"]).compose(arrows["z"]), Modification(lower, upper, chi)

    def transpose(self, transformation: LaxTransformation) -> LaxTransformation:
        """H ↦ H∘η."""
        return transformation.compose(self.unit)

    def __repr__(self):
        return f'Classifier(diagram="{self.diagram.name}", marked="{self.marked.name}")'


def classifier(
    marked: MarkedTwoCategory,
    diagram: CatValued2Functor,
    identify_marked: bool = True,
    bound: Optional[int] = None,
) -> Classifier:
    """
    The marked classifier A‡ of `diagram`. With identify_marked=False every 1-cell is treated
    as unmarked, which gives the lax classifier.

    Raises:
        ClosureOverflow: some A‡(x) has more than `bound` morphisms.
    """
    if not identify_marked:
        marked = MarkedTwoCategory.identities(marked.base)
    return Classifier(marked, diagram, bound)


class ClassifierCheck:
    """Compares [C,Cat](A‡, B) with [C,Cat]Σ(A, B) through η, and again through marked codescent cocones."""

    def __init__(self, marked: MarkedTwoCategory, source: CatValued2Functor, target: CatValued2Functor, bound: Optional[int] = None, cap: Optional[int] = None):
        self.classifier = Classifier(marked, source, bound)
        self.target = target
        self.cap = cap
        self.left = lax_category(self.classifier.value, target, strict=True, cap=cap, name=f"[{source.name}‡,{target.name}]")
        self.right = lax_category(source, target, sigma=marked.sigma, cap=cap, name=f"[{source.name},{target.name}]Σ")

    def forward(self) -> Functor:
        unit = self.classifier.unit
        return payload_functor(self.left, self.right, lambda h: h.compose(unit), lambda gamma: gamma.whisker_right(unit))

    def report(self, through_cocones: bool = True) -> EquivalenceReport:
        report = EquivalenceReport(f"[{self.classifier.diagram.name}‡, B] ≅ Σ-lax", self.left, self.right)
        try:
            forward = self.forward()
        except TransportFailure as error:
            report.failures.append(str(error))
            return report
        report.compare(forward)
        if through_cocones and report.holds:
            self._chain(report, forward)
        return report

    def _chain(self, report: EquivalenceReport, forward: Functor) -> None:
        """Check that the bridge to cocones agrees with H ↦ (H∘yσ, H*χ)."""
        marked = self.classifier.marked
        bridge = CoconeBridge(marked, self.classifier.diagram, self.target, cap=self.cap, transformations=self.right)
        leg, chi = self.classifier.cocone(bridge.bar)
        cocones = bridge.cocones

        def to_cocone(h: LaxTransformation) -> MarkedCodescentCocone:
            ys = cocones.hom_sigma.find_object(h.compose(leg))
            u = cocones.hom1.find_morphism(chi.whisker_left(h))
            if ys is None or u is None:
                raise TransportFailure("a strict map out of the classifier does not give a cocone")
            return MarkedCodescentCocone(ys, u)

        def to_morphism(gamma: Modification) -> Tuple:
            theta = cocones.hom_sigma.find_morphism(gamma.whisker_right(leg))
            if theta is None:
                raise TransportFailure("a modification does not give a cocone morphism")
            return (to_cocone(gamma.source), to_cocone(gamma.target), theta)

        try:
            direct = payload_functor(self.left, cocones.category, to_cocone, to_morphism)
            through = bridge.forward().compose(forward)
        except TransportFailure as error:
            report.failures.append(str(error))
            return
        if direct != through:
            report.failures.append("the cocone of H∘η differs from (H∘yσ, H*χ)")
        bridge_report = bridge.report()
        weighted_report = WeightedCoconeTransport(bridge.bar.data, self.target, cocones).report()
        report.failures.extend(bridge_report.failures)
        report.failures.extend(weighted_report.failures)
        report.details["cocones"] = len(cocones.category.objects)


def verify_classifier_adjunction(
    marked: MarkedTwoCategory,
    source: CatValued2Functor,
    target: CatValued2Functor,
    through_cocones: bool = True,
    bound: Optional[int] = None,
    cap: Optional[int] = None,
) -> EquivalenceReport:
    """Check [C,Cat](A‡, B) ≅ [C,Cat]Σ(A, B) via H ↦ H∘η."""
    return ClassifierCheck(marked, source, target, bound, cap).report(through_cocones)


def verify_marked_limit_theorem(
    marked: MarkedTwoCategory,
    diagram: CatValued2Functor,
    through_cocones: bool = True,
    cap: Optional[int] = None,
) -> EquivalenceReport:
    """The Σ-lax limit of `diagram` is the weighted limit with weight (Δ1)‡."""
    return verify_classifier_adjunction(
        marked, CatValued2Functor.terminal(marked.base), diagram, through_cocones, cap=cap
    )
