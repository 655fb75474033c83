import logging
from .diagram import CatValued2Functor
from .fin_2category import Fin2Category, TwoFunctor
from .fin_category import FinCategory, ValidationReport, pair_id
from .functor import Functor, NatTransformation
from .exceptions import TransportFailure
from .fincat import payload_functor
from .lax import LaxTransformation, Modification, lax_category
from .marked import EquivalenceReport
from .presentation import PresentationBuilder, PresentedCategory, Word, map_word
from typing import Dict, Optional, Tuple

_logger = logging.getLogger(__name__)


def enumerate_lax_transformations(
    source: CatValued2Functor,
    target: CatValued2Functor,
    strict: bool = False,
    colax: bool = False,
    cap: Optional[int] = None,
) -> FinCategory:
    """
    Category of lax (strict, or colax) transformations source => target and modifications.

    Raises:
        SizeOverflow: more than `cap` candidates.
    """
    return lax_category(source, target, strict=strict, colax=colax, cap=cap)


def weighted_limit_in_cat(weight: CatValued2Functor, diagram: CatValued2Functor, cap: Optional[int] = None) -> FinCategory:
    """{W, F}: strict transformations W => F and modifications."""
    return lax_category(weight, diagram, strict=True, cap=cap, name=f"{{{weight.name},{diagram.name}}}")


def restrict_along(transformation: LaxTransformation, functor: TwoFunctor) -> LaxTransformation:
    """Whisker a transformation with a 2-functor into its base: components at J(t) and J(k)."""
    return LaxTransformation(
        transformation.source.precompose(functor),
        transformation.target.precompose(functor),
        {t: transformation.components1[functor.object_map[t]] for t in functor.source.objects},
        {k: transformation.components2[functor.cell1_map[k]] for k in functor.source.cells1},
    )


def restrict_modification(modification: Modification, functor: TwoFunctor) -> Modification:
    return Modification(
        restrict_along(modification.source, functor),
        restrict_along(modification.target, functor),
        {t: modification.components[functor.object_map[t]] for t in functor.source.objects},
    )


def lan_along_objects(diagram: CatValued2Functor, name: Optional[str] = None) -> CatValued2Functor:
    """
    The free 2-functor on the object values of `diagram`:
    TX(c) is the disjoint union over d of hom(d, c) × X(d).

    Objects are "<f|x>" with payload (f, x); morphisms "<γ|u>" with payload (γ, u).
    """
    base = diagram.source
    values: Dict[str, FinCategory] = {}
    for c in base.objects:
        parts = [FinCategory.product(base.hom(d, c), diagram.value(d)) for d in base.objects]
        values[c] = FinCategory.coproduct(f"T{diagram.name}({c})", parts)

    on_cells1: Dict[str, Functor] = {}
    for g, (c, c2) in base.cells1.items():
        source, target = values[c], values[c2]
        object_map = {}
        for x in source.objects:
            f, element = source.object_payload(x)
            object_map[x] = pair_id(base.compose(g, f), element)
        morphism_map = {}
        for m in source.morphisms:
            gamma, u = source.morphism_payload(m)
            morphism_map[m] = pair_id(base.whisker_left(g, gamma), u)
        on_cells1[g] = Functor(source, target, object_map, morphism_map)

    on_cells2: Dict[str, NatTransformation] = {}
    for delta, (g, g2) in base.cells2.items():
        c = base.source1(g)
        source = values[c]
        components = {}
        for x in source.objects:
            f, element = source.object_payload(x)
            d = base.source1(f)
            components[x] = pair_id(base.whisker_right(delta, f), diagram.value(d).identity[element])
        on_cells2[delta] = NatTransformation(on_cells1[g], on_cells1[g2], components)
    return CatValued2Functor(name or f"T{diagram.name}", base, values, on_cells1, on_cells2)


class LanMonad:
    """
    The monad T on strict 2-functors D -> Cat given by left Kan extension along the
    inclusion of the objects of D.
    """

    def __init__(self, base: Fin2Category):
        self.base = base
        self._applied: Dict[int, Tuple[CatValued2Functor, CatValued2Functor]] = {}

    def apply(self, diagram: CatValued2Functor) -> CatValued2Functor:
        cached = self._applied.get(id(diagram))
        if cached is None or cached[0] is not diagram:
            cached = (diagram, lan_along_objects(diagram))
            self._applied[id(diagram)] = cached
        return cached[1]

    def eta(self, diagram: CatValued2Functor) -> LaxTransformation:
        """x ↦ (1_c, x)."""
        base, free = self.base, self.apply(diagram)
        components = {}
        for c in base.objects:
            unit = base.identity1[c]
            unit2 = base.identity2[unit]
            value = diagram.value(c)
            components[c] = Functor(
                value,
                free.value(c),
                {x: pair_id(unit, x) for x in value.objects},
                {u: pair_id(unit2, u) for u in value.morphisms},
            )
        return LaxTransformation.strict(diagram, free, components)

    def mu(self, diagram: CatValued2Functor) -> LaxTransformation:
        """(h, (k, x)) ↦ (h∘k, x)."""
        base, free = self.base, self.apply(diagram)
        twice = self.apply(free)
        components = {}
        for c in base.objects:
            source = twice.value(c)
            object_map = {}
            for y in source.objects:
                h, inner = source.object_payload(y)
                k, x = free.value(base.source1(h)).object_payload(inner)
                object_map[y] = pair_id(base.compose(h, k), x)
            morphism_map = {}
            for m in source.morphisms:
                gamma, inner = source.morphism_payload(m)
                delta, u = free.value(base.source1(base.source2(gamma))).morphism_payload(inner)
                morphism_map[m] = pair_id(base.hcompose(gamma, delta), u)
            components[c] = Functor(source, free.value(c), object_map, morphism_map)
        return LaxTransformation.strict(twice, free, components)

    def apply_map(self, transformation: LaxTransformation) -> LaxTransformation:
        """T on a strict transformation: (f, x) ↦ (f, α_d(x))."""
        base = self.base
        source, target = self.apply(transformation.source), self.apply(transformation.target)
        components = {}
        for c in base.objects:
            value = source.value(c)
            object_map = {}
            for y in value.objects:
                f, x = value.object_payload(y)
                object_map[y] = pair_id(f, transformation.component(base.source1(f)).on_object(x))
            morphism_map = {}
            for m in value.morphisms:
                gamma, u = value.morphism_payload(m)
                d = base.source1(base.source2(gamma))
                morphism_map[m] = pair_id(gamma, transformation.component(d).on_morphism(u))
            components[c] = Functor(value, target.value(c), object_map, morphism_map)
        return LaxTransformation.strict(source, target, components)

    def algebra(self, diagram: CatValued2Functor) -> LaxTransformation:
        """The structure map TA => A: (f, ξ) ↦ A(f)ξ."""
        base, free = self.base, self.apply(diagram)
        components = {}
        for c in base.objects:
            value = free.value(c)
            object_map = {}
            for y in value.objects:
                f, xi = value.object_payload(y)
                object_map[y] = diagram.cell(f).on_object(xi)
            morphism_map = {}
            for m in value.morphisms:
                gamma, u = value.morphism_payload(m)
                f, f2 = base.cells2[gamma]
                d = base.source1(f)
                xi2 = diagram.value(d).target(u)
                morphism_map[m] = diagram.value(c).compose(
                    diagram.two_cell(gamma).components[xi2], diagram.cell(f).on_morphism(u)
                )
            components[c] = Functor(value, diagram.value(c), object_map, morphism_map)
        return LaxTransformation.strict(free, diagram, components)

    def verify_monad_laws(self, diagram: CatValued2Functor) -> ValidationReport:
        report = ValidationReport(f"monad laws at {diagram.name}")
        free = self.apply(diagram)
        unit = LaxTransformation.identity(free)
        if self.mu(diagram).compose(self.eta(free)) != unit:
            report.add("μ∘ηT is not the identity")
        if self.mu(diagram).compose(self.apply_map(self.eta(diagram))) != unit:
            report.add("μ∘Tη is not the identity")
        if self.mu(diagram).compose(self.mu(free)) != self.mu(diagram).compose(self.apply_map(self.mu(diagram))):
            report.add("μ∘μT differs from μ∘Tμ")
        return report

    def verify_algebra(self, diagram: CatValued2Functor) -> ValidationReport:
        """The action TA => A satisfies the unit and associativity laws of a T-algebra."""
        report = ValidationReport(f"T-algebra laws at {diagram.name}")
        action = self.algebra(diagram)
        if action.compose(self.eta(diagram)) != LaxTransformation.identity(diagram):
            report.add("a∘η is not the identity")
        if action.compose(self.apply_map(action)) != action.compose(self.mu(diagram)):
            report.add("a∘Ta differs from a∘μ")
        return report


def _pair_word(t: str, gamma: str, u: str, hom: FinCategory, value: FinCategory) -> Word:
    if hom.is_identity(gamma) and value.is_identity(u):
        return ()
    return (pair_id(t, gamma, u),)


class PointwiseLan:
    """
    Pointwise left Kan extension of F: T -> Cat along J: T -> D, computed as a coend.

    Attributes:
        along (TwoFunctor): J.
        diagram (CatValued2Functor): F.
        builders (Dict[str, PresentationBuilder]): The presentation of each value L(d).
        extension (CatValued2Functor): L.
        unit (LaxTransformation): The strict unit F => L∘J.
    """

    along: TwoFunctor
    diagram: CatValued2Functor
    builders: Dict[str, PresentationBuilder]
    extension: CatValued2Functor
    unit: LaxTransformation

    def __init__(self, along: TwoFunctor, diagram: CatValued2Functor, bound: Optional[int] = None):
        self.along = along
        self.diagram = diagram
        self.builders = {}
        values: Dict[str, PresentedCategory] = {}
        for d in along.target.objects:
            self.builders[d] = self._presentation(d)
            values[d] = self.builders[d].saturate(bound)
        self.extension = self._extension(values)
        self.unit = self._unit()

    def _hom(self, t: str, d: str) -> FinCategory:
        return self.along.target.hom(self.along.object_map[t], d)

    def word(self, d: str, t: str, gamma: str, u: str) -> Word:
        return _pair_word(t, gamma, u, self._hom(t, d), self.diagram.value(t))

    def class_of(self, d: str, t: str, h: str, xi: str) -> str:
        return self.builders[d].class_of((t, h, xi))

    def _presentation(self, d: str) -> PresentationBuilder:
        J, F = self.along, self.diagram
        T, D = J.source, J.target
        builder = PresentationBuilder(f"Lan({F.name})({d})")
        for t in T.objects:
            value = F.value(t)
            for h in self._hom(t, d).objects:
                for xi in value.objects:
                    builder.add_object((t, h, xi), pair_id(t, h, xi))
        for k, (t2, t) in T.cells1.items():
            if T.is_identity1(k):
                continue
            jk = J.cell1_map[k]
            for h in self._hom(t, d).objects:
                for xi in F.value(t2).objects:
                    builder.identify((t2, D.compose(h, jk), xi), (t, h, F.cell(k).on_object(xi)))

        for t in T.objects:
            hom, value = self._hom(t, d), F.value(t)
            for gamma in hom.morphisms:
                for u in value.morphisms:
                    word = self.word(d, t, gamma, u)
                    if word:
                        builder.add_generator(
                            word[0],
                            (t, hom.source(gamma), value.source(u)),
                            (t, hom.target(gamma), value.target(u)),
                            (t, gamma, u),
                        )
            for (gamma2, gamma1), gamma in hom.compose_table.items():
                for (u2, u1), u in value.compose_table.items():
                    builder.add_relation(
                        self.word(d, t, gamma, u),
                        self.word(d, t, gamma2, u2) + self.word(d, t, gamma1, u1),
                        (t, hom.source(gamma1), value.source(u1)),
                    )

        for k, (t2, t) in T.cells1.items():
            if T.is_identity1(k):
                continue
            jk = J.cell1_map[k]
            hom, hom2 = self._hom(t, d), self._hom(t2, d)
            value, value2 = F.value(t), F.value(t2)
            functor = F.cell(k)
            for gamma in hom.morphisms:
                if hom.is_identity(gamma):
                    continue
                for xi in value2.objects:
                    builder.add_relation(
                        self.word(d, t2, D.whisker_right(gamma, jk), value2.identity[xi]),
                        self.word(d, t, gamma, value.identity[functor.on_object(xi)]),
                        (t2, D.compose(hom.source(gamma), jk), xi),
                    )
            for h in hom.objects:
                hjk = D.compose(h, jk)
                for u in value2.morphisms:
                    if value2.is_identity(u):
                        continue
                    builder.add_relation(
                        self.word(d, t2, hom2.identity[hjk], u),
                        self.word(d, t, hom.identity[h], functor.on_morphism(u)),
                        (t2, hjk, value2.source(u)),
                    )
        for epsilon, (k, k2) in T.cells2.items():
            if T.is_identity2(epsilon):
                continue
            t2, t = T.cells1[k]
            hom, hom2 = self._hom(t, d), self._hom(t2, d)
            value, value2 = F.value(t), F.value(t2)
            for h in hom.objects:
                hjk = D.compose(h, J.cell1_map[k])
                for xi in value2.objects:
                    builder.add_relation(
                        self.word(d, t2, D.whisker_left(h, J.cell2_map[epsilon]), value2.identity[xi]),
                        self.word(d, t, hom.identity[h], F.two_cell(epsilon).components[xi]),
                        (t2, hjk, xi),
                    )
        return builder

    def _extension(self, values: Dict[str, PresentedCategory]) -> CatValued2Functor:
        J = self.along
        D = J.target
        on_cells1 = {}
        for g, (d, d2) in D.cells1.items():
            source, target = values[d], values[d2]
            object_map = {}
            for x in source.objects:
                t, h, xi = source.object_payload(x)
                object_map[x] = self.class_of(d2, t, D.compose(g, h), xi)

            def image(generator: str, g=g, source=source, d2=d2) -> Word:
                t, gamma, u = source.presentation.generator_payloads[generator]
                return self.word(d2, t, D.whisker_left(g, gamma), u)

            morphism_map = {
                m: target.evaluate(map_word(source.word(m), image), object_map[source.source(m)])
                for m in source.morphisms
            }
            on_cells1[g] = Functor(source, target, object_map, morphism_map)
        on_cells2 = {}
        for delta, (g, g2) in D.cells2.items():
            d, d2 = D.cells1[g]
            source, target = values[d], values[d2]
            components = {}
            for x in source.objects:
                t, h, xi = source.object_payload(x)
                word = self.word(d2, t, D.whisker_right(delta, h), self.diagram.value(t).identity[xi])
                components[x] = target.evaluate(word, self.class_of(d2, t, D.compose(g, h), xi))
            on_cells2[delta] = NatTransformation(on_cells1[g], on_cells1[g2], components)
        return CatValued2Functor(f"Lan({self.diagram.name})", D, values, on_cells1, on_cells2)

    def _unit(self) -> LaxTransformation:
        J, F, L = self.along, self.diagram, self.extension
        components = {}
        for t in J.source.objects:
            jt = J.object_map[t]
            unit = J.target.identity1[jt]
            value, target = F.value(t), L.value(jt)
            object_map = {xi: self.class_of(jt, t, unit, xi) for xi in value.objects}
            hom = self._hom(t, jt)
            morphism_map = {
                u: target.evaluate(self.word(jt, t, hom.identity[unit], u), object_map[value.source(u)])
                for u in value.morphisms
            }
            components[t] = Functor(value, target, object_map, morphism_map)
        return LaxTransformation.strict(F, L.precompose(J), components)

    def __repr__(self):
        return f'PointwiseLan(diagram="{self.diagram.name}", along="{self.along.source.name} -> {self.along.target.name}")'


def pointwise_lan(along: TwoFunctor, diagram: CatValued2Functor, bound: Optional[int] = None) -> PointwiseLan:
    """
    Left Kan extension of `diagram` along `along`, with its unit.

    Raises:
        ClosureOverflow: a value is larger than `bound`.
    """
    return PointwiseLan(along, diagram, bound)


def lan_extend(lan: PointwiseLan, diagram: CatValued2Functor, transformation: LaxTransformation) -> LaxTransformation:
    """
    The strict transformation Lan => K induced by a strict β: F => K∘J, where K = `diagram`:
    [(t, h, ξ)] ↦ K(h)(β_t ξ).
    """
    J, F = lan.along, lan.diagram
    D = J.target
    L = lan.extension
    components = {}
    for d in D.objects:
        source, target = L.value(d), diagram.value(d)

        def element(x: str, source=source) -> str:
            t, h, xi = source.object_payload(x)
            return diagram.cell(h).on_object(transformation.component(t).on_object(xi))

        object_map = {x: element(x) for x in source.objects}

        def generator_image(generator: str, source=source, target=target) -> str:
            t, gamma, u = source.presentation.generator_payloads[generator]
            h, _ = D.cells2[gamma]
            beta = transformation.component(t)
            end = F.value(t).target(u)
            return target.compose(
                diagram.two_cell(gamma).components[beta.on_object(end)],
                diagram.cell(h).on_morphism(beta.on_morphism(u)),
            )

        morphism_map = {
            m: source.interpret(m, generator_image, target.compose, lambda x, target=target, om=object_map: target.identity[om[x]])
            for m in source.morphisms
        }
        components[d] = Functor(source, target, object_map, morphism_map)
    return LaxTransformation.strict(L, diagram, components)


def lan_transpose(lan: PointwiseLan, transformation: LaxTransformation) -> LaxTransformation:
    """σ: Lan => K ↦ (σ J)∘π: F => K∘J."""
    return restrict_along(transformation, lan.along).compose(lan.unit)


def verify_lan_adjunction(lan: PointwiseLan, diagram: CatValued2Functor, cap: Optional[int] = None) -> EquivalenceReport:
    """
    Check that strict Lan => K and strict F => K∘J are isomorphic categories through
    lan_transpose, and that lan_extend undoes it on both sides. K = `diagram`.

    Raises:
        SizeOverflow: either side has more than `cap` candidates.
    """
    J, F = lan.along, lan.diagram
    left = lax_category(lan.extension, diagram, strict=True, cap=cap, name=f"[Lan({F.name}),{diagram.name}]")
    right = lax_category(F, diagram.precompose(J), strict=True, cap=cap, name=f"[{F.name},{diagram.name}∘J]")
    report = EquivalenceReport(f"Lan({F.name}) ⊣ -∘J at {diagram.name}", left, right)
    try:
        forward = payload_functor(
            left,
            right,
            lambda sigma: lan_transpose(lan, sigma),
            lambda gamma: restrict_modification(gamma, J).whisker_right(lan.unit),
        )
    except TransportFailure as error:
        report.failures.append(str(error))
        return report
    report.compare(forward)

    for x in right.objects:
        beta = right.object_payload(x)
        if lan_transpose(lan, lan_extend(lan, diagram, beta)) != beta:
            report.failures.append(f"transposing the extension of {x} does not give {x} back")
    for x in left.objects:
        sigma = left.object_payload(x)
        if lan_extend(lan, diagram, lan_transpose(lan, sigma)) != sigma:
            report.failures.append(f"extending the transpose of {x} does not give {x} back")
    if not report.holds:
        _logger.warning(f"{report.title}: {len(report.failures)} failures")
    return report
