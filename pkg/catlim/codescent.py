import logging
from .diagram import CatValued2Functor
from .exceptions import TransportFailure, ValidationError
from .fin_2category import Fin2Category
from .fin_category import FinCategory, ValidationReport, pair_id
from .fincat import assemble_category, payload_functor
from .functor import Functor, NatTransformation
from .host import CatHost, PresheafHost
from .lax import LaxTransformation, Modification, lax_category
from .marked import EquivalenceReport, MarkedTwoCategory
from .presentation import CatPresentation, PresentedCategory, saturate_presentation
from .two_cat import LanMonad
from typing import Any, Dict, List, Optional, Tuple, Union

_logger = logging.getLogger(__name__)

DELTA_SIGMA_OBJECTS = ["[0]", "[1]", "[2]", "[σ]"]
DELTA_SIGMA_GENERATORS = {
    "s": ("[0]", "[1]"),
    "t": ("[0]", "[1]"),
    "i": ("[1]", "[0]"),
    "p": ("[1]", "[2]"),
    "m": ("[1]", "[2]"),
    "q": ("[1]", "[2]"),
    "j": ("[σ]", "[0]"),
    "k": ("[1]", "[σ]"),
}
# words are in composition order: ("i", "s") is i∘s
DELTA_SIGMA_RELATIONS = [
    (("i", "s"), (), "[0]"),
    (("i", "t"), (), "[0]"),
    (("p", "s"), ("m", "s"), "[0]"),
    (("q", "t"), ("m", "t"), "[0]"),
    (("p", "t"), ("q", "s"), "[0]"),
    (("i",), ("j", "k"), "[1]"),
]


def delta_sigma_presentation() -> CatPresentation:
    return CatPresentation("Δσ", DELTA_SIGMA_OBJECTS, DELTA_SIGMA_GENERATORS, DELTA_SIGMA_RELATIONS)


def build_delta_sigma(bound: Optional[int] = None) -> PresentedCategory:
    """The truncated simplex category with the extra object [σ] and the relation i = j∘k."""
    return saturate_presentation(delta_sigma_presentation(), bound)


def monotone_functor(source: FinCategory, target: FinCategory, mapping: Dict[str, str]) -> Functor:
    """A functor between chains given on objects."""

    def arrow(a: str, b: str) -> str:
        return target.identity[a] if a == b else f"{a}->{b}"

    morphism_map = {f: arrow(mapping[s], mapping[t]) for f, (s, t) in source.morphisms.items()}
    return Functor(source, target, dict(mapping), morphism_map)


def marked_weight(delta: Optional[PresentedCategory] = None) -> CatValued2Functor:
    """
    The weight Δσ -> Cat that is the standard embedding on [0], [1], [2], sends [σ] to the
    terminal category, k to the constant functor and j to the identity.
    """
    delta = delta or build_delta_sigma()
    base = Fin2Category.locally_discrete(delta, "Δσ")
    values = {
        "[0]": FinCategory.ordinal(0),
        "[1]": FinCategory.ordinal(1),
        "[2]": FinCategory.ordinal(2),
        "[σ]": FinCategory.ordinal(0),
    }
    v0, v1, v2, vs = values["[0]"], values["[1]"], values["[2]"], values["[σ]"]
    generators = {
        "s": monotone_functor(v0, v1, {"0": "0"}),
        "t": monotone_functor(v0, v1, {"0": "1"}),
        "i": monotone_functor(v1, v0, {"0": "0", "1": "0"}),
        "p": monotone_functor(v1, v2, {"0": "0", "1": "1"}),
        "m": monotone_functor(v1, v2, {"0": "0", "1": "2"}),
        "q": monotone_functor(v1, v2, {"0": "1", "1": "2"}),
        "j": monotone_functor(vs, v0, {"0": "0"}),
        "k": monotone_functor(v1, vs, {"0": "0", "1": "0"}),
    }
    return CatValued2Functor.from_presented("W", base, values, generators)


class MarkedCoherenceData:
    """
    A diagram X2 ⇉ X1 ⇄ X0 -> Xσ -> X1 in a host 2-category.

    Arrows follow the face and degeneracy names: s, t: X1 -> X0; i: X0 -> X1;
    p, m, q: X2 -> X1; j: X0 -> Xσ; z: Xσ -> X1.
    """

    ARROWS = ("s", "t", "i", "p", "m", "q", "j", "z")
    GENERATOR_OF = {"s": "s", "t": "t", "i": "i", "p": "p", "m": "m", "q": "q", "j": "j", "k": "z"}

    def __init__(self, host: Union[CatHost, PresheafHost], x2, x1, x0, x_sigma, arrows: Dict[str, Any], name: str = "X"):
        self.host = host
        self.name = name
        self.spaces = {"[0]": x0, "[1]": x1, "[2]": x2, "[σ]": x_sigma}
        self.arrows = dict(arrows)

    def arrow(self, name: str):
        return self.arrows[name]

    def validate(self) -> ValidationReport:
        """Check the marked identities."""
        report = ValidationReport(f"coherence data {self.name}")
        missing = [a for a in self.ARROWS if a not in self.arrows]
        if missing:
            report.add(f"missing arrows {missing}")
            return report
        host, a = self.host, self.arrows

        def same(left, right, label):
            try:
                if not host.same(left, right):
                    report.add(f"{label} fails")
            except (KeyError, ValueError):
                report.add(f"{label} is ill-typed")

        identity = host.identity(self.spaces["[0]"])
        same(host.compose(a["s"], a["i"]), identity, "s∘i = 1")
        same(host.compose(a["t"], a["i"]), identity, "t∘i = 1")
        same(host.compose(a["s"], a["p"]), host.compose(a["s"], a["m"]), "s∘p = s∘m")
        same(host.compose(a["t"], a["q"]), host.compose(a["t"], a["m"]), "t∘q = t∘m")
        same(host.compose(a["t"], a["p"]), host.compose(a["s"], a["q"]), "t∘p = s∘q")
        same(a["i"], host.compose(a["z"], a["j"]), "i = z∘j")
        return report

    def hom_diagram(self, nadir, delta: Optional[PresentedCategory] = None) -> CatValued2Functor:
        """hom(X_-, Y) as a 2-functor on Δσ."""
        delta = delta or build_delta_sigma()
        base = Fin2Category.locally_discrete(delta, "Δσ")
        values = {n: self.host.hom(space, nadir) for n, space in self.spaces.items()}
        generators = {g: self.host.precompose(self.arrows[a], nadir) for g, a in self.GENERATOR_OF.items()}
        return CatValued2Functor.from_presented(f"hom({self.name},{getattr(nadir, 'name', nadir)})", base, values, generators)

    def __repr__(self):
        return f'MarkedCoherenceData(name="{self.name}", host="{self.host.name}")'


class MarkedCodescentCocone:
    """
    A marked codescent cocone with a fixed nadir.

    Attributes:
        leg (str): Object of hom(Xσ, Y), the map yσ.
        upsilon (str): Morphism y∘s -> y∘t of hom(X1, Y), where y = yσ∘j.
    """

    leg: str
    upsilon: str

    def __init__(self, leg: str, upsilon: str):
        self.leg = leg
        self.upsilon = upsilon

    def __eq__(self, other):
        return isinstance(other, MarkedCodescentCocone) and (self.leg, self.upsilon) == (other.leg, other.upsilon)

    def __hash__(self):
        return hash((self.leg, self.upsilon))

    def __repr__(self):
        return f'MarkedCodescentCocone(leg="{self.leg}", upsilon="{self.upsilon}")'


class CoconeCategory:
    """Marked codescent cocones of `data` with nadir `nadir` and their morphisms."""

    def __init__(self, data: MarkedCoherenceData, nadir, name: Optional[str] = None):
        self.data = data
        self.nadir = nadir
        host, a = data.host, data.arrows
        sp = data.spaces
        self.hom_sigma = host.hom(sp["[σ]"], nadir)
        self.hom0 = host.hom(sp["[0]"], nadir)
        self.hom1 = host.hom(sp["[1]"], nadir)
        self.hom2 = host.hom(sp["[2]"], nadir)
        self.pre = {g: host.precompose(a[g], nadir) for g in ("s", "t", "j", "z", "p", "m", "q")}
        cocones = self._cocones()
        self.category = self._assemble(cocones, name or f"ΣCocone({data.name},{getattr(nadir, 'name', nadir)})")

    def leg(self, ys: str) -> str:
        return self.pre["j"].on_object(ys)

    def _cocones(self) -> List[MarkedCodescentCocone]:
        pre, hom1, hom2 = self.pre, self.hom1, self.hom2
        found = []
        for ys in self.hom_sigma.objects:
            y = self.leg(ys)
            lower, upper = pre["s"].on_object(y), pre["t"].on_object(y)
            for u in hom1.hom(lower, upper):
                if pre["z"].on_morphism(u) != self.hom_sigma.identity[ys]:
                    continue
                up, uq = pre["p"].on_morphism(u), pre["q"].on_morphism(u)
                if hom2.target(up) != hom2.source(uq):
                    continue
                if pre["m"].on_morphism(u) != hom2.compose(uq, up):
                    continue
                found.append(MarkedCodescentCocone(ys, u))
        return found

    def _morphisms(self, first: MarkedCodescentCocone, second: MarkedCodescentCocone) -> List[Tuple]:
        pre, hom1 = self.pre, self.hom1
        found = []
        for theta in self.hom_sigma.hom(first.leg, second.leg):
            theta0 = pre["j"].on_morphism(theta)
            left = hom1.compose(pre["t"].on_morphism(theta0), first.upsilon)
            right = hom1.compose(second.upsilon, pre["s"].on_morphism(theta0))
            if left == right:
                found.append((first, second, theta))
        return found

    def _assemble(self, cocones: List[MarkedCodescentCocone], name: str) -> FinCategory:
        return assemble_category(
            name,
            cocones,
            self._morphisms,
            lambda c: (c, c, self.hom_sigma.identity[c.leg]),
            lambda g, f: (f[0], g[1], self.hom_sigma.compose(g[2], f[2])),
            "Y",
            "θ",
        )


def marked_codescent_cocones(data: MarkedCoherenceData, nadir, name: Optional[str] = None) -> FinCategory:
    """The category ΣCocone(X, Y) for a fixed nadir Y."""
    return CoconeCategory(data, nadir, name).category


class WeightedCoconeTransport:
    """The isomorphism [Δσ, Cat](W, hom(X_-, Y)) ≅ ΣCocone(X, Y)."""

    def __init__(self, data: MarkedCoherenceData, nadir, cocones: Optional[CoconeCategory] = None):
        self.delta = build_delta_sigma()
        self.weight = marked_weight(self.delta)
        self.hom_diagram = data.hom_diagram(nadir, self.delta)
        self.cocones = cocones or CoconeCategory(data, nadir)
        self.weighted = lax_category(self.weight, self.hom_diagram, strict=True, name="[Δσ,Cat](W,hom)")
        self.points: Dict[Tuple[str, str], str] = {}
        self.arrows: Dict[Tuple[str, str], str] = {}
        for u, (s, n) in self.delta.morphisms.items():
            functor = self.weight.cell(u)
            if s == "[σ]":
                self.points.setdefault((n, functor.on_object("0")), u)
            if s == "[1]":
                self.arrows.setdefault((n, functor.on_morphism("0->1")), u)

    def to_weighted(self, cocone: MarkedCodescentCocone) -> LaxTransformation:
        H, W = self.hom_diagram, self.weight
        components = {}
        for n in self.delta.objects:
            value = W.value(n)
            target = H.value(n)
            object_map = {i: H.cell(self.points[(n, i)]).on_object(cocone.leg) for i in value.objects}
            morphism_map = {}
            for f in value.morphisms:
                if value.is_identity(f):
                    morphism_map[f] = target.identity[object_map[value.source(f)]]
                else:
                    morphism_map[f] = H.cell(self.arrows[(n, f)]).on_morphism(cocone.upsilon)
            components[n] = Functor(value, target, object_map, morphism_map)
        return LaxTransformation.strict(W, H, components)

    def to_cocone(self, gamma: LaxTransformation) -> MarkedCodescentCocone:
        return MarkedCodescentCocone(gamma.component("[σ]").on_object("0"), gamma.component("[1]").on_morphism("0->1"))

    def morphism_to_weighted(self, morphism: Tuple) -> Modification:
        first, second, theta = morphism
        source, target = self.to_weighted(first), self.to_weighted(second)
        H = self.hom_diagram
        components = {}
        for n in self.delta.objects:
            components[n] = NatTransformation(
                source.component(n),
                target.component(n),
                {i: H.cell(self.points[(n, i)]).on_morphism(theta) for i in self.weight.value(n).objects},
            )
        return Modification(source, target, components)

    def morphism_to_cocone(self, modification: Modification) -> Tuple:
        return (
            self.to_cocone(modification.source),
            self.to_cocone(modification.target),
            modification.component("[σ]").components["0"],
        )

    def report(self) -> EquivalenceReport:
        report = EquivalenceReport("ΣCocone ≅ [Δσ,Cat](W, hom(X,Y))", self.cocones.category, self.weighted)
        try:
            forward = payload_functor(self.cocones.category, self.weighted, self.to_weighted, self.morphism_to_weighted)
            backward = payload_functor(self.weighted, self.cocones.category, self.to_cocone, self.morphism_to_cocone)
            report.compare(forward, backward)
        except TransportFailure as error:
            report.failures.append(str(error))
        return report


def cocones_as_weighted_transformations(data: MarkedCoherenceData, nadir) -> EquivalenceReport:
    """
    Compare ΣCocone(X, Y) with [Δσ, Cat](W, hom(X_-, Y)).

    Returns:
        EquivalenceReport: `left` is ΣCocone(X, Y), `right` is [Δσ, Cat](W, hom(X_-, Y)) and
        `witness` is the IsoWitness between them, None when the comparison fails.
    """
    return WeightedCoconeTransport(data, nadir).report()


class BarResolution:
    """
    The marked coherence data in [C, Cat] built from T = Lan along the objects of C:
    T³A ⇉ T²A ⇄ TA -> Aσ -> T²A with s = μA, t = Ta, i = TηA, p = μTA, m = TμA, q = T²a.
    Aσ is the full sub-2-functor of T²A on elements (h, (k, ξ)) with k marked.
    """

    def __init__(self, marked: MarkedTwoCategory, diagram: CatValued2Functor, host: Optional[PresheafHost] = None):
        self.marked = marked
        self.diagram = diagram
        self.monad = LanMonad(marked.base)
        T = self.monad
        self.free = T.apply(diagram)
        self.free2 = T.apply(self.free)
        self.free3 = T.apply(self.free2)
        self.algebra = T.algebra(diagram)
        arrows = {
            "s": T.mu(diagram),
            "t": T.apply_map(self.algebra),
            "i": T.apply_map(T.eta(diagram)),
            "p": T.mu(self.free),
            "m": T.apply_map(T.mu(diagram)),
            "q": T.apply_map(T.apply_map(self.algebra)),
        }
        self.restricted = self._restricted()
        arrows["z"] = self._inclusion()
        arrows["j"] = self._corestriction(arrows["i"])
        self.data = MarkedCoherenceData(
            host or PresheafHost(), self.free3, self.free2, self.free, self.restricted, arrows, f"Bar({diagram.name})"
        )

    def is_marked_element(self, c: str, y: str) -> bool:
        h, inner = self.free2.value(c).object_payload(y)
        k, _ = self.free.value(self.marked.base.source1(h)).object_payload(inner)
        return self.marked.is_marked(k)

    def _restricted(self) -> CatValued2Functor:
        base, T2 = self.marked.base, self.free2
        values = {
            c: T2.value(c).full_subcategory(
                [y for y in T2.value(c).objects if self.is_marked_element(c, y)], f"{self.diagram.name}σ({c})"
            )
            for c in base.objects
        }
        on_cells1 = {
            g: T2.cell(g).restrict(values[c], values[c2]) for g, (c, c2) in base.cells1.items()
        }
        on_cells2 = {}
        for delta, (g, g2) in base.cells2.items():
            c = base.source1(g)
            nat = T2.two_cell(delta)
            on_cells2[delta] = NatTransformation(
                on_cells1[g], on_cells1[g2], {y: nat.components[y] for y in values[c].objects}
            )
        return CatValued2Functor(f"{self.diagram.name}σ", base, values, on_cells1, on_cells2)

    def _inclusion(self) -> LaxTransformation:
        return LaxTransformation.strict(
            self.restricted,
            self.free2,
            {c: Functor.inclusion(self.restricted.value(c), self.free2.value(c)) for c in self.marked.base.objects},
        )

    def _corestriction(self, unit: LaxTransformation) -> LaxTransformation:
        components = {}
        for c in self.marked.base.objects:
            functor = unit.component(c)
            value = self.restricted.value(c)
            missing = [x for x in functor.object_map.values() if x not in value.identity]
            if missing:
                raise ValidationError(f"Tη does not land in the marked part at {c}")
            components[c] = Functor(functor.source, value, functor.object_map, functor.morphism_map)
        return LaxTransformation.strict(self.free, self.restricted, components)

    def __repr__(self):
        return f'BarResolution(diagram="{self.diagram.name}")'


def bar_resolution(marked: MarkedTwoCategory, diagram: CatValued2Functor) -> BarResolution:
    return BarResolution(marked, diagram)


class CoconeBridge:
    """
    The isomorphism between Σ-lax transformations A => B and marked codescent cocones of the
    bar resolution of A with nadir B.
    """

    def __init__(self, marked: MarkedTwoCategory, source: CatValued2Functor, target: CatValued2Functor, bar: Optional[BarResolution] = None, cap: Optional[int] = None, transformations: Optional[FinCategory] = None):
        self.marked = marked
        self.source = source
        self.target = target
        self.bar = bar or BarResolution(marked, source)
        self.cocones = CoconeCategory(self.bar.data, target)
        self.transformations = transformations or lax_category(
            source, target, sigma=marked.sigma, cap=cap, name=f"[{source.name},{target.name}]Σ"
        )

    def cocone_leg(self, alpha: LaxTransformation) -> LaxTransformation:
        """G: TA => B, (f, ξ) ↦ B(f)(α_d ξ)."""
        base, A, B = self.marked.base, self.source, self.target
        free = self.bar.free
        components = {}
        for c in base.objects:
            value = free.value(c)
            object_map = {}
            for y in value.objects:
                f, xi = value.object_payload(y)
                object_map[y] = B.cell(f).on_object(alpha.component(base.source1(f)).on_object(xi))
            morphism_map = {}
            for m in value.morphisms:
                gamma, u = value.morphism_payload(m)
                f, _ = base.cells2[gamma]
                d = base.source1(f)
                component = alpha.component(d)
                end = component.on_object(A.value(d).target(u))
                morphism_map[m] = B.value(c).compose(
                    B.two_cell(gamma).components[end], B.cell(f).on_morphism(component.on_morphism(u))
                )
            components[c] = Functor(value, B.value(c), object_map, morphism_map)
        return LaxTransformation.strict(free, B, components)

    def to_cocone(self, alpha: LaxTransformation) -> MarkedCodescentCocone:
        base, B = self.marked.base, self.target
        arrows = self.bar.data.arrows
        leg = self.cocone_leg(alpha)
        leg_sigma = leg.compose(arrows["s"]).compose(arrows["z"])
        lower, upper = leg.compose(arrows["s"]), leg.compose(arrows["t"])
        free, free2 = self.bar.free, self.bar.free2
        components = {}
        for c in base.objects:
            value = free2.value(c)
            entries = {}
            for y in value.objects:
                h, inner = value.object_payload(y)
                k, xi = free.value(base.source1(h)).object_payload(inner)
                entries[y] = B.cell(h).on_morphism(alpha.cell(k).components[xi])
            components[c] = NatTransformation(lower.component(c), upper.component(c), entries)
        upsilon = Modification(lower, upper, components)
        ys = self.cocones.hom_sigma.find_object(leg_sigma)
        u = self.cocones.hom1.find_morphism(upsilon)
        if ys is None or u is None:
            raise TransportFailure("the transformation does not give a cocone of the bar resolution")
        return MarkedCodescentCocone(ys, u)

    def to_transformation(self, cocone: MarkedCodescentCocone) -> LaxTransformation:
        base, A, B = self.marked.base, self.source, self.target
        free, free2 = self.bar.free, self.bar.free2
        leg = self.cocones.hom0.object_payload(self.cocones.leg(cocone.leg))
        upsilon = self.cocones.hom1.morphism_payload(cocone.upsilon)
        components1, components2 = {}, {}
        for d in base.objects:
            unit, unit2 = base.identity1[d], base.identity2[base.identity1[d]]
            value = A.value(d)
            component = leg.component(d)
            components1[d] = Functor(
                value,
                B.value(d),
                {xi: component.on_object(pair_id(unit, xi)) for xi in value.objects},
                {u: component.on_morphism(pair_id(unit2, u)) for u in value.morphisms},
            )
        for k, (d2, d) in base.cells1.items():
            lower = B.cell(k).compose(components1[d2])
            upper = components1[d].compose(A.cell(k))
            entries = {
                xi: upsilon.component(d).components[pair_id(base.identity1[d], pair_id(k, xi))]
                for xi in A.value(d2).objects
            }
            components2[k] = NatTransformation(lower, upper, entries)
        return LaxTransformation(A, B, components1, components2)

    def modification_to_cocone(self, rho: Modification) -> Tuple:
        base, B = self.marked.base, self.target
        first, second = self.to_cocone(rho.source), self.to_cocone(rho.target)
        restricted, free = self.bar.restricted, self.bar.free
        source = self.cocones.hom_sigma.object_payload(first.leg)
        target = self.cocones.hom_sigma.object_payload(second.leg)
        components = {}
        for c in base.objects:
            value = restricted.value(c)
            entries = {}
            for y in value.objects:
                h, inner = value.object_payload(y)
                e, xi = free.value(base.source1(h)).object_payload(inner)
                entries[y] = B.cell(base.compose(h, e)).on_morphism(rho.component(base.source1(e)).components[xi])
            components[c] = NatTransformation(source.component(c), target.component(c), entries)
        theta = self.cocones.hom_sigma.find_morphism(Modification(source, target, components))
        if theta is None:
            raise TransportFailure("the modification does not give a cocone morphism")
        return (first, second, theta)

    def morphism_to_modification(self, morphism: Tuple) -> Modification:
        first, second, theta = morphism
        base, A = self.marked.base, self.source
        source, target = self.to_transformation(first), self.to_transformation(second)
        modification = self.cocones.hom_sigma.morphism_payload(theta)
        components = {}
        for d in base.objects:
            unit = base.identity1[d]
            components[d] = NatTransformation(
                source.component(d),
                target.component(d),
                {
                    xi: modification.component(d).components[pair_id(unit, pair_id(unit, xi))]
                    for xi in A.value(d).objects
                },
            )
        return Modification(source, target, components)

    def forward(self) -> Functor:
        return payload_functor(self.transformations, self.cocones.category, self.to_cocone, self.modification_to_cocone)

    def backward(self) -> Functor:
        return payload_functor(self.cocones.category, self.transformations, self.to_transformation, self.morphism_to_modification)

    def report(self) -> EquivalenceReport:
        report = EquivalenceReport("ΣCocone(Bar A, B) ≅ [C,Cat]Σ(A, B)", self.transformations, self.cocones.category)
        try:
            report.compare(self.forward(), self.backward())
        except TransportFailure as error:
            report.failures.append(str(error))
        return report


def cocone_marked_lax_bridge(
    marked: MarkedTwoCategory,
    source: CatValued2Functor,
    target: CatValued2Functor,
    direction: str = "forward",
) -> Functor:
    """
    Σ-lax transformations source => target to marked codescent cocones of the bar resolution
    with nadir `target` ("forward"), or back ("backward").
    """
    bridge = CoconeBridge(marked, source, target)
    return bridge.forward() if direction == "forward" else bridge.backward()
