import logging
from .diagram import CatValued2Functor
from .fin_category import FinCategory, ValidationReport
from .fincat import assemble_category
from .functor import Functor, NatTransformation, enumerate_functors, enumerate_natural_transformations
from .search import Backtracker
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Set, Tuple

_logger = logging.getLogger(__name__)

# Convention: a lax transformation α: F => G has, for each 1-cell f: d -> c, a natural
# transformation α_f: G(f)∘α_d => α_c∘F(f). Colax transformations are handled by duality.


class LaxTransformation:
    """
    A lax natural transformation between Cat-valued 2-functors.

    Attributes:
        source (CatValued2Functor): F.
        target (CatValued2Functor): G.
        components1 (Dict[str, Functor]): d -> α_d: F(d) -> G(d).
        components2 (Dict[str, NatTransformation]): f -> α_f, identities included.
    """

    source: CatValued2Functor
    target: CatValued2Functor
    components1: Dict[str, Functor]
    components2: Dict[str, NatTransformation]

    def __init__(
        self,
        source: CatValued2Functor,
        target: CatValued2Functor,
        components1: Dict[str, Functor],
        components2: Dict[str, NatTransformation],
    ):
        self.source = source
        self.target = target
        self.components1 = components1
        self.components2 = components2
        self._key: Optional[Tuple] = None

    @property
    def key(self) -> Tuple:
        if self._key is None:
            self._key = (
                tuple((d, self.components1[d].key) for d in sorted(self.components1)),
                tuple((f, tuple(sorted(self.components2[f].components.items()))) for f in sorted(self.components2)),
            )
        return self._key

    def component(self, d: str) -> Functor:
        return self.components1[d]

    def cell(self, f: str) -> NatTransformation:
        return self.components2[f]

    def is_strict(self) -> bool:
        return all(nat.is_identity() for nat in self.components2.values())

    def is_marked(self, sigma: Iterable[str]) -> bool:
        return all(self.components2[f].is_identity() for f in sigma)

    def compose(self, other: "LaxTransformation") -> "LaxTransformation":
        """self∘other, where other.target is self.source."""
        base = self.source.source
        components1 = {d: self.components1[d].compose(other.components1[d]) for d in base.objects}
        components2 = {}
        for f, (d, c) in base.cells1.items():
            outer = other.components2[f].whisker_left(self.components1[c])
            inner = self.components2[f].whisker_right(other.components1[d])
            components2[f] = outer.compose(inner)
        return LaxTransformation(other.source, self.target, components1, components2)

    def validate(self, sigma: Optional[Iterable[str]] = None) -> ValidationReport:
        report = ValidationReport(f"lax transformation {self.source.name} => {self.target.name}")
        base = self.source.source
        F, G = self.source, self.target
        for d in base.objects:
            functor = self.components1.get(d)
            if functor is None:
                report.add(f"missing component at {d}")
                continue
            report.extend(functor.validate(), f"component at {d}: ")
        if not report.is_valid:
            return report
        for f, (d, c) in base.cells1.items():
            nat = self.components2.get(f)
            expected_source = G.cell(f).compose(self.components1[d])
            expected_target = self.components1[c].compose(F.cell(f))
            if nat is None:
                report.add(f"missing 2-component at {f}")
            elif nat.source != expected_source or nat.target != expected_target:
                report.add(f"2-component at {f} has the wrong type")
            else:
                report.extend(nat.validate(), f"2-component at {f}: ")
        if not report.is_valid:
            return report
        for f in base.cells1:
            if base.is_identity1(f) and not self.components2[f].is_identity():
                report.add(f"unity fails at {f}")
        for (g, f), gf in base.compose1.items():
            expected = self.components2[g].whisker_right(F.cell(f)).compose(self.components2[f].whisker_left(G.cell(g)))
            if self.components2[gf] != expected:
                report.add(f"functoriality fails at {g}∘{f}")
        for gamma, (f, f2) in base.cells2.items():
            d, c = base.cells1[f]
            left = F.two_cell(gamma).whisker_left(self.components1[c]).compose(self.components2[f])
            right = self.components2[f2].compose(G.two_cell(gamma).whisker_right(self.components1[d]))
            if left != right:
                report.add(f"2-naturality fails at {gamma}")
        for f in sigma or ():
            if not self.components2[f].is_identity():
                report.add(f"2-component at marked 1-cell {f} is not an identity")
        return report

    def __eq__(self, other):
        return isinstance(other, LaxTransformation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'LaxTransformation(source="{self.source.name}", target="{self.target.name}")'

    @classmethod
    def strict(
        cls, source: CatValued2Functor, target: CatValued2Functor, components1: Dict[str, Functor]
    ) -> "LaxTransformation":
        """Strict transformation with identity 2-components; naturality is not checked here."""
        components2 = {
            f: NatTransformation.identity(target.cell(f).compose(components1[d]))
            for f, (d, _) in source.source.cells1.items()
        }
        return cls(source, target, components1, components2)

    @classmethod
    def identity(cls, diagram: CatValued2Functor) -> "LaxTransformation":
        return cls.strict(diagram, diagram, {d: Functor.identity(x) for d, x in diagram.on_objects.items()})


class Modification:
    """
    A modification between parallel lax transformations.

    Attributes:
        source (LaxTransformation): α.
        target (LaxTransformation): α'.
        components (Dict[str, NatTransformation]): d -> ρ_d: α_d => α'_d.
    """

    source: LaxTransformation
    target: LaxTransformation
    components: Dict[str, NatTransformation]

    def __init__(self, source: LaxTransformation, target: LaxTransformation, components: Dict[str, NatTransformation]):
        self.source = source
        self.target = target
        self.components = components
        self._key: Optional[Tuple] = None

    @property
    def key(self) -> Tuple:
        if self._key is None:
            self._key = (
                self.source.key,
                self.target.key,
                tuple((d, tuple(sorted(self.components[d].components.items()))) for d in sorted(self.components)),
            )
        return self._key

    def component(self, d: str) -> NatTransformation:
        return self.components[d]

    def compose(self, other: "Modification") -> "Modification":
        """Vertical composite self∘other."""
        return Modification(
            other.source,
            self.target,
            {d: self.components[d].compose(other.components[d]) for d in self.components},
        )

    def whisker_right(self, transformation: LaxTransformation) -> "Modification":
        """Γ*η: components Γ_d*η_d."""
        return Modification(
            self.source.compose(transformation),
            self.target.compose(transformation),
            {d: nat.whisker_right(transformation.components1[d]) for d, nat in self.components.items()},
        )

    def whisker_left(self, transformation: LaxTransformation) -> "Modification":
        """η*Γ: components η_d*Γ_d."""
        return Modification(
            transformation.compose(self.source),
            transformation.compose(self.target),
            {d: nat.whisker_left(transformation.components1[d]) for d, nat in self.components.items()},
        )

    def validate(self) -> ValidationReport:
        report = ValidationReport("modification")
        alpha, beta = self.source, self.target
        F, G = alpha.source, alpha.target
        for f, (d, c) in F.source.cells1.items():
            left = beta.components2[f].compose(self.components[d].whisker_left(G.cell(f)))
            right = self.components[c].whisker_right(F.cell(f)).compose(alpha.components2[f])
            if left.components != right.components:
                report.add(f"modification axiom fails at {f}")
        return report

    def __eq__(self, other):
        return isinstance(other, Modification) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'Modification(source="{self.source.source.name}", target="{self.source.target.name}")'

    @classmethod
    def identity(cls, transformation: LaxTransformation) -> "Modification":
        return cls(
            transformation,
            transformation,
            {d: NatTransformation.identity(functor) for d, functor in transformation.components1.items()},
        )


class LaxEnumerator:
    """
    Enumerates lax transformations F => G and the modifications between them.

    Parameters:
        source (CatValued2Functor): F.
        target (CatValued2Functor): G.
        strict (bool): Force every 2-component to be an identity.
        sigma (Iterable[str]): 1-cells whose 2-components are forced to be identities.
        component_filter (Dict[str, Callable[[Functor], bool]]): Admissible components per object.
        cap (int): Enumeration cap, defaults to Settings.max_cone_search.
    """

    def __init__(
        self,
        source: CatValued2Functor,
        target: CatValued2Functor,
        strict: bool = False,
        sigma: Optional[Iterable[str]] = None,
        component_filter: Optional[Dict[str, Callable[[Functor], bool]]] = None,
        cap: Optional[int] = None,
    ):
        self.source = source
        self.target = target
        self.base = source.source
        self.cap = cap
        if strict:
            self.forced: Set[str] = set(self.base.cells1)
        else:
            self.forced = set(sigma or ())
        self.component_filter = component_filter or {}
        self._nat_cache: Dict[Tuple, List[NatTransformation]] = {}
        self._transformations: Optional[List[LaxTransformation]] = None

    def _object_candidates(self, d: str) -> List[Functor]:
        functors = enumerate_functors(self.source.value(d), self.target.value(d), self.cap)
        accept = self.component_filter.get(d)
        return [functor for functor in functors if accept is None or accept(functor)]

    def _nats(self, f: str, lower: Functor, upper: Functor) -> List[NatTransformation]:
        key = (f, lower.key, upper.key)
        if key not in self._nat_cache:
            self._nat_cache[key] = enumerate_natural_transformations(lower, upper, self.cap)
        return self._nat_cache[key]

    def transformations(self) -> List[LaxTransformation]:
        if self._transformations is not None:
            return self._transformations
        base, F, G = self.base, self.source, self.target
        cells = base.nonidentity_cells1()
        variables = [("object", d) for d in base.objects] + [("cell", f) for f in cells]
        position = {v: i for i, v in enumerate(variables)}
        object_candidates = {d: self._object_candidates(d) for d in base.objects}

        def latest(involved: List[Hashable]) -> Hashable:
            return max(involved, key=position.get)

        constraints: Dict[Hashable, List[Tuple]] = {}
        for f in cells:
            d, c = base.cells1[f]
            if f in self.forced:
                constraints.setdefault(latest([("object", d), ("object", c)]), []).append(("strict", f))
        for (g, f), gf in base.compose1.items():
            if base.is_identity1(g) or base.is_identity1(f):
                continue
            involved = [("cell", g), ("cell", f)] + ([] if base.is_identity1(gf) else [("cell", gf)])
            constraints.setdefault(latest(involved), []).append(("functorial", g, f, gf))
        for gamma, (f, f2) in base.cells2.items():
            if base.is_identity2(gamma):
                continue
            d, c = base.cells1[f]
            involved = [("cell", h) for h in (f, f2) if not base.is_identity1(h)]
            if not involved:
                involved = [("object", d), ("object", c)]
            constraints.setdefault(latest(involved), []).append(("natural", gamma))

        def cell_value(f: str, assignment: Dict) -> NatTransformation:
            if base.is_identity1(f):
                return NatTransformation.identity(assignment[("object", base.source1(f))])
            return assignment[("cell", f)]

        def candidates(variable, assignment):
            kind, name = variable
            if kind == "object":
                return object_candidates[name]
            d, c = base.cells1[name]
            lower = G.cell(name).compose(assignment[("object", d)])
            upper = assignment[("object", c)].compose(F.cell(name))
            if name in self.forced:
                # the strict constraint has already forced lower == upper
                return [NatTransformation.identity(lower)]
            return self._nats(name, lower, upper)

        def check(variable, assignment):
            for constraint in constraints.get(variable, []):
                kind = constraint[0]
                if kind == "strict":
                    d, c = base.cells1[constraint[1]]
                    lower = G.cell(constraint[1]).compose(assignment[("object", d)])
                    upper = assignment[("object", c)].compose(F.cell(constraint[1]))
                    if lower != upper:
                        return False
                elif kind == "functorial":
                    _, g, f, gf = constraint
                    expected = cell_value(g, assignment).whisker_right(F.cell(f)).compose(
                        cell_value(f, assignment).whisker_left(G.cell(g))
                    )
                    if cell_value(gf, assignment).components != expected.components:
                        return False
                else:
                    gamma = constraint[1]
                    f, f2 = base.cells2[gamma]
                    d, c = base.cells1[f]
                    left = F.two_cell(gamma).whisker_left(assignment[("object", c)]).compose(cell_value(f, assignment))
                    right = cell_value(f2, assignment).compose(
                        G.two_cell(gamma).whisker_right(assignment[("object", d)])
                    )
                    if left.components != right.components:
                        return False
            return True

        label = f"lax transformations {F.name} => {G.name}"
        found = []
        for assignment in Backtracker(variables, candidates, check, self.cap, label):
            components1 = {d: assignment[("object", d)] for d in base.objects}
            components2 = {f: cell_value(f, assignment) for f in base.cells1}
            found.append(LaxTransformation(F, G, components1, components2))
        _logger.debug(f"{label}: {len(found)}")
        self._transformations = found
        return found

    def modifications(self, alpha: LaxTransformation, beta: LaxTransformation) -> List[Modification]:
        base, F, G = self.base, self.source, self.target
        position = {d: i for i, d in enumerate(base.objects)}
        constraints: Dict[str, List[str]] = {}
        for f, (d, c) in base.cells1.items():
            if base.is_identity1(f):
                continue
            constraints.setdefault(d if position[d] >= position[c] else c, []).append(f)

        def candidates(d, _assignment):
            return self._nats(f"ρ{d}", alpha.components1[d], beta.components1[d])

        def check(d, assignment):
            for f in constraints.get(d, []):
                s, t = base.cells1[f]
                left = beta.components2[f].compose(assignment[s].whisker_left(G.cell(f)))
                right = assignment[t].whisker_right(F.cell(f)).compose(alpha.components2[f])
                if left.components != right.components:
                    return False
            return True

        return [
            Modification(alpha, beta, assignment)
            for assignment in Backtracker(base.objects, candidates, check, self.cap, "modifications")
        ]

    def category(self, name: Optional[str] = None) -> FinCategory:
        """Lax transformations as objects "L{i}", modifications as morphisms "M{i}"."""
        return assemble_category(
            name or f"Lax[{self.source.name},{self.target.name}]",
            self.transformations(),
            self.modifications,
            Modification.identity,
            lambda g, f: g.compose(f),
            "L",
            "M",
        )


def lax_category(
    source: CatValued2Functor,
    target: CatValued2Functor,
    strict: bool = False,
    sigma: Optional[Iterable[str]] = None,
    component_filter: Optional[Dict[str, Callable[[Functor], bool]]] = None,
    colax: bool = False,
    cap: Optional[int] = None,
    name: Optional[str] = None,
) -> FinCategory:
    """
    Category of lax (or colax) transformations source => target and modifications.

    Colax transformations are computed as lax transformations between the duals
    d -> value(d)^op on the 2-cell dual of the base; the result is then reversed. Their
    payloads are the corresponding lax transformations of the duals.
    """
    if not colax:
        return LaxEnumerator(source, target, strict, sigma, component_filter, cap).category(name)
    dual_filter = None
    if component_filter:
        dual_filter = {d: (lambda functor, accept=accept: accept(functor.opposite())) for d, accept in component_filter.items()}
    dual = LaxEnumerator(source.dual(), target.dual(), strict, sigma, dual_filter, cap)
    category = dual.category(name or f"Colax[{source.name},{target.name}]^op")
    return category.opposite()
