import logging
from .fin_category import FinCategory, ValidationReport
from .search import Backtracker
from typing import Dict, Hashable, List, Optional, Tuple

_logger = logging.getLogger(__name__)


class Functor:
    """
    A functor between finite categories.

    Attributes:
        source (FinCategory): Domain.
        target (FinCategory): Codomain.
        object_map (Dict[str, str]): Object id -> object id.
        morphism_map (Dict[str, str]): Morphism id -> morphism id, identities included.
    """

    source: FinCategory
    target: FinCategory
    object_map: Dict[str, str]
    morphism_map: Dict[str, str]

    def __init__(
        self,
        source: FinCategory,
        target: FinCategory,
        object_map: Dict[str, str],
        morphism_map: Dict[str, str],
    ):
        self.source = source
        self.target = target
        self.object_map = object_map
        self.morphism_map = morphism_map
        self._key: Optional[Tuple] = None

    @property
    def key(self) -> Tuple:
        if self._key is None:
            self._key = (tuple(sorted(self.object_map.items())), tuple(sorted(self.morphism_map.items())))
        return self._key

    def on_object(self, x: str) -> str:
        return self.object_map[x]

    def on_morphism(self, f: str) -> str:
        return self.morphism_map[f]

    def compose(self, other: "Functor") -> "Functor":
        """Return self∘other."""
        return Functor(
            other.source,
            self.target,
            {x: self.object_map[y] for x, y in other.object_map.items()},
            {f: self.morphism_map[g] for f, g in other.morphism_map.items()},
        )

    def opposite(self) -> "Functor":
        return Functor(self.source.opposite(), self.target.opposite(), self.object_map, self.morphism_map)

    def restrict(self, source: FinCategory, target: FinCategory) -> "Functor":
        """Restriction to subcategories that keep the ambient ids."""
        return Functor(
            source,
            target,
            {x: self.object_map[x] for x in source.objects},
            {f: self.morphism_map[f] for f in source.morphisms},
        )

    def image_objects(self) -> List[str]:
        seen = set(self.object_map.values())
        return [x for x in self.target.objects if x in seen]

    def is_surjective_on_objects(self) -> bool:
        return set(self.object_map.values()) == set(self.target.objects)

    def is_full_embedding(self) -> bool:
        """Injective on objects and bijective on every hom-set."""
        if len(set(self.object_map.values())) != len(self.object_map):
            return False
        for a in self.source.objects:
            for b in self.source.objects:
                images = {self.morphism_map[f] for f in self.source.hom(a, b)}
                if len(images) != len(self.source.hom(a, b)):
                    return False
                if images != set(self.target.hom(self.object_map[a], self.object_map[b])):
                    return False
        return True

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"functor {self.source.name} -> {self.target.name}")
        for x in self.source.objects:
            if self.object_map.get(x) not in self.target.identity:
                report.add(f"object {x} has no image")
        for f in self.source.morphisms:
            if self.morphism_map.get(f) not in self.target.morphisms:
                report.add(f"morphism {f} has no image")
        if not report.is_valid:
            return report
        for f, (s, t) in self.source.morphisms.items():
            image = self.morphism_map[f]
            if self.target.morphisms[image] != (self.object_map[s], self.object_map[t]):
                report.add(f"{f} is sent to {image} of the wrong type")
        for x in self.source.objects:
            if self.morphism_map[self.source.identity[x]] != self.target.identity[self.object_map[x]]:
                report.add(f"identity of {x} is not preserved")
        if not report.is_valid:
            return report
        for (g, f), h in self.source.compose_table.items():
            if self.target.compose(self.morphism_map[g], self.morphism_map[f]) != self.morphism_map[h]:
                report.add(f"composite {g}∘{f} is not preserved")
        return report

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'Functor(source="{self.source.name}", target="{self.target.name}", objects="{self.object_map}")'

    @classmethod
    def identity(cls, category: FinCategory) -> "Functor":
        return cls(
            category,
            category,
            {x: x for x in category.objects},
            {f: f for f in category.morphisms},
        )

    @classmethod
    def constant(cls, source: FinCategory, target: FinCategory, obj: str) -> "Functor":
        unit = target.identity[obj]
        return cls(source, target, {x: obj for x in source.objects}, {f: unit for f in source.morphisms})

    @classmethod
    def inclusion(cls, sub: FinCategory, ambient: FinCategory) -> "Functor":
        return cls(sub, ambient, {x: x for x in sub.objects}, {f: f for f in sub.morphisms})


class NatTransformation:
    """
    A natural transformation between parallel functors.

    Attributes:
        source (Functor): The domain functor F.
        target (Functor): The codomain functor G.
        components (Dict[str, str]): Object x of the common source -> morphism F(x) -> G(x).
    """

    source: Functor
    target: Functor
    components: Dict[str, str]

    def __init__(self, source: Functor, target: Functor, components: Dict[str, str]):
        self.source = source
        self.target = target
        self.components = components
        self._key: Optional[Tuple] = None

    @property
    def key(self) -> Tuple:
        if self._key is None:
            self._key = (self.source.key, self.target.key, tuple(sorted(self.components.items())))
        return self._key

    @property
    def codomain(self) -> FinCategory:
        return self.source.target

    def component(self, x: str) -> str:
        return self.components[x]

    def compose(self, other: "NatTransformation") -> "NatTransformation":
        """Vertical composite self∘other, where other.target is self.source."""
        category = self.codomain
        return NatTransformation(
            other.source,
            self.target,
            {x: category.compose(self.components[x], other.components[x]) for x in self.components},
        )

    def whisker_left(self, functor: Functor) -> "NatTransformation":
        """H*α: components H(α_x)."""
        return NatTransformation(
            functor.compose(self.source),
            functor.compose(self.target),
            {x: functor.morphism_map[m] for x, m in self.components.items()},
        )

    def whisker_right(self, functor: Functor) -> "NatTransformation":
        """α*K: components α_{K(x)}."""
        return NatTransformation(
            self.source.compose(functor),
            self.target.compose(functor),
            {x: self.components[functor.object_map[x]] for x in functor.source.objects},
        )

    def horizontal(self, other: "NatTransformation") -> "NatTransformation":
        """self*other with other: F => G and self: H => K; component β_{G x}∘H(α_x)."""
        category = self.codomain
        return NatTransformation(
            self.source.compose(other.source),
            self.target.compose(other.target),
            {
                x: category.compose(
                    self.components[other.target.object_map[x]],
                    self.source.morphism_map[m],
                )
                for x, m in other.components.items()
            },
        )

    def opposite(self) -> "NatTransformation":
        return NatTransformation(self.target.opposite(), self.source.opposite(), self.components)

    def is_identity(self) -> bool:
        return all(self.codomain.is_identity(m) for m in self.components.values())

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"natural transformation into {self.codomain.name}")
        category = self.codomain
        f_functor, g_functor = self.source, self.target
        for x in f_functor.source.objects:
            m = self.components.get(x)
            if m is None:
                report.add(f"missing component at {x}")
            elif category.morphisms.get(m) != (f_functor.object_map[x], g_functor.object_map[x]):
                report.add(f"component at {x} has the wrong type")
        if not report.is_valid:
            return report
        for f, (s, t) in f_functor.source.morphisms.items():
            left = category.compose(g_functor.morphism_map[f], self.components[s])
            right = category.compose(self.components[t], f_functor.morphism_map[f])
            if left != right:
                report.add(f"naturality fails at {f}")
        return report

    def __eq__(self, other):
        return isinstance(other, NatTransformation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'NatTransformation(components="{self.components}")'

    @classmethod
    def identity(cls, functor: Functor) -> "NatTransformation":
        return cls(functor, functor, {x: functor.target.identity[y] for x, y in functor.object_map.items()})


def enumerate_functors(source: FinCategory, target: FinCategory, cap: Optional[int] = None) -> List[Functor]:
    """
    Every functor source -> target, in a deterministic order.

    Raises:
        SizeOverflow: more than `cap` functors exist.
    """
    arrows = [f for f in source.morphisms if not source.is_identity(f)]
    order = {f: i for i, f in enumerate(arrows)}
    constraints: Dict[Hashable, List[Tuple[str, str, str]]] = {}
    for (g, f), h in source.compose_table.items():
        if source.is_identity(g) or source.is_identity(f):
            continue
        involved = [g, f] if source.is_identity(h) else [g, f, h]
        last = max(involved, key=order.get)
        constraints.setdefault(("arrow", last), []).append((g, f, h))

    variables = [("object", x) for x in source.objects] + [("arrow", f) for f in arrows]

    def image(f: str, assignment: Dict) -> str:
        if source.is_identity(f):
            return target.identity[assignment[("object", source.source(f))]]
        return assignment[("arrow", f)]

    def candidates(variable, assignment):
        kind, name = variable
        if kind == "object":
            return target.objects
        s, t = source.morphisms[name]
        return target.hom(assignment[("object", s)], assignment[("object", t)])

    def check(variable, assignment):
        for g, f, h in constraints.get(variable, []):
            if target.compose(image(g, assignment), image(f, assignment)) != image(h, assignment):
                return False
        return True

    functors = []
    for assignment in Backtracker(variables, candidates, check, cap, f"functors {source.name} -> {target.name}"):
        object_map = {x: assignment[("object", x)] for x in source.objects}
        morphism_map = {f: image(f, assignment) for f in source.morphisms}
        functors.append(Functor(source, target, object_map, morphism_map))
    return functors


def enumerate_natural_transformations(
    source: Functor, target: Functor, cap: Optional[int] = None
) -> List[NatTransformation]:
    """Every natural transformation source => target."""
    domain = source.source
    category = source.target
    objects = domain.objects
    position = {x: i for i, x in enumerate(objects)}
    constraints: Dict[str, List[str]] = {}
    for f, (s, t) in domain.morphisms.items():
        if domain.is_identity(f):
            continue
        last = s if position[s] >= position[t] else t
        constraints.setdefault(last, []).append(f)

    def candidates(x, _assignment):
        return category.hom(source.object_map[x], target.object_map[x])

    def check(x, assignment):
        for f in constraints.get(x, []):
            s, t = domain.morphisms[f]
            left = category.compose(target.morphism_map[f], assignment[s])
            right = category.compose(assignment[t], source.morphism_map[f])
            if left != right:
                return False
        return True

    return [
        NatTransformation(source, target, assignment)
        for assignment in Backtracker(objects, candidates, check, cap, f"transformations into {category.name}")
    ]
