import logging
from .diagram import CatValued2Functor
from .exceptions import ClosureViolation, TightnessViolation, ValidationError
from .fin_2category import Fin2Category, TwoFunctor
from .fin_category import FinCategory, ValidationReport
from .functor import Functor, NatTransformation
from .lax import LaxTransformation, lax_category
from typing import Any, Dict, Iterable, Optional, Set

_logger = logging.getLogger(__name__)


class FCategory:
    """
    An enhanced 2-category: a 2-category with a class of tight 1-cells containing the
    identities and closed under composition. The other 1-cells are loose.

    Attributes:
        loose (Fin2Category): The underlying 2-category.
        tight (Set[str]): The tight 1-cells.
    """

    loose: Fin2Category
    tight: Set[str]

    def __init__(self, loose: Fin2Category, tight: Iterable[str], name: Optional[str] = None):
        self.loose = loose
        self.tight = set(tight) | set(loose.identity1.values())
        self.name = name or loose.name
        self._tight_part = None

    def is_tight(self, f: str) -> bool:
        return f in self.tight

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"F-category {self.name}")
        report.extend(self.loose.validate())
        for f in sorted(self.tight):
            if f not in self.loose.cells1:
                report.add(f"tight cell {f} is not a 1-cell")
        for (g, f), h in self.loose.compose1.items():
            if g in self.tight and f in self.tight and h not in self.tight:
                report.add(f"tight cells are not closed under composition: {g}∘{f} = {h}")
        return report

    def tight_part(self):
        """The locally full sub-2-category of tight 1-cells and its inclusion J."""
        if self._tight_part is None:
            ordered = [f for f in self.loose.cells1 if f in self.tight]
            self._tight_part = self.loose.sub(self.loose.objects, ordered, f"{self.name}τ")
        return self._tight_part

    def is_chordate(self) -> bool:
        return set(self.loose.cells1) <= self.tight

    def is_inchordate(self) -> bool:
        return self.tight == set(self.loose.identity1.values())

    def co(self) -> "FCategory":
        return FCategory(self.loose.co(), self.tight, self.name + "^co")

    def to_dict(self) -> Dict[str, Any]:
        return {"loose": self.loose.to_dict(), "tight": sorted(f for f in self.tight if not self.loose.is_identity1(f))}

    def __repr__(self):
        return f'FCategory(name="{self.name}", tight="{len(self.tight)}")'

    @classmethod
    def chordate(cls, category: Fin2Category) -> "FCategory":
        """Every 1-cell tight."""
        return cls(category, category.cells1)

    @classmethod
    def inchordate(cls, category: Fin2Category) -> "FCategory":
        """Only identities tight."""
        return cls(category, category.identity1.values())


def validate_fcategory(loose: Fin2Category, tight: Iterable[str]) -> FCategory:
    """
    Raises:
        ClosureViolation: an identity is missing from `tight` or a composite of tight cells is loose.
    """
    tight = set(tight)
    for a in loose.objects:
        if loose.identity1[a] not in tight:
            raise ClosureViolation(f"identity of {a} is not tight", loose.identity1[a])
    for (g, f), h in loose.compose1.items():
        if g in tight and f in tight and h not in tight:
            raise ClosureViolation(f"{g}∘{f} = {h} is loose", (g, f, h))
    return FCategory(loose, tight)


class FObject:
    """
    An object of 𝔽: a fully faithful functor from a tight category into a loose one, here
    always a full subcategory inclusion.

    Attributes:
        tight (FinCategory): The tight part.
        loose (FinCategory): The loose part.
        embedding (Functor): tight -> loose.
    """

    tight: FinCategory
    loose: FinCategory
    embedding: Functor

    def __init__(self, tight: FinCategory, loose: FinCategory, embedding: Functor):
        self.tight = tight
        self.loose = loose
        self.embedding = embedding

    def tight_objects(self) -> Set[str]:
        return set(self.embedding.object_map.values())

    def is_tight_object(self, x: str) -> bool:
        return x in self.tight_objects()

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"F-object {self.loose.name}")
        report.extend(self.embedding.validate())
        if report.is_valid and not self.embedding.is_full_embedding():
            report.add("the embedding is not fully faithful and injective on objects")
        return report

    def opposite(self) -> "FObject":
        return FObject(self.tight.opposite(), self.loose.opposite(), self.embedding.opposite())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "loose": self.loose.to_dict(),
            "tight_objects": sorted(self.tight_objects()),
        }

    def __repr__(self):
        return f'FObject(loose="{self.loose.name}", tight="{len(self.tight.objects)}")'

    @classmethod
    def full(cls, loose: FinCategory, objects: Iterable[str], name: Optional[str] = None) -> "FObject":
        tight = loose.full_subcategory(objects, name or f"{loose.name}τ")
        return cls(tight, loose, Functor.inclusion(tight, loose))

    @classmethod
    def chordate(cls, loose: FinCategory) -> "FObject":
        return cls.full(loose, loose.objects)


def is_tight_functor(functor: Functor, source: FObject, target: FObject) -> bool:
    """A functor of loose parts is tight when it sends tight objects to tight objects."""
    tight = target.tight_objects()
    return all(functor.object_map[x] in tight for x in source.tight_objects())


class FFunctor:
    """
    An F-functor: a 2-functor of loose parts sending tight 1-cells to tight 1-cells, together
    with its restriction to tight parts.
    """

    source: FCategory
    target: FCategory
    loose: TwoFunctor
    tight: TwoFunctor

    def __init__(self, source: FCategory, target: FCategory, loose: TwoFunctor):
        self.source = source
        self.target = target
        self.loose = loose
        tight_source, _ = source.tight_part()
        tight_target, _ = target.tight_part()
        self.tight = TwoFunctor(
            tight_source,
            tight_target,
            dict(loose.object_map),
            {f: loose.cell1_map[f] for f in tight_source.cells1},
            {a: loose.cell2_map[a] for a in tight_source.cells2},
        )

    def __repr__(self):
        return f'FFunctor(source="{self.source.name}", target="{self.target.name}")'


def f_functor_check(source: FCategory, target: FCategory, loose: TwoFunctor) -> FFunctor:
    """
    Raises:
        TightnessViolation: a tight 1-cell is sent to a loose one.
        ValidationError: `loose` is not a 2-functor.
    """
    report = loose.validate()
    if not report.is_valid:
        raise ValidationError("; ".join(report.violations))
    witness = loose.preserves(source.tight, target.tight)
    if witness is not None:
        raise TightnessViolation(f"tight cell {witness} is sent to loose {loose.cell1_map[witness]}", witness)
    return FFunctor(source, target, loose)


class FWeight:
    """
    An F-functor from an F-category into 𝔽: a loose 2-functor Φλ, a tight 2-functor Φτ on the
    tight part, and fully faithful components φ: Φτ => Φλ∘J.

    Attributes:
        base (FCategory): The domain.
        phi_lambda (CatValued2Functor): Loose part.
        phi_tau (CatValued2Functor): Tight part, on base.tight_part().
        phi (LaxTransformation): Strict transformation phi_tau => phi_lambda∘J.
    """

    base: FCategory
    phi_lambda: CatValued2Functor
    phi_tau: CatValued2Functor
    phi: LaxTransformation

    def __init__(self, base: FCategory, phi_lambda: CatValued2Functor, phi_tau: CatValued2Functor, phi: LaxTransformation, name: Optional[str] = None):
        self.base = base
        self.phi_lambda = phi_lambda
        self.phi_tau = phi_tau
        self.phi = phi
        self.name = name or phi_lambda.name

    def value(self, d: str) -> FObject:
        return FObject(self.phi_tau.value(d), self.phi_lambda.value(d), self.phi.component(d))

    def tight_objects(self, d: str) -> Set[str]:
        return set(self.phi.component(d).object_map.values())

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"F-weight {self.name}")
        report.extend(self.phi_lambda.validate(), "loose: ")
        report.extend(self.phi_tau.validate(), "tight: ")
        if not report.is_valid:
            return report
        report.extend(self.phi.validate(), "embedding: ")
        if not self.phi.is_strict():
            report.add("the embedding is not strict")
        for d in self.base.loose.objects:
            if not self.phi.component(d).is_full_embedding():
                report.add(f"the component at {d} is not fully faithful and injective on objects")
        return report

    def precompose(self, functor: FFunctor, name: Optional[str] = None) -> "FWeight":
        loose = self.phi_lambda.precompose(functor.loose)
        tight = self.phi_tau.precompose(functor.tight)
        _, inclusion = functor.source.tight_part()
        components = {d: self.phi.component(functor.loose.object_map[d]) for d in functor.source.loose.objects}
        phi = LaxTransformation.strict(tight, loose.precompose(inclusion), components)
        return FWeight(functor.source, loose, tight, phi, name or f"{self.name}∘{functor.source.name}")

    def dual(self) -> "FWeight":
        """On base^co, with opposite values."""
        base = self.base.co()
        loose = self.phi_lambda.dual()
        tight_part, inclusion = base.tight_part()
        tight = CatValued2Functor(
            self.phi_tau.name + "^op",
            tight_part,
            {d: c.opposite() for d, c in self.phi_tau.on_objects.items()},
            {f: functor.opposite() for f, functor in self.phi_tau.on_cells1.items()},
            {a: nat.opposite() for a, nat in self.phi_tau.on_cells2.items()},
        )
        components = {d: functor.opposite() for d, functor in self.phi.components1.items()}
        phi = LaxTransformation.strict(tight, loose.precompose(inclusion), components)
        return FWeight(base, loose, tight, phi, self.name + "^op")

    def maps_tight(self, transformation: LaxTransformation, other: "FWeight", objects: Iterable[str]) -> bool:
        """Whether each component at `objects` sends tight objects of self to tight objects of other."""
        for d in objects:
            tight = other.tight_objects(d)
            functor = transformation.component(d)
            if any(functor.object_map[x] not in tight for x in self.tight_objects(d)):
                return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "loose": self.phi_lambda.to_dict(),
            "tight": {d: sorted(self.tight_objects(d)) for d in self.base.loose.objects},
        }

    def __repr__(self):
        return f'FWeight(name="{self.name}", base="{self.base.name}")'

    @classmethod
    def from_tight_objects(
        cls,
        base: FCategory,
        phi_lambda: CatValued2Functor,
        tight_objects: Optional[Dict[str, Iterable[str]]] = None,
        name: Optional[str] = None,
    ) -> "FWeight":
        """
        The F-weight whose tight parts are full subcategories of the loose values.
        Objects missing from `tight_objects` have every object tight.

        Raises:
            TightnessViolation: a tight 1-cell does not preserve tight objects.
        """
        tight_objects = tight_objects or {}
        tight_part, inclusion = base.tight_part()
        values = {}
        for d in base.loose.objects:
            loose = phi_lambda.value(d)
            chosen = tight_objects.get(d)
            values[d] = loose.full_subcategory(loose.objects if chosen is None else chosen, f"{loose.name}τ")
        on_cells1 = {}
        for f, (d, c) in tight_part.cells1.items():
            functor = phi_lambda.cell(f)
            escaped = [x for x in values[d].objects if functor.on_object(x) not in values[c].identity]
            if escaped:
                raise TightnessViolation(f"tight cell {f} sends tight {escaped[0]} to a loose object", (f, escaped[0]))
            on_cells1[f] = functor.restrict(values[d], values[c])
        on_cells2 = {}
        for alpha, (f, g) in tight_part.cells2.items():
            d = tight_part.source1(f)
            nat = phi_lambda.two_cell(alpha)
            on_cells2[alpha] = NatTransformation(
                on_cells1[f], on_cells1[g], {x: nat.components[x] for x in values[d].objects}
            )
        phi_tau = CatValued2Functor(f"{phi_lambda.name}τ", tight_part, values, on_cells1, on_cells2)
        components = {d: Functor.inclusion(values[d], phi_lambda.value(d)) for d in base.loose.objects}
        phi = LaxTransformation.strict(phi_tau, phi_lambda.precompose(inclusion), components)
        return cls(base, phi_lambda, phi_tau, phi, name or phi_lambda.name)

    @classmethod
    def chordate(cls, base: FCategory, diagram: CatValued2Functor) -> "FWeight":
        return cls.from_tight_objects(base, diagram)

    @classmethod
    def terminal(cls, base: FCategory) -> "FWeight":
        return cls.from_tight_objects(base, CatValued2Functor.terminal(base.loose))


def enumerate_fnat(source: FWeight, target: FWeight, cap: Optional[int] = None) -> FObject:
    """
    The hom F-object of strict transformations: loose part all strict transformations of loose
    parts, tight part the full subcategory of those whose components preserve tight objects.
    """
    loose = lax_category(source.phi_lambda, target.phi_lambda, strict=True, cap=cap, name=f"[{source.name},{target.name}]")
    objects = source.base.loose.objects
    tight = [x for x in loose.objects if source.maps_tight(loose.object_payload(x), target, objects)]
    return FObject.full(loose, tight)
