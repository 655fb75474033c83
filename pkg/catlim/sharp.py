import logging
from .classifier import Classifier
from .diagram import CatValued2Functor
from .dotted import DottedFCategory, dotted_transformations
from .enhanced import FWeight, enumerate_fnat
from .exceptions import TransportFailure
from .fin_2category import Fin2Category, TwoFunctor
from .fin_category import ValidationReport
from .fincat import factorize_functor, payload_functor, unique_lift
from .functor import Functor, NatTransformation
from .lax import LaxTransformation
from .marked import EquivalenceReport
from .two_cat import PointwiseLan, lan_extend, pointwise_lan
from typing import Dict, Optional

_logger = logging.getLogger(__name__)


class SharpWeight:
    """
    The enhanced classifier F# of an F-weight over a dotted F-category.

    F#λ is the marked classifier of Fλ. L is the left Kan extension of Fτ along the inclusion of
    the dotted objects with their tight marked 1-cells; l: L => F#λ∘J is induced by (η∘θ) and each
    l_d factors as φ_d∘p_d through its full image, which is F#τ(d).

    Attributes:
        dotted (DottedFCategory): The indexing dotted F-category.
        source (FWeight): F.
        classifier (Classifier): The loose classifier with unit η: Fλ => F#λ.
        dotted_part (Fin2Category): The dotted objects with tight marked 1-cells.
        dotted_inclusion (TwoFunctor): Its inclusion into the tight part.
        lan (PointwiseLan): L with its unit π.
        restricted_unit (LaxTransformation): (η∘θ) restricted to the dotted part.
        l (LaxTransformation): L => F#λ∘J.
        p (Dict[str, Functor]): The surjective-on-objects halves of l.
        weight (FWeight): F# = (F#τ, F#λ, φ).
    """

    dotted: DottedFCategory
    source: FWeight
    classifier: Classifier
    dotted_part: Fin2Category
    dotted_inclusion: TwoFunctor
    lan: PointwiseLan
    restricted_unit: LaxTransformation
    l: LaxTransformation
    p: Dict[str, Functor]
    weight: FWeight

    def __init__(self, dotted: DottedFCategory, source: FWeight, bound: Optional[int] = None):
        self.dotted = dotted
        self.source = source
        self.classifier = Classifier(dotted.marked(), source.phi_lambda, bound)
        value, eta = self.classifier.value, self.classifier.unit

        tight_part, inclusion = dotted.base.tight_part()
        marked_tight = [f for f in tight_part.cells1 if f in dotted.sigma]
        self.dotted_part, self.dotted_inclusion = tight_part.sub(dotted.dotted, marked_tight, f"{dotted.name}|T")
        restricted = source.phi_tau.precompose(self.dotted_inclusion, f"{source.phi_tau.name}|T")
        self.lan = pointwise_lan(self.dotted_inclusion, restricted, bound)

        along = inclusion.compose(self.dotted_inclusion)
        self.restricted_unit = LaxTransformation.strict(
            restricted,
            value.precompose(along),
            {t: eta.component(t).compose(source.phi.component(t)) for t in self.dotted_part.objects},
        )
        loose_on_tight = value.precompose(inclusion, f"{value.name}∘J")
        self.l = lan_extend(self.lan, loose_on_tight, self.restricted_unit)

        self.p: Dict[str, Functor] = {}
        phi: Dict[str, Functor] = {}
        for d in tight_part.objects:
            self.p[d], phi[d] = factorize_functor(self.l.component(d))
        tight_value = self._tight_value(tight_part, loose_on_tight, phi)
        self.weight = FWeight(
            dotted.base,
            value,
            tight_value,
            LaxTransformation.strict(tight_value, loose_on_tight, phi),
            f"{source.name}#",
        )

    def _tight_value(self, tight_part: Fin2Category, loose_on_tight: CatValued2Functor, phi: Dict[str, Functor]) -> CatValued2Functor:
        L = self.lan.extension
        on_objects = {d: phi[d].source for d in tight_part.objects}
        on_cells1 = {}
        for g, (d, d2) in tight_part.cells1.items():
            on_cells1[g] = unique_lift(
                self.p[d],
                phi[d2],
                self.p[d2].compose(L.cell(g)),
                loose_on_tight.cell(g).compose(phi[d]),
            )
        on_cells2 = {}
        for delta, (g, g2) in tight_part.cells2.items():
            nat = loose_on_tight.two_cell(delta)
            d = tight_part.source1(g)
            on_cells2[delta] = NatTransformation(
                on_cells1[g], on_cells1[g2], {x: nat.components[x] for x in on_objects[d].objects}
            )
        return CatValued2Functor(f"{self.source.name}#τ", tight_part, on_objects, on_cells1, on_cells2)

    @property
    def unit(self) -> LaxTransformation:
        return self.classifier.unit

    def verify(self) -> ValidationReport:
        """The identities of the construction: φ∘p = l, (l·J_T)∘π = (η·J·J_T)∘(θ·J_T), and F# is an F-weight."""
        report = ValidationReport(f"construction of {self.weight.name}")
        report.extend(self.weight.validate())
        for d, p in self.p.items():
            if self.weight.phi.component(d).compose(p) != self.l.component(d):
                report.add(f"φ∘p differs from l at {d}")
        for t in self.dotted_part.objects:
            left = self.l.component(t).compose(self.lan.unit.component(t))
            if left != self.restricted_unit.component(t):
                report.add(f"(l·J)∘π differs from (η·J)∘θ at {t}")
        return report

    def __repr__(self):
        return f'SharpWeight(weight="{self.source.name}", dotted="{self.dotted.name}")'


def sharp_classifier(dotted: DottedFCategory, weight: FWeight, bound: Optional[int] = None) -> SharpWeight:
    """
    Raises:
        ClosureOverflow: a classifier or Kan extension value exceeds `bound`.
        NoLift: the tight part does not extend to a 2-functor.
    """
    return SharpWeight(dotted, weight, bound)


def verify_unit_dotted(dotted: DottedFCategory, weight: FWeight, sharp: Optional[SharpWeight] = None) -> ValidationReport:
    """The unit η: F => F# is dotted-lax: Σ-lax, with tight 1-components at every dotted object."""
    sharp = sharp or sharp_classifier(dotted, weight)
    report = ValidationReport(f"unit of {sharp.weight.name}")
    report.extend(sharp.unit.validate(dotted.sigma))
    for t in dotted.dotted:
        functor = sharp.unit.component(t)
        tight = sharp.weight.tight_objects(t)
        for x in weight.tight_objects(t):
            if functor.on_object(x) not in tight:
                report.add(f"η at {t} sends tight {x} to a loose object")
                break
    return report


def verify_sharp_adjunction(
    dotted: DottedFCategory,
    weight: FWeight,
    target: FWeight,
    bound: Optional[int] = None,
    cap: Optional[int] = None,
) -> EquivalenceReport:
    """
    Check [D, 𝔽](F#, G) ≅ [D, 𝔽]l,Σ,T(F, G) through β ↦ β∘η, on loose parts and on tight parts.
    """
    sharp = sharp_classifier(dotted, weight, bound)
    left = enumerate_fnat(sharp.weight, target, cap)
    right = dotted_transformations(dotted, weight, target, cap=cap)
    report = EquivalenceReport(f"[{sharp.weight.name},{target.name}] ≅ dotted-lax", left.loose, right.loose)
    unit = sharp.unit
    try:
        forward = payload_functor(left.loose, right.loose, lambda beta: beta.compose(unit), lambda gamma: gamma.whisker_right(unit))
    except TransportFailure as error:
        report.failures.append(str(error))
        return report
    report.compare(forward)
    if not report.holds:
        return report
    tight_left, tight_right = left.tight_objects(), right.tight_objects()
    for x in left.loose.objects:
        if (x in tight_left) != (forward.on_object(x) in tight_right):
            report.failures.append(f"tightness of {x} is not preserved and reflected")
    report.details["tight"] = {"left": len(tight_left), "right": len(tight_right)}
    unit_report = verify_unit_dotted(dotted, weight, sharp)
    report.failures.extend(unit_report.violations)
    return report


def verify_dotted_limit_theorem(
    dotted: DottedFCategory, diagram: FWeight, bound: Optional[int] = None, cap: Optional[int] = None
) -> EquivalenceReport:
    """The dotted-lax limit of `diagram` is the F-weighted limit with weight (Δ1)#."""
    return verify_sharp_adjunction(dotted, FWeight.terminal(dotted.base), diagram, bound, cap)
