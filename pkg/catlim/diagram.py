import logging
from .fin_2category import Fin2Category, TwoFunctor
from .fin_category import FinCategory, ValidationReport
from .functor import Functor, NatTransformation
from typing import Any, Dict, Optional

_logger = logging.getLogger(__name__)


class CatValued2Functor:
    """
    A strict 2-functor from a finite 2-category into Cat.

    Attributes:
        name (str): Display name.
        source (Fin2Category): The indexing 2-category.
        on_objects (Dict[str, FinCategory]): Value at each object.
        on_cells1 (Dict[str, Functor]): Value at each 1-cell, identities included.
        on_cells2 (Dict[str, NatTransformation]): Value at each 2-cell, identities included.
    """

    name: str
    source: Fin2Category
    on_objects: Dict[str, FinCategory]
    on_cells1: Dict[str, Functor]
    on_cells2: Dict[str, NatTransformation]

    def __init__(
        self,
        name: str,
        source: Fin2Category,
        on_objects: Dict[str, FinCategory],
        on_cells1: Dict[str, Functor],
        on_cells2: Dict[str, NatTransformation],
    ):
        self.name = name
        self.source = source
        self.on_objects = on_objects
        self.on_cells1 = on_cells1
        self.on_cells2 = on_cells2
        self._dual: Optional["CatValued2Functor"] = None

    def value(self, d: str) -> FinCategory:
        return self.on_objects[d]

    def cell(self, f: str) -> Functor:
        return self.on_cells1[f]

    def two_cell(self, alpha: str) -> NatTransformation:
        return self.on_cells2[alpha]

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"2-functor {self.name}")
        base = self.source
        for d in base.objects:
            if d not in self.on_objects:
                report.add(f"no value at {d}")
        for f in base.cells1:
            if f not in self.on_cells1:
                report.add(f"no value at 1-cell {f}")
        for alpha in base.cells2:
            if alpha not in self.on_cells2:
                report.add(f"no value at 2-cell {alpha}")
        if not report.is_valid:
            return report
        for d in base.objects:
            report.extend(self.on_objects[d].validate(), f"value at {d}: ")
        for f, (d, c) in base.cells1.items():
            functor = self.on_cells1[f]
            if functor.source != self.on_objects[d] or functor.target != self.on_objects[c]:
                report.add(f"value at {f} has the wrong type")
                continue
            report.extend(functor.validate(), f"value at {f}: ")
        if not report.is_valid:
            return report
        for d in base.objects:
            if self.on_cells1[base.identity1[d]] != Functor.identity(self.on_objects[d]):
                report.add(f"identity of {d} is not sent to an identity functor")
        for (g, f), h in base.compose1.items():
            if self.on_cells1[g].compose(self.on_cells1[f]) != self.on_cells1[h]:
                report.add(f"composite {g}∘{f} is not preserved")
        for alpha, (f, g) in base.cells2.items():
            nat = self.on_cells2[alpha]
            if nat.source != self.on_cells1[f] or nat.target != self.on_cells1[g]:
                report.add(f"value at 2-cell {alpha} has the wrong type")
                continue
            report.extend(nat.validate(), f"value at {alpha}: ")
        if not report.is_valid:
            return report
        for f in base.cells1:
            if not self.on_cells2[base.identity2[f]].is_identity():
                report.add(f"identity 2-cell of {f} is not sent to an identity")
        for (beta, alpha), gamma in base.vertical.items():
            if self.on_cells2[beta].compose(self.on_cells2[alpha]) != self.on_cells2[gamma]:
                report.add(f"vertical composite {beta}∘{alpha} is not preserved")
        for (beta, alpha), gamma in base.horizontal.items():
            if self.on_cells2[beta].horizontal(self.on_cells2[alpha]) != self.on_cells2[gamma]:
                report.add(f"horizontal composite {beta}*{alpha} is not preserved")
        return report

    def precompose(self, functor: TwoFunctor, name: Optional[str] = None) -> "CatValued2Functor":
        """self∘functor."""
        return CatValued2Functor(
            name or f"{self.name}∘{functor.source.name}",
            functor.source,
            {d: self.on_objects[functor.object_map[d]] for d in functor.source.objects},
            {f: self.on_cells1[functor.cell1_map[f]] for f in functor.source.cells1},
            {a: self.on_cells2[functor.cell2_map[a]] for a in functor.source.cells2},
        )

    def dual(self) -> "CatValued2Functor":
        """The 2-functor source^co -> Cat sending d to value(d)^op."""
        if self._dual is None:
            name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
            dual = CatValued2Functor(
                name,
                self.source.co(),
                {d: category.opposite() for d, category in self.on_objects.items()},
                {f: functor.opposite() for f, functor in self.on_cells1.items()},
                {a: nat.opposite() for a, nat in self.on_cells2.items()},
            )
            dual._dual = self
            self._dual = dual
        return self._dual

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "base": self.source.name,
            "values": {d: self.on_objects[d].to_dict() for d in self.source.objects},
            "cells": {
                f: {"objects": dict(functor.object_map), "morphisms": dict(functor.morphism_map)}
                for f, functor in self.on_cells1.items()
                if not self.source.is_identity1(f)
            },
        }

    def __repr__(self):
        return f'CatValued2Functor(name="{self.name}", source="{self.source.name}")'

    @classmethod
    def constant(cls, base: Fin2Category, category: FinCategory, name: Optional[str] = None) -> "CatValued2Functor":
        unit = Functor.identity(category)
        unit_nat = NatTransformation.identity(unit)
        return cls(
            name or f"Δ{category.name}",
            base,
            {d: category for d in base.objects},
            {f: unit for f in base.cells1},
            {alpha: unit_nat for alpha in base.cells2},
        )

    @classmethod
    def terminal(cls, base: Fin2Category) -> "CatValued2Functor":
        return cls.constant(base, FinCategory.terminal(), "Δ1")

    @classmethod
    def from_presented(
        cls,
        name: str,
        base: Fin2Category,
        on_objects: Dict[str, FinCategory],
        on_generators: Dict[str, Functor],
    ) -> "CatValued2Functor":
        """
        Extend values on generators to a locally discrete 2-category whose underlying category
        is presented; 1-cells are evaluated along their representative words.
        """
        on_cells1 = {}
        for f, (d, _) in base.cells1.items():
            functor = Functor.identity(on_objects[d])
            for g in reversed(base.cell1_payloads.get(f, ())):
                functor = on_generators[g].compose(functor)
            on_cells1[f] = functor
        on_cells2 = {
            alpha: NatTransformation.identity(on_cells1[f]) for alpha, (f, _) in base.cells2.items()
        }
        return cls(name, base, on_objects, on_cells1, on_cells2)
