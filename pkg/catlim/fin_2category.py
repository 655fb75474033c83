import logging
from .fin_category import FinCategory, ValidationReport, identity_id
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

_logger = logging.getLogger(__name__)


class Fin2Category:
    """
    A finite strict 2-category.

    Attributes:
        name (str): Display name.
        objects (List[str]): Object ids.
        cells1 (Dict[str, Tuple[str, str]]): 1-cell -> (source object, target object).
        cells2 (Dict[str, Tuple[str, str]]): 2-cell -> (source 1-cell, target 1-cell).
        identity1 (Dict[str, str]): Object -> identity 1-cell.
        identity2 (Dict[str, str]): 1-cell -> identity 2-cell.
        compose1 (Dict[Tuple[str, str], str]): (g, f) -> g∘f on 1-cells.
        vertical (Dict[Tuple[str, str], str]): (β, α) -> β∘α on 2-cells.
        horizontal (Dict[Tuple[str, str], str]): (β, α) -> β*α on 2-cells.
    """

    name: str
    objects: List[str]
    cells1: Dict[str, Tuple[str, str]]
    cells2: Dict[str, Tuple[str, str]]
    identity1: Dict[str, str]
    identity2: Dict[str, str]
    compose1: Dict[Tuple[str, str], str]
    vertical: Dict[Tuple[str, str], str]
    horizontal: Dict[Tuple[str, str], str]

    def __init__(
        self,
        name: str,
        objects: Iterable[str],
        cells1: Dict[str, Tuple[str, str]],
        cells2: Dict[str, Tuple[str, str]],
        identity1: Dict[str, str],
        identity2: Dict[str, str],
        compose1: Dict[Tuple[str, str], str],
        vertical: Dict[Tuple[str, str], str],
        horizontal: Dict[Tuple[str, str], str],
        object_payloads: Optional[Dict[str, Any]] = None,
        cell1_payloads: Optional[Dict[str, Any]] = None,
        cell2_payloads: Optional[Dict[str, Any]] = None,
    ):
        self.name = name
        self.objects = list(objects)
        self.cells1 = cells1
        self.cells2 = cells2
        self.identity1 = identity1
        self.identity2 = identity2
        self.compose1 = compose1
        self.vertical = vertical
        self.horizontal = horizontal
        self.object_payloads = object_payloads or {}
        self.cell1_payloads = cell1_payloads or {}
        self.cell2_payloads = cell2_payloads or {}
        self._homs: Dict[Tuple[str, str], FinCategory] = {}
        self._identity_cells = set(identity1.values())
        self._co: Optional["Fin2Category"] = None

    def source1(self, f: str) -> str:
        return self.cells1[f][0]

    def target1(self, f: str) -> str:
        return self.cells1[f][1]

    def source2(self, alpha: str) -> str:
        return self.cells2[alpha][0]

    def target2(self, alpha: str) -> str:
        return self.cells2[alpha][1]

    def is_identity1(self, f: str) -> bool:
        return f in self._identity_cells

    def is_identity2(self, alpha: str) -> bool:
        return self.identity2.get(self.source2(alpha)) == alpha

    def compose(self, g: str, f: str) -> str:
        try:
            return self.compose1[(g, f)]
        except KeyError:
            raise ValueError(f"1-cells {g} and {f} are not composable in {self.name}") from None

    def vcompose(self, beta: str, alpha: str) -> str:
        return self.vertical[(beta, alpha)]

    def hcompose(self, beta: str, alpha: str) -> str:
        return self.horizontal[(beta, alpha)]

    def whisker_left(self, g: str, alpha: str) -> str:
        """g*α."""
        return self.horizontal[(self.identity2[g], alpha)]

    def whisker_right(self, beta: str, f: str) -> str:
        """β*f."""
        return self.horizontal[(beta, self.identity2[f])]

    def cells1_between(self, a: str, b: str) -> List[str]:
        return [f for f, st in self.cells1.items() if st == (a, b)]

    def cells2_between(self, f: str, g: str) -> List[str]:
        return [alpha for alpha, st in self.cells2.items() if st == (f, g)]

    def nonidentity_cells1(self) -> List[str]:
        return [f for f in self.cells1 if not self.is_identity1(f)]

    def nonidentity_cells2(self) -> List[str]:
        return [alpha for alpha in self.cells2 if not self.is_identity2(alpha)]

    def hom(self, a: str, b: str) -> FinCategory:
        """The hom-category: 1-cells a -> b and the 2-cells between them."""
        if (a, b) not in self._homs:
            objects = self.cells1_between(a, b)
            keep = set(objects)
            morphisms = {alpha: st for alpha, st in self.cells2.items() if st[0] in keep}
            self._homs[(a, b)] = FinCategory(
                f"{self.name}({a},{b})",
                objects,
                morphisms,
                {f: self.identity2[f] for f in objects},
                {(beta, alpha): gamma for (beta, alpha), gamma in self.vertical.items() if alpha in morphisms},
            )
        return self._homs[(a, b)]

    def underlying_category(self) -> FinCategory:
        """Objects and 1-cells, forgetting 2-cells."""
        return FinCategory(self.name, self.objects, self.cells1, self.identity1, self.compose1)

    def validate(self) -> ValidationReport:
        report = ValidationReport(self.name)
        report.extend(self.underlying_category().validate(), "1-cells: ")
        if not report.is_valid:
            return report
        for a in self.objects:
            for b in self.objects:
                report.extend(self.hom(a, b).validate(), f"hom({a},{b}): ")
        for alpha, (f, g) in self.cells2.items():
            if f not in self.cells1 or self.cells1.get(f) != self.cells1.get(g):
                report.add(f"2-cell {alpha}: {f} => {g} joins non-parallel 1-cells")
        if not report.is_valid:
            return report
        for beta, (k, k2) in self.cells2.items():
            for alpha, (h, h2) in self.cells2.items():
                if self.source1(k) != self.target1(h):
                    continue
                gamma = self.horizontal.get((beta, alpha))
                if gamma is None:
                    report.add(f"horizontal composite {beta}*{alpha} is undefined")
                elif self.cells2[gamma] != (self.compose1[(k, h)], self.compose1[(k2, h2)]):
                    report.add(f"horizontal composite {beta}*{alpha} = {gamma} has the wrong type")
        if not report.is_valid:
            return report
        for a in self.objects:
            unit = self.identity2[self.identity1[a]]
            for alpha, (f, _) in self.cells2.items():
                if self.source1(f) == a and self.horizontal[(alpha, unit)] != alpha:
                    report.add(f"{alpha}*1 != {alpha}")
                if self.target1(f) == a and self.horizontal[(unit, alpha)] != alpha:
                    report.add(f"1*{alpha} != {alpha}")
        for (g, f), gf in self.compose1.items():
            if self.horizontal[(self.identity2[g], self.identity2[f])] != self.identity2[gf]:
                report.add(f"1_{g}*1_{f} != 1_{gf}")
        for (b2, b1), b in self.vertical.items():
            for (a2, a1), a in self.vertical.items():
                if self.source1(self.source2(b1)) != self.target1(self.source2(a1)):
                    continue
                left = self.horizontal[(b, a)]
                right = self.vertical.get((self.horizontal[(b2, a2)], self.horizontal[(b1, a1)]))
                if left != right:
                    report.add(f"interchange fails at ({b2}∘{b1})*({a2}∘{a1})")
        for gamma in self.cells2:
            for beta in self.cells2:
                if self.target1(self.source2(gamma)) != self.source1(self.source2(beta)):
                    continue
                for alpha in self.cells2:
                    if self.target1(self.source2(beta)) != self.source1(self.source2(alpha)):
                        continue
                    left = self.horizontal[(alpha, self.horizontal[(beta, gamma)])]
                    right = self.horizontal[(self.horizontal[(alpha, beta)], gamma)]
                    if left != right:
                        report.add(f"horizontal associativity fails at ({alpha}, {beta}, {gamma})")
        return report

    def co(self) -> "Fin2Category":
        """Reverse the 2-cells."""
        if self._co is None:
            name = self.name[:-3] if self.name.endswith("^co") else self.name + "^co"
            dual = Fin2Category(
                name,
                self.objects,
                self.cells1,
                {alpha: (g, f) for alpha, (f, g) in self.cells2.items()},
                self.identity1,
                self.identity2,
                self.compose1,
                {(alpha, beta): gamma for (beta, alpha), gamma in self.vertical.items()},
                self.horizontal,
                self.object_payloads,
                self.cell1_payloads,
                self.cell2_payloads,
            )
            dual._co = self
            self._co = dual
        return self._co

    def sub(self, objects: Iterable[str], cells1: Iterable[str], name: Optional[str] = None):
        """
        Locally full sub-2-category on the given objects and 1-cells; identities are added.

        Returns:
            Tuple[Fin2Category, TwoFunctor]: the sub-2-category and its inclusion.
        """
        keep_objects = set(objects)
        keep = set(cells1) | {self.identity1[a] for a in keep_objects}
        keep = {f for f in keep if self.source1(f) in keep_objects and self.target1(f) in keep_objects}
        ordered_cells = {f: st for f, st in self.cells1.items() if f in keep}
        cells2 = {alpha: st for alpha, st in self.cells2.items() if st[0] in keep and st[1] in keep}
        sub = Fin2Category(
            name or f"{self.name}|sub",
            [a for a in self.objects if a in keep_objects],
            ordered_cells,
            cells2,
            {a: self.identity1[a] for a in self.objects if a in keep_objects},
            {f: self.identity2[f] for f in ordered_cells},
            {(g, f): h for (g, f), h in self.compose1.items() if g in keep and f in keep},
            {(b, a): c for (b, a), c in self.vertical.items() if b in cells2 and a in cells2},
            {(b, a): c for (b, a), c in self.horizontal.items() if b in cells2 and a in cells2},
            self.object_payloads,
            self.cell1_payloads,
            self.cell2_payloads,
        )
        inclusion = TwoFunctor(
            sub,
            self,
            {a: a for a in sub.objects},
            {f: f for f in sub.cells1},
            {alpha: alpha for alpha in sub.cells2},
        )
        return sub, inclusion

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "objects": sorted(self.objects),
            "cells1": [
                {"id": f, "source": s, "target": t}
                for f, (s, t) in sorted(self.cells1.items())
                if not self.is_identity1(f)
            ],
            "cells2": [
                {"id": alpha, "source": f, "target": g}
                for alpha, (f, g) in sorted(self.cells2.items())
                if not self.is_identity2(alpha)
            ],
        }

    def __eq__(self, other):
        if not isinstance(other, Fin2Category):
            return False
        return self is other or (
            set(self.objects) == set(other.objects)
            and self.cells1 == other.cells1
            and self.cells2 == other.cells2
            and self.compose1 == other.compose1
            and self.vertical == other.vertical
            and self.horizontal == other.horizontal
        )

    def __hash__(self):
        return hash((tuple(sorted(self.objects)), len(self.cells1), len(self.cells2)))

    def __repr__(self):
        return f'Fin2Category(name="{self.name}", objects="{len(self.objects)}", cells1="{len(self.cells1)}", cells2="{len(self.cells2)}")'

    @classmethod
    def locally_discrete(cls, category: FinCategory, name: Optional[str] = None) -> "Fin2Category":
        identity2 = {f: identity_id(f) for f in category.morphisms}
        return cls(
            name or category.name,
            category.objects,
            dict(category.morphisms),
            {identity2[f]: (f, f) for f in category.morphisms},
            dict(category.identity),
            identity2,
            dict(category.compose_table),
            {(identity2[f], identity2[f]): identity2[f] for f in category.morphisms},
            {(identity2[g], identity2[f]): identity2[h] for (g, f), h in category.compose_table.items()},
            category.object_payloads,
            category.morphism_payloads,
        )

    @classmethod
    def terminal(cls) -> "Fin2Category":
        return cls.locally_discrete(FinCategory.terminal(), "1")

    @classmethod
    def build(
        cls,
        name: str,
        objects: Iterable[str],
        cells1: Dict[str, Tuple[str, str]],
        compose1: Optional[Dict[Tuple[str, str], str]] = None,
        cells2: Optional[Dict[str, Tuple[str, str]]] = None,
        vertical: Optional[Dict[Tuple[str, str], str]] = None,
        horizontal: Optional[Dict[Tuple[str, str], str]] = None,
    ) -> "Fin2Category":
        """
        Build from non-identity data; identities, unit composites and identity whiskers are implied.
        The result is not validated.
        """
        base = FinCategory.from_generators(name, objects, cells1, compose1)
        all_cells1 = dict(base.morphisms)
        identity2 = {f: identity_id(f) for f in all_cells1}
        all_cells2 = {identity2[f]: (f, f) for f in all_cells1}
        all_cells2.update(cells2 or {})
        vtable = {}
        for alpha, (f, g) in all_cells2.items():
            vtable[(identity2[g], alpha)] = alpha
            vtable[(alpha, identity2[f])] = alpha
        for (beta, alpha), gamma in (vertical or {}).items():
            vtable[(beta, alpha)] = gamma
        htable = {}
        for (g, f), h in base.compose_table.items():
            htable[(identity2[g], identity2[f])] = identity2[h]
        for alpha, (f, _) in all_cells2.items():
            s, t = all_cells1[f]
            htable[(alpha, identity2[base.identity[s]])] = alpha
            htable[(identity2[base.identity[t]], alpha)] = alpha
        for (beta, alpha), gamma in (horizontal or {}).items():
            htable[(beta, alpha)] = gamma
        return cls(name, base.objects, all_cells1, all_cells2, base.identity, identity2, base.compose_table, vtable, htable)


class TwoFunctor:
    """
    A strict 2-functor between finite 2-categories.
    """

    source: Fin2Category
    target: Fin2Category
    object_map: Dict[str, str]
    cell1_map: Dict[str, str]
    cell2_map: Dict[str, str]

    def __init__(
        self,
        source: Fin2Category,
        target: Fin2Category,
        object_map: Dict[str, str],
        cell1_map: Dict[str, str],
        cell2_map: Dict[str, str],
    ):
        self.source = source
        self.target = target
        self.object_map = object_map
        self.cell1_map = cell1_map
        self.cell2_map = cell2_map

    @property
    def key(self) -> Tuple:
        return (
            tuple(sorted(self.object_map.items())),
            tuple(sorted(self.cell1_map.items())),
            tuple(sorted(self.cell2_map.items())),
        )

    def compose(self, other: "TwoFunctor") -> "TwoFunctor":
        """Return self∘other."""
        return TwoFunctor(
            other.source,
            self.target,
            {x: self.object_map[y] for x, y in other.object_map.items()},
            {f: self.cell1_map[g] for f, g in other.cell1_map.items()},
            {a: self.cell2_map[b] for a, b in other.cell2_map.items()},
        )

    def co(self) -> "TwoFunctor":
        return TwoFunctor(self.source.co(), self.target.co(), self.object_map, self.cell1_map, self.cell2_map)

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"2-functor {self.source.name} -> {self.target.name}")
        src, tgt = self.source, self.target
        for f, (a, b) in src.cells1.items():
            image = self.cell1_map.get(f)
            if image not in tgt.cells1 or tgt.cells1[image] != (self.object_map.get(a), self.object_map.get(b)):
                report.add(f"1-cell {f} is not sent to a 1-cell of the right type")
        for alpha, (f, g) in src.cells2.items():
            image = self.cell2_map.get(alpha)
            if image not in tgt.cells2 or tgt.cells2[image] != (self.cell1_map.get(f), self.cell1_map.get(g)):
                report.add(f"2-cell {alpha} is not sent to a 2-cell of the right type")
        if not report.is_valid:
            return report
        for a in src.objects:
            if self.cell1_map[src.identity1[a]] != tgt.identity1[self.object_map[a]]:
                report.add(f"identity of {a} is not preserved")
        for f in src.cells1:
            if self.cell2_map[src.identity2[f]] != tgt.identity2[self.cell1_map[f]]:
                report.add(f"identity 2-cell of {f} is not preserved")
        for (g, f), h in src.compose1.items():
            if tgt.compose1.get((self.cell1_map[g], self.cell1_map[f])) != self.cell1_map[h]:
                report.add(f"composite {g}∘{f} is not preserved")
        for (b, a), c in src.vertical.items():
            if tgt.vertical.get((self.cell2_map[b], self.cell2_map[a])) != self.cell2_map[c]:
                report.add(f"vertical composite {b}∘{a} is not preserved")
        for (b, a), c in src.horizontal.items():
            if tgt.horizontal.get((self.cell2_map[b], self.cell2_map[a])) != self.cell2_map[c]:
                report.add(f"horizontal composite {b}*{a} is not preserved")
        return report

    def preserves(self, source_cells: Set[str], target_cells: Set[str]) -> Optional[str]:
        """The first 1-cell of `source_cells` not sent into `target_cells`, or None."""
        for f in self.source.cells1:
            if f in source_cells and self.cell1_map[f] not in target_cells:
                return f
        return None

    def __eq__(self, other):
        return isinstance(other, TwoFunctor) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'TwoFunctor(source="{self.source.name}", target="{self.target.name}")'

    @classmethod
    def identity(cls, category: Fin2Category) -> "TwoFunctor":
        return cls(
            category,
            category,
            {a: a for a in category.objects},
            {f: f for f in category.cells1},
            {alpha: alpha for alpha in category.cells2},
        )
