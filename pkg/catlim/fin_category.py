import logging
from .exceptions import InvalidCategory
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple

_logger = logging.getLogger(__name__)


def pair_id(*parts: Any) -> str:
    """Deterministic id of a tuple of ids, e.g. <f|x>."""
    return "<" + "|".join(str(part) for part in parts) + ">"


def identity_id(obj: str) -> str:
    return f"1_{obj}"


class ValidationReport:
    """
    Collects law violations of a category-like structure.

    Attributes:
        subject (str): Name of the validated structure.
        violations (List[str]): Human-readable violations, in discovery order.
    """

    subject: str
    violations: List[str]

    def __init__(self, subject: str, violations: Optional[List[str]] = None):
        self.subject = subject
        self.violations = violations if violations is not None else []

    @property
    def is_valid(self) -> bool:
        return len(self.violations) == 0

    def add(self, message: str) -> None:
        self.violations.append(message)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for violation in other.violations:
            self.violations.append(prefix + violation)

    def raise_if_invalid(self) -> None:
        if not self.is_valid:
            raise InvalidCategory(self)

    def to_dict(self) -> Dict[str, Any]:
        return {"subject": self.subject, "valid": self.is_valid, "violations": list(self.violations)}

    def __repr__(self):
        return f'ValidationReport(subject="{self.subject}", violations="{self.violations}")'


class FinCategory:
    """
    A finite category given by explicit tables.

    Attributes:
        name (str): Display name.
        objects (List[str]): Object ids, in a fixed order.
        morphisms (Dict[str, Tuple[str, str]]): Morphism id -> (source, target). Identities included.
        identity (Dict[str, str]): Object -> its identity morphism.
        compose_table (Dict[Tuple[str, str], str]): (g, f) -> g∘f for every composable pair.
        object_payloads (Dict[str, Hashable]): Optional structured value behind each object id.
        morphism_payloads (Dict[str, Hashable]): Optional structured value behind each morphism id.
    """

    name: str
    objects: List[str]
    morphisms: Dict[str, Tuple[str, str]]
    identity: Dict[str, str]
    compose_table: Dict[Tuple[str, str], str]
    object_payloads: Dict[str, Hashable]
    morphism_payloads: Dict[str, Hashable]

    def __init__(
        self,
        name: str,
        objects: Iterable[str],
        morphisms: Dict[str, Tuple[str, str]],
        identity: Dict[str, str],
        compose_table: Dict[Tuple[str, str], str],
        object_payloads: Optional[Dict[str, Hashable]] = None,
        morphism_payloads: Optional[Dict[str, Hashable]] = None,
    ):
        self.name = name
        self.objects = list(objects)
        self.morphisms = dict(morphisms)
        self.identity = dict(identity)
        self.compose_table = dict(compose_table)
        self.object_payloads = dict(object_payloads) if object_payloads else {}
        self.morphism_payloads = dict(morphism_payloads) if morphism_payloads else {}
        self._hom: Optional[Dict[Tuple[str, str], List[str]]] = None
        self._object_index: Optional[Dict[Hashable, str]] = None
        self._morphism_index: Optional[Dict[Hashable, str]] = None
        self._identities: Optional[set] = None
        self._opposite: Optional["FinCategory"] = None

    def source(self, f: str) -> str:
        return self.morphisms[f][0]

    def target(self, f: str) -> str:
        return self.morphisms[f][1]

    def is_identity(self, f: str) -> bool:
        if self._identities is None:
            self._identities = set(self.identity.values())
        return f in self._identities

    def compose(self, g: str, f: str) -> str:
        """Return g∘f. Raises ValueError if the pair is not composable."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise ValueError(f"{g} and {f} are not composable in {self.name}") from None

    def compose_path(self, *path: str) -> str:
        """Compose a path written in composition order: compose_path(h, g, f) = h∘g∘f."""
        result = path[-1]
        for g in reversed(path[:-1]):
            result = self.compose(g, result)
        return result

    def hom(self, a: str, b: str) -> List[str]:
        if self._hom is None:
            self._hom = {}
            for f, (s, t) in self.morphisms.items():
                self._hom.setdefault((s, t), []).append(f)
        return self._hom.get((a, b), [])

    def out_of(self, a: str) -> List[str]:
        return [f for f, (s, _) in self.morphisms.items() if s == a]

    def object_payload(self, x: str) -> Hashable:
        return self.object_payloads.get(x, x)

    def morphism_payload(self, f: str) -> Hashable:
        return self.morphism_payloads.get(f, f)

    def find_object(self, payload: Hashable) -> Optional[str]:
        if self._object_index is None:
            self._object_index = {self.object_payload(x): x for x in self.objects}
        return self._object_index.get(payload)

    def find_morphism(self, payload: Hashable) -> Optional[str]:
        if self._morphism_index is None:
            self._morphism_index = {self.morphism_payload(f): f for f in self.morphisms}
        return self._morphism_index.get(payload)

    def validate(self) -> ValidationReport:
        """Check well-typedness, totality of composition, the unit laws and associativity."""
        report = ValidationReport(self.name)
        known = set(self.objects)
        if len(known) != len(self.objects):
            report.add("duplicate object ids")

        for f, (s, t) in self.morphisms.items():
            if s not in known or t not in known:
                report.add(f"{f}: {s} -> {t} has an unknown endpoint")

        for a in self.objects:
            unit = self.identity.get(a)
            if unit is None:
                report.add(f"missing identity of {a}")
            elif self.morphisms.get(unit) != (a, a):
                report.add(f"identity {unit} of {a} is not an endomorphism of {a}")

        typed: Dict[Tuple[str, str], str] = {}
        for (g, f), h in self.compose_table.items():
            if g not in self.morphisms or f not in self.morphisms:
                report.add(f"composite {g}∘{f} names an unknown morphism")
            elif self.source(g) != self.target(f):
                report.add(f"composite {g}∘{f} is defined on a non-composable pair")
            elif self.morphisms.get(h) != (self.source(f), self.target(g)):
                report.add(f"composite {g}∘{f} = {h} has the wrong type")
            else:
                typed[(g, f)] = h

        by_source: Dict[str, List[str]] = {}
        for f, (s, _) in self.morphisms.items():
            by_source.setdefault(s, []).append(f)

        for f, (s, t) in self.morphisms.items():
            for g in by_source.get(t, []):
                if (g, f) not in self.compose_table:
                    report.add(f"totality gap: {g}∘{f} is undefined")
            if t in self.identity and self.compose_table.get((self.identity[t], f)) != f:
                report.add(f"left unit law fails at {f}")
            if s in self.identity and self.compose_table.get((f, self.identity[s])) != f:
                report.add(f"right unit law fails at {f}")

        # only triples whose four composites are defined and well-typed
        for f, (_, t) in self.morphisms.items():
            for g in by_source.get(t, []):
                gf = typed.get((g, f))
                if gf is None:
                    continue
                for h in by_source.get(self.target(g), []):
                    hg = typed.get((h, g))
                    if hg is None or (h, gf) not in typed or (hg, f) not in typed:
                        continue
                    if typed[(h, gf)] != typed[(hg, f)]:
                        report.add(f"associativity fails at ({h}, {g}, {f})")
        return report

    def opposite(self) -> "FinCategory":
        if self._opposite is None:
            name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
            flipped = FinCategory(
                name,
                self.objects,
                {f: (t, s) for f, (s, t) in self.morphisms.items()},
                self.identity,
                {(f, g): h for (g, f), h in self.compose_table.items()},
                self.object_payloads,
                self.morphism_payloads,
            )
            flipped._opposite = self
            self._opposite = flipped
        return self._opposite

    def full_subcategory(self, objects: Iterable[str], name: Optional[str] = None) -> "FinCategory":
        """Full subcategory on `objects`, keeping ids, payloads and the ambient object order."""
        keep = set(objects)
        ordered = [x for x in self.objects if x in keep]
        morphisms = {f: st for f, st in self.morphisms.items() if st[0] in keep and st[1] in keep}
        return FinCategory(
            name or f"{self.name}|{len(ordered)}",
            ordered,
            morphisms,
            {x: self.identity[x] for x in ordered},
            {(g, f): h for (g, f), h in self.compose_table.items() if g in morphisms and f in morphisms},
            {x: p for x, p in self.object_payloads.items() if x in keep},
            {f: p for f, p in self.morphism_payloads.items() if f in morphisms},
        )

    def is_terminal(self) -> bool:
        return len(self.objects) == 1 and len(self.morphisms) == 1

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form with stable ordering."""
        morphisms = sorted(self.morphisms.items(), key=lambda item: (item[1][0], item[1][1], item[0]))
        return {
            "name": self.name,
            "objects": sorted(self.objects),
            "morphisms": [
                {"id": f, "source": s, "target": t, "identity": self.is_identity(f)}
                for f, (s, t) in morphisms
            ],
            "compose": [
                {"after": g, "before": f, "composite": h}
                for (g, f), h in sorted(self.compose_table.items())
                if not self.is_identity(g) and not self.is_identity(f)
            ],
        }

    def _tables(self):
        return (set(self.objects), self.morphisms, self.identity, self.compose_table)

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return False
        return self is other or self._tables() == other._tables()

    def __hash__(self):
        return hash((len(self.objects), len(self.morphisms), tuple(sorted(self.objects))))

    def __repr__(self):
        return f'FinCategory(name="{self.name}", objects="{len(self.objects)}", morphisms="{len(self.morphisms)}")'

    @classmethod
    def from_generators(
        cls,
        name: str,
        objects: Iterable[str],
        arrows: Dict[str, Tuple[str, str]],
        composites: Optional[Dict[Tuple[str, str], str]] = None,
    ) -> "FinCategory":
        """
        Build a category whose identities are implicit.

        Parameters:
            arrows (Dict[str, Tuple[str, str]]): Every non-identity morphism.
            composites (Dict[Tuple[str, str], str]): g∘f for composable non-identity pairs.
                An identity result may be written as "1" or as the identity id.
        Returns:
            An unvalidated FinCategory. Call validate() to find totality gaps.
        """
        objects = list(objects)
        identity = {a: identity_id(a) for a in objects}
        morphisms = {identity[a]: (a, a) for a in objects}
        morphisms.update(arrows)
        table: Dict[Tuple[str, str], str] = {}
        for f, (s, t) in morphisms.items():
            table[(identity[t], f)] = f
            table[(f, identity[s])] = f
        for (g, f), h in (composites or {}).items():
            if h == "1" and f in morphisms:
                h = identity[morphisms[f][0]]
            table[(g, f)] = h
        return cls(name, objects, morphisms, identity, table)

    @classmethod
    def terminal(cls) -> "FinCategory":
        return cls.ordinal(0)

    @classmethod
    def empty(cls) -> "FinCategory":
        return cls("0", [], {}, {}, {})

    @classmethod
    def ordinal(cls, n: int) -> "FinCategory":
        """The chain [n] = {0 < 1 < ... < n}; the morphism i <= j is called "i->j"."""
        objects = [str(i) for i in range(n + 1)]

        def arrow(i: int, j: int) -> str:
            return identity_id(str(i)) if i == j else f"{i}->{j}"

        morphisms = {arrow(i, j): (str(i), str(j)) for i in range(n + 1) for j in range(i, n + 1)}
        table = {
            (arrow(j, k), arrow(i, j)): arrow(i, k)
            for i in range(n + 1)
            for j in range(i, n + 1)
            for k in range(j, n + 1)
        }
        return cls(f"[{n}]", objects, morphisms, {x: identity_id(x) for x in objects}, table)

    @classmethod
    def discrete(cls, objects: Iterable[str], name: str = "discrete") -> "FinCategory":
        objects = list(objects)
        return cls.from_generators(name, objects, {})

    @classmethod
    def product(cls, a: "FinCategory", b: "FinCategory", name: Optional[str] = None) -> "FinCategory":
        objects = [pair_id(x, y) for x in a.objects for y in b.objects]
        object_payloads = {pair_id(x, y): (x, y) for x in a.objects for y in b.objects}
        morphisms = {}
        morphism_payloads = {}
        for f, (s, t) in a.morphisms.items():
            for g, (u, v) in b.morphisms.items():
                morphisms[pair_id(f, g)] = (pair_id(s, u), pair_id(t, v))
                morphism_payloads[pair_id(f, g)] = (f, g)
        identity = {pair_id(x, y): pair_id(a.identity[x], b.identity[y]) for x in a.objects for y in b.objects}
        table = {
            (pair_id(f2, g2), pair_id(f1, g1)): pair_id(f, g)
            for (f2, f1), f in a.compose_table.items()
            for (g2, g1), g in b.compose_table.items()
        }
        return cls(name or f"{a.name}×{b.name}", objects, morphisms, identity, table, object_payloads, morphism_payloads)

    @classmethod
    def coproduct(cls, name: str, parts: List["FinCategory"]) -> "FinCategory":
        """Disjoint union of categories whose ids are already disjoint."""
        objects: List[str] = []
        morphisms: Dict[str, Tuple[str, str]] = {}
        identity: Dict[str, str] = {}
        table: Dict[Tuple[str, str], str] = {}
        object_payloads: Dict[str, Hashable] = {}
        morphism_payloads: Dict[str, Hashable] = {}
        for part in parts:
            clash = set(part.objects).intersection(objects)
            if clash:
                raise ValueError(f"coproduct parts share object ids {sorted(clash)}")
            objects.extend(part.objects)
            morphisms.update(part.morphisms)
            identity.update(part.identity)
            table.update(part.compose_table)
            object_payloads.update({x: part.object_payload(x) for x in part.objects})
            morphism_payloads.update({f: part.morphism_payload(f) for f in part.morphisms})
        return cls(name, objects, morphisms, identity, table, object_payloads, morphism_payloads)

    @classmethod
    def from_tables(cls, name: str, objects, morphisms, identity, compose_table) -> "FinCategory":
        """Build and validate; raises InvalidCategory."""
        category = cls(name, objects, morphisms, identity, compose_table)
        category.validate().raise_if_invalid()
        return category


def validate_category(category: FinCategory) -> ValidationReport:
    """Every violated category law of `category`; raise_if_invalid() turns the report into InvalidCategory."""
    report = category.validate()
    if not report.is_valid:
        _logger.debug(f"{category.name} failed validation with {len(report.violations)} violations")
    return report
