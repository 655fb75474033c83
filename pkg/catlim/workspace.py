import logging
from .diagram import CatValued2Functor
from .dotted import DottedFCategory
from .dsl import Definition, Field, Item, emit_definitions, parse_source
from .enhanced import FCategory, FWeight
from .exceptions import (
    ClosureViolation,
    DuplicateDefinition,
    InvalidCategory,
    TightnessViolation,
    UnresolvedReference,
    ValidationError,
)
from .fin_2category import Fin2Category
from .fin_category import FinCategory, ValidationReport
from .functor import Functor, NatTransformation
from .marked import MarkedTwoCategory
from .presentation import CatPresentation, PresentedCategory, saturate_presentation
from typing import Any, Callable, Dict, List, Tuple, TypeVar

_logger = logging.getLogger(__name__)

V = TypeVar("V")

# block kind -> attribute of Workspace holding its values
_STORES = {
    "category": "categories",
    "presentation": "categories",
    "functor": "functors",
    "natural": "naturals",
    "two_category": "two_categories",
    "diagram": "diagrams",
    "marked": "marked",
    "f_category": "f_categories",
    "f_weight": "f_weights",
    "dotted": "dotted",
}


def _close_under(known: Dict[str, V], table: Dict[Tuple[str, str], str], compose: Callable[[V, V], V]) -> None:
    """Assign table[(g, f)] the value compose(known[g], known[f]) until nothing new is reached."""
    grew = True
    while grew:
        grew = False
        for (g, f), h in table.items():
            if h not in known and g in known and f in known:
                known[h] = compose(known[g], known[f])
                grew = True


class Workspace:
    """
    The named definitions of one or more DSL files, each validated when it is loaded.

    Attributes:
        definitions (List[Definition]): The parsed blocks, in load order.
        spans (Dict[str, str]): Name -> "line:column" of its block.
        categories (Dict[str, FinCategory]): category and presentation blocks.
        functors (Dict[str, Functor]): functor blocks.
        naturals (Dict[str, NatTransformation]): natural blocks.
        two_categories (Dict[str, Fin2Category]): two_category blocks.
        diagrams (Dict[str, CatValued2Functor]): diagram blocks.
        marked (Dict[str, MarkedTwoCategory]): marked blocks.
        f_categories (Dict[str, FCategory]): f_category blocks.
        f_weights (Dict[str, FWeight]): f_weight blocks.
        dotted (Dict[str, DottedFCategory]): dotted blocks.
    """

    definitions: List[Definition]
    spans: Dict[str, str]
    categories: Dict[str, FinCategory]
    functors: Dict[str, Functor]
    naturals: Dict[str, NatTransformation]
    two_categories: Dict[str, Fin2Category]
    diagrams: Dict[str, CatValued2Functor]
    marked: Dict[str, MarkedTwoCategory]
    f_categories: Dict[str, FCategory]
    f_weights: Dict[str, FWeight]
    dotted: Dict[str, DottedFCategory]

    def __init__(self):
        self.definitions = []
        self.spans = {}
        self.kinds: Dict[str, str] = {}
        self.categories = {}
        self.functors = {}
        self.naturals = {}
        self.two_categories = {}
        self.diagrams = {}
        self.marked = {}
        self.f_categories = {}
        self.f_weights = {}
        self.dotted = {}
        # locally discrete 2-categories of category blocks, by category name
        self._discrete: Dict[str, Fin2Category] = {}
        # generator name -> 1-cell, for 2-categories built from presentations
        self._aliases: Dict[int, Dict[str, str]] = {}

    def __len__(self):
        return len(self.definitions)

    def __repr__(self):
        return f'Workspace(definitions="{len(self.definitions)}")'

    def get(self, kind: str, name: str) -> Any:
        """
        Raises:
            UnresolvedReference: `name` is not a definition of `kind`.
        """
        accepted = ("category", "presentation") if kind == "category" else (kind,)
        if self.kinds.get(name) not in accepted:
            found = f", it is a {self.kinds[name]}" if name in self.kinds else ""
            raise UnresolvedReference(f"{name} is not a defined {kind}{found}")
        return getattr(self, _STORES[kind])[name]

    def add(self, definition: Definition) -> None:
        """
        Validate a definition against those already loaded and register it.

        Raises:
            DuplicateDefinition: the name is taken.
            UnresolvedReference: the definition names something undefined.
            ValidationError: the definition breaks a law; the message starts with its span.
        """
        if definition.name in self.spans:
            raise DuplicateDefinition(definition.name, self.spans[definition.name], definition.span)
        loader = getattr(self, f"_load_{definition.kind}")
        try:
            value = loader(definition)
        except InvalidCategory as error:
            raise ValidationError(f"{definition.span}: {error}") from error
        except (ClosureViolation, TightnessViolation) as error:
            raise ValidationError(f"{definition.span}: {definition.name}: {error}") from error
        getattr(self, _STORES[definition.kind])[definition.name] = value
        self.spans[definition.name] = definition.span
        self.kinds[definition.name] = definition.kind
        self.definitions.append(definition)
        _logger.debug(f"Loaded {definition.kind} {definition.name}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "definitions": [
                {"name": definition.name, "kind": definition.kind, "span": definition.span}
                for definition in self.definitions
            ]
        }

    @classmethod
    def load(cls, definitions: List[Definition]) -> "Workspace":
        workspace = cls()
        for definition in definitions:
            workspace.add(definition)
        return workspace

    # Field access

    @staticmethod
    def _check(definition: Definition, report: ValidationReport) -> None:
        if not report.is_valid:
            raise ValidationError(f"{definition.span}: {report.subject}: {report.violations[0]}")

    @staticmethod
    def _require(definition: Definition, key: str) -> Field:
        field = definition.field(key)
        if field is None:
            raise ValidationError(f"{definition.span}: {definition.kind} {definition.name} needs a '{key}' field")
        return field

    @staticmethod
    def _items(definition: Definition, key: str, kind: str) -> List[Item]:
        field = definition.field(key)
        if field is None:
            return []
        for item in field.items:
            if item[0] != kind:
                raise ValidationError(f"{field.span}: '{key}' takes {kind} items, not {item[0]}")
        return field.items

    def _names(self, definition: Definition, key: str) -> List[str]:
        return [item[1] for item in self._items(definition, key, "name")]

    def _single(self, definition: Definition, key: str) -> str:
        field = self._require(definition, key)
        if len(field.items) != 1 or field.items[0][0] != "name":
            raise ValidationError(f"{field.span}: '{key}' takes exactly one name")
        return field.items[0][1]

    def _arrows(self, definition: Definition, key: str, arrow: str) -> Dict[str, Tuple[str, str]]:
        arrows = {}
        for item in self._items(definition, key, "typed"):
            if item[3] != arrow:
                raise ValidationError(f"{definition.span}: '{key}' uses {arrow}, found {item[3]} at {item[1]}")
            arrows[item[1]] = (item[2], item[4])
        return arrows

    def _table(self, definition: Definition, key: str, operator: str) -> Dict[Tuple[str, str], str]:
        table = {}
        for item in self._items(definition, key, "equation"):
            lhs, found, rhs = item[1], item[2], item[3]
            if found != operator or len(lhs) != 2 or len(rhs) != 1:
                raise ValidationError(
                    f"{definition.span}: '{key}' entries read a {operator} b = c, found {' '.join(lhs)} = {' '.join(rhs)}"
                )
            table[(lhs[0], lhs[1])] = rhs[0]
        return table

    # References

    def _base(self, definition: Definition, key: str = "base") -> Fin2Category:
        """A two_category, or the locally discrete 2-category of a category."""
        name = self._single(definition, key)
        if self.kinds.get(name) == "two_category":
            return self.two_categories[name]
        category = self.get("category", name)
        if name not in self._discrete:
            base = Fin2Category.locally_discrete(category, name)
            if isinstance(category, PresentedCategory):
                self._aliases[id(base)] = dict(category.generator_morphism)
            self._discrete[name] = base
        return self._discrete[name]

    def _cell1(self, base: Fin2Category, item: Item, where: str) -> str:
        aliases = self._aliases.get(id(base), {})

        def resolve(name: str) -> str:
            if name in base.cells1:
                return name
            if name in aliases:
                return aliases[name]
            raise UnresolvedReference(f"{where}: {name} is not a 1-cell of {base.name}")

        if item[0] == "name":
            return resolve(item[1])
        if item[0] == "path":
            cells = [resolve(name) for name in item[1]]
            result = cells[-1]
            for g in reversed(cells[:-1]):
                if (g, result) not in base.compose1:
                    raise ValidationError(f"{where}: {g} and {result} are not composable in {base.name}")
                result = base.compose(g, result)
            return result
        raise ValidationError(f"{where}: expected a 1-cell, found {item[0]}")

    def _cells1(self, definition: Definition, base: Fin2Category, key: str) -> List[str]:
        field = definition.field(key)
        if field is None:
            return []
        return [self._cell1(base, item, field.span) for item in field.items]

    @staticmethod
    def _morphism(category: FinCategory, word: Tuple[str, ...], source: str, where: str) -> str:
        """A morphism of `category` denoted by a path of morphism ids or generators; 1 is the identity at `source`."""
        aliases = category.generator_morphism if isinstance(category, PresentedCategory) else {}
        path = []
        for name in word:
            if name == "1":
                path.append(category.identity[source])
            elif name in category.morphisms:
                path.append(name)
            elif name in aliases:
                path.append(aliases[name])
            else:
                raise UnresolvedReference(f"{where}: {name} is not a morphism of {category.name}")
        try:
            return category.compose_path(*path)
        except ValueError as error:
            raise ValidationError(f"{where}: {error}") from error

    # Loaders, one per block kind

    def _load_category(self, definition: Definition) -> FinCategory:
        category = FinCategory.from_generators(
            definition.name,
            self._names(definition, "objects"),
            self._arrows(definition, "morphisms", "->"),
            self._table(definition, "compose", "."),
        )
        self._check(definition, category.validate())
        return category

    def _load_presentation(self, definition: Definition) -> PresentedCategory:
        relations = []
        for item in self._items(definition, "relations", "equation"):
            lhs = tuple(g for g in item[1] if g != "1")
            rhs = tuple(g for g in item[3] if g != "1")
            relations.append((lhs, rhs))
        bound = None
        if definition.field("bound") is not None:
            text = self._single(definition, "bound")
            if not text.isdigit():
                raise ValidationError(f"{definition.span}: bound must be a number, not {text}")
            bound = int(text)
        presentation = CatPresentation(
            definition.name,
            self._names(definition, "objects"),
            self._arrows(definition, "generators", "->"),
            relations,
            closure_bound=bound,
        )
        self._check(definition, presentation.validate())
        category = saturate_presentation(presentation)
        _logger.debug(f"Saturated {definition.name} to {len(category.morphisms)} morphisms")
        return category

    def _load_functor(self, definition: Definition) -> Functor:
        source = self.get("category", self._single(definition, "source"))
        target = self.get("category", self._single(definition, "target"))
        object_map = {}
        for item in self._items(definition, "objects", "map"):
            if item[1] not in source.identity or len(item[2]) != 1 or item[2][0] not in target.identity:
                raise ValidationError(f"{definition.span}: {item[1]} -> {' . '.join(item[2])} is not a map of objects")
            object_map[item[1]] = item[2][0]
        missing = [x for x in source.objects if x not in object_map]
        if missing:
            raise ValidationError(f"{definition.span}: functor {definition.name} has no value at {missing[0]}")
        aliases = source.generator_morphism if isinstance(source, PresentedCategory) else {}
        morphism_map = {source.identity[x]: target.identity[object_map[x]] for x in source.objects}
        for item in self._items(definition, "morphisms", "map"):
            f = aliases.get(item[1], item[1])
            if f not in source.morphisms:
                raise UnresolvedReference(f"{definition.span}: {item[1]} is not a morphism of {source.name}")
            morphism_map[f] = self._morphism(target, item[2], object_map[source.source(f)], definition.span)
        _close_under(morphism_map, source.compose_table, target.compose)
        missing = [f for f in source.morphisms if f not in morphism_map]
        if missing:
            raise ValidationError(f"{definition.span}: functor {definition.name} has no value at {missing[0]}")
        functor = Functor(source, target, object_map, morphism_map)
        self._check(definition, functor.validate())
        return functor

    def _load_natural(self, definition: Definition) -> NatTransformation:
        source = self.get("functor", self._single(definition, "source"))
        target = self.get("functor", self._single(definition, "target"))
        if source.source is not target.source or source.target is not target.target:
            raise ValidationError(f"{definition.span}: {definition.name} relates functors of different types")
        category = source.target
        components = {}
        for item in self._items(definition, "components", "map"):
            if item[1] not in source.source.identity:
                raise UnresolvedReference(f"{definition.span}: {item[1]} is not an object of {source.source.name}")
            components[item[1]] = self._morphism(category, item[2], source.on_object(item[1]), definition.span)
        nat = NatTransformation(source, target, components)
        self._check(definition, nat.validate())
        return nat

    def _load_two_category(self, definition: Definition) -> Fin2Category:
        if definition.field("from") is not None:
            category = self.get("category", self._single(definition, "from"))
            base = Fin2Category.locally_discrete(category, definition.name)
            if isinstance(category, PresentedCategory):
                self._aliases[id(base)] = dict(category.generator_morphism)
            return base
        base = Fin2Category.build(
            definition.name,
            self._names(definition, "objects"),
            self._arrows(definition, "cells", "->"),
            self._table(definition, "compose", "."),
            self._arrows(definition, "two_cells", "=>"),
            self._table(definition, "vertical", "."),
            self._table(definition, "horizontal", "*"),
        )
        self._check(definition, base.validate())
        return base

    def _load_diagram(self, definition: Definition) -> CatValued2Functor:
        base = self._base(definition)
        aliases = self._aliases.get(id(base), {})
        on_objects: Dict[str, FinCategory] = {}
        on_cells1: Dict[str, Functor] = {}
        on_cells2: Dict[str, NatTransformation] = {}
        for field in definition.labelled("on"):
            label = aliases.get(field.label, field.label)
            if len(field.items) != 1 or field.items[0][0] != "name":
                raise ValidationError(f"{field.span}: 'on {field.label}' takes exactly one name")
            value = field.items[0][1]
            if label in base.objects:
                on_objects[label] = self.get("category", value)
            elif label in base.cells1:
                on_cells1[label] = self.get("functor", value)
            elif label in base.cells2:
                on_cells2[label] = self.get("natural", value)
            else:
                raise UnresolvedReference(f"{field.span}: {field.label} is not a cell of {base.name}")
        missing = [d for d in base.objects if d not in on_objects]
        if missing:
            raise ValidationError(f"{definition.span}: diagram {definition.name} has no value at {missing[0]}")
        for d, f in base.identity1.items():
            on_cells1.setdefault(f, Functor.identity(on_objects[d]))
        _close_under(on_cells1, base.compose1, lambda g, f: g.compose(f))
        missing = [f for f in base.cells1 if f not in on_cells1]
        if missing:
            raise ValidationError(f"{definition.span}: diagram {definition.name} has no value at {missing[0]}")
        for f, alpha in base.identity2.items():
            on_cells2.setdefault(alpha, NatTransformation.identity(on_cells1[f]))
        _close_under(on_cells2, base.vertical, lambda b, a: b.compose(a))
        _close_under(on_cells2, base.horizontal, lambda b, a: b.horizontal(a))
        missing = [alpha for alpha in base.cells2 if alpha not in on_cells2]
        if missing:
            raise ValidationError(f"{definition.span}: diagram {definition.name} has no value at {missing[0]}")
        diagram = CatValued2Functor(definition.name, base, on_objects, on_cells1, on_cells2)
        self._check(definition, diagram.validate())
        return diagram

    def _load_marked(self, definition: Definition) -> MarkedTwoCategory:
        base = self._base(definition)
        marked = MarkedTwoCategory(base, self._cells1(definition, base, "sigma"), definition.name)
        self._check(definition, marked.validate())
        return marked

    def _load_f_category(self, definition: Definition) -> FCategory:
        base = self._base(definition)
        fcategory = FCategory(base, self._cells1(definition, base, "tight"), definition.name)
        self._check(definition, fcategory.validate())
        return fcategory

    def _load_f_weight(self, definition: Definition) -> FWeight:
        base = self.get("f_category", self._single(definition, "base"))
        diagram = self.get("diagram", self._single(definition, "lambda"))
        if diagram.source is not base.loose:
            raise ValidationError(f"{definition.span}: {diagram.name} is not indexed by the loose part of {base.name}")
        tight_objects = {}
        for field in definition.labelled("tau"):
            if field.label not in base.loose.objects:
                raise UnresolvedReference(f"{field.span}: {field.label} is not an object of {base.name}")
            value = diagram.value(field.label)
            for x in field.names:
                if x not in value.identity:
                    raise UnresolvedReference(f"{field.span}: {x} is not an object of {value.name}")
            tight_objects[field.label] = field.names
        weight = FWeight.from_tight_objects(base, diagram, tight_objects, definition.name)
        self._check(definition, weight.validate())
        return weight

    def _load_dotted(self, definition: Definition) -> DottedFCategory:
        base = self.get("f_category", self._single(definition, "base"))
        sigma = self._cells1(definition, base.loose, "sigma")
        dotted_objects = self._names(definition, "dotted")
        unknown = [x for x in dotted_objects if x not in base.loose.objects]
        if unknown:
            raise UnresolvedReference(f"{definition.span}: {unknown[0]} is not an object of {base.name}")
        dotted = DottedFCategory(base, sigma, dotted_objects, definition.name)
        self._check(definition, dotted.validate())
        return dotted


def parse(source: str) -> Workspace:
    """
    Parse DSL text into a validated workspace.

    Raises:
        DSLSyntaxError: the text does not parse; carries line and column.
        DuplicateDefinition: a name is defined twice.
        UnresolvedReference: a definition names something undefined.
        ValidationError: a definition breaks a law.
        ClosureOverflow: a presentation saturates past its bound.
    """
    return Workspace.load(parse_source(source))


def parse_file(path: str) -> Workspace:
    with open(path, encoding="utf-8") as file:
        return parse(file.read())


def emit(workspace: Workspace) -> str:
    """DSL text that parses back to the same definitions."""
    return emit_definitions(workspace.definitions)
