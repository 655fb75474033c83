import logging
from .exceptions import ClosureOverflow, ValidationError
from .fin_category import FinCategory, ValidationReport, identity_id
from .settings import Settings
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, TypeVar

_logger = logging.getLogger(__name__)

Word = Tuple[str, ...]
V = TypeVar("V")


class CatPresentation:
    """
    Generators and relations of a category.

    Words are tuples of generator ids in composition order: ("g", "f") means g∘f.
    The empty word is the identity of the object it is read at.

    Attributes:
        name (str): Display name.
        objects (List[str]): Object ids.
        generators (Dict[str, Tuple[str, str]]): Generator id -> (source, target).
        relations (List[Tuple[Word, Word, str]]): (lhs, rhs, source object).
        closure_bound (Optional[int]): Overrides Settings.max_morphisms.
    """

    name: str
    objects: List[str]
    generators: Dict[str, Tuple[str, str]]
    relations: List[Tuple[Word, Word, str]]
    closure_bound: Optional[int]

    def __init__(
        self,
        name: str,
        objects: Iterable[str],
        generators: Dict[str, Tuple[str, str]],
        relations: Iterable[Sequence] = (),
        closure_bound: Optional[int] = None,
        generator_payloads: Optional[Dict[str, Hashable]] = None,
        object_payloads: Optional[Dict[str, Hashable]] = None,
    ):
        """Raises ValidationError when a relation side names an unknown generator."""
        self.name = name
        self.objects = list(objects)
        self.generators = dict(generators)
        self.closure_bound = closure_bound
        self.generator_payloads = dict(generator_payloads) if generator_payloads else {}
        self.object_payloads = dict(object_payloads) if object_payloads else {}
        self.relations = []
        for relation in relations:
            lhs, rhs = tuple(relation[0]), tuple(relation[1])
            if lhs == rhs:
                continue
            source = relation[2] if len(relation) > 2 else None
            if source is None:
                source = self.word_type(lhs or rhs)[0] if (lhs or rhs) else None
            self.relations.append((lhs, rhs, source))

    def word_type(self, word: Word) -> Tuple[str, str]:
        """(source, target) of a non-empty well-typed word; raises ValidationError otherwise."""
        if not word:
            raise ValidationError("the empty word has no intrinsic type")
        for g in word:
            if g not in self.generators:
                raise ValidationError(f"unknown generator {g} in {self.name}")
        for later, earlier in zip(word, word[1:]):
            if self.generators[later][0] != self.generators[earlier][1]:
                raise ValidationError(f"{later}∘{earlier} is not composable in {self.name}")
        return self.generators[word[-1]][0], self.generators[word[0]][1]

    def validate(self) -> ValidationReport:
        report = ValidationReport(self.name)
        known = set(self.objects)
        for g, (s, t) in self.generators.items():
            if s not in known or t not in known:
                report.add(f"generator {g}: {s} -> {t} has an unknown endpoint")
        if not report.is_valid:
            return report
        for lhs, rhs, source in self.relations:
            try:
                types = [self.word_type(w) for w in (lhs, rhs) if w]
            except ValidationError as error:
                report.add(str(error))
                continue
            if source not in known:
                report.add(f"relation {lhs} = {rhs} is read at an unknown object")
                continue
            if not lhs or not rhs:
                types.append((source, source))
            if any(t != types[0] for t in types) or types[0][0] != source:
                report.add(f"relation {lhs} = {rhs} relates morphisms of different types")
        return report

    def __repr__(self):
        return f'CatPresentation(name="{self.name}", generators="{len(self.generators)}", relations="{len(self.relations)}")'


class PresentedCategory(FinCategory):
    """
    The saturation of a presentation. Morphism payloads are the representative words.
    """

    presentation: CatPresentation
    generator_morphism: Dict[str, str]

    def __init__(self, presentation: CatPresentation, generator_morphism: Dict[str, str], *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.presentation = presentation
        self.generator_morphism = generator_morphism

    def word(self, f: str) -> Word:
        return self.morphism_payload(f)

    def evaluate(self, word: Word, source: Optional[str] = None) -> str:
        """The morphism denoted by `word`; `source` is needed for the empty word."""
        if not word:
            if source is None:
                raise ValidationError("evaluating the empty word needs a source object")
            return self.identity[source]
        result = self.generator_morphism[word[-1]]
        for g in reversed(word[:-1]):
            result = self.compose(self.generator_morphism[g], result)
        if source is not None and self.source(result) != source:
            raise ValidationError(f"word {word} does not start at {source}")
        return result

    def interpret(
        self,
        f: str,
        generator_image: Callable[[str], V],
        compose: Callable[[V, V], V],
        identity: Callable[[str], V],
    ) -> V:
        """Fold the representative word of `f` through an interpretation of the generators."""
        word = self.word(f)
        if not word:
            return identity(self.source(f))
        result = generator_image(word[-1])
        for g in reversed(word[:-1]):
            result = compose(generator_image(g), result)
        return result


def map_word(word: Word, image: Callable[[str], Word]) -> Word:
    """Substitute a word for each generator, keeping composition order."""
    result: Tuple[str, ...] = ()
    for g in word:
        result = result + tuple(image(g))
    return result


class _CosetTable:
    """Todd-Coxeter style enumeration of morphisms under post-composition by generators."""

    def __init__(self, presentation: CatPresentation, bound: int):
        self.presentation = presentation
        self.bound = bound
        self.parent: List[int] = []
        self.source: List[str] = []
        self.target: List[str] = []
        self.words: List[Word] = []
        self.edges: List[Dict[str, int]] = []
        self.live = 0

    def new_node(self, source: str, target: str, word: Word) -> int:
        node = len(self.parent)
        self.parent.append(node)
        self.source.append(source)
        self.target.append(target)
        self.words.append(word)
        self.edges.append({})
        self.live += 1
        if self.live > self.bound:
            raise ClosureOverflow(self.presentation.name, self.bound, self.live)
        return node

    def find(self, node: int) -> int:
        root = node
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[node] != root:
            self.parent[node], node = root, self.parent[node]
        return root

    def successor(self, node: int, generator: str, define: bool = True) -> int:
        node = self.find(node)
        nxt = self.edges[node].get(generator)
        if nxt is None:
            if not define:
                raise ValidationError(f"saturation of {self.presentation.name} is incomplete")
            nxt = self.new_node(
                self.source[node],
                self.presentation.generators[generator][1],
                (generator,) + self.words[node],
            )
            self.edges[node][generator] = nxt
        return self.find(nxt)

    def trace(self, node: int, word: Word, define: bool = True) -> int:
        for generator in reversed(word):
            node = self.successor(node, generator, define)
        return node

    def merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            x, y = pending.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            self.live -= 1
            for generator, nxt in self.edges[y].items():
                existing = self.edges[x].get(generator)
                if existing is None:
                    self.edges[x][generator] = nxt
                else:
                    pending.append((existing, nxt))
            self.edges[y] = {}


def saturate_presentation(presentation: CatPresentation, bound: Optional[int] = None) -> PresentedCategory:
    """
    Compute the category presented by generators and relations.

    Parameters:
        presentation (CatPresentation): Must validate.
        bound (int): Maximum number of live morphisms. Defaults to the presentation's own bound,
            then to Settings.max_morphisms.
    Returns:
        PresentedCategory whose morphism ids are the dotted representative words, e.g. "p.s",
        and whose identities are "1_{object}".
    Raises:
        ValidationError: the presentation is ill-typed.
        ClosureOverflow: more than `bound` morphisms are reachable.
    """
    report = presentation.validate()
    if not report.is_valid:
        raise ValidationError("; ".join(report.violations))
    if bound is None:
        bound = presentation.closure_bound
    bound = Settings.closure_bound(bound)

    table = _CosetTable(presentation, bound)
    unit_node = {obj: table.new_node(obj, obj, ()) for obj in presentation.objects}
    generators_from: Dict[str, List[str]] = {obj: [] for obj in presentation.objects}
    for g, (s, _) in presentation.generators.items():
        generators_from[s].append(g)
    relations_at: Dict[str, List[Tuple[Word, Word]]] = {obj: [] for obj in presentation.objects}
    for lhs, rhs, source in presentation.relations:
        if lhs != rhs:
            relations_at[source].append((lhs, rhs))

    cursor = 0
    while cursor < len(table.parent):
        node = cursor
        cursor += 1
        if table.parent[node] != node:
            continue
        for lhs, rhs in relations_at[table.target[node]]:
            table.merge(table.trace(node, lhs), table.trace(node, rhs))
            if table.parent[node] != node:
                break
        if table.parent[node] != node:
            continue
        for g in generators_from[table.target[node]]:
            table.successor(node, g)

    live = [n for n in range(len(table.parent)) if table.parent[n] == n]
    _logger.debug(f"{presentation.name} saturated to {len(live)} morphisms from {len(table.parent)} nodes")

    def node_id(node: int) -> str:
        word = table.words[node]
        return identity_id(table.source[node]) if not word else ".".join(word)

    ids = {n: node_id(n) for n in live}
    morphisms = {ids[n]: (table.source[n], table.target[n]) for n in live}
    payloads = {ids[n]: table.words[n] for n in live}
    compose_table = {}
    by_source: Dict[str, List[int]] = {}
    for n in live:
        by_source.setdefault(table.source[n], []).append(n)
    for f in live:
        for g in by_source.get(table.target[f], []):
            compose_table[(ids[g], ids[f])] = ids[table.find(table.trace(f, table.words[g], define=False))]
    generator_morphism = {
        g: ids[table.find(table.successor(unit_node[s], g, define=False))]
        for g, (s, _) in presentation.generators.items()
    }
    return PresentedCategory(
        presentation,
        generator_morphism,
        presentation.name,
        presentation.objects,
        morphisms,
        {obj: ids[table.find(unit_node[obj])] for obj in presentation.objects},
        compose_table,
        presentation.object_payloads,
        payloads,
    )


class PresentationBuilder:
    """
    Assembles a presentation whose objects are keyed by payloads and may be identified.

    Each identification class is represented by its earliest-added member.
    """

    def __init__(self, name: str):
        self.name = name
        self._order: Dict[Hashable, int] = {}
        self._ids: Dict[Hashable, str] = {}
        self._payloads: List[Hashable] = []
        self._parent: Dict[Hashable, Hashable] = {}
        self.generators: Dict[str, Tuple[Hashable, Hashable]] = {}
        self.generator_payloads: Dict[str, Hashable] = {}
        self.relations: List[Tuple[Word, Word, Hashable]] = []

    def add_object(self, payload: Hashable, object_id: str) -> None:
        if payload in self._order:
            return
        self._order[payload] = len(self._payloads)
        self._ids[payload] = object_id
        self._payloads.append(payload)
        self._parent[payload] = payload

    def has_object(self, payload: Hashable) -> bool:
        return payload in self._order

    def _find(self, payload: Hashable) -> Hashable:
        root = payload
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[payload] != root:
            self._parent[payload], payload = root, self._parent[payload]
        return root

    def identify(self, a: Hashable, b: Hashable) -> None:
        a, b = self._find(a), self._find(b)
        if a == b:
            return
        if self._order[b] < self._order[a]:
            a, b = b, a
        self._parent[b] = a

    def representative(self, payload: Hashable) -> Hashable:
        return self._find(payload)

    def class_of(self, payload: Hashable) -> str:
        """Object id of the class containing `payload`."""
        return self._ids[self._find(payload)]

    def add_generator(self, generator: str, source: Hashable, target: Hashable, payload: Hashable = None) -> None:
        self.generators[generator] = (source, target)
        self.generator_payloads[generator] = payload if payload is not None else generator

    def add_relation(self, lhs: Word, rhs: Word, source: Hashable) -> None:
        if tuple(lhs) != tuple(rhs):
            self.relations.append((tuple(lhs), tuple(rhs), source))

    def presentation(self, bound: Optional[int] = None) -> CatPresentation:
        representatives = [p for p in self._payloads if self._find(p) == p]
        return CatPresentation(
            self.name,
            [self._ids[p] for p in representatives],
            {g: (self.class_of(s), self.class_of(t)) for g, (s, t) in self.generators.items()},
            [(lhs, rhs, self.class_of(source)) for lhs, rhs, source in self.relations],
            bound,
            self.generator_payloads,
            {self._ids[p]: p for p in representatives},
        )

    def saturate(self, bound: Optional[int] = None) -> PresentedCategory:
        return saturate_presentation(self.presentation(bound))
