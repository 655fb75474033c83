import logging
import networkx as nx
from .example_library import composition_closure
from .fin_category import FinCategory, identity_id
from .marked import MarkedTwoCategory
from .fin_2category import Fin2Category
from random import Random
from typing import Tuple

_logger = logging.getLogger(__name__)


def random_preorder_category(rng: Random, max_objects: int = 5, max_morphisms: int = 20, name: str = "P") -> FinCategory:
    """
    A random finite preorder as a category: the reflexive transitive closure of a random relation,
    redrawn until it has at most `max_morphisms` morphisms.
    """
    while True:
        count = rng.randint(1, max_objects)
        graph = nx.DiGraph()
        graph.add_nodes_from(range(count))
        for a in range(count):
            for b in range(count):
                if a != b and rng.random() < 0.3:
                    graph.add_edge(a, b)
        closure = nx.transitive_closure(graph, reflexive=False)
        pairs = [(a, b) for a, b in closure.edges() if a != b]
        if count + len(pairs) <= max_morphisms:
            break
    objects = [str(a) for a in range(count)]
    below = {a: {b for _, b in closure.out_edges(a)} | {a} for a in range(count)}

    def arrow(a: int, b: int) -> str:
        return identity_id(str(a)) if a == b else f"{a}->{b}"

    morphisms = {arrow(a, b): (str(a), str(b)) for a in range(count) for b in below[a]}
    table = {(arrow(b, c), arrow(a, b)): arrow(a, c) for a in range(count) for b in below[a] for c in below[b]}
    return FinCategory(name, objects, morphisms, {x: identity_id(x) for x in objects}, table)


def random_marked_preorder(rng: Random, max_objects: int = 3, max_morphisms: int = 8) -> MarkedTwoCategory:
    """A locally discrete random preorder with Σ the composition closure of a random set of 1-cells."""
    category = random_preorder_category(rng, max_objects, max_morphisms)
    chosen = [f for f in category.morphisms if not category.is_identity(f) and rng.random() < 0.5]
    return MarkedTwoCategory(Fin2Category.locally_discrete(category), composition_closure(category, chosen))


def mutate_composition(category: FinCategory, rng: Random) -> Tuple[FinCategory, Tuple[str, str]]:
    """
    Copy of `category` with one composite redirected to a different morphism. In a preorder any
    such change breaks typing, a unit law or associativity.
    """
    entries = sorted(category.compose_table)
    key = entries[rng.randrange(len(entries))]
    others = [f for f in category.morphisms if f != category.compose_table[key]]
    table = dict(category.compose_table)
    table[key] = others[rng.randrange(len(others))] if others else "⊥"
    mutated = FinCategory(f"{category.name}*", category.objects, category.morphisms, category.identity, table)
    return mutated, key
