import logging
import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher
from .exceptions import NoLift, SizeOverflow, TransportFailure
from .fin_category import FinCategory, ValidationReport
from .functor import Functor, NatTransformation, enumerate_functors, enumerate_natural_transformations
from .search import Backtracker
from .settings import Settings
from typing import Callable, Dict, Hashable, List, Optional, Tuple

_logger = logging.getLogger(__name__)


def assemble_category(
    name: str,
    objects: List[Hashable],
    hom: Callable[[Hashable, Hashable], List[Hashable]],
    identity: Callable[[Hashable], Hashable],
    compose: Callable[[Hashable, Hashable], Hashable],
    object_prefix: str,
    morphism_prefix: str,
    cap: Optional[int] = None,
) -> FinCategory:
    """
    Tabulate a category whose objects and morphisms are hashable payloads.

    Parameters:
        objects (List): Object payloads, in output order.
        hom (Callable): (a, b) -> morphism payloads from a to b.
        identity (Callable): a -> identity payload.
        compose (Callable): (g, f) -> payload of g∘f.
        object_prefix (str): Ids are numbered, e.g. "F0", "F1".
    Raises:
        SizeOverflow: more than Settings.max_morphisms morphisms.
    """
    limit = Settings.closure_bound(cap)
    object_ids = {payload: f"{object_prefix}{i}" for i, payload in enumerate(objects)}
    morphisms: Dict[str, Tuple[str, str]] = {}
    morphism_payloads: Dict[str, Hashable] = {}
    morphism_ids: Dict[Hashable, str] = {}
    by_pair: Dict[Tuple[str, str], List[str]] = {}
    for a in objects:
        for b in objects:
            for payload in hom(a, b):
                mid = f"{morphism_prefix}{len(morphisms)}"
                morphisms[mid] = (object_ids[a], object_ids[b])
                morphism_payloads[mid] = payload
                morphism_ids[payload] = mid
                by_pair.setdefault((object_ids[a], object_ids[b]), []).append(mid)
                if len(morphisms) > limit:
                    raise SizeOverflow(f"morphisms of {name}", limit)
    identities = {object_ids[a]: morphism_ids[identity(a)] for a in objects}
    table = {}
    for f, (a, b) in morphisms.items():
        for c in object_ids.values():
            for g in by_pair.get((b, c), []):
                table[(g, f)] = morphism_ids[compose(morphism_payloads[g], morphism_payloads[f])]
    return FinCategory(
        name,
        list(object_ids.values()),
        morphisms,
        identities,
        table,
        {oid: payload for payload, oid in object_ids.items()},
        morphism_payloads,
    )


def functor_category(source: FinCategory, target: FinCategory, cap: Optional[int] = None) -> FinCategory:
    """
    The functor category [source, target].

    Objects "F{i}" carry Functor payloads, morphisms "N{i}" carry NatTransformation payloads.
    """
    functors = enumerate_functors(source, target, cap)
    hom_cache: Dict[Tuple[Functor, Functor], List[NatTransformation]] = {}

    def hom(a: Functor, b: Functor) -> List[NatTransformation]:
        if (a, b) not in hom_cache:
            hom_cache[(a, b)] = enumerate_natural_transformations(a, b, cap)
        return hom_cache[(a, b)]

    return assemble_category(
        f"[{source.name},{target.name}]",
        functors,
        hom,
        NatTransformation.identity,
        lambda g, f: g.compose(f),
        "F",
        "N",
    )


def natural_transformations(source: Functor, target: Functor, cap: Optional[int] = None) -> List[NatTransformation]:
    return enumerate_natural_transformations(source, target, cap)


def payload_functor(
    source: FinCategory,
    target: FinCategory,
    on_object: Callable[[Hashable], Hashable],
    on_morphism: Callable[[Hashable], Hashable],
) -> Functor:
    """
    Functor defined on payloads; images are looked up in `target` by payload.

    Raises:
        TransportFailure: an image payload is not in `target`.
    """
    object_map = {}
    for x in source.objects:
        image = target.find_object(on_object(source.object_payload(x)))
        if image is None:
            raise TransportFailure(f"object {x} of {source.name} has no image in {target.name}")
        object_map[x] = image
    morphism_map = {}
    for f in source.morphisms:
        image = target.find_morphism(on_morphism(source.morphism_payload(f)))
        if image is None:
            raise TransportFailure(f"morphism {f} of {source.name} has no image in {target.name}")
        morphism_map[f] = image
    return Functor(source, target, object_map, morphism_map)


def invert_functor(functor: Functor) -> Optional[Functor]:
    """The inverse of a bijective functor, or None when it is not bijective."""
    if len(set(functor.object_map.values())) != len(functor.target.objects):
        return None
    if len(set(functor.morphism_map.values())) != len(functor.target.morphisms):
        return None
    if len(functor.object_map) != len(functor.target.objects):
        return None
    if len(functor.morphism_map) != len(functor.target.morphisms):
        return None
    return Functor(
        functor.target,
        functor.source,
        {y: x for x, y in functor.object_map.items()},
        {g: f for f, g in functor.morphism_map.items()},
    )


def is_identity_functor(functor: Functor) -> bool:
    return all(x == y for x, y in functor.object_map.items()) and all(
        f == g for f, g in functor.morphism_map.items()
    )


class IsoWitness:
    """
    A pair of mutually inverse functors.

    Attributes:
        forward (Functor): a -> b.
        backward (Functor): b -> a.
    """

    forward: Functor
    backward: Functor

    def __init__(self, forward: Functor, backward: Functor):
        self.forward = forward
        self.backward = backward

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"isomorphism {self.forward.source.name} ≅ {self.forward.target.name}")
        report.extend(self.forward.validate(), "forward: ")
        report.extend(self.backward.validate(), "backward: ")
        if report.is_valid:
            if not is_identity_functor(self.backward.compose(self.forward)):
                report.add("backward∘forward is not the identity")
            if not is_identity_functor(self.forward.compose(self.backward)):
                report.add("forward∘backward is not the identity")
        return report

    def to_dict(self) -> Dict:
        return {
            "objects": dict(sorted(self.forward.object_map.items())),
            "morphisms": dict(sorted(self.forward.morphism_map.items())),
        }

    def __repr__(self):
        return f'IsoWitness(source="{self.forward.source.name}", target="{self.forward.target.name}")'


def factorize_functor(functor: Functor) -> Tuple[Functor, Functor]:
    """
    Factor through the full image: functor = m∘e with e bijective-on-objects onto the full
    subcategory spanned by the image and m its fully faithful inclusion.
    """
    middle = functor.target.full_subcategory(functor.image_objects(), f"im({functor.source.name})")
    e = Functor(functor.source, middle, dict(functor.object_map), dict(functor.morphism_map))
    m = Functor.inclusion(middle, functor.target)
    return e, m


def unique_lift(e: Functor, m: Functor, top: Functor, bottom: Functor) -> Functor:
    """
    Diagonal filler of the square m∘top = bottom∘e, with e surjective on objects and m fully
    faithful and injective on objects.

    Returns:
        d with d∘e = top and m∘d = bottom.
    Raises:
        NoLift: the square does not commute or the hypotheses fail.
    """
    if m.compose(top) != bottom.compose(e):
        raise NoLift("the square does not commute")
    if not e.is_surjective_on_objects():
        raise NoLift("the left map is not surjective on objects")
    object_map: Dict[str, str] = {}
    for x, y in e.object_map.items():
        image = top.object_map[x]
        if object_map.setdefault(y, image) != image:
            raise NoLift(f"{y} has two candidate images")
    preimage_object: Dict[str, str] = {}
    for x, y in m.object_map.items():
        if preimage_object.setdefault(y, x) != x:
            raise NoLift("the right map is not injective on objects")
    preimage: Dict[str, str] = {}
    for f, g in m.morphism_map.items():
        if preimage.setdefault(g, f) != f:
            raise NoLift("the right map is not faithful")
    middle = e.target
    morphism_map = {}
    for f in middle.morphisms:
        image = preimage.get(bottom.morphism_map[f])
        if image is None:
            raise NoLift(f"the right map is not full at {f}")
        morphism_map[f] = image
    lift = Functor(middle, top.target, object_map, morphism_map)
    if lift.compose(e) != top or m.compose(lift) != bottom:
        raise NoLift("the filler does not make both triangles commute")
    return lift


def _hom_graph(category: FinCategory) -> nx.DiGraph:
    graph = nx.DiGraph()
    for a in category.objects:
        graph.add_node(a, loops=len(category.hom(a, a)))
    for a in category.objects:
        for b in category.objects:
            if a != b and category.hom(a, b):
                graph.add_edge(a, b, count=len(category.hom(a, b)))
    return graph


def find_isomorphism(a: FinCategory, b: FinCategory, cap: Optional[int] = None) -> Optional[IsoWitness]:
    """
    Search for an isomorphism a ≅ b. Object bijections come from a graph matcher on
    hom-set sizes; each is extended to morphisms by backtracking.
    """
    if len(a.objects) != len(b.objects) or len(a.morphisms) != len(b.morphisms):
        return None
    matcher = DiGraphMatcher(
        _hom_graph(a),
        _hom_graph(b),
        node_match=lambda x, y: x["loops"] == y["loops"],
        edge_match=lambda x, y: x["count"] == y["count"],
    )
    limit = Settings.search_cap(cap)
    tried = 0
    for mapping in matcher.isomorphisms_iter():
        tried += 1
        if tried > limit:
            raise SizeOverflow(f"object bijections {a.name} ≅ {b.name}", limit)
        arrows = [f for f in a.morphisms if not a.is_identity(f)]

        def candidates(f, assignment, mapping=mapping):
            s, t = a.morphisms[f]
            used = set(assignment.values())
            return [g for g in b.hom(mapping[s], mapping[t]) if g not in used and not b.is_identity(g)]

        def check(f, assignment, mapping=mapping):
            def image(h):
                if a.is_identity(h):
                    return b.identity[mapping[a.source(h)]]
                return assignment.get(h)

            for (g, k), h in a.compose_table.items():
                if f not in (g, k, h):
                    continue
                images = (image(g), image(k), image(h))
                if None in images:
                    continue
                if b.compose(images[0], images[1]) != images[2]:
                    return False
            return True

        for assignment in Backtracker(arrows, candidates, check, cap, "isomorphism search"):
            morphism_map = dict(assignment)
            for x in a.objects:
                morphism_map[a.identity[x]] = b.identity[mapping[x]]
            forward = Functor(a, b, dict(mapping), morphism_map)
            backward = invert_functor(forward)
            if backward is not None and forward.validate().is_valid:
                return IsoWitness(forward, backward)
    return None
