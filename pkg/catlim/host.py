import logging
from .diagram import CatValued2Functor
from .fin_category import FinCategory
from .fincat import functor_category, payload_functor
from .functor import Functor
from .lax import LaxTransformation, lax_category
from typing import Any, Dict, Optional, Tuple

_logger = logging.getLogger(__name__)


class CatHost:
    """
    Cat as the ambient 2-category: objects are finite categories, 1-cells functors,
    2-cells natural transformations.
    """

    name = "Cat"

    def __init__(self, cap: Optional[int] = None):
        self.cap = cap
        self._homs: Dict[Tuple[int, int], Tuple[Any, Any, FinCategory]] = {}
        self._precomposed: Dict[Tuple, Functor] = {}

    def hom(self, x: FinCategory, y: FinCategory) -> FinCategory:
        cached = self._homs.get((id(x), id(y)))
        if cached is None or cached[0] is not x or cached[1] is not y:
            cached = (x, y, functor_category(x, y, self.cap))
            self._homs[(id(x), id(y))] = cached
        return cached[2]

    def identity(self, x: FinCategory) -> Functor:
        return Functor.identity(x)

    def compose(self, g: Functor, f: Functor) -> Functor:
        return g.compose(f)

    def same(self, a: Functor, b: Functor) -> bool:
        return a == b

    def source(self, f: Functor) -> FinCategory:
        return f.source

    def target(self, f: Functor) -> FinCategory:
        return f.target

    def precompose(self, h: Functor, y: FinCategory) -> Functor:
        """hom(h, y): hom(target h, y) -> hom(source h, y), F ↦ F∘h."""
        key = (h.key, id(y))
        if key not in self._precomposed:
            self._precomposed[key] = payload_functor(
                self.hom(h.target, y),
                self.hom(h.source, y),
                lambda functor: functor.compose(h),
                lambda nat: nat.whisker_right(h),
            )
        return self._precomposed[key]

    def __repr__(self):
        return 'CatHost()'


class PresheafHost:
    """
    Strict 2-functors D -> Cat, strict transformations and modifications, as an ambient
    2-category.
    """

    name = "[D,Cat]"

    def __init__(self, cap: Optional[int] = None):
        self.cap = cap
        self._homs: Dict[Tuple[int, int], Tuple[Any, Any, FinCategory]] = {}
        self._precomposed: Dict[Tuple, Functor] = {}

    def hom(self, x: CatValued2Functor, y: CatValued2Functor) -> FinCategory:
        cached = self._homs.get((id(x), id(y)))
        if cached is None or cached[0] is not x or cached[1] is not y:
            cached = (x, y, lax_category(x, y, strict=True, cap=self.cap, name=f"[{x.name},{y.name}]"))
            self._homs[(id(x), id(y))] = cached
        return cached[2]

    def identity(self, x: CatValued2Functor) -> LaxTransformation:
        return LaxTransformation.identity(x)

    def compose(self, g: LaxTransformation, f: LaxTransformation) -> LaxTransformation:
        return g.compose(f)

    def same(self, a: LaxTransformation, b: LaxTransformation) -> bool:
        return a == b

    def source(self, f: LaxTransformation) -> CatValued2Functor:
        return f.source

    def target(self, f: LaxTransformation) -> CatValued2Functor:
        return f.target

    def precompose(self, h: LaxTransformation, y: CatValued2Functor) -> Functor:
        """hom(h, y): β ↦ β∘h, Γ ↦ Γ*h."""
        key = (h.key, id(h.source), id(h.target), id(y))
        if key not in self._precomposed:
            self._precomposed[key] = payload_functor(
                self.hom(h.target, y),
                self.hom(h.source, y),
                lambda beta: beta.compose(h),
                lambda gamma: gamma.whisker_right(h),
            )
        return self._precomposed[key]

    def __repr__(self):
        return 'PresheafHost()'
