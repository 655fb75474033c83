from .exceptions import SizeOverflow
from .settings import Settings
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional


class Backtracker:
    """
    Depth-first search over assignments of `variables`, in order.

    Parameters:
        variables (List[Hashable]): Assigned in this order.
        candidates (Callable): (variable, partial assignment) -> iterable of values.
        check (Callable): (variable, partial assignment) -> bool, called right after `variable` is assigned.
        cap (int): Maximum number of complete assignments. Defaults to Settings.max_cone_search.
        label (str): Used in the SizeOverflow message.
    """

    def __init__(
        self,
        variables: List[Hashable],
        candidates: Callable[[Hashable, Dict], Iterable],
        check: Optional[Callable[[Hashable, Dict], bool]] = None,
        cap: Optional[int] = None,
        label: str = "search",
    ):
        self.variables = list(variables)
        self.candidates = candidates
        self.check = check
        self.cap = Settings.search_cap(cap)
        self.label = label

    def __iter__(self) -> Iterator[Dict]:
        assignment: Dict = {}
        found = 0

        def extend(index: int):
            nonlocal found
            if index == len(self.variables):
                found += 1
                if found > self.cap:
                    raise SizeOverflow(self.label, self.cap)
                yield dict(assignment)
                return
            variable = self.variables[index]
            for value in list(self.candidates(variable, assignment)):
                assignment[variable] = value
                if self.check is None or self.check(variable, assignment):
                    yield from extend(index + 1)
            assignment.pop(variable, None)

        yield from extend(0)
