class Settings:
    """
    Process-wide limits. The command line assigns these before any computation.
    Every operation that can overflow also takes an explicit override.
    """

    # Closure bound of saturate_presentation, and size cap for built categories
    max_morphisms: int = 10000
    # Maximum number of candidates produced by one enumeration
    max_cone_search: int = 100000
    seed: int = 0

    @staticmethod
    def closure_bound(bound=None) -> int:
        return Settings.max_morphisms if bound is None else bound

    @staticmethod
    def search_cap(cap=None) -> int:
        return Settings.max_cone_search if cap is None else cap
