class CatlimException(Exception):
    "Base class of every error raised by catlim"
    pass


class SizeOverflow(CatlimException):
    "Raised when an enumeration produces more candidates than the configured cap"

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeded the cap of {cap} candidates")


class ClosureOverflow(CatlimException):
    "Raised when saturating a presentation exceeds its closure bound"

    def __init__(self, name: str, bound: int, live: int):
        self.name = name
        self.bound = bound
        self.live = live
        super().__init__(
            f"saturation of {name} reached {live} morphisms, above the bound {bound}"
        )


class NoLift(CatlimException):
    "Raised when a commutative square admits no diagonal filler"
    pass


class InvalidCategory(CatlimException):
    "Raised when a table fails the category laws"

    def __init__(self, report):
        self.report = report
        super().__init__(f"{report.subject} is invalid: {'; '.join(report.violations)}")


class ClosureViolation(CatlimException):
    "Raised when a class of 1-cells is not closed under composition or misses an identity"

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class TightnessViolation(CatlimException):
    "Raised when a 2-functor sends a tight 1-cell to a loose one"

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class TransportFailure(CatlimException):
    "Raised when a transported cell has no counterpart in the target category"
    pass


class UnsupportedCombination(CatlimException):
    "Raised when an example kind is requested with a rigging it does not have"
    pass


class DSLSyntaxError(CatlimException):
    "Raised when a definition file can't be tokenized or parsed"

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class ValidationError(CatlimException):
    "Raised when a parsed definition fails its laws"
    pass


class UnresolvedReference(CatlimException):
    "Raised when a definition refers to an unknown name"
    pass


class DuplicateDefinition(CatlimException):
    "Raised when a name is defined twice in a workspace"

    def __init__(self, name: str, first, second):
        self.first = first
        self.second = second
        super().__init__(f"{name} is defined at {first} and again at {second}")


class DefinitionFileNotFound(CatlimException):
    "Raised when the definition file named on the command line does not exist"

    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"The definition file {path} does not exist")
