"""Exception types shared across the package.

File-system failures are not wrapped: ``OSError`` propagates from any
operation that touches a path.
"""


class GridKgError(Exception):
    """Base class for all gridkg errors."""


class MalformedLine(GridKgError):
    """A line of an input file does not match the expected record shape."""

    def __init__(self, line_no: int, reason: str, path: str | None = None):
        self.line_no = line_no
        self.reason = reason
        self.path = path
        where = f"{path}:{line_no}" if path else f"line {line_no}"
        super().__init__(f"{where}: {reason}")


class DuplicateSurface(GridKgError):
    """Two entries of one dictionary file share a surface form."""

    def __init__(self, surface: str):
        self.surface = surface
        super().__init__(f"duplicate surface {surface!r}")


class DanglingReference(GridKgError):
    """A label refers to an entry or component that was never declared."""

    def __init__(self, label: str, context: str = ""):
        self.label = label
        msg = f"undeclared reference {label!r}"
        super().__init__(f"{msg} ({context})" if context else msg)


class CategoryConflict(GridKgError):
    """One canonical label carries two incompatible categories."""

    def __init__(self, label: str, first: str, second: str):
        self.label = label
        self.first = first
        self.second = second
        super().__init__(f"{label!r} tagged both {first} and {second}")


class EmptyCorpus(GridKgError):
    """Parameter fitting was asked to run on an empty corpus."""


class InvalidParams(GridKgError):
    """HMM parameters violate the BMES structural constraints."""


class SpanOutOfBounds(GridKgError):
    """A locked span does not fit inside the sentence it annotates."""

    def __init__(self, span: tuple[int, int], length: int):
        self.span = span
        super().__init__(f"span {span} outside sentence of length {length}")


class InvalidTriple(GridKgError):
    """A triple violates a store invariant (self-loop, tab in a label, ...)."""


class UnknownEntity(GridKgError):
    """An entity id or label is not present in the store."""

    def __init__(self, ref):
        self.ref = ref
        super().__init__(f"unknown entity {ref!r}")


class TargetNotRevealed(GridKgError):
    """A drill target was not part of the session's revealed set."""

    def __init__(self, target):
        self.target = target
        super().__init__(f"entity {target!r} has not been revealed in this session")


class RuleError(GridKgError):
    """An inference rule is syntactically or statically invalid."""
