"""
Exception hierarchy for the spline engine.

Input errors (bad documents, unparsable elements, invalid graphs) and domain errors
(mathematically impossible requests) are kept apart so the CLI and the HTTP views can
map them to distinct exit codes and status codes.
"""
from typing import Any, List, Optional, Tuple


class SplineError(Exception):
    """
    Base class for every error raised by the spline engine.
    """


class InputError(SplineError):
    """
    The caller supplied a malformed document, element or graph.
    """


class DomainError(SplineError):
    """
    The input is well formed but the requested computation has no answer.
    """


class ParseError(InputError):
    def __init__(self, message: str, position: Optional[int] = None, text: str = ''):
        self.message = message
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))


class SchemaError(InputError):
    def __init__(self, errors: Any):
        self.errors = errors
        super().__init__(f"Document does not match the schema: {errors}")


class UnsupportedRing(InputError):
    pass


class SelfLoop(InputError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"Self-loop at vertex {vertex}")


class DuplicateEdge(InputError):
    def __init__(self, u: int, v: int):
        self.edge = (u, v)
        super().__init__(f"Duplicate edge ({u}, {v})")


class Disconnected(InputError):
    def __init__(self, components: int):
        self.components = components
        super().__init__(f"Graph is not connected ({components} components)")


class VertexOutOfRange(InputError):
    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        super().__init__(f"Vertex {vertex} is outside 1..{n}")


class LengthMismatch(InputError):
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Spline has {actual} entries, graph has {expected} vertices")


class RingMismatch(DomainError):
    def __init__(self, left: Any, right: Any):
        super().__init__(f"Cannot combine elements of {left} and {right}")


class IncompatibleSystem(DomainError):
    def __init__(self, first: Tuple[Any, Any], second: Tuple[Any, Any]):
        self.pair = (first, second)
        super().__init__(
            f"Incompatible congruences: x = {first[0]} mod {first[1]} "
            f"and x = {second[0]} mod {second[1]}"
        )


class DegenerateFlowUp(DomainError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"No flow-up class of index {index} has a nonzero leading entry")


class PathLimitExceeded(DomainError):
    def __init__(self, vertex: int, limit: int):
        self.vertex = vertex
        self.limit = limit
        super().__init__(f"More than {limit} constraint paths from vertex {vertex}")


class NotACycle(DomainError):
    pass


class NotOrdered(DomainError):
    pass


class NotASpline(DomainError):
    def __init__(self, violations: List[Tuple[int, int]], member: Optional[int] = None):
        self.violations = violations
        self.member = member
        which = f"Candidate {member} is" if member is not None else "Vector is"
        super().__init__(f"{which} not a spline; violated edges: {violations}")


class InexactDivision(DomainError):
    def __init__(self, message: str, index: Optional[int] = None):
        self.index = index
        super().__init__(message)


class SearchSpaceTooLarge(DomainError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"Search space {size} exceeds the limit {limit}")


class NoFlowUpFound(DomainError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Exhaustive search found no flow-up class of index {index}")
