"""Exception hierarchy shared by every module of the package."""


class SrgError(ValueError):
    """Base class for all errors raised by srgames."""


class NonTerminalWithoutMoves(SrgError):
    def __init__(self, vertex):
        super().__init__(f"non-terminal {vertex!r} has no outgoing arcs")
        self.vertex = vertex


class TerminalWithOutgoingArc(SrgError):
    def __init__(self, vertex):
        super().__init__(f"terminal {vertex!r} has an outgoing arc")
        self.vertex = vertex


class DanglingArc(SrgError):
    def __init__(self, tail, head):
        super().__init__(f"arc ({tail!r}, {head!r}) references an unknown vertex")
        self.tail = tail
        self.head = head


class MissingPayoff(SrgError):
    pass


class UnknownVertex(SrgError):
    pass


class WrongRole(SrgError):
    pass


class SameVertex(SrgError):
    pass


class GroupNotSignHomogeneous(SrgError):
    pass


class GroupNotContiguous(SrgError):
    pass


class MissingValue(SrgError):
    pass


class BadPermutation(SrgError):
    pass


class InconsistentInputValue(SrgError):
    pass


class EmptyInput(SrgError):
    pass


class InstanceTooLarge(SrgError):
    pass


class IncompleteStrategy(SrgError):
    pass


class InfeasibleParameters(SrgError):
    pass


class NonPositivePayoff(SrgError):
    pass


class MonotonicityError(SrgError):
    """A bucket-queue insertion or extraction broke the non-increasing rank order."""


class ParseError(SrgError):
    def __init__(self, msg, line, column):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


class SchemaError(SrgError):
    def __init__(self, field, msg):
        super().__init__(f"{field}: {msg}")
        self.field = field
