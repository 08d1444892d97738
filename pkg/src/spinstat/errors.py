"""Exception hierarchy shared by every module."""


class SpinstatError(Exception):
    pass


class DomainError(SpinstatError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(DomainError):
    """Input sits on an excluded set, e.g. two coinciding particles."""


class AmbiguousAxisError(DomainError):
    """The rotation circle through two points is not unique."""


class UnsupportedOperationError(SpinstatError):
    pass


class DiagonalViolationError(SpinstatError):
    """An exchange path passes through the diagonal set."""


class InconsistencyError(SpinstatError):
    """A computed quantity failed an internal consistency check."""


class ScenarioParseError(SpinstatError):
    def __init__(self, message, *, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
