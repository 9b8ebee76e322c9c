"""Exception hierarchy shared by every module."""


class ToricError(Exception):
    """Base class for all errors raised by toricmrc."""


class ZeroVector(ToricError, ValueError):
    pass


class DependentGenerators(ToricError, ValueError):
    pass


class MalformedFan(ToricError, ValueError):
    """Structurally broken input (bad arity, out-of-range indices)."""


class InvalidFan(ToricError):
    """Fan data parsed fine but failed validation; carries the full report."""

    def __init__(self, report):
        self.report = report
        kinds = ", ".join(sorted({f.kind for f in report.failures}))
        super().__init__(f"fan failed validation ({kinds})")


class NotComplete(ToricError):
    pass


class NotACone(ToricError, ValueError):
    pass


class DimensionTooSmall(ToricError, ValueError):
    pass


class NotPrimitive(ToricError, ValueError):
    pass


class NonIntegralRelation(ToricError, AssertionError):
    pass


class CriterionMismatch(ToricError, AssertionError):
    pass


class NotFano(ToricError):
    pass


class UnknownBuiltin(ToricError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown builtin"


class ParseError(ToricError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        where = f"line {line}" if line is not None else "end of input"
        super().__init__(f"{where}: {reason}")
