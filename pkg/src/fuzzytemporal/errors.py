"""Exception hierarchy shared by every layer of the engine."""


class FuzzyTemporalError(Exception):
    """Base class for all errors raised by this package."""


# -- temporal core --------------------------------------------------------

class MalformedInstant(FuzzyTemporalError, ValueError):
    pass


class MalformedDuration(FuzzyTemporalError, ValueError):
    pass


class UnknownGranularity(FuzzyTemporalError, ValueError):
    pass


class InvalidPeriod(FuzzyTemporalError, ValueError):
    pass


class TemporalOverflow(FuzzyTemporalError, OverflowError):
    pass


# -- fuzzy core -----------------------------------------------------------

class InvalidParams(FuzzyTemporalError, ValueError):
    pass


class InvalidRange(FuzzyTemporalError, ValueError):
    pass


class InvalidDegree(FuzzyTemporalError, ValueError):
    pass


# -- ITE built-ins --------------------------------------------------------

class NonPositiveT(FuzzyTemporalError, ValueError):
    pass


class AxisMismatch(FuzzyTemporalError, TypeError):
    pass


class UnknownKeyword(FuzzyTemporalError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UnknownITE(UnknownKeyword):
    pass


class FutureSince(FuzzyTemporalError, ValueError):
    pass


class DegenerateFuzzyPeriod(FuzzyTemporalError, ValueError):
    pass


class WeightRangeWarning(UserWarning):
    """A weight falls outside the range an ITE table recommends."""


# -- knowledge base -------------------------------------------------------

class MalformedFact(FuzzyTemporalError, ValueError):
    pass


class SchemaError(FuzzyTemporalError, ValueError):
    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class LiteralTypeError(FuzzyTemporalError, TypeError):
    pass


# -- rules ----------------------------------------------------------------

class ParseError(FuzzyTemporalError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        prefix = f"{source}:" if source else ""
        if line is not None:
            message = f"{prefix}{line}:{column}: {message}"
        elif prefix:
            message = f"{prefix} {message}"
        super().__init__(message)


class UnsafeRule(ParseError):
    pass


class UnknownBuiltin(ParseError):
    pass


class ArityError(FuzzyTemporalError, TypeError):
    pass


class UnboundVariable(FuzzyTemporalError, ValueError):
    pass


class IterationCapExceeded(FuzzyTemporalError, RuntimeError):
    pass
