"""Exception hierarchy shared by every module of the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class DimensionMismatch(EngineError):
    pass


class WindowExceedsTruncation(EngineError):
    pass


class DegreeViolation(EngineError):
    pass


class MissingUnit(EngineError):
    pass


class AlreadyUnital(EngineError):
    pass


class TruncationTooSmall(EngineError):
    pass


class UnboundedInput(EngineError):
    pass


class NotAChainMap(EngineError):
    pass


class NotACycle(EngineError):
    pass


class DegreeMismatch(EngineError):
    pass


class WindowTooSmall(EngineError):
    pass


class InputError(EngineError):
    """Malformed input document (bad schema, unresolved label, bad scalar)."""
