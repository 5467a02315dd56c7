"""Exception hierarchy shared by all charvar modules."""


class CharvarError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(CharvarError, ValueError):
    """Malformed input: bad simplex, non-subcomplex, wrong dimension, ..."""


class NotFound(CharvarError, KeyError):
    pass


class FullnessRequired(ValidationError):
    pass


class NotConnected(CharvarError):
    pass


class DomainError(CharvarError, ValueError):
    pass


class UnsupportedFamily(DomainError):
    pass


class InternalError(CharvarError, AssertionError):
    """An identity that must hold exactly did not; indicates a bug."""


class PushoffError(CharvarError):
    """Failure of one stage of the push-off pipeline.

    ``stage`` names the stage ("step1", "step2", "step3", "input") so that
    callers can tell where the pipeline stopped.
    """

    stage = "input"

    def __init__(self, message, stage=None, evidence=None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage
        self.evidence = evidence or {}


class DensityViolated(PushoffError):
    stage = "step1"


class LocalConnectivityViolated(PushoffError):
    stage = "step2"


class Obstructed(PushoffError):
    """Step 3 could not fill a link loop within budget.

    This is an UNKNOWN outcome, not a disproof: the evidence dict carries the
    surface vertex, its link loop, and the H_1 of the punctured star.
    """

    stage = "step3"


class OutOfRange(DomainError):
    """The requested (family, n, r, k) lies outside the proven window."""


class SchemaError(ValidationError):
    """Input that fails to parse, located by file, line and column or by a
    JSON path."""

    def __init__(self, message, path=None, line=None, column=None, where=None):
        loc = ""
        if path:
            loc = str(path)
            if line is not None:
                loc += f":{line}:{column}"
        if where:
            loc += (" " if loc else "") + f"at {where}"
        super().__init__(f"{loc}: {message}" if loc else message)
        self.message = message
        self.path, self.line, self.column, self.where = path, line, column, where
