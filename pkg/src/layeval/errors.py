"""Exception hierarchy shared by all layeval modules."""


class LayevalError(Exception):
    """Base class for all errors raised by this package."""


class EmptyTextError(LayevalError):
    """Input text is empty or whitespace-only."""


class InvalidWordError(LayevalError):
    """A word token contains no letters."""


class InvalidParameterError(LayevalError):
    """An argument violates a documented precondition."""


class InvalidWordListError(LayevalError):
    """Familiar-word list is empty or malformed."""


class InvalidPoolError(LayevalError):
    """Candidate pool has heterogeneous metric sets."""


class MissingFieldError(LayevalError):
    """A template placeholder or record field has no value."""

    def __init__(self, field, message=None):
        self.field = field
        super().__init__(message or f"missing required field: {field}")


class TransportError(LayevalError):
    """Scorer endpoint unreachable or died mid-batch."""


class ScorerTimeoutError(TransportError):
    """Scorer did not answer within the configured timeout."""


class ProtocolError(LayevalError):
    """Scorer response violates the wire protocol or declared range."""


class MalformedRecordError(LayevalError):
    """A corpus/candidates/results line failed to parse or validate."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class DuplicateIdError(MalformedRecordError):
    pass


class MissingAbstractError(MalformedRecordError):
    pass
