"""Exception types raised across the package."""


class ParseError(ValueError):
    """Malformed input text. ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class PipelineError(RuntimeError):
    """A conversion step found the document in an impossible state."""


class EmitError(ValueError):
    """A document cannot be written unambiguously in CoNLL-2012 format."""
