"""Exception types shared across the package.

The CLI maps these onto exit codes: :class:`InputError` (and the stdlib
``ValueError`` / ``OSError``) mean bad input data or configuration and exit
with status 1; anything else is treated as an internal invariant violation
and exits with status 2.
"""


class InputError(Exception):
    """Malformed, inconsistent, or missing input data."""


class PipelineError(Exception):
    """A pipeline stage failed; carries the stage name for error reporting."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
