"""Exception types shared across the generator pipeline.

Both errors carry a short machine-readable ``code`` so front ends (CLI,
HTTP service) can map them to exit codes and response bodies without
string matching.
"""

from __future__ import annotations


class ParameterError(ValueError):
    """A parameter lies outside its documented range.

    ``field`` names the offending parameter with its descriptor label
    (``card``, ``perc``, ``digits``, ...) when the error concerns a single
    field, which lets descriptor parsing attach a field position.
    """

    code = "parameter-range"

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class DescriptorError(ParameterError):
    """Descriptor text is malformed or fails validation.

    ``position`` is the 1-based index of the comma-separated field the
    error refers to, when known.
    """

    code = "bad-descriptor"

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position
