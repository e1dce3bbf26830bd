"""Exception hierarchy for rpys.

All exceptions inherit from :class:`RpysError`, which carries an
``exit_code`` attribute mapped to a constant from :mod:`rpys.exit_codes`.
The top-level error handler in :func:`rpys.app.main` catches
``RpysError`` and exits with the appropriate code, while unexpected
exceptions produce a crash log and exit with :data:`EXIT_GENERIC_FAILURE`.

Subclass hierarchy::

    RpysError (exit 1)
    +-- InvalidUsageError   (exit 2)
    +-- ConfigError         (exit 2)
    +-- GateError           (exit 3)
    +-- InputError          (exit 4)
    +-- CorpusError         (exit 1)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from rpys.exit_codes import (
    EXIT_GATE_FAILURE,
    EXIT_GENERIC_FAILURE,
    EXIT_INVALID_USAGE,
    EXIT_IO_ERROR,
)


class RpysError(Exception):
    """Base exception for all rpys errors.

    Every subclass sets a class-level ``exit_code`` corresponding to one of
    the constants in :mod:`rpys.exit_codes`. The entry point catches
    this exception type and calls ``sys.exit(exc.exit_code)``.

    Args:
        message: Human-readable error description printed to stderr.
        exit_code: Optional override for the class-level exit code.
    """

    exit_code: int = EXIT_GENERIC_FAILURE

    def __init__(self, message: str, exit_code: int | None = None):
        super().__init__(message)
        if exit_code is not None:
            self.exit_code = exit_code


class InvalidUsageError(RpysError):
    """Raised for invalid CLI arguments or out-of-range parameter values."""

    exit_code = EXIT_INVALID_USAGE


class ConfigError(RpysError):
    """Raised for configuration problems (unknown keys, unparseable values, unreadable file)."""

    exit_code = EXIT_INVALID_USAGE


class GateError(RpysError):
    """Raised when the linked-reference ratio is below ``linked_ratio_min``.

    Args:
        ratio: The computed linked ratio.
        minimum: The configured minimum the ratio was compared against.
    """

    exit_code = EXIT_GATE_FAILURE

    def __init__(self, ratio: Fraction, minimum: Fraction):
        super().__init__(
            f"Linked reference ratio {float(ratio):.4f} is below the minimum "
            f"{float(minimum):.2f}; corpus excluded (use --force to override)"
        )
        self.ratio = ratio
        self.minimum = minimum


class InputError(RpysError):
    """Raised on I/O failures reading inputs or writing outputs.

    Args:
        message: Description of the failure.
        path: File involved, when known.
        offset: Byte offset into the input at which reading failed, when known.
    """

    exit_code = EXIT_IO_ERROR

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        offset: Optional[int] = None,
    ):
        detail = message
        if path is not None:
            detail = f"{path}: {detail}"
        if offset is not None:
            detail = f"{detail} (at byte offset {offset})"
        super().__init__(detail)
        self.path = path
        self.offset = offset


class CorpusError(RpysError):
    """Raised when the corpus is unusable: no records, no cited references, empty after merge."""

    exit_code = EXIT_GENERIC_FAILURE
