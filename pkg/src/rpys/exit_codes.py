"""Numeric process exit codes following `clig.dev <https://clig.dev/>`_ conventions.

Each constant maps to a specific error category and is referenced by the
corresponding :class:`~rpys.exceptions.RpysError` subclass.
Shell loops over many subject-category exports can inspect the exit code to
tell a corpus that failed the linked-reference gate from a broken file
without parsing stderr.

Example::

    $ rpys run --config cq.conf
    $ echo $?
    3   # EXIT_GATE_FAILURE -- linked ratio below the configured minimum
"""

EXIT_SUCCESS = 0
"""The command completed successfully."""

EXIT_GENERIC_FAILURE = 1
"""An unclassified error occurred (including empty corpora)."""

EXIT_INVALID_USAGE = 2
"""The command was invoked with invalid arguments or an invalid config file."""

EXIT_GATE_FAILURE = 3
"""The corpus failed the linked-reference ratio gate; no output was written."""

EXIT_IO_ERROR = 4
"""An input file could not be read or an output file could not be written."""
