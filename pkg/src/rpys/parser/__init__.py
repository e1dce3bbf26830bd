"""Web of Science ingest -- stream-parse exports and aggregate cited references.

This sub-package is the first stage of the rpys pipeline: turning raw WoS
plain-text exports into a table of cited-reference variants with per-citing-
year occurrence counts.

Typical usage::

    from rpys.parser import import_files, linked_ratio

    table, stats = import_files([Path("nu_wos.txt")], py_window, rpy_window)
    ratio = linked_ratio(table.variants())

Sub-modules:

* :mod:`~rpys.parser.wos` -- Tagged-field stream parser and round-trip writer.
* :mod:`~rpys.parser.cited_ref` -- CR string micro-grammar and the linked
  reference ratio.
* :mod:`~rpys.parser.corpus` -- Streaming aggregation into a
  :class:`~rpys.parser.corpus.VariantTable`.
"""

from rpys.parser.cited_ref import is_linked, linked_ratio, parse_cr
from rpys.parser.corpus import VariantTable, import_files
from rpys.parser.wos import WosStreamParser, parse_wos_file, parse_wos_stream, write_wos_records

__all__ = [
    "VariantTable",
    "WosStreamParser",
    "import_files",
    "is_linked",
    "linked_ratio",
    "parse_cr",
    "parse_wos_file",
    "parse_wos_stream",
    "write_wos_records",
]
