"""Count matrix, top-percentile indicators and the RPYS spectrum.

Sub-modules:

* :mod:`~rpys.indicators.matrix` -- :class:`CitationMatrix`, clipped
  smoothing windows and the ``RPYSMX1`` binary layout.
* :mod:`~rpys.indicators.percentile` -- Threshold rank and count, expected
  count, ``is_top`` and N_TOPp+.
* :mod:`~rpys.indicators.spectrum` -- Sliding-median deviation per RPY.
"""

from rpys.indicators.matrix import (
    CitationMatrix,
    build_matrix,
    decode_matrix,
    encode_matrix,
    windowed_count,
    windowed_population,
)
from rpys.indicators.percentile import (
    expected_count,
    is_top,
    n_top,
    n_top_all,
    threshold_count,
    threshold_rank,
    year_thresholds,
)
from rpys.indicators.spectrum import rpys_spectrum

__all__ = [
    "CitationMatrix",
    "build_matrix",
    "decode_matrix",
    "encode_matrix",
    "expected_count",
    "is_top",
    "n_top",
    "n_top_all",
    "rpys_spectrum",
    "threshold_count",
    "threshold_rank",
    "windowed_count",
    "windowed_population",
    "year_thresholds",
]
