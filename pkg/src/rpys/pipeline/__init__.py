"""Pipeline orchestration and result export.

* :mod:`~rpys.pipeline.runner` -- Stage order, linked-ratio gate, filter,
  total-order sort, ``info`` statistics.
* :mod:`~rpys.pipeline.export` -- Indicator CSV, spectrum CSV and cluster dump.
"""

from rpys.pipeline.export import export_csv, export_spectrum_csv, write_cluster_dump
from rpys.pipeline.runner import (
    CorpusInfo,
    PipelineResult,
    build_corpus,
    collect_info,
    inspect_corpus,
    run_pipeline,
    run_spectrum,
    sort_rows,
)

__all__ = [
    "CorpusInfo",
    "PipelineResult",
    "build_corpus",
    "collect_info",
    "export_csv",
    "export_spectrum_csv",
    "inspect_corpus",
    "run_pipeline",
    "run_spectrum",
    "sort_rows",
    "write_cluster_dump",
]
