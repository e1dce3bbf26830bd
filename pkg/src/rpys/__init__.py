"""rpys -- Detect landmark publications from Web of Science exports.

This package reproduces a CRExplorer landmark-detection script as a
streaming command-line pipeline: parse WoS tagged exports, cluster and
merge spelling variants of cited references, count for every merged
reference the citing years in which it belongs to the top-p most-cited
references (N_TOPp+), compute the RPYS spectrum, and export filtered,
sorted CSV tables.

Typical workflow::

    rpys config init ls.conf          # write the default parameters
    rpys info -i ls_wos.txt           # corpus statistics and linked ratio
    rpys run -c ls.conf -i ls_wos.txt -o ls.csv

Modules:
    app: Typer application and CLI entry point.
    models: Pydantic config models and hot-path record types.
    config: Flat config file, precedence resolution, XDG dirs.
    exceptions: Exception hierarchy with exit-code mapping.
    exit_codes: Numeric exit codes.
    output: stdout/stderr formatting system with Rich support.
    parser, dedup, indicators, pipeline, cache: the pipeline stages.
"""

__version__ = "0.1.0"
