"""Golden run of the 500-record export at the default settings.

The expected CSV is rebuilt here from the raw export text: counts are taken
line by line, the two Porter spellings are joined by hand, and every citing
year is decided by sorting its windowed counts.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from pathlib import Path

from rpys.models import PipelineConfig
from rpys.pipeline import run_pipeline

PORTER = "PORTER ME, 1980, COMPETITIVE STRATEGY, V1, P1"
SPELLINGS = {"PORTER M, 1980, COMPETITIVE STRATEGY, V1, P1": PORTER}
CITING_YEARS = range(1980, 2018)


def citations_by_year(text: str) -> dict[str, Counter[int]]:
    """Per-reference citing-year counts read straight from a tagged export."""
    counts: dict[str, Counter[int]] = defaultdict(Counter)
    year, refs, tag = None, [], ""
    for line in text.splitlines():
        if line[:2].strip():
            tag = line[:2]
        body = line[3:]
        if line.startswith("PY "):
            year = int(body)
        elif tag == "CR" and body:
            refs.append(SPELLINGS.get(body, body))
        if line == "ER":
            for ref in refs:
                counts[ref][year] += 1
            year, refs = None, []
    return counts


def expected_csv(counts: dict[str, Counter[int]], p: Fraction, r: int, minimum: int) -> str:
    tops: Counter[str] = Counter()
    for year in CITING_YEARS:
        window = range(max(year - r, CITING_YEARS.start), min(year + r, CITING_YEARS.stop - 1) + 1)
        windowed = {ref: sum(by_year[t] for t in window) for ref, by_year in counts.items()}
        positive = sorted((c for c in windowed.values() if c > 0), reverse=True)
        if not positive:
            continue
        threshold = positive[int(1 + len(positive) * p) - 1]
        mean = Fraction(sum(positive), len(positive))
        tops.update(ref for ref, c in windowed.items() if c > threshold and c > mean)

    rows = [
        (ref, int(ref.split(", ")[1]), sum(counts[ref].values()), tops[ref])
        for ref in counts
        if tops[ref] >= minimum
    ]
    rows.sort(key=lambda row: (-row[3], -row[2], row[1], row[0]))
    lines = ["CR,RPY,N_CR,N_TOP0_1+"]
    lines += [f'"{cr}",{rpy},{n_cr},{n_top}' for cr, rpy, n_cr, n_top in rows]
    return "\n".join(lines) + "\n"


def test_golden_file_matches_recount(default_wos: Path, default_golden: Path) -> None:
    counts = citations_by_year(default_wos.read_text(encoding="utf-8"))
    assert sum(1 for ref in counts if ref.startswith("BACKGROUND")) == 8000
    expected = expected_csv(counts, Fraction(1, 1000), 2, 3)
    assert expected == default_golden.read_text(encoding="utf-8")


def test_default_run_matches_golden_file(
    default_wos: Path, default_golden: Path, tmp_path: Path, quiet_output
) -> None:
    out = tmp_path / "out.csv"
    config = PipelineConfig(inputs=[default_wos], output=out, min_indicator=3)
    result = run_pipeline(config, threads=1)

    assert out.read_bytes() == default_golden.read_bytes()
    assert result.summary.records_read == 500
    assert result.summary.variants == 8000 + 2 + 1 + 6
    assert result.summary.clusters == 8000 + 1 + 1 + 6


def test_default_run_uses_ranks_above_one(default_wos: Path, tmp_path: Path, quiet_output) -> None:
    from rpys.indicators import threshold_rank, year_thresholds

    config = PipelineConfig(inputs=[default_wos], output=tmp_path / "out.csv", min_indicator=0)
    result = run_pipeline(config, threads=1)
    found = {item.year: item for item in year_thresholds(result.matrix, config.percentile)}

    assert threshold_rank(found[2002].n, config.percentile.p) == 5
    assert found[2002].threshold == 10
    middle = [row for row in result.rows if row.cr.startswith("MIDDLE")]
    assert len(middle) == 6
    assert all(row.n_top == 0 for row in middle)
