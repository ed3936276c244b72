"""Defect records: ingestion, joining to component metrics, and binning.

The regression points downstream are per-defect-count bins: every component
with exactly d recorded defects contributes its information content to the
bin's mean. Empty defect levels emit no bin.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable

from .metrics import ComponentMetrics

DEFECTS_CSV_HEADER = ["component_id", "defects"]
BINS_CSV_HEADER = ["d", "n", "mean_info"]

MISSING_ZERO = "zero"
MISSING_SKIP = "skip"


@dataclass(frozen=True)
class DefectRecord:
    """Aggregated defect count for one component id."""

    component_id: str
    d: int


@dataclass(frozen=True)
class JoinedComponent:
    """Component metrics with its defect count and per-token defect density."""

    metrics: ComponentMetrics
    d: int

    @property
    def density(self) -> float:
        return self.d / self.metrics.t


@dataclass(frozen=True)
class DefectBin:
    """One regression point: defect count d shared by n components."""

    d: int
    n: int
    mean_info: float


def load_defects(path: str) -> list[DefectRecord]:
    """Read a defects CSV (component_id,defects), summing duplicate ids.

    Negative counts and unparsable rows raise ValueError naming the row.
    """
    totals: dict[str, int] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != DEFECTS_CSV_HEADER:
            raise ValueError(
                f"{path}: expected header {','.join(DEFECTS_CSV_HEADER)!r}, got {header!r}"
            )
        for row_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: row {row_number}: expected 2 columns, got {len(row)}")
            component_id = row[0]
            try:
                d = int(row[1])
            except ValueError as exc:
                raise ValueError(f"{path}: row {row_number}: {exc}") from exc
            if d < 0:
                raise ValueError(f"{path}: row {row_number}: negative defect count {d}")
            totals[component_id] = totals.get(component_id, 0) + d
    return [DefectRecord(cid, d) for cid, d in totals.items()]


def join(
    metrics: list[ComponentMetrics],
    records: list[DefectRecord],
    missing_policy: str = MISSING_ZERO,
) -> tuple[list[JoinedComponent], list[str]]:
    """Attach defect counts to metrics by component id.

    Components without a record get d=0 under policy ``zero`` or are dropped
    under ``skip``. Records without a matching component are reported back as
    orphans, never an error.

    Returns (joined, orphan_ids).
    """
    if missing_policy not in (MISSING_ZERO, MISSING_SKIP):
        raise ValueError(f"unknown missing policy {missing_policy!r}")
    by_id = {r.component_id: r.d for r in records}
    joined: list[JoinedComponent] = []
    seen: set[str] = set()
    for m in metrics:
        seen.add(m.id)
        if m.id in by_id:
            joined.append(JoinedComponent(m, by_id[m.id]))
        elif missing_policy == MISSING_ZERO:
            joined.append(JoinedComponent(m, 0))
    orphans = [r.component_id for r in records if r.component_id not in seen]
    return joined, orphans


def coverage_cutoff(joined: list[JoinedComponent], fraction: float) -> int:
    """Smallest d* such that components with d <= d* cover >= fraction of all."""
    if not joined:
        raise ValueError("coverage cutoff of an empty join")
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    total = len(joined)
    counts: dict[int, int] = {}
    for jc in joined:
        counts[jc.d] = counts.get(jc.d, 0) + 1
    covered = 0
    for d in sorted(counts):
        covered += counts[d]
        if covered >= fraction * total:
            return d
    return max(counts)


def bin_by_defects(
    joined: list[JoinedComponent],
    d_max: int,
    normalize: float = 1.0,
) -> list[DefectBin]:
    """Group components by exact defect count d in 0..d_max.

    Each occupied level yields one bin whose mean_info is the arithmetic
    mean of the members' information content divided by ``normalize``.
    Components with d > d_max are excluded; if that excludes everything
    there is nothing to regress and a ValueError is raised.
    """
    if d_max < 0:
        raise ValueError(f"d_max must be >= 0, got {d_max}")
    if normalize <= 0:
        raise ValueError(f"normalize must be > 0, got {normalize}")
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for jc in joined:
        if jc.d > d_max:
            continue
        sums[jc.d] = sums.get(jc.d, 0.0) + jc.metrics.info
        counts[jc.d] = counts.get(jc.d, 0) + 1
    if not counts:
        raise ValueError("all components excluded by d_max; nothing to bin")
    return [
        DefectBin(d, counts[d], sums[d] / counts[d] / normalize) for d in sorted(counts)
    ]


def write_defects_csv(path: str, records: Iterable[DefectRecord]) -> None:
    """Write the defects CSV (component_id,defects)."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(DEFECTS_CSV_HEADER)
        for record in records:
            writer.writerow([record.component_id, record.d])


def write_bins_csv(path: str, bins: Iterable[DefectBin]) -> None:
    """Write the bins CSV (d,n,mean_info)."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(BINS_CSV_HEADER)
        for b in bins:
            writer.writerow([b.d, b.n, f"{b.mean_info:.12g}"])
