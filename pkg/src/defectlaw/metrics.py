"""Per-component size and information-content measurements.

A component with t tokens drawn from a unique alphabet of a distinct
spellings carries t*ln(a) nats of choice: t independent selections from a
possibilities, meaning ignored. Natural log throughout; rebasing only
rescales downstream regressions.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable

from .lexer import Component

METRICS_CSV_HEADER = ["id", "t", "a", "info"]


@dataclass(frozen=True)
class ComponentMetrics:
    """Token count, unique-alphabet size, and information content of one component."""

    id: str
    t: int
    a: int
    info: float


@dataclass(frozen=True)
class SystemSummary:
    """Whole-system totals: component count M, total tokens T, total information."""

    M: int
    T: int
    I_total: float


def information_content(t: int, a: int) -> float:
    """t * ln(a), the information carried by t choices from an alphabet of a.

    Raises ValueError unless 1 <= a <= t.
    """
    if t < 1:
        raise ValueError(f"token count must be >= 1, got {t}")
    if a < 1 or a > t:
        raise ValueError(f"alphabet size must satisfy 1 <= a <= t, got a={a}, t={t}")
    return t * math.log(a)


def measure(component: Component) -> ComponentMetrics:
    """Measure one non-empty component."""
    if not component.tokens:
        raise ValueError(f"component {component.id!r} has no tokens")
    t = len(component.tokens)
    a = len({tok.spelling for tok in component.tokens})
    return ComponentMetrics(component.id, t, a, information_content(t, a))


def measure_components(
    components: Iterable[Component],
) -> tuple[list[ComponentMetrics], list[str]]:
    """Measure a batch, skipping empty components with a warning instead of failing."""
    metrics: list[ComponentMetrics] = []
    warnings: list[str] = []
    for component in components:
        if not component.tokens:
            warnings.append(f"{component.id}: empty component skipped")
            continue
        metrics.append(measure(component))
    return metrics, warnings


def summarize(metrics: list[ComponentMetrics]) -> SystemSummary:
    """Totals over a non-empty metrics list; an associative, order-free fold."""
    if not metrics:
        raise ValueError("cannot summarize an empty metrics list")
    return SystemSummary(
        M=len(metrics),
        T=sum(m.t for m in metrics),
        I_total=sum(m.info for m in metrics),
    )


def write_metrics_csv(path: str, metrics: Iterable[ComponentMetrics]) -> None:
    """Write the metrics CSV (id,t,a,info), info to 6 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(METRICS_CSV_HEADER)
        for m in metrics:
            writer.writerow([m.id, m.t, m.a, f"{m.info:.6g}"])


def load_metrics_csv(path: str) -> tuple[list[ComponentMetrics], list[str]]:
    """Read a metrics CSV back into ComponentMetrics.

    info is recomputed as t*ln(a) from the stored counts, so the 6-digit
    rounding in the file never propagates. Rows with t=0 are dropped with a
    warning; rows violating 1 <= a <= t or failing to parse are errors that
    name the offending row.

    Returns (metrics, warnings).
    """
    metrics: list[ComponentMetrics] = []
    warnings: list[str] = []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != METRICS_CSV_HEADER:
            raise ValueError(
                f"{path}: expected header {','.join(METRICS_CSV_HEADER)!r}, "
                f"got {header!r}"
            )
        for row_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ValueError(f"{path}: row {row_number}: expected 4 columns, got {len(row)}")
            component_id = row[0]
            try:
                t = int(row[1])
                a = int(row[2])
            except ValueError as exc:
                raise ValueError(f"{path}: row {row_number}: {exc}") from exc
            if t == 0:
                warnings.append(f"{path}: row {row_number}: t=0 component dropped")
                continue
            try:
                info = information_content(t, a)
            except ValueError as exc:
                raise ValueError(f"{path}: row {row_number}: {exc}") from exc
            metrics.append(ComponentMetrics(component_id, t, a, info))
    return metrics, warnings
