"""Precision / recall / F1 scoring of alignment reports against ground truth.

Counts per model: A and M are the ground-truth aligned and misaligned
element counts, PA/PM the predicted ones, CPA/CPM the correct predictions.
Unclassified predictions contribute to no P set. A ratio is undefined
("-" when rendered) whenever its denominator is zero; the F1 variants use
the equivalent form 2*CP / (P + T) and are undefined exactly when the
matching precision is, i.e. with no predictions of that polarity.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass

from .errors import UniverseMismatchError

_RATIO_FIELDS = (
    "prec_a",
    "prec_m",
    "prec",
    "rec_a",
    "rec_m",
    "rec",
    "f1_a",
    "f1_m",
    "f1",
)
CSV_COLUMNS = (
    "A",
    "PA",
    "CPA",
    "M",
    "PM",
    "CPM",
    "Prec_a",
    "Prec_m",
    "Prec",
    "Rec_a",
    "Rec_m",
    "Rec",
    "F1_a",
    "F1_m",
    "F1",
)


@dataclass(frozen=True)
class MetricsRow:
    a: int
    pa: int
    cpa: int
    m: int
    pm: int
    cpm: int

    @property
    def prec_a(self) -> float | None:
        return self.cpa / self.pa if self.pa else None

    @property
    def prec_m(self) -> float | None:
        return self.cpm / self.pm if self.pm else None

    @property
    def prec(self) -> float | None:
        predicted = self.pa + self.pm
        return (self.cpa + self.cpm) / predicted if predicted else None

    @property
    def rec_a(self) -> float | None:
        return self.cpa / self.a if self.a else None

    @property
    def rec_m(self) -> float | None:
        return self.cpm / self.m if self.m else None

    @property
    def rec(self) -> float | None:
        actual = self.a + self.m
        return (self.cpa + self.cpm) / actual if actual else None

    @property
    def f1_a(self) -> float | None:
        return 2 * self.cpa / (self.pa + self.a) if self.pa else None

    @property
    def f1_m(self) -> float | None:
        return 2 * self.cpm / (self.pm + self.m) if self.pm else None

    @property
    def f1(self) -> float | None:
        if not (self.pa + self.pm):
            return None
        return 2 * (self.cpa + self.cpm) / (self.pa + self.pm + self.a + self.m)

    def ratios(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in _RATIO_FIELDS}

    def as_csv_row(self) -> list[str]:
        cells = [str(v) for v in (self.a, self.pa, self.cpa, self.m, self.pm, self.cpm)]
        cells.extend(render_ratio(value) for value in self.ratios().values())
        return cells


def render_ratio(value: float | None) -> str:
    return "-" if value is None else f"{value:.2f}"


def score(verdicts: dict[str, str], truth_labels: dict[str, str]) -> MetricsRow:
    """Count prediction outcomes for one model.

    ``verdicts`` maps element id to ALIGNED / MISALIGNED / UNCLASSIFIED,
    ``truth_labels`` maps the same ids to ALIGNED / MISALIGNED.
    """
    if set(verdicts) != set(truth_labels):
        missing = set(truth_labels) ^ set(verdicts)
        raise UniverseMismatchError(
            f"report and ground truth differ on {len(missing)} element id(s): "
            + ", ".join(sorted(missing)[:5])
        )
    a = sum(1 for label in truth_labels.values() if label == "ALIGNED")
    m = sum(1 for label in truth_labels.values() if label == "MISALIGNED")
    pa = sum(1 for verdict in verdicts.values() if verdict == "ALIGNED")
    pm = sum(1 for verdict in verdicts.values() if verdict == "MISALIGNED")
    cpa = sum(
        1
        for eid, verdict in verdicts.items()
        if verdict == "ALIGNED" and truth_labels[eid] == "ALIGNED"
    )
    cpm = sum(
        1
        for eid, verdict in verdicts.items()
        if verdict == "MISALIGNED" and truth_labels[eid] == "MISALIGNED"
    )
    return MetricsRow(a=a, pa=pa, cpa=cpa, m=m, pm=pm, cpm=cpm)


@dataclass
class Summary:
    macro_mean: dict[str, float | None]
    macro_std: dict[str, float | None]
    micro: MetricsRow


def aggregate(rows: list[MetricsRow]) -> Summary:
    """Macro average (mean over rows, undefined entries excluded) plus
    micro totals with ratios recomputed from summed counts."""
    if not rows:
        raise ValueError("nothing to aggregate")
    macro_mean: dict[str, float | None] = {}
    macro_std: dict[str, float | None] = {}
    for name in _RATIO_FIELDS:
        defined = [getattr(row, name) for row in rows if getattr(row, name) is not None]
        macro_mean[name] = statistics.fmean(defined) if defined else None
        macro_std[name] = statistics.stdev(defined) if len(defined) > 1 else None
    micro = MetricsRow(
        a=sum(r.a for r in rows),
        pa=sum(r.pa for r in rows),
        cpa=sum(r.cpa for r in rows),
        m=sum(r.m for r in rows),
        pm=sum(r.pm for r in rows),
        cpm=sum(r.cpm for r in rows),
    )
    return Summary(macro_mean=macro_mean, macro_std=macro_std, micro=micro)


def write_metrics_csv(path: str, rows: list[MetricsRow], labels: list[str] | None = None):
    summary = aggregate(rows) if len(rows) > 1 else None
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(("row",) + CSV_COLUMNS)
        for i, row in enumerate(rows):
            label = labels[i] if labels else str(i + 1)
            writer.writerow([label] + row.as_csv_row())
        if summary:
            writer.writerow(
                ["Avg", "", "", "", "", "", ""]
                + [render_ratio(summary.macro_mean[name]) for name in _RATIO_FIELDS]
            )


def read_truth_csv(path: str) -> dict[str, str]:
    labels = {}
    with open(path, encoding="utf-8", newline="") as handle:
        for record in csv.DictReader(handle):
            labels[record["element_id"]] = record["label"].strip().upper()
    return labels


def write_truth_csv(path: str, labels: dict[str, str]):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(("element_id", "label"))
        for eid in sorted(labels):
            writer.writerow((eid, labels[eid]))
