"""Alignment report rendering and atomic file output.

Report files never include wall-clock times, so reruns with deterministic
backends are byte-identical; timings are printed separately on request.
"""

from __future__ import annotations

import csv
import io
import os

from .detect import AlignmentReport


def render_report(report: AlignmentReport) -> str:
    counts = report.counts()
    lines = [
        f"model: {report.model_name}",
        f"elements: {len(report.classifications)}",
        "aligned: {ALIGNED}  misaligned: {MISALIGNED}  unclassified: {UNCLASSIFIED}".format(
            **counts
        ),
        f"queries: {report.total_queries}",
        "",
    ]
    for c in report.classifications:
        evidence = ",".join(f"s{i}" for i in sorted(c.evidence)) or "-"
        lines.append(
            f"{c.element_id}\t{c.verdict.value}\t{c.basis.value}\t{evidence}\t{c.queries}"
        )
    return "\n".join(lines) + "\n"


def render_report_csv(report: AlignmentReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("element_id", "verdict", "basis", "evidence", "queries"))
    for c in report.classifications:
        evidence = ";".join(str(i) for i in sorted(c.evidence))
        writer.writerow((c.element_id, c.verdict.value, c.basis.value, evidence, c.queries))
    return buffer.getvalue()


def render_timings(report: AlignmentReport) -> str:
    lines = ["component timings (seconds):"]
    for component, label in (
        ("preprocess", "A preprocess"),
        ("slice", "B slice"),
        ("match", "C match"),
        ("generate", "D generate"),
        ("detect", "E detect"),
    ):
        if component in report.timings:
            lines.append(f"  {label:<12} {report.timings[component]:.3f}")
    return "\n".join(lines) + "\n"


def write_atomic(path: str, content: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as handle:
        handle.write(content)
    os.replace(tmp, path)


def read_report_csv(path: str) -> dict[str, str]:
    """element id -> verdict, as written by ``render_report_csv``."""
    verdicts = {}
    with open(path, encoding="utf-8", newline="") as handle:
        for record in csv.DictReader(handle):
            verdicts[record["element_id"]] = record["verdict"].strip().upper()
    return verdicts
