import csv
from pathlib import Path

import pytest

from specalign.errors import UniverseMismatchError
from specalign.metrics import (
    MetricsRow,
    aggregate,
    read_truth_csv,
    render_ratio,
    score,
    write_metrics_csv,
    write_truth_csv,
)

DATA = Path(__file__).parent / "data"


def load_counts(path):
    rows = []
    with open(path, newline="") as handle:
        for record in csv.DictReader(handle):
            rows.append(
                MetricsRow(
                    a=int(record["A"]),
                    pa=int(record["PA"]),
                    cpa=int(record["CPA"]),
                    m=int(record["M"]),
                    pm=int(record["PM"]),
                    cpm=int(record["CPM"]),
                )
            )
    return rows


class TestRow:
    def test_all_aligned_example(self):
        row = MetricsRow(a=32, pa=24, cpa=24, m=0, pm=0, cpm=0)
        assert row.prec_a == 1.0
        assert row.prec == 1.0
        assert row.rec_a == 0.75
        assert round(row.f1_a, 2) == 0.86
        assert row.prec_m is None and row.rec_m is None and row.f1_m is None

    def test_false_misalignments_lower_combined_precision(self):
        row = MetricsRow(a=24, pa=14, cpa=14, m=0, pm=2, cpm=0)
        assert row.prec == 14 / 16
        assert row.prec_m == 0.0
        assert row.f1_m == 0.0  # predictions exist, none correct

    def test_no_predictions_means_undefined_precisions(self):
        row = MetricsRow(a=5, pa=0, cpa=0, m=2, pm=0, cpm=0)
        assert row.prec_a is None and row.prec_m is None and row.prec is None
        assert row.f1_a is None and row.f1_m is None and row.f1 is None
        assert row.rec == 0.0

    def test_f1_matches_harmonic_mean_when_defined(self):
        row = MetricsRow(a=24, pa=17, cpa=17, m=3, pm=2, cpm=2)
        harmonic = 2 * row.prec * row.rec / (row.prec + row.rec)
        assert row.f1 == pytest.approx(harmonic)

    def test_bounds_and_sanity(self):
        rows = load_counts(DATA / "table_correct_models.csv") + load_counts(
            DATA / "table_mutated_models.csv"
        )
        for row in rows:
            assert row.cpa <= min(row.pa, row.a)
            assert row.cpm <= min(row.pm, row.m)
            for value in row.ratios().values():
                assert value is None or 0.0 <= value <= 1.0


class TestScore:
    def test_counts_from_verdicts(self):
        verdicts = {
            "e1": "ALIGNED",
            "e2": "ALIGNED",
            "e3": "MISALIGNED",
            "e4": "UNCLASSIFIED",
            "e5": "ALIGNED",
        }
        truth = {
            "e1": "ALIGNED",
            "e2": "MISALIGNED",
            "e3": "MISALIGNED",
            "e4": "ALIGNED",
            "e5": "ALIGNED",
        }
        row = score(verdicts, truth)
        assert (row.a, row.m) == (3, 2)
        assert (row.pa, row.cpa) == (3, 2)
        assert (row.pm, row.cpm) == (1, 1)

    def test_universe_mismatch(self):
        with pytest.raises(UniverseMismatchError):
            score({"e1": "ALIGNED"}, {"e2": "ALIGNED"})


class TestAggregate:
    def test_single_row_summary_equals_row(self):
        row = MetricsRow(a=10, pa=8, cpa=8, m=0, pm=0, cpm=0)
        summary = aggregate([row])
        assert summary.macro_mean["rec"] == row.rec
        assert summary.macro_std["rec"] is None
        assert summary.micro == row

    def test_correct_model_rows_reproduce_published_averages(self):
        summary = aggregate(load_counts(DATA / "table_correct_models.csv"))
        assert summary.macro_mean["prec"] == pytest.approx(0.996, abs=0.005)
        assert summary.macro_mean["rec"] == pytest.approx(0.77, abs=0.005)
        assert summary.macro_mean["f1"] == pytest.approx(0.86, abs=0.005)
        # combined sums: 337 correct predictions out of 339 made
        assert summary.micro.prec == pytest.approx(337 / 339)

    def test_mutated_model_rows_reproduce_published_averages(self):
        summary = aggregate(load_counts(DATA / "table_mutated_models.csv"))
        assert summary.macro_mean["prec"] == pytest.approx(1.00, abs=0.005)
        assert summary.macro_mean["rec"] == pytest.approx(0.78, abs=0.005)
        assert summary.macro_mean["f1"] == pytest.approx(0.87, abs=0.005)

    def test_undefined_entries_are_excluded_from_means(self):
        rows = [
            MetricsRow(a=4, pa=2, cpa=2, m=0, pm=0, cpm=0),  # prec_m undefined
            MetricsRow(a=4, pa=4, cpa=4, m=2, pm=2, cpm=2),
        ]
        summary = aggregate(rows)
        assert summary.macro_mean["prec_m"] == 1.0


class TestRendering:
    def test_render_ratio(self):
        assert render_ratio(None) == "-"
        assert render_ratio(0.875) == "0.88"
        assert render_ratio(1.0) == "1.00"

    def test_metrics_csv_round_trip(self, tmp_path):
        rows = [MetricsRow(a=3, pa=3, cpa=3, m=1, pm=0, cpm=0)]
        out = tmp_path / "metrics.csv"
        write_metrics_csv(str(out), rows)
        content = out.read_text()
        assert "Prec_a" in content and "1.00" in content and "-" in content

    def test_truth_csv_round_trip(self, tmp_path):
        labels = {"attr:A.x": "ALIGNED", "inh:B<:C": "MISALIGNED"}
        path = tmp_path / "truth.csv"
        write_truth_csv(str(path), labels)
        assert read_truth_csv(str(path)) == labels
