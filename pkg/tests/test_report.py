from __future__ import annotations

import csv

import pytest

from stabcoh import report
from stabcoh.verify import verify_suite


def test_delimited_round_trip(tmp_path):
    rows = [{"degree": 0, "dim": 1}, {"degree": 1, "dim": 3}]
    path = report.write_delimited(rows, tmp_path / "t.tsv")
    with path.open() as fh:
        back = list(csv.DictReader(fh, delimiter="\t"))
    assert back == [{"degree": "0", "dim": "1"}, {"degree": "1", "dim": "3"}]


@pytest.mark.parametrize("kind", ["series", "table", "timings", "none"])
def test_render_kinds(tmp_path, kind):
    rows = [{"name": "a", "seconds": 0.1, "passed": True, "dim": 2},
            {"name": "b", "seconds": 0.3, "passed": False, "dim": 5}]
    kw = {"values": [[1, 2], [3, 4]], "row_labels": ["r0", "r1"], "col_labels": ["0", "2"]} if kind == "table" else {}
    written = report.render("demo", rows, tmp_path, kind, **kw)
    assert (tmp_path / "demo.tsv").exists()
    if kind == "none":
        assert len(written) == 1
    else:
        png = tmp_path / "demo.png"
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_render_rejects_unknown_kind(tmp_path):
    with pytest.raises(ValueError):
        report.render("demo", [{"dim": 1}], tmp_path, "pie")


def test_golden_figure_size():
    w, h = report.figsize(6.0)
    assert w == 6.0 and abs(h / w - 0.618) < 1e-3


def test_verify_suite_fast_passes():
    seen = []
    rep = verify_suite("fast", progress=seen.append)
    assert rep.passed and len(seen) == len(rep.results) == 9
    assert rep.to_dict()["checks"][0]["name"] == "irregular primes"
    with pytest.raises(ValueError):
        verify_suite("medium")
