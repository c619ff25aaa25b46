import csv
import io
import json
import subprocess
import sys

import pytest

from idemkit.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from idemkit.primes import PrimeSet
from idemkit.verify import CorpusSpec, run_cell, verify_corpus


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_marks_table(capsys):
    code, out, _ = run(capsys, "marks", "--builtin", "S3")
    assert code == EXIT_OK
    rows = [l.split() for l in out.splitlines()[3:7]]
    assert rows == [["1", "6", "0", "0", "0"], ["C2", "3", "1", "0", "0"], ["C3", "2", "0", "2", "0"], ["S3", "1", "1", "1", "1"]]


def test_marks_json(capsys):
    code, out, _ = run(capsys, "marks", "--builtin", "S3", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["marks"] == [[6, 0, 0, 0], [3, 1, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]]


def test_chartable_c2_csv(capsys):
    code, out, _ = run(capsys, "chartable", "--builtin", "C2", "--format", "csv")
    rows = [r for r in csv.reader(io.StringIO(out)) if r and not r[0].startswith("#")]
    assert code == EXIT_OK
    assert rows[-2:] == [["X0", "1", "1"], ["X1", "1", "-1"]]


def test_info(capsys):
    code, out, _ = run(capsys, "info", "--builtin", "A5", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["order"] == 60


def test_parse_error_names_line(capsys, tmp_path):
    path = tmp_path / "g.grp"
    path.write_text("degree 3\n(0 1)\n(0 1 2\n")
    code, _, err = run(capsys, "info", "--file", str(path))
    assert code == EXIT_USAGE
    assert "line 3" in err


def test_group_file(capsys, tmp_path):
    path = tmp_path / "s3.grp"
    path.write_text("# S3\ndegree 3\n(0 1)\n(0 1 2)\n")
    code, out, _ = run(capsys, "idempotents", "--file", str(path), "--primes", "2", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert len(data["burnside"]) == 2 and len(data["representation"]) == 2


def test_idempotent_counts(capsys):
    code, out, _ = run(capsys, "idempotents", "--builtin", "S3", "--primes", "2,3", "--format", "json")
    assert code == EXIT_OK and len(json.loads(out)["representation"]) == 1
    code, out, _ = run(capsys, "idempotents", "--builtin", "C1", "--format", "json")
    data = json.loads(out)
    assert len(data["burnside"]) == 1 and len(data["representation"]) == 1


def test_norms_matrix(capsys):
    code, out, _ = run(capsys, "norms", "--builtin", "S3", "--primes", "2", "--C", "C3")
    assert code == EXIT_OK
    row = next(l for l in out.splitlines() if l.startswith("S3/C2"))
    assert "✗" in row and "!" not in row


def test_unknown_label_lists_choices(capsys):
    code, _, err = run(capsys, "norms", "--builtin", "S3", "--primes", "2", "--C", "C5")
    assert code == EXIT_USAGE
    assert "1" in err and "C3" in err


def test_indexing_trivial_group(capsys):
    code, out, _ = run(capsys, "indexing", "--builtin", "C1", "--cyc", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["complete"] is True


def test_usage_errors(capsys):
    assert run(capsys, "marks")[0] == EXIT_USAGE
    assert run(capsys, "marks", "--builtin", "Z9")[0] == EXIT_USAGE
    assert run(capsys, "idempotents", "--builtin", "S3", "--primes", "4")[0] == EXIT_USAGE
    assert run(capsys, "bogus")[0] == EXIT_USAGE


def test_cap_exit(capsys):
    assert run(capsys, "marks", "--builtin", "A5", "--lattice-cap", "10")[0] == EXIT_CAP
    assert run(capsys, "chartable", "--builtin", "A5", "--chartable-cap", "10")[0] == EXIT_CAP


def test_byte_stable(capsys):
    first = run(capsys, "idempotents", "--builtin", "A4", "--primes", "2", "--format", "json")[1]
    second = run(capsys, "idempotents", "--builtin", "A4", "--primes", "2", "--format", "json")[1]
    assert first == second


def test_out_file(capsys, tmp_path):
    path = tmp_path / "marks.csv"
    code, out, _ = run(capsys, "marks", "--builtin", "S3", "--format", "csv", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert "6,0,0,0" in path.read_text()


def test_verify_single_group(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "S3")
    assert code == EXIT_OK
    assert out.count("PASS") == 4


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "S3", "--inject-fault", "S3:2", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_FAIL
    bad = [c for c in data["cells"] if not c["ok"]]
    assert [(c["group"], c["primes"]) for c in bad] == [("S3", [2])]


def test_empty_corpus_passes():
    result = verify_corpus([])
    assert result.ok and result.cells == []


def test_budget_skips_cells():
    result = verify_corpus(CorpusSpec(("S4", "A5")), budget=0.0, workers=1)
    assert not result.ok and result.skipped


def test_parallel_matches_sequential():
    corpus = CorpusSpec(("S3", "A4"))
    seq = verify_corpus(corpus, workers=1)
    par = verify_corpus(corpus, workers=2)
    assert [(c.group, c.primes, c.checks) for c in seq.cells] == [(c.group, c.primes, c.checks) for c in par.cells]


def test_run_cell_reports_failures():
    res = run_cell("S3", PrimeSet({2}), fault=True)
    assert not res.ok and "R sum to one" in res.failures()


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "idemkit.cli", "marks", "--builtin", "C2", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["marks"] == [[2, 0], [1, 1]]
