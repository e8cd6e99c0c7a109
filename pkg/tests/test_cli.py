import csv
import io
import json
from fractions import Fraction

import pytest

from cgprob.cli import coefficients_of, main, worker_count

SIX_ROWS = {
    ("gl", "separable"): [1, -1, 0, 0, 0, 0, 0, 0, 0, 0],
    ("u", "separable"): [1, -1, 0, -2, 4, -6, 14, -28, 52, -106],
    ("gl", "cyclic"): [1, 0, 0, -1, 0, -1, 1, 0, 1, -1],
    ("u", "cyclic"): [1, 0, 0, -1, 0, -1, 1, -2, 3, -5],
    ("gl", "semisimple"): [1, -1, 0, 1, -2, 2, -1, -1, 3, -4],
    ("u", "semisimple"): [1, -1, 0, -1, 2, -2, 5, -9, 11, -20],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_limit_examples(capsys):
    rec = run_json(capsys, "limit", "--group", "gl", "--type", "separable", "--order", "9")
    assert rec["coefficients"] == [str(c) for c in SIX_ROWS[("gl", "separable")]]
    assert rec["dimension"] == "infinity" and rec["order"] == 9 and rec["provenance"] == "symbolic"
    rec = run_json(capsys, "limit", "--group", "u", "--type", "cyclic", "--order", "9")
    assert coefficients_of(rec) == SIX_ROWS[("u", "cyclic")]


def test_orthogonal_limit_is_half_of_sp(capsys):
    plus = run_json(capsys, "limit", "--group", "o+", "--type", "separable", "--order", "5", "--char", "odd")
    sp = run_json(capsys, "limit", "--group", "sp", "--type", "separable", "--order", "5", "--char", "odd")
    assert plus["denominator"] == "2" and sp["denominator"] == "1"
    assert [2 * c for c in coefficients_of(plus)] == coefficients_of(sp)
    assert plus["char"] == "odd"


def test_finite_examples(capsys):
    rec = run_json(capsys, "finite", "--group", "gl", "--dim", "2", "--type", "cyclic", "--at-q", "2")
    assert Fraction(rec["value"]) == Fraction(5, 6)
    assert rec["provenance"] == "exact-q"
    rec = run_json(capsys, "finite", "--group", "gl", "--dim", "1", "--type", "separable", "--order", "4")
    assert rec["coefficients"] == ["1", "0", "0", "0", "0"]
    rec = run_json(capsys, "finite", "--group", "u", "--dim", "2", "--type", "separable", "--order", "6")
    assert len(rec["coefficients"]) == 7 and rec["dimension"] == 2


def test_plain_and_csv_formats(capsys):
    code, out, _ = run(capsys, "limit", "--group", "u", "--type", "cyclic", "--order", "9", "--format", "plain")
    assert code == 0 and out.split()[-1] == "-5"
    code, out, _ = run(capsys, "limit", "--group", "gl", "--type", "cyclic", "--order", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1][-1] == "1 0 0 -1"
    assert "\r\n" in out


def test_usage_errors(capsys):
    assert run(capsys, "limit", "--group", "gl", "--type", "regular")[0] == 2
    assert run(capsys, "limit", "--group", "so", "--type", "separable")[0] == 2
    code, _, err = run(capsys, "limit", "--group", "sp", "--type", "separable")
    assert code == 2 and "--char" in err
    assert run(capsys, "finite", "--group", "gl", "--dim", "2", "--type", "cyclic", "--at-q", "6")[0] == 2
    assert run(capsys, "finite", "--group", "gl", "--dim", "0", "--type", "cyclic")[0] == 2
    assert run(capsys, "table", "--types", "")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["limit", "--group", "gl", "--type", "cyclic", "--order", "-1"])
    assert exc.value.code == 2


def test_table_reproduces_six_rows(capsys, tmp_path):
    path = tmp_path / "t.csv"
    assert main(["table", "--groups", "gl,u", "--types", "separable,cyclic,semisimple", "--order", "9",
                 "--out", str(path)]) == 0
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 6
    for row in rows:
        coeffs = [int(c) for c in row["coefficients"].split()]
        assert coeffs == SIX_ROWS[(row["group"], row["lambda"])]
        # CSV re-parse equals the JSON emitted by the limit command
        rec = run_json(capsys, "limit", "--group", row["group"], "--type", row["lambda"], "--order", "9")
        assert coefficients_of(rec) == coeffs


def test_table_accepts_set_specs(capsys):
    code, out, _ = run(capsys, "table", "--groups", "gl", "--types", "set:[1];[2,1]|cyclic", "--order", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["lambda"] for r in rows] == ["set:[1];[2,1]", "cyclic"]


def test_verify_parity(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "parity", "--order", "9")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def test_sigma_command(capsys):
    code, out, _ = run(capsys, "sigma", "--type", "separable")
    assert code == 0 and json.loads(out)["sigma"] == "1/2"
    code, out, _ = run(capsys, "sigma", "--type", "set:[2]")
    assert code == 0 and json.loads(out)["sigma"] == "1/2"


def test_sigma_inconclusive_exit_code(capsys, monkeypatch):
    import cgprob.cli as cli
    from cgprob.stabilization import Sigma

    monkeypatch.setattr(cli, "sigma_with_one", lambda spec: Sigma(Fraction(64, 65), False, Fraction(64, 65)))
    code, out, _ = run(capsys, "sigma", "--type", "cyclic")
    assert code == 3 and json.loads(out)["exact"] is False


def test_worker_count(monkeypatch):
    monkeypatch.delenv("CGPROB_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("CGPROB_THREADS", "4")
    assert worker_count() == 4
    for bad in ("0", "-2", "many"):
        monkeypatch.setenv("CGPROB_THREADS", bad)
        with pytest.raises(Exception, match="positive integer"):
            worker_count()


def test_bad_threads_env_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("CGPROB_THREADS", "zero")
    assert run(capsys, "verify", "--suite", "parity", "--order", "3")[0] == 2


def test_output_is_deterministic(capsys):
    argv = ["limit", "--group", "u", "--type", "semisimple", "--order", "12"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
