import csv
import io
import json
import subprocess
import sys

import pytest

from ringcoprime.cli import EXIT_INPUT, EXIT_OK, EXIT_PRECISION, EXIT_VERIFY, OutputRecord, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    assert code == EXIT_OK
    return json.loads(text)


def test_prob_zeta3():
    rec = run_json("prob", "-f", "Q(zeta3)", "-n", "2", "-k", "2", "-r", "1", "-t", "4")
    assert rec["results"]["display"] == "0.7781"
    assert rec["params"]["N"] == 10100
    assert rec["error_bounds"]["log_bound"] <= 5e-5


def test_prob_inverse_zeta3():
    rec = run_json("prob", "-f", "Q", "-n", "3", "-k", "3", "-t", "4")
    assert rec["results"]["display"] == "0.8319"


def test_prob_shows_guard_digits_only():
    rec = run_json("prob", "-f", "Q", "-t", "3")
    assert len(str(rec["results"]["value"]).split(".")[1]) <= 5


def test_prob_precision_ceiling(capsys):
    code, _ = run("prob", "-f", "Q", "-n", "2", "-k", "2", "-r", "1", "-t", "9")
    assert code == EXIT_PRECISION
    assert "at most 6" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ("prob", "-f", "Q(sqrt12)"),
        ("prob", "-f", "Q", "-n", "2", "-k", "3"),
        ("prob", "-f", "nonsense"),
        ("estimate", "-f", "Q", "-x", "100", "--samples", "0"),
        ("split", "-f", "Q", "-p", "9"),
        ("enumerate", "-f", "Q", "-x", "ten"),
    ],
)
def test_invalid_input_exit_code(argv):
    assert run(*argv)[0] == EXIT_INPUT


def test_strict_caveat(capsys):
    code, _ = run("prob", "-f", "poly:-2,0,0,1", "-t", "2")
    assert code == EXIT_OK
    assert "warning" in capsys.readouterr().err
    code, _ = run("prob", "-f", "poly:-2,0,0,1", "-t", "2", "--strict")
    assert code == EXIT_PRECISION


def test_primes_mode():
    rec = run_json("prob", "-f", "Q", "--primes", "1000")
    assert rec["params"]["N"] == 1000 and rec["params"]["t"] is None


def test_table_default_text():
    code, text = run("table")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0].split() == ["n", "Z", "Z[sqrt2]", "Z[i]", "Z[zeta3]", "Z[zeta5]"]
    assert lines[3].split() == ["4", "0.1149", "0.2115", "0.1676", "0.3035", "0.6307"]


def test_table_csv_shape():
    code, text = run("table", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == EXIT_OK and len(rows) == 4 and all(len(row) == 6 for row in rows)
    assert rows[1] == ["2", "0.6079", "0.6969", "0.6637", "0.7781", "0.9155"]


def test_table_single_cell_matches_prob():
    table = run_json("table", "-f", "Q(sqrt-1)", "-n", "3")
    prob = run_json("prob", "-f", "Q(sqrt-1)", "-n", "3")
    assert table["results"]["grid"] == [[round(prob["results"]["value"], 4)]]


def test_verify_identities():
    code, text = run("verify", "identities")
    assert code == EXIT_OK
    assert text.splitlines()[-1] == "5/5 checks passed"


def test_verify_failure_exit(monkeypatch):
    from ringcoprime import verify

    monkeypatch.setitem(verify.SUITES, "identities", lambda: [verify.Check("forced", False, "x")])
    assert run("verify", "identities")[0] == EXIT_VERIFY


@pytest.mark.parametrize(
    "spec, p, line",
    [("Q(sqrt-1)", "5", "p=5 f=1 e=1 g=2"), ("Q", "7", "p=7 f=1 e=1 g=1"), ("Q(zeta5)", "11", "p=11 f=1 e=1 g=4")],
)
def test_split(spec, p, line):
    assert run("split", "-f", spec, "-p", p) == (EXIT_OK, line + "\n")


def test_split_range_csv():
    _, text = run("split", "-f", "Q(sqrt-1)", "--range", "2", "13", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["p"] for r in rows] == ["2", "3", "5", "7", "11", "13"]


def test_estimate_is_reproducible():
    argv = ("estimate", "-f", "Q(sqrt2)", "-n", "3", "-x", "10^3", "--samples", "5000", "--seed", "9")
    a, b = run_json(*argv), run_json(*argv)
    a.pop("wall_time"), b.pop("wall_time")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["results"]["H"] == 623


def test_enumerate(tmp_path):
    assert run_json("enumerate", "-f", "Q", "-x", "1000", "--count-only")["results"]["H"] == 1000
    dump = tmp_path / "u.tsv"
    rec = run_json("enumerate", "-f", "Q(sqrt-1)", "-x", "5", "--dump", str(dump))
    assert rec["results"]["H"] == 5 and len(rec["results"]["ideals"]) == 5
    assert dump.read_text().splitlines()[-1] == "5\t5^1#1:1"
    big = run_json("enumerate", "-f", "Q(sqrt-1)", "-x", "10^5", "--count-only")
    assert abs(big["results"]["ratio"] - 0.785) < 0.02


def test_converge_csv():
    code, text = run("converge", "-f", "Q", "-n", "2", "-x", "10", "-x", "100", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == EXIT_OK and [r["x"] for r in rows] == ["10", "100"]


def test_record_round_trips():
    rec = OutputRecord("prob", "Z", {"n": 2, "k": 2}, {"value": 0.607928}, {"log_bound": 4.9e-5}, {"caveat": False}, 0.5)
    assert OutputRecord.from_json(rec.to_json()) == rec
    (row,) = csv.DictReader(io.StringIO(rec.to_csv()))
    assert row == {key: str(value) for key, value in rec.flat().items()}


def test_json_output_round_trips():
    _, text = run("prob", "-f", "Q(sqrt2)", "-n", "3", "--format", "json")
    assert OutputRecord.from_json(text).to_json() == text.strip()


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "ringcoprime", "split", "-f", "Q(zeta5)", "-p", "2"], capture_output=True, text=True
    )
    assert out.returncode == 0 and out.stdout == "p=2 f=4 e=1 g=1\n"
