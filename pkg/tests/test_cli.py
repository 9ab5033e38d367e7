import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from nilcensus.algebra import build_triangular, to_spec
from nilcensus.cli import main
from nilcensus.report import bounds_from_dict, census_from_dict, decode_fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_describe(capsys):
    code, out, _ = run(capsys, "describe", "--algebra", "triangular(2)@3")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == 1 and rep["command"] == "describe"
    assert rep["algebra"]["basis"] == ["x", "y", "x^2", "xy", "y^2"]
    assert rep["dims"] == ["3", "5"] and rep["layer_dims"] == ["3", "2"]


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--algebra", "triangular(2)@3")
    assert code == 0
    rep = census_from_dict(json.loads(out)["census"])
    assert rep.i_A == 45 and rep.s_A == 2664 and rep.q == (1, 3)
    code, out, _ = run(capsys, "count", "--algebra", "triangular(2)@3", "--strategy", "filter")
    assert census_from_dict(json.loads(out)["census"]).i_A == 45


def test_count_binomial(capsys):
    code, out, _ = run(capsys, "count", "--algebra", "binomial(3)@5")
    assert code == 0
    assert json.loads(out)["census"]["i_A"] == "203"


def test_fibers_csv(capsys):
    code, out, _ = run(capsys, "fibers", "--algebra", "triangular(2)@3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sum(int(r["ideals"]) for r in rows) == 45
    assert sum(int(r["subspaces"]) for r in rows) == 2664
    assert max(int(r["fiber_size"]) for r in rows) == 1900


def test_fibers_json_checks(capsys):
    code, out, _ = run(capsys, "fibers", "--algebra", "uniserial(3)@5")
    rep = json.loads(out)
    assert code == 0 and all(rep["checks"].values())
    # ideals 0 < (x^3) < (x^2, x^3) < A; fibers s(k) - s(k-1) for k >= 2
    assert [f["fiber"] for f in rep["fibers"]] == ["1", "1", "6", "56"]


def test_fibers_refused(capsys):
    code, _, err = run(capsys, "fibers", "--algebra", "binomial(3)@5")
    assert code == 3 and "cap" in err


def test_fibers_forced_cap(capsys):
    code, _, _ = run(capsys, "fibers", "--algebra", "triangular(2)@3", "--max-enum-dim", "4")
    assert code == 3


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--algebra", "triangular(2)@3")
    assert code == 0
    rep = json.loads(out)
    b = bounds_from_dict(rep["bounds"])
    assert b.i_A == 45 and rep["sandwich_ok"] is True
    assert b.lambda_lower == 2 * 9 + 9 + 6
    assert b.upper_main == 2664


def test_bounds_no_census_binomial4(capsys):
    code, out, _ = run(capsys, "bounds", "--algebra", "binomial(4)@5", "--no-census",
                       "--q-mode", "binomial")
    assert code == 0
    b = json.loads(out)["bounds"]
    assert decode_fraction(b["ratio_bound_rounded"]) == Fraction(2, 5**16)
    assert b["i_A"] is None


def test_bounds_inapplicable(capsys):
    code, out, _ = run(capsys, "bounds", "--algebra", "triangular(2)@2")
    rep = json.loads(out)
    assert code == 0 and rep["bounds"]["applicable"] is False


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--algebra", "uniserial(3)@5", "--format", "csv")
    rows = dict(csv.reader(io.StringIO(out)))
    assert rows["bounds.i_A"] == "4"
    assert Fraction(rows["bounds.upper_main"]) == Fraction(5, 25) * (2 * 25 + 2 * 5 + 4)


def test_interpolate(capsys):
    code, out, _ = run(capsys, "interpolate", "--family", "triangular(2)", "--primes", "3,5,7",
                       "--validate", "11")
    rep = json.loads(out)
    assert code == 0 and rep["polynomial"] == "3q^2 + 4q + 6" and rep["verdict"] == "validated"


def test_interpolate_lambda(capsys):
    code, out, _ = run(capsys, "interpolate", "--family", "binomial(3)", "--primes", "3,5,7",
                       "--quantity", "lambda")
    assert json.loads(out)["polynomial"] == "4q^2 + 4q + 8"


def test_interpolate_mismatch(capsys):
    # two points cannot capture a quadratic
    code, out, _ = run(capsys, "interpolate", "--family", "triangular(2)", "--primes", "3,5",
                       "--validate", "7")
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "s5,bounds,growth")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] is True
    assert {r["check"] for r in rep["results"]} == {"s5", "bounds", "growth"}


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "--only", "nope")
    assert code == 2


def test_bad_algebra(capsys):
    code, _, err = run(capsys, "count", "--algebra", "triangle(2)@3")
    assert code == 2 and "ValueError" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count"])
    assert info.value.code == 2


def test_spec_file(capsys, tmp_path):
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(to_spec(build_triangular(3, 2))))
    code, out, _ = run(capsys, "count", "--algebra", str(path))
    assert code == 0 and json.loads(out)["census"]["i_A"] == "45"


def test_output_file(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "describe", "--algebra", "uniserial(2)@3", "-o", str(out_path))
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["command"] == "describe"


def test_byte_identical_runs(tmp_path):
    outs = []
    for workers in ("1", "2", "1"):
        res = subprocess.run([sys.executable, "-m", "nilcensus", "fibers", "--algebra",
                              "triangular(2)@3", "--workers", workers],
                             capture_output=True, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1] == outs[2]


def test_workers_flag(capsys):
    code, out, _ = run(capsys, "fibers", "--algebra", "uniserial(4)@5", "--workers", "2")
    assert code == 0 and all(json.loads(out)["checks"].values())


def test_verify_idcount(capsys):
    code, out, _ = run(capsys, "verify", "--only", "idcount")
    rep = json.loads(out)
    assert code == 0 and [r["label"] for r in rep["results"]] == ["triangular(2)@3", "triangular(2)@5"]


@pytest.mark.parametrize("family,primes,validate,expect", [
    ("binomial(3)", "5,7,11", "13", "7q^2 + 4q + 8"),
    ("uniserial(3)", "5,7", None, "4"),
])
def test_interpolate_examples(capsys, family, primes, validate, expect):
    argv = ["interpolate", "--family", family, "--primes", primes]
    if validate:
        argv += ["--validate", validate]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["polynomial"] == expect
