import io
import json
import subprocess
import sys

import pytest

from quadcong.cli import main
from quadcong.experiments import LISTINGS, listing_path, render_listing


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out), out


def test_count():
    data, _ = run_json("count", "--form", "1 0 1 0 0 1", "--p", "5", "--n", "2")
    assert data["result"]["count"] == 20
    data, _ = run_json("count", "--form", "1 0 1 0 0 1", "--p", "3", "--n", "1", "--verify")
    assert data["result"] == {"count": 4, "oracle": 4, "status": "OK"}


def test_inadmissible_exit_2_names_gcd():
    code, _, err = run("count", "--form", "5 0 1 0 0 1", "--p", "5", "--n", "2")
    assert code == 2 and "gcd(a, p)" in err


def test_enumerate_budget_exit_3():
    code, _, err = run("enumerate", "--p", "3", "--n", "12")
    assert code == 3 and "--force" in err
    code, out, _ = run("enumerate", "--p", "3", "--n", "3", "--budget-terms", "10", "--force", "--format", "csv")
    assert code == 0 and out.count("\n0,") + out.count("\n1,") + out.count("\n2,") + out.count("\n3,") == 36


@pytest.mark.parametrize("p,n", LISTINGS)
def test_enumerate_golden_listing(p, n):
    assert render_listing(p, n) == listing_path(p, n).read_text()


def test_expsum_and_codes():
    data, _ = run_json("expsum", "x^2", "--p", "3", "--n", "2", "--alpha", "0", "--verify")
    res = data["result"]
    assert res["method"] == "cochrane" and abs(res["value"]["re"] - 3) < 1e-12 and res["difference"] < 1e-9
    data, _ = run_json("expsum", "x^3", "--p", "5", "--n", "3", "--alpha", "0")
    assert data["result"]["method"] == "direct-fallback"
    assert run("expsum", "x^2 +", "--p", "3", "--n", "2")[0] == 4
    assert run("expsum", "(1)/(x)", "--p", "5", "--n", "2", "--alpha", "0")[0] == 5


def test_usage_errors_are_parse_errors():
    assert run("count", "--form", "1 0 1")[0] == 4
    assert run("count", "--p", "seven")[0] == 4
    assert run("asymptotic", "--n-range", "5-7")[0] == 4
    assert run("nosuchcommand")[0] == 4


def test_errorsum_gauss_quadric_check():
    data, _ = run_json("errorsum", "--p", "5", "--n", "3", "--k1", "5", "--k2", "5", "--z", "2", "--verify")
    assert data["result"]["r"] == 1 and data["result"]["difference"] < 1e-6
    data, _ = run_json("gauss", "--p", "7", "--n", "3")
    assert data["result"]["difference"] < 1e-8 * 7**1.5
    data, _ = run_json("quadric", "--form", "1 0 1 0 0 1", "--B-range", "5:10:5")
    assert data["result"]["detAssoc"] == 4096 and data["result"]["tau"] == 13
    assert [r["count"] for r in data["rows"]] == [0, 0]
    assert run("quadric", "--form", "3 0 1 0 0 1", "--p", "3")[0] == 2
    data, _ = run_json("check", "--cases", "10")
    assert data["result"]["max_abs_difference"] < 1e-6


def test_asymptotic_small_rows():
    data, _ = run_json("asymptotic", "--n-range", "2:3", "--theta", "0.6")
    assert [r["method"] for r in data["rows"]] == ["classes+naive"] * 2


@pytest.mark.parametrize(
    "argv",
    [
        ("count", "--p", "7", "--n", "2", "--verify"),
        ("expsum", "(1 + x^2)/(2 + x)", "--p", "5", "--n", "3", "--alpha", "1"),
        ("quadric", "--form", "1 1 -1 1 0 1", "--B-range", "5:15:5"),
        ("errorsum", "--p", "7", "--n", "3", "--k1", "2", "--k2", "3"),
    ],
)
def test_json_round_trip_and_determinism(argv):
    data, text = run_json(*argv)
    assert json.dumps(data, sort_keys=True) + "\n" == text
    assert run_json(*argv)[1] == text
    assert data["config"]["seed"] == 20240917 and data["config"]["tool"].startswith("quadcong")


def test_header_echo_in_table_and_csv():
    for fmt in ("table", "csv"):
        code, out, _ = run("count", "--p", "5", "--n", "2", "--format", fmt)
        assert code == 0
        assert "# seed: 20240917" in out and "# form: 1 0 1 0 0 1" in out and "# budget_terms: " in out


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "quadcong.cli", "count", "--p", "5", "--n", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "count: 20" in proc.stdout
