"""CLI behavior: output shapes, exit codes, determinism, size caps.

Logic paths run in-process through cli.main for speed; true usage errors
(argparse exits) and module execution go through a subprocess.
"""

import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from cantornormal import cli
from cantornormal.blocks import Block, read_digit_file, write_digit_file
from cantornormal.cantor import CantorExpansion, orbit_point
from cantornormal.cli import main, parse_budget, parse_grid
from cantornormal.constructions import ConstructionSpec, SegmentSpec, qde_spec
from cantornormal.errors import InvalidSpecError
from cantornormal.verify import CLAIMS, Certificate


def small_spec() -> ConstructionSpec:
    return ConstructionSpec(
        (
            SegmentSpec(0, Block(2, (0, 1)), 2),
            SegmentSpec(2, Block(2, (0, 1)), 2),
            SegmentSpec(3, Block(4, (1, 3)), 4),
        )
    )


SMALL_DIGITS = (0, 1, 0, 1, 1, 3, 1, 3, 1, 3)
SMALL_Q = (2, 2, 2, 2, 4, 4, 4, 4, 4, 4)


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "small.json"
    small_spec().save(str(path))
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# Argument helpers.
# ---------------------------------------------------------------------------


def test_parse_grid():
    assert parse_grid("b=2..4,w=1..2,k_max=2") == {
        "b": [2, 3, 4],
        "w": [1, 2],
        "k_max": [2],
    }
    assert parse_grid("b=2,b=5..6") == {"b": [2, 5, 6]}
    with pytest.raises(InvalidSpecError):
        parse_grid("b=2..")
    with pytest.raises(InvalidSpecError):
        parse_grid("=3")


def test_parse_budget():
    assert parse_budget("90") == 90.0
    assert parse_budget("30s") == 30.0
    assert parse_budget("10min") == 600.0
    assert parse_budget("1.5h") == 5400.0
    with pytest.raises(InvalidSpecError):
        parse_budget("soon")


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def test_construct_json(capsys, spec_file):
    code, payload = run_json(capsys, ["construct", "--spec", spec_file, "--n-max", "10"])
    assert code == 0
    assert payload["q"] == list(SMALL_Q)
    assert payload["digits"] == list(SMALL_DIGITS)


def test_construct_csv(capsys, spec_file):
    code = main(["construct", "--spec", spec_file, "--n-max", "4", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,q,digit"
    assert lines[1] == "1,2,0"
    assert lines[4] == "4,2,1"


def test_construct_round_trips_artifacts(tmp_path, capsys, spec_file):
    digits_out = str(tmp_path / "digits.bin")
    spec_out = str(tmp_path / "spec-copy.json")
    code = main(
        [
            "construct",
            "--spec",
            spec_file,
            "--n-max",
            "10",
            "--digits-out",
            digits_out,
            "--spec-out",
            spec_out,
            "--out",
            str(tmp_path / "table.json"),
        ]
    )
    assert code == 0
    assert tuple(read_digit_file(digits_out)) == SMALL_DIGITS
    assert ConstructionSpec.load(spec_out) == small_spec()


def test_construct_over_cap_exits_3(capsys, spec_file):
    assert main(["construct", "--spec", spec_file, "--n-max", "10", "--cap", "5"]) == 3


def test_env_cap_is_honored(monkeypatch, capsys, spec_file):
    monkeypatch.setenv("CNL_SIZE_CAP", "5")
    assert main(["construct", "--spec", spec_file, "--n-max", "10"]) == 3
    monkeypatch.setenv("CNL_SIZE_CAP", "50")
    assert main(["construct", "--spec", spec_file, "--n-max", "10"]) == 0


# ---------------------------------------------------------------------------
# count / weights / normality
# ---------------------------------------------------------------------------


def test_count_from_digit_file(tmp_path, capsys):
    path = str(tmp_path / "digits.bin")
    write_digit_file(path, SMALL_DIGITS)
    code, payload = run_json(capsys, ["count", "--in", path, "--block", "1,3"])
    assert code == 0
    assert payload == {"block": [1, 3], "count": 3, "length": 10}


def test_count_prefix_window(tmp_path, capsys):
    path = str(tmp_path / "digits.bin")
    write_digit_file(path, SMALL_DIGITS)
    code, payload = run_json(
        capsys, ["count", "--in", path, "--block", "1,3", "--prefix", "5"]
    )
    assert code == 0
    assert payload == {"block": [1, 3], "count": 1, "positions": 5}


def test_count_from_spec_needs_n_max(capsys, spec_file):
    assert main(["count", "--spec", spec_file, "--block", "1"]) == 2


def test_count_without_input_exits_2(capsys):
    assert main(["count", "--block", "1"]) == 2


def test_weights_eval_frozen(capsys):
    code, payload = run_json(capsys, ["weights", "eval", "--mu", "nu:6", "--block", "6,0"])
    assert code == 0
    assert payload["weight"] == "29/2048"
    assert payload["weight_decimal"] == pytest.approx(29 / 2048)


def test_normality_check_passes_and_fails(tmp_path, capsys):
    good = str(tmp_path / "good.bin")
    write_digit_file(good, (0, 1) * 5)
    argv = ["normality", "check", "--in", good, "--eps", "1/2", "--k", "1", "--mu", "uniform:2"]
    code, payload = run_json(capsys, argv)
    assert code == 0 and payload["passed"] is True

    bad = str(tmp_path / "bad.bin")
    write_digit_file(bad, (0,) * 10)
    argv[argv.index(good)] = bad
    code, payload = run_json(capsys, argv)
    assert code == 1
    assert payload["passed"] is False
    # lex order scans (0,) first: its count 10 already exceeds the band
    assert payload["witness"]["block"] == [0]


# ---------------------------------------------------------------------------
# moments / orbit
# ---------------------------------------------------------------------------


def test_moments_constant_base(capsys):
    code, payload = run_json(
        capsys, ["moments", "--const-base", "2", "--k", "3", "--checkpoints", "8"]
    )
    assert code == 0
    assert payload["rows"] == [{"n": 8, "k": 3, "moment": "1", "moment_decimal": 1.0}]


def test_moments_from_spec_csv(capsys, spec_file):
    code = main(
        ["moments", "--spec", spec_file, "--checkpoints", "1,2", "--format", "csv"]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,k,moment,moment_decimal"
    assert lines[1] == "1,1,1/2,0.5"
    assert lines[2] == "2,1,1,1.0"


def test_moments_require_checkpoints(capsys):
    assert main(["moments", "--const-base", "2"]) == 2
    assert main(["moments", "--const-base", "2", "--checkpoints", "0,2"]) == 2


def test_orbit_matches_library(capsys, spec_file):
    code, payload = run_json(
        capsys, ["orbit", "--spec", spec_file, "--checkpoints", "0,3", "--tail", "4"]
    )
    assert code == 0
    exp = CantorExpansion.from_spec(small_spec())
    for row, n in zip(payload["rows"], (0, 3)):
        iv = orbit_point(exp, n, tail=4)
        assert row["n"] == n
        assert row["j"] == small_spec().t0_index(n)
        assert Fraction(row["lo"]) == iv.lo
        assert Fraction(row["hi"]) == iv.hi
        assert row["lo_decimal"] == pytest.approx(float(iv.lo))


def test_orbit_csv_header(capsys, spec_file):
    code = main(
        [
            "orbit",
            "--spec",
            spec_file,
            "--checkpoints",
            "0",
            "--tail",
            "4",
            "--format",
            "csv",
        ]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,j,lo,hi,lo_decimal,hi_decimal"


def test_checkpoints_must_increase(capsys, spec_file):
    assert main(["orbit", "--spec", spec_file, "--checkpoints", "3,3", "--tail", "2"]) == 2


# ---------------------------------------------------------------------------
# discrepancy
# ---------------------------------------------------------------------------


def test_discrepancy_exact_with_kn1(tmp_path, capsys):
    seq = tmp_path / "points.txt"
    seq.write_text("1/4 0.75\n")
    code, payload = run_json(
        capsys, ["discrepancy", "--in", str(seq), "--exact", "--bounds", "kn1"]
    )
    assert code == 0
    assert payload["n"] == 2
    assert payload["discrepancy"] == "1/4"
    assert payload["bounds"]["kn1"] == "1/4"
    assert payload["within"]["kn1"] is True


def test_discrepancy_kn2_from_families_file(tmp_path, capsys):
    seq = tmp_path / "points.txt"
    seq.write_text("\n".join(f"{2 * i - 1}/20" for i in range(1, 11)) + "\n")
    fams = tmp_path / "families.json"
    fams.write_text(json.dumps([[2, 3, "1/4"], [1, 4, "1/2"]]))
    code, payload = run_json(
        capsys,
        [
            "discrepancy",
            "--in",
            str(seq),
            "--bounds",
            "kn2",
            "--families",
            str(fams),
        ],
    )
    assert code == 0
    assert payload["discrepancy"] == "1/20"
    assert payload["bounds"]["kn2"] == "7/20"


def test_discrepancy_violated_bound_exits_1(tmp_path, capsys):
    seq = tmp_path / "points.txt"
    seq.write_text("0 0 0 0\n")
    code, payload = run_json(
        capsys,
        [
            "discrepancy",
            "--in",
            str(seq),
            "--bounds",
            "e1l",
            "--e1l-base",
            "10",
            "--e1l-eps",
            "1/100",
        ],
    )
    assert code == 1
    assert payload["discrepancy"] == "1"
    assert payload["within"]["e1l"] is False


def test_discrepancy_bad_value_exits_2(tmp_path, capsys):
    seq = tmp_path / "points.txt"
    seq.write_text("1/4 pear\n")
    assert main(["discrepancy", "--in", str(seq)]) == 2


def test_discrepancy_unknown_bound_exits_2(tmp_path, capsys):
    seq = tmp_path / "points.txt"
    seq.write_text("1/4\n")
    assert main(["discrepancy", "--in", str(seq), "--bounds", "kn9"]) == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_claim_writes_deterministic_cert_and_sidecar(tmp_path, capsys):
    argv = ["verify", "--claim", "lemma-amount", "--grid", "b=2..3,w=1..2"]
    out1, out2 = str(tmp_path / "c1.json"), str(tmp_path / "c2.json")
    assert main(argv + ["--out", out1]) == 0
    assert main(argv + ["--out", out2]) == 0
    b1 = open(out1, "rb").read()
    b2 = open(out2, "rb").read()
    assert b1 == b2, "certificate files must not embed timing noise"
    cert = json.loads(b1)
    assert cert["passed"] is True
    meta = json.loads(open(out1 + ".meta.json").read())
    assert meta["runtimes"][0]["claim"] == "lemma-amount"
    assert isinstance(meta["runtimes"][0]["runtime_seconds"], float)


def test_verify_failing_claim_exits_1(monkeypatch, capsys):
    def always_fails(**kwargs):
        return Certificate(
            claim="zz-fail", params={}, passed=False, checked=1, counterexample={"n": 1}
        )

    monkeypatch.setitem(CLAIMS, "zz-fail", (always_fails, "plain"))
    code, payload = run_json(capsys, ["verify", "--claim", "zz-fail"])
    assert code == 1
    assert payload["passed"] is False


def test_verify_bad_grid_exits_2(capsys):
    assert main(["verify", "--claim", "lemma-amount", "--grid", "b=..2"]) == 2


def test_verify_all_with_zero_budget(capsys):
    code, payload = run_json(capsys, ["verify", "--all", "--budget", "0s"])
    assert code == 0
    assert len(payload["certificates"]) + len(payload["skipped"]) == 13


def test_verify_without_claim_exits_2(capsys):
    assert main(["verify"]) == 2


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def test_report_plain_spec(capsys, spec_file):
    code, payload = run_json(
        capsys,
        [
            "report",
            "--spec",
            spec_file,
            "--block",
            "1",
            "--checkpoints",
            "2,10",
            "--tail",
            "2",
        ],
    )
    assert code == 0
    assert payload["family"] is None
    assert payload["epsbar_trajectory"] == []
    assert [r["n"] for r in payload["normality_ratios"]] == [2, 10]
    # n = 10 leaves no room for a 2-digit tail; the row degrades to nulls
    assert payload["orbit_enclosures"][1] == {"n": 10, "lo": None, "hi": None}
    assert payload["orbit_enclosures"][0]["lo"] is not None
    d0 = payload["d_star_trajectory"][0]
    assert Fraction(d0["d_star"]) <= 1


def test_report_qde_epsbar_trajectory(capsys):
    code, payload = run_json(
        capsys,
        [
            "report",
            "--family",
            "qde-scaled",
            "--block",
            "0",
            "--checkpoints",
            "64,5000",
            "--tail",
            "4",
        ],
    )
    assert code == 0
    assert payload["family"] == "qde-scaled"
    bars = payload["epsbar_trajectory"]
    assert bars[0]["n"] == 64 and bars[0]["i"] == 1
    assert bars[0]["epsbar"] is None and bars[0]["unmet"]
    assert bars[1]["n"] == 5000 and bars[1]["i"] == 4
    assert Fraction(bars[1]["epsbar"]) < 1
    d = payload["d_star_trajectory"][1]
    assert Fraction(d["d_star"]) <= Fraction(bars[1]["epsbar"])


def test_report_rejects_csv(capsys, spec_file):
    assert main(["report", "--spec", spec_file, "--checkpoints", "2", "--format", "csv"]) == 2


# ---------------------------------------------------------------------------
# error plumbing and process-level behavior
# ---------------------------------------------------------------------------


def test_malformed_spec_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["construct", "--spec", str(bad), "--n-max", "5"]) == 2


def test_missing_input_file_exits_2(tmp_path, capsys):
    missing = str(tmp_path / "nope.bin")
    assert main(["count", "--in", missing, "--block", "1"]) == 2


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_execution_round_trip():
    proc = subprocess.run(
        [sys.executable, "-m", "cantornormal.cli", "weights", "eval", "--mu", "nu:2", "--block", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["weight"] == "1/2"
    proc = subprocess.run(
        [sys.executable, "-m", "cantornormal.cli", "frobnicate"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


@pytest.mark.skipif(shutil.which("cnl") is None, reason="console script not installed")
def test_console_script_entry_point():
    proc = subprocess.run(["cnl", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "construct" in proc.stdout


def test_run_config_validation():
    with pytest.raises(InvalidSpecError):
        cli.RunConfig("orbit", None, 0, 64, None, "json", None)
    with pytest.raises(InvalidSpecError):
        cli.RunConfig("orbit", None, None, 0, None, "json", None)
    with pytest.raises(InvalidSpecError):
        cli.RunConfig("orbit", None, None, 64, (), "json", None)
    with pytest.raises(InvalidSpecError):
        cli.RunConfig("orbit", None, None, 64, None, "yaml", None)
