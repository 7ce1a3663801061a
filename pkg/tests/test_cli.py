import io
import json
import subprocess
import sys

import pytest

from scrollhn import cli


def run(argv, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    try:
        cfg = cli.config_from_args(argv)
    except cli.UsageError:
        return cli.EXIT_USAGE, "", ""
    code = cli.run(cfg, out, err)
    return code, out.getvalue(), err.getvalue()


def test_destab_range_is_one_line_per_genus():
    code, out, _ = run(["destab-search", "--g", "5..40", "--seed", "1"])
    lines = out.splitlines()
    assert code == 0 and len(lines) == 36
    recs = [json.loads(line) for line in lines]
    assert [r["g"] for r in recs] == list(range(5, 41))
    assert all(r["verdict"] and r["seed"] == 1 for r in recs)


def test_jobs_do_not_change_output():
    _, one, _ = run(["sweep", "--g", "5..12"])
    _, four, _ = run(["sweep", "--g", "5..12", "--jobs", "3"])
    assert one == four


def test_deterministic_bytes():
    a = run(["destab-search", "--g", "7..9", "--seed", "0x10"])[1]
    b = run(["destab-search", "--g", "7..9", "--seed", "16"])[1]
    assert a == b


def test_seed_env_fallback(monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "99")
    assert cli.config_from_args(["destab-search", "--g", "6"]).seed == 99
    assert cli.config_from_args(["destab-search", "--g", "6", "--seed", "5"]).seed == 5
    monkeypatch.delenv(cli.SEED_ENV)
    assert cli.config_from_args(["destab-search", "--g", "6"]).seed == 0xC0FFEE


def test_trigonal_small_genus_text():
    code, out, _ = run(["trigonal", "--g", "4", "--output", "text"])
    assert code == 0
    assert "O_C(3)" in out and "18" in out and "12" in out


def test_trigonal_json():
    code, out, _ = run(["trigonal", "--g", "6"])
    rec = json.loads(out)
    assert code == 0 and rec["filtration"][1]["slope"] == "46/3"


def test_genus6_json():
    code, out, _ = run(["genus6"])
    rec = json.loads(out)
    assert code == 0
    assert rec["three_step_slopes"] == ["20", "16", "17"]
    assert rec["hn_slopes"] == ["20", "50/3"]
    assert rec["segre_quadrics"]["dimension"] == 3


def test_kernel_splitting_json():
    code, out, _ = run(["kernel-splitting", "--g", "11"])
    rec = json.loads(out)
    assert code == 0
    case = rec["cases"][2]
    assert case["d"] == 3 and case["cokernel"] == {"twists": [8, 8]}
    assert case["kernel"] == {"twists": [-8, -8]}


def test_surface_json():
    code, out, _ = run(["surface", "--g", "9"])
    rec = json.loads(out)
    assert code == 0
    assert rec["curve"] == {"lattice": "Hirzebruch(1)", "coords": [3, 7]}
    assert rec["self_intersection"] == "33"


@pytest.mark.parametrize(
    "argv",
    [
        ["destab-search", "--g", "4"],
        ["destab-search", "--g", "9..7"],
        ["destab-search", "--g", "x"],
        ["destab-search"],
        ["trigonal", "--g", "2"],
        ["trigonal", "--g", "5", "--jobs", "0"],
        ["trigonal", "--g", "5", "--seed", "-1"],
        ["genus6", "--g", "7"],
    ],
)
def test_usage_errors(argv):
    assert cli.main(argv) == cli.EXIT_USAGE


def test_unknown_command_exit_code():
    assert cli.main(["bogus"]) == cli.EXIT_USAGE


def test_falsified_exit_code(monkeypatch):
    def broken(g, seed=0, backend=None):
        raise AssertionError("planted failure")

    monkeypatch.setattr(cli.nodal, "destabilizer_search", broken)
    code, out, err = run(["destab-search", "--g", "6"])
    assert code == cli.EXIT_FALSIFIED
    assert "planted failure" in err and json.loads(out)["error"] == "planted failure"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "scrollhn", "trigonal", "--g", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["filtration"][0]["slope"] == "16"
