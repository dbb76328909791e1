import io
import json

import pytest

from qgrass.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, stdout=out)
    return code, out.getvalue()


def test_qbinom():
    assert run(["qbinom", "--q", "2", "--m", "4", "--k", "2"]) == (0, "35\n")


def test_qbinom_non_prime_is_fine():
    assert run(["qbinom", "--q", "4", "--m", "2", "--k", "1"]) == (0, "5\n")


def test_enumerate_rejects_non_prime(capsys):
    code, out = run(["enumerate", "--p", "4", "--n", "3", "--r", "1"])
    assert code == 2 and out == ""
    assert "q must be prime for geometric commands" in capsys.readouterr().err


def test_bad_flag_is_usage_error(capsys):
    code, _ = run(["qbinom", "--q", "2", "--bogus"])
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_budget_exceeded(capsys):
    code, _ = run(["enumerate", "--q", "2", "--n", "4", "--r", "2", "--budget", "10"])
    assert code == 3
    assert "budget" in capsys.readouterr().err


def test_budget_env(monkeypatch):
    monkeypatch.setenv("QGRASS_BUDGET", "10")
    code, _ = run(["spectrum", "--q", "2", "--n", "4", "--r", "2"])
    assert code == 3


def test_enumerate_json():
    code, out = run(["enumerate", "--q", "2", "--n", "3", "--r", "1", "--format", "json"])
    data = json.loads(out)
    assert code == 0 and data["size"] == 7 and len(data["rows"]) == 7


def test_verify_product():
    code, out = run(["verify", "product", "--q", "2", "--n", "3", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"suite", "q", "n", "checks", "elapsed_ms"}
    assert data["checks"] and all(c["status"] == "pass" for c in data["checks"])
    assert all(isinstance(c["constant"], str) for c in data["checks"] if "constant" in c)
    tuples = [tuple(int(v) for v in c["params"].values()) for c in data["checks"] if c["name"] == "product"]
    assert tuples == sorted(tuples)


def test_kernel_values_are_strings():
    code, out = run(["kernel", "--q", "2", "--n", "3", "--r1", "1", "--r2", "2", "--s", "1", "--format", "csv"])
    assert code == 0
    assert out.splitlines() == ["t,value", "1,2/9", "2,-1/6"]


def test_kernel_forms_match():
    outs = {
        form: run(["kernel", "--q", "4", "--n", "5", "--r1", "2", "--r2", "3", "--s", "2", "--form", form, "--format", "csv"])[1]
        for form in ("1", "2", "3", "4", "rodrigues")
    }
    assert len(set(outs.values())) == 1
    assert run(["kernel", "--q", "4", "--n", "5", "--r1", "2", "--r2", "3", "--s", "2", "--form", "oracle"])[0] == 2


def test_kernel_s_out_of_range():
    assert run(["kernel", "--n", "3", "--r1", "1", "--r2", "1", "--s", "2"])[0] == 2


@pytest.mark.parametrize("cmd", [["spectrum", "--r", "2"], ["radon", "--r1", "1", "--r2", "3"], ["counts"], ["laplacian", "--r", "1", "--group"]])
def test_other_subcommands(cmd):
    code, out = run(cmd + ["--format", "json"])
    assert code == 0
    json.loads(out)


def test_verify_is_byte_identical_across_threads():
    a = run(["verify", "all", "--q", "2", "--n", "3", "--no-timing", "--format", "json"])
    b = run(["verify", "all", "--q", "2", "--n", "3", "--no-timing", "--format", "json", "--threads", "4"])
    assert a == b and a[0] == 0


def test_verify_all_non_prime_runs_formula_suites():
    code, out = run(["verify", "all", "--q", "4", "--n", "3", "--no-timing", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert {c["name"].split("/")[0] for c in data["checks"]} == {"counts", "kernels", "rodrigues"}
    assert "product" in data["skipped"]


def test_verify_geometric_suite_non_prime():
    assert run(["verify", "radon", "--q", "6", "--n", "3"])[0] == 2


def test_verify_unknown_suite():
    assert run(["verify", "nope"])[0] == 2


def test_table_output():
    code, out = run(["verify", "adjoint", "--q", "2", "--n", "4", "--no-timing"])
    assert code == 0
    assert out.splitlines()[-1].startswith("suite adjoint q=2 n=4:")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
