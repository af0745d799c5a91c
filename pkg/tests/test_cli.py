import json
import os
import subprocess
import sys

import pytest

from invforge.cli import main
from invforge import corpus

DATA = corpus.DATA_DIR


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info_human(capsys):
    code, out, err = run_cli(capsys, "info", "--group",
                             os.path.join(DATA, "q8.group"))
    assert code == 0
    assert "order = 8" in out


def test_generators_machine(capsys):
    code, out, _ = run_cli(capsys, "generators", "--group",
                           os.path.join(DATA, "an-split.group"), "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["degrees"] == [2, 3, 3]
    assert payload["outputs"]["e"] == 1
    assert payload["exit_code"] == 0


def test_machine_output_deterministic(capsys):
    argv = ["hilbert", "--group", os.path.join(DATA, "mu2sq.group"),
            "--max-degree", "6", "--machine"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["outputs"]["dims"] == [1, 0, 2, 0, 3, 0, 4]


def test_molien_command(capsys):
    code, out, _ = run_cli(capsys, "molien", "--group",
                           os.path.join(DATA, "mu2sq.group"),
                           "--max-degree", "6", "--machine")
    assert code == 0
    assert json.loads(out)["outputs"]["dims"] == [1, 0, 2, 0, 3, 0, 4]


def test_relation_command(capsys):
    code, out, _ = run_cli(capsys, "relation", "--group",
                           os.path.join(DATA, "an-split.group"),
                           "--wdeg-max", "8", "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["relation"] == "y1^3 - y2*y3"
    assert payload["outputs"]["weighted_degree"] == 6


def test_normalizer_command(capsys):
    code, out, _ = run_cli(capsys, "normalizer", "--group",
                           os.path.join(DATA, "an-split.group"), "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["commutant_dim"] == 2
    assert payload["outputs"]["realized_outer_count"] == 1


def test_fixed_points_command(capsys):
    code, out, _ = run_cli(capsys, "fixed-points", "--group",
                           os.path.join(DATA, "an-nonsplit.group"), "--machine")
    assert code == 0
    assert json.loads(out)["outputs"]["count"] == 0


def test_rank_command(capsys):
    code, out, _ = run_cli(capsys, "rank", "--group",
                           os.path.join(DATA, "po3diag.group"),
                           "--ell", "2", "--machine")
    assert code == 0
    assert json.loads(out)["outputs"]["rank"] == 2


def test_permmod_command(capsys):
    code, out, _ = run_cli(capsys, "permmod", "--group",
                           os.path.join(DATA, "a4perm.group"),
                           "--p", "5", "--machine")
    assert code == 0
    assert json.loads(out)["outputs"]["irreducible"] is True


def test_claim51_command_pass_and_equality(capsys):
    code, out, _ = run_cli(capsys, "claim51", "--poly", "x*(x+1)*y*(y+1)",
                           "--q", "2", "--n", "2", "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["total"] == 8
    assert payload["outputs"]["bound"] == 8
    assert payload["outputs"]["verdict"] is True


def test_parabolic_command(capsys):
    code, out, _ = run_cli(capsys, "parabolic", "--q", "3", "--n", "3",
                           "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["verdict"] is True


def test_h1_command(capsys):
    code, out, _ = run_cli(capsys, "h1", "--action",
                           os.path.join(DATA, "z2-inv-mu4.action"), "--machine")
    assert code == 0
    assert json.loads(out)["outputs"]["class_count"] == 2


def test_square_classes_command(capsys):
    code, out, _ = run_cli(capsys, "square-classes", "--field", "reals",
                           "--machine")
    assert code == 0
    assert json.loads(out)["outputs"]["count"] == 2


def test_verify_command(capsys):
    code, out, _ = run_cli(capsys, "verify", "an-split", "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["passed"] is True


def test_generators_icosahedral_cli(capsys, icosahedral):
    code, out, _ = run_cli(capsys, "generators", "--group",
                           os.path.join(DATA, "e8.group"), "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["degrees"] == [12, 20, 30]
    assert payload["outputs"]["e"] == 2
    assert payload["outputs"]["scaled_exponents"] == [6, 10, 15]


def test_verify_all_command(capsys):
    code, out, _ = run_cli(capsys, "verify", "--all", "--machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["passed"] is True
    examples = payload["outputs"]["examples"]
    assert len(examples) >= 10
    assert all(e["passed"] for e in examples)


def test_list_examples_command(capsys):
    code, out, _ = run_cli(capsys, "list-examples", "--machine")
    assert code == 0
    examples = json.loads(out)["outputs"]["examples"]
    assert len(examples) >= 10
    ids = {e["id"] for e in examples}
    assert "e8" in ids and "char2" in ids


def test_exit_code_computation_error(capsys):
    code, out, err = run_cli(capsys, "molien", "--group",
                             os.path.join(DATA, "char2.group"),
                             "--max-degree", "4")
    assert code == 1
    assert "error" in err


def test_exit_code_failing_verdict(capsys):
    # rank hypothesis fails: mu_3 diag in GL_2 with ell = 2 has no 2-torsion
    code, out, _ = run_cli(capsys, "rank", "--group",
                           os.path.join(DATA, "an-split.group"),
                           "--ell", "2", "--machine")
    assert code == 1
    payload = json.loads(out)
    assert payload["outputs"]["hypothesis_holds"] is False
    assert payload["exit_code"] == 1


def test_exit_code_unknown_command(capsys):
    code = main(["definitely-not-a-command"])
    _ = capsys.readouterr()
    assert code == 2


def test_unknown_command_returns_2():
    proc = subprocess.run(
        [sys.executable, "-m", "invforge.cli", "definitely-not-a-command"],
        capture_output=True, text=True)
    assert proc.returncode == 2


def test_missing_args_exit_2(capsys):
    code = main(["info"])
    _ = capsys.readouterr()
    assert code == 2


PASS_FAIL_INVOCATIONS = [
    ("info", ["info", "--group", os.path.join(DATA, "q8.group")],
     ["info", "--group", "/no/such/file.group"]),
    ("hilbert", ["hilbert", "--group", os.path.join(DATA, "mu2sq.group"),
                 "--max-degree", "4"],
     ["hilbert", "--group", "/no/such/file.group", "--max-degree", "4"]),
    ("molien", ["molien", "--group", os.path.join(DATA, "mu2sq.group"),
                "--max-degree", "4"],
     ["molien", "--group", os.path.join(DATA, "char2.group"),
      "--max-degree", "4"]),
    ("generators", ["generators", "--group", os.path.join(DATA, "an-split.group")],
     ["generators", "--group", os.path.join(DATA, "char2.group")]),
    ("relation", ["relation", "--group", os.path.join(DATA, "an-split.group"),
                  "--wdeg-max", "6"],
     ["relation", "--group", "/no/such/file.group", "--wdeg-max", "6"]),
    ("normalizer", ["normalizer", "--group", os.path.join(DATA, "an-split.group")],
     ["normalizer", "--group", os.path.join(DATA, "q8.group"),
      "--aut-bound", "2"]),
    ("fixed-points", ["fixed-points", "--group",
                      os.path.join(DATA, "an-split.group")],
     ["fixed-points", "--group", os.path.join(DATA, "an-split-2.group")]),
    ("rank", ["rank", "--group", os.path.join(DATA, "po3diag.group"),
              "--ell", "2"],
     ["rank", "--group", os.path.join(DATA, "po3diag.group"), "--ell", "3"]),
    ("permmod", ["permmod", "--group", os.path.join(DATA, "a4perm.group"),
                 "--p", "3"],
     ["permmod", "--group", os.path.join(DATA, "q8.group"), "--p", "3"]),
    ("claim51", ["claim51", "--poly", "x*y", "--q", "2", "--n", "2"],
     ["claim51", "--poly", "x*y +", "--q", "2", "--n", "2"]),
    ("parabolic", ["parabolic", "--q", "3", "--n", "3"],
     ["parabolic", "--q", "3", "--n", "3", "--poly", "x2^2 + x2*x3"]),
    ("h1", ["h1", "--action", os.path.join(DATA, "z2-on-z2.action")],
     ["h1", "--action", "/no/such/file.action"]),
    ("square-classes", ["square-classes", "--field", "reals"],
     ["square-classes", "--field", "finite(2)"]),
    ("verify", ["verify", "an-split"],
     ["verify", "no-such-example"]),
    ("list-examples", ["list-examples"], None),
]


@pytest.mark.parametrize("name,passing,failing", PASS_FAIL_INVOCATIONS,
                         ids=[r[0] for r in PASS_FAIL_INVOCATIONS])
def test_exit_code_contract_per_subcommand(capsys, name, passing, failing):
    code = main(passing)
    _ = capsys.readouterr()
    assert code == 0, f"{name}: passing invocation should exit 0"
    if failing is None:
        # no computation-level failure exists; a usage error exits 2
        code = main([name, "--bogus-flag"])
        _ = capsys.readouterr()
        assert code == 2
    else:
        code = main(failing)
        _ = capsys.readouterr()
        assert code == 1, f"{name}: failing invocation should exit 1"


def test_machine_roundtrip_lossless(capsys):
    code, out, _ = run_cli(capsys, "claim51", "--poly", "x", "--q", "3",
                           "--n", "2", "--machine")
    payload = json.loads(out)
    assert json.loads(json.dumps(payload)) == payload


def test_invforge_threads_env_validated(capsys, monkeypatch):
    monkeypatch.setenv("INVFORGE_THREADS", "not-a-number")
    code, out, err = run_cli(capsys, "square-classes", "--field", "reals")
    assert code == 1
    assert "INVFORGE_THREADS" in err
    monkeypatch.setenv("INVFORGE_THREADS", "2")
    code, out, err = run_cli(capsys, "square-classes", "--field", "reals")
    assert code == 0


def test_cli_entry_point_subprocess():
    group = os.path.join(DATA, "mu2sq.group")
    proc = subprocess.run(
        [sys.executable, "-m", "invforge.cli", "info", "--group", group,
         "--machine"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["outputs"]["order"] == 4


def test_machine_output_byte_identical_across_processes():
    argv = [sys.executable, "-m", "invforge.cli", "hilbert", "--group",
            os.path.join(DATA, "mu2sq.group"), "--max-degree", "6",
            "--machine"]
    first = subprocess.run(argv, capture_output=True)
    second = subprocess.run(argv, capture_output=True)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
