import json
import subprocess
import sys

from hypothesis import HealthCheck, given, settings, strategies as st

from padicfeas.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_and_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "--prime", "7", "--poly", "1 + 2*x1^2 - 3*x2^2")
    assert code == 0
    verdict = json.loads(out)
    assert verdict["answer"] == "Feasible"
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps(verdict))
    code, out, _ = run(capsys, "verify", "--prime", "7", "--poly", "1 + 2*x1^2 - 3*x2^2",
                       "--cert", str(cert))
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(capsys, "verify", "--prime", "7", "--poly", "1 + 2*x1^2 - 5*x2^2",
                       "--cert", str(cert))
    assert code == 1


def test_exit_codes(capsys):
    assert run(capsys, "solve", "--prime", "7", "--poly", "x1^2 - 3")[0] == 1
    assert run(capsys, "solve", "--prime", "8", "--poly", "x1")[0] == 3
    assert run(capsys, "solve", "--prime", "7", "--poly", "x1^^2")[0] == 3
    assert run(capsys, "frobnicate")[0] == 3
    code, _, err = run(capsys, "solve", "--prime", "7", "--poly", "1 + 2*y")
    assert code == 3 and "position" in err


def test_newton_and_discriminant(capsys):
    code, out, _ = run(capsys, "newton-polygon", "--prime", "3",
                       "--poly", "36 -8868*x1 +29305*x1^2 -35310*x1^3 +18240*x1^4 "
                                 "-3646*x1^5 +243*x1^6")
    assert code == 0
    data = json.loads(out)
    assert [e["length"] for e in data["edges"]] == [2, 3, 1]
    code, out, _ = run(capsys, "discriminant", "--poly", "1 + x1 + x1^3", "--prime", "31")
    assert code == 0 and json.loads(out) == {"discriminant": "31", "prime": "31",
                                             "divisible": True}


def test_reduce_sat_and_forge(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
    code, out, _ = run(capsys, "reduce-sat", "--cnf", str(cnf), "--prime", "7", "--collapse")
    assert code == 0
    data = json.loads(out)
    assert data["D"] == "6" and len(data["system"]) == 2
    code, out, _ = run(capsys, "forge-prime", "--n", "2", "--wagstaff")
    assert code == 0 and json.loads(out)["p"] == "7"
    code, out, _ = run(capsys, "forge-prime", "--n", "2", "--seed", "1")
    assert code in (0, 2) and "status" in json.loads(out)


def test_oracle_subcommand(capsys):
    code, out, _ = run(capsys, "oracle", "--prime", "7", "--poly", "x1^2 - 2")
    assert code == 0 and json.loads(out)["status"] == "Feasible"


@settings(max_examples=150, deadline=None,
          suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.text(max_size=1024), st.sampled_from(["solve", "certify", "newton-polygon",
                                                "discriminant", "oracle"]))
def test_fuzzed_input_never_crashes(capsys, text, cmd):
    argv = [cmd, "--prime", "5", "--poly", text]
    if cmd in ("solve", "certify"):
        argv += ["--depth", "40"]
    if cmd == "oracle":
        argv += ["--depth", "3", "--budget", "20000"]
    code = main(argv)
    out, err = capsys.readouterr()
    assert code in (0, 1, 2, 3)
    assert "Traceback" not in err and "internal failure" not in err


@settings(max_examples=60, deadline=None,
          suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(st.tuples(st.integers(-99, 99).filter(bool), st.integers(0, 9),
                          st.integers(-3, 9)),
                min_size=1, max_size=5, unique_by=lambda t: t[1:]))
def test_fuzzed_wellformed_polynomials(capsys, terms):
    text = " + ".join(f"{c}*x1^{a}*x2^{b}" for c, a, b in terms).replace("+ -", "- ")
    # a leading minus needs the --poly=... form
    code = main(["solve", "--prime", "3", f"--poly={text}", "--depth", "60"])
    out, err = capsys.readouterr()
    assert code in (0, 1, 2)
    assert "internal failure" not in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "padicfeas.cli", "solve", "--prime", "7",
                           "--poly", "x1^2 - 2"], capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["answer"] == "Feasible"
