"""
Runs the libanyon command line end to end and checks exit codes, reports
and the agreement of text and JSON output.

Execute via one of the following commands:
   pytest libanyon/tests/functionality_tests/test_cli.py
   python libanyon/tests/functionality_tests/test_cli.py
"""

import json
import logging
import math
from pathlib import Path

import pytest

from libanyon.categories import dump_category, fibonacci_category
from libanyon.cli import main
from libanyon.utils.logs import LogConfig, remove_handlers
from libanyon.utils.reports import fmt_real

HERE = Path(__file__).parent
PRBOX = str(HERE / "models" / "prbox.json")
DETERMINISTIC = str(HERE / "models" / "deterministic.json")
SQRT5 = "2.2360679775"


@pytest.fixture(autouse=True)
def reset_cli_logging():
    yield
    logs = LogConfig.config
    top = logging.getLogger(logs.name)
    remove_handlers(top)
    top.propagate = True
    logs.logger_set = False
    logs.filename = None


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def field(out, name):
    """Value after ``name: `` on the first matching report line."""
    prefix = name + ": "
    return next(line[len(prefix) :] for line in out.splitlines() if line.startswith(prefix))


def broken_category(tmp_path):
    path = tmp_path / "broken.json"
    dump_category(fibonacci_category(), path)
    data = json.loads(path.read_text())
    for entry in data["F"]:
        if all(entry[k] == 1 for k in "abcdef"):
            entry["re"] = -entry["re"]
    path.write_text(json.dumps(data))
    return str(path)


def test_category_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "category", "verify", "--builtin", "fibonacci")
    assert code == 0 and out.strip().endswith("result: pass")

    code, out, _ = run(capsys, "category", "verify", "--file", broken_category(tmp_path))
    assert code == 1, "A flipped F sign must fail verification"
    assert any(line.startswith("pentagon") and line.split()[5] == "FAIL" for line in out.splitlines())
    assert out.strip().endswith("result: FAIL")


def test_category_info_text_and_json_agree(capsys):
    code, text, _ = run(capsys, "category", "info", "--builtin", "ising")
    assert code == 0
    code, out, _ = run(capsys, "category", "info", "--builtin", "ising", "--format", "json")
    data = json.loads(out)
    assert field(text, "global dimension") == fmt_real(data["global_dimension"]) == "2"
    assert [lab["name"] for lab in data["labels"]] == ["1", "sigma", "psi"]
    assert "  sigma x sigma = 1 + psi" in text.splitlines()


def test_category_dump_round_trip(capsys, tmp_path):
    target = tmp_path / "fib.json"
    code, out, _ = run(capsys, "category", "dump", "--builtin", "fibonacci", "--output", str(target))
    assert code == 0 and out.startswith("wrote fibonacci")
    code, out, _ = run(capsys, "category", "verify", "--file", str(target))
    assert code == 0
    code, out, _ = run(capsys, "category", "dump", "--file", str(target))
    assert out == target.read_text(), "Dumping a loaded file should reproduce it byte for byte"


def test_rep_commands(capsys):
    code, out, _ = run(capsys, "rep", "check", "--builtin", "fibonacci", "-n", "4", "--total", "tau")
    assert code == 0 and "result: pass" in out
    assert field(out, "leaves") == "4 x tau, total tau, dimension 3"

    code, out, _ = run(capsys, "rep", "density", "--builtin", "fibonacci", "-n", "4", "--total", "tau")
    assert code == 0
    assert "closure 8 of 8" in out and field(out, "irreducible") == "yes"

    code, out, _ = run(capsys, "rep", "apply", "--builtin", "fibonacci", "-n", "3", "--format", "json")
    data = json.loads(out)
    assert data["word"] == "" and data["dimension"] == 2 and data["total"] == "tau"
    one, zero = {"re": 1.0, "im": 0.0}, {"re": 0.0, "im": 0.0}
    assert data["matrix"] == [[one, zero], [zero, one]], "The empty word acts as the identity"


def test_rep_errors(capsys):
    code, _, err = run(capsys, "rep", "build", "--builtin", "ising", "-n", "3", "--leaf", "sigma", "--total", "1")
    assert code == 1 and err.count("zero-dimensional") == 1, "The error is reported once"

    code, _, err = run(capsys, "rep", "apply", "--builtin", "fibonacci", "-n", "3", "-w", "s1 x2")
    assert code == 2 and "column 4" in err

    code, _, err = run(capsys, "rep", "build", "--builtin", "nosuch")
    assert code == 2 and "Unknown builtin category" in err

    code, _, err = run(capsys, "rep", "build", "--file", "does-not-exist.json", "-n", "3")
    assert code == 2

    code, _, _ = run(capsys, "rep", "frobnicate")
    assert code == 2


def test_jones(capsys):
    code, out, _ = run(capsys, "jones", "-w", "s1 s1 s1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["strands"] == 2 and data["writhe"] == 3 and data["components"] == 1
    assert data["difference"] <= 1e-8
    t = complex(math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5))
    expected = -(t**-4) + t**-3 + t**-1
    assert abs(complex(data["jones"]["re"], data["jones"]["im"]) - expected) < 1e-10

    code, out, _ = run(capsys, "jones", "-w", "", "-n", "1", "--builtin", "fibonacci")
    assert code == 0
    assert field(out, "jones") == "1 0" and field(out, "word") == "(identity)"
    assert field(out, "markov trace (fibonacci, unknot)") == "1 0"

    code, _, err = run(capsys, "jones", "-w", "s1 s3", "-n", "3")
    assert code == 2 and "column 4" in err


def test_kcbs(capsys):
    code, out, _ = run(capsys, "contextuality", "--kcbs-fibonacci")
    assert code == 0, "A contextual verdict is a successful analysis"
    assert field(out, "contexts") == "{P1,P2} {P1,P5} {P2,P3} {P3,P4} {P4,P5}"
    assert field(out, "value") == SQRT5 and field(out, "max state value") == SQRT5
    assert field(out, "classical bound") == "2" and field(out, "exclusive") == "yes"
    assert field(out, "verdict") == "contextual" and field(out, "replay") == "ok"
    assert field(out, "consistent assignments") == "11 of 32"
    assert field(out, "functional violation") == "0.2360679775", "KCBS violates the pentagon bound by sqrt5 - 2"

    code, again, _ = run(capsys, "contextuality", "--kcbs-fibonacci")
    assert again == out, "Reports must be byte-identical across runs"

    code, js, _ = run(capsys, "contextuality", "--kcbs-fibonacci", "--format", "json")
    data = json.loads(js)
    assert fmt_real(data["lp_distance"]) == field(out, "lp distance")
    assert data["certificate"]["violation"] >= math.sqrt(5) - 2 - 1e-6
    assert data["classical_bound"] == 2 and data["verdict"] == "contextual"
    assert abs(data["functional_violation"] - (math.sqrt(5) - 2)) < 1e-10


@pytest.mark.parametrize("name", ["kcbs.yaml", "kcbs.toml"])
def test_kcbs_from_config_file(capsys, name):
    code, out, _ = run(capsys, "contextuality", "--config", str(HERE / name))
    assert code == 0
    data = json.loads(out)
    assert data["source"] == "kcbs-fibonacci" and data["tolerances"]["lp"] == 1e-7


def test_model_files(capsys):
    code, out, _ = run(capsys, "contextuality", "--file", PRBOX)
    assert code == 0
    assert field(out, "verdict") == "strongly_contextual"
    assert field(out, "consistent assignments") == "0 of 16"
    assert field(out, "exclusive") == "no" and field(out, "value") == "2"
    assert field(out, "classical bound") == "n/a (support is not exclusive)"

    code, out, _ = run(capsys, "contextuality", "--file", DETERMINISTIC, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "noncontextual"
    assert data["lp_distance"] <= 1e-9 and data["consistent_assignments"] == 1

    code, out, _ = run(capsys, "scenario", "check", "--file", PRBOX)
    assert code == 0 and field(out, "global assignments") == "16"


def test_bound_needs_exclusive_support(capsys, tmp_path):
    data = json.loads(Path(DETERMINISTIC).read_text())
    data["tables"] = {str(ci): {"1,1": 1.0} for ci in range(len(data["contexts"]))}
    path = tmp_path / "all_ones.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "contextuality", "--file", str(path))
    assert code == 0 and field(out, "value") == "4" and field(out, "exclusive") == "no"
    assert field(out, "classical bound").startswith("n/a"), "Clicks beyond the bound are allowed without exclusivity"
    assert field(out, "verdict") == "noncontextual"
    assert "functional violation" not in out

def test_signalling_model(capsys, tmp_path):
    data = json.loads(Path(PRBOX).read_text())
    data["tables"]["0"] = {"0,0": 1.0}
    path = tmp_path / "signalling.json"
    path.write_text(json.dumps(data))
    for argv in (["contextuality", "--file", str(path)], ["scenario", "check", "--file", str(path)]):
        code, out, _ = run(capsys, *argv)
        assert code == 1
        assert "error: signalling model: contexts 0 and 1 disagree on a0" in out


def test_braided_family(capsys):
    argv = ["contextuality", "--braiding", "--builtin", "fibonacci", "-n", "4"]
    argv += ["-w", "", "-w", "s1", "-w", "s2", "-w", "s1 s2", "-w", "s2 s1"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert field(out, "source") == "braiding (fibonacci)"
    assert field(out, "replay") == "ok"

    code, _, err = run(capsys, "contextuality", "--braiding", "--builtin", "fibonacci", "-n", "4")
    assert code == 2 and "at least one --word" in err


EXAMPLES = [
    (["category", "verify", "--builtin", "fibonacci"], 0),
    (["category", "verify", "--file", "{broken}"], 1),
    (["category", "verify", "--builtin", "nosuch"], 2),
    (["rep", "build", "--builtin", "fibonacci", "-n", "3", "--total", "tau"], 0),
    (["rep", "density", "--builtin", "fibonacci", "-n", "4", "--total", "tau"], 0),
    (["rep", "apply", "--builtin", "fibonacci", "-n", "3", "-w", ""], 0),
    (["rep", "build", "--builtin", "ising", "-n", "3", "--leaf", "sigma", "--total", "1"], 1),
    (["jones", "-n", "2", "-w", "s1 s1 s1"], 0),
    (["jones", "-n", "1", "-w", ""], 0),
    (["jones", "-n", "3", "-w", "s1 s2^-1 s1 s2^-1"], 0),
    (["jones", "-n", "3", "-w", "s1 s3"], 2),
    (["contextuality", "--kcbs-fibonacci"], 0),
    (["contextuality", "--file", PRBOX], 0),
    (["contextuality", "--file", DETERMINISTIC], 0),
]


@pytest.mark.parametrize("argv, expected_code", EXAMPLES, ids=[" ".join(a[:2]) for a, _ in EXAMPLES])
def test_examples_are_repeatable(capsys, tmp_path, argv, expected_code):
    argv = [broken_category(tmp_path) if arg == "{broken}" else arg for arg in argv]
    code, out, _ = run(capsys, *argv)
    again_code, again, _ = run(capsys, *argv)
    assert code == again_code == expected_code, f"{argv}: exit codes {code}, {again_code}"
    assert out == again, f"{argv}: output differs between identical runs"


def test_example_values(capsys):
    code, out, _ = run(capsys, "rep", "build", "--builtin", "fibonacci", "-n", "3", "--total", "tau")
    lines = out.splitlines()
    s1 = lines.index("s1:")
    assert lines[s1 + 1] == "  -0.809016994375 -0.587785252292  |  0 0", "First row of rho(s1)"
    assert lines[s1 + 2] == "  0 0  |  -0.309016994375 0.951056516295", "Second row of rho(s1)"
    assert "s2:" in lines

    code, out, _ = run(capsys, "jones", "-n", "2", "-w", "s1 s1 s1")
    assert code == 0 and field(out, "writhe") == "3"
    assert float(field(out, "difference")) <= 1e-8

    code, out, _ = run(capsys, "jones", "-n", "3", "-w", "s1 s2^-1 s1 s2^-1")
    re, im = (float(part) for part in field(out, "jones").split())
    assert code == 0 and abs(im) < 1e-8 and abs(re - (1 - math.sqrt(5))) < 1e-10, "Figure-eight is real"


def test_log_file(capsys, tmp_path):
    log = tmp_path / "run.log"
    code, _, _ = run(capsys, "category", "verify", "--builtin", "fibonacci", "--log-file", str(log))
    assert code == 0
    text = log.read_text()
    assert "[category verify]" in text and "7 of 7 checks passed" in text


if __name__ == "__main__":
    pytest.main([__file__])
