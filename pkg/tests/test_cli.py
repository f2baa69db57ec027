import json

import pytest
from helpers import EXPONENT_ONE_SPEC, FROBENIUS_SPEC, MODULAR_SPEC, SWEEDLER_SPEC

from pigalois import __version__
from pigalois.algebra.funcfield import FunctionField
from pigalois.cli import main
from pigalois.io.expression import parse_expression


@pytest.fixture
def write_spec(tmp_path):
    def write(data, name="spec.json", **changes):
        merged = dict(data)
        merged.update(changes)
        path = tmp_path / name
        path.write_text(json.dumps(merged), encoding="utf-8")
        return str(path)

    return write


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_version(capsys):
    code, out = _run(capsys, ["version"])
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "version"
    assert report["result"]["version"] == __version__
    assert report["spec"] is None
    assert "timing_seconds" not in report


def test_cotangent_report(capsys, write_spec):
    code, out = _run(capsys, ["cotangent", "--spec", write_spec(EXPONENT_ONE_SPEC)])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["complex"]["jacobian"] == [["0", "0"], ["0", "0"]]
    assert result["homology"]["pi0_dim"] == 2
    assert result["cartier"]["equal"] is True
    assert result["presentation"]["generators"] == ["x", "y"]


def _relations_field(spec, presentation):
    return FunctionField(spec["p"], tuple(spec["variables"]) + tuple(presentation["unknowns"]))


def test_relations_reparse_over_unknowns(capsys, write_spec):
    code, out = _run(capsys, ["cotangent", "--spec", write_spec(FROBENIUS_SPEC)])
    assert code == 0
    presentation = json.loads(out)["result"]["presentation"]
    assert presentation["unknowns"] == ["X1"]
    field = _relations_field(FROBENIUS_SPEC, presentation)
    (relation,) = presentation["relations"]
    x, X1 = field.var(0), field.var(1)
    assert parse_expression(relation, field) == X1**4 - x**4


def test_unknown_names_avoid_ambient_variables(capsys, write_spec):
    spec = dict(EXPONENT_ONE_SPEC, variables=["X1", "y"], F={"generators": ["X1", "y"]})
    code, out = _run(capsys, ["cotangent", "--spec", write_spec(spec)])
    assert code == 0
    presentation = json.loads(out)["result"]["presentation"]
    assert presentation["unknowns"] == ["_X1", "_X2"]
    field = _relations_field(spec, presentation)
    X1, y, U1, U2 = (field.var(i) for i in range(4))
    parsed = [parse_expression(text, field) for text in presentation["relations"]]
    assert parsed == [U1**2 - X1**2, U2**2 - y**2]


def test_text_output(capsys, write_spec):
    code, out = _run(capsys, ["cotangent", "--spec", write_spec(FROBENIUS_SPEC), "--text"])
    assert code == 0
    assert out.startswith(f"pigalois {__version__} :: cotangent\n")


def test_derivations_and_fixed_field(capsys, write_spec):
    code, out = _run(capsys, ["derivations", "--spec", write_spec(EXPONENT_ONE_SPEC)])
    assert code == 0
    assert json.loads(out)["result"]["module"]["basis"] == [["1", "0"], ["0", "1"]]

    spec = write_spec(EXPONENT_ONE_SPEC, derivations=[["0", "1"]])
    code, out = _run(capsys, ["fixed-field", "--spec", spec])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["algebroid"]["dim"] == 1
    assert result["fixed_field"]["dim_over_base"] == 2


def test_fixed_field_rejects_non_derivation(capsys, write_spec):
    spec = write_spec(EXPONENT_ONE_SPEC, derivations=[["1"]])
    code, _ = _run(capsys, ["fixed-field", "--spec", spec])
    assert code == 2


def test_six_term_and_galois_check(capsys, write_spec):
    spec = write_spec(FROBENIUS_SPEC, E={"generators": ["x^2"]})
    code, out = _run(capsys, ["six-term", "--spec", spec])
    assert code == 0
    sequence = json.loads(out)["result"]["sequence"]
    assert sequence["dims"] == [1, 1, 1, 1, 1, 1]
    assert sequence["exact"] is True
    code, out = _run(capsys, ["galois-check", "--spec", spec])
    assert code == 0
    assert json.loads(out)["result"]["conditions"]["verdict"] == "pass"


def test_tower_command_needs_e(capsys, write_spec):
    code, _ = _run(capsys, ["six-term", "--spec", write_spec(FROBENIUS_SPEC)])
    assert code == 2


def test_chains(capsys, write_spec):
    code, out = _run(capsys, ["frobenius-chain", "--spec", write_spec(FROBENIUS_SPEC)])
    assert code == 0
    assert json.loads(out)["result"]["ok"] is True
    code, out = _run(capsys, ["simple-chain", "--spec", write_spec(FROBENIUS_SPEC, alpha="x")])
    assert code == 0
    assert len(json.loads(out)["result"]["links"]) == 2


def test_roundtrip_command(capsys, write_spec, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"selftest": {"jacobson": 2}}), encoding="utf-8")
    code, out = _run(capsys, ["roundtrip", "--spec", write_spec(EXPONENT_ONE_SPEC), "--config", str(config)])
    assert code == 0
    assert json.loads(out)["result"]["ok"] is True
    code, _ = _run(capsys, ["roundtrip", "--spec", write_spec(FROBENIUS_SPEC), "--config", str(config)])
    assert code == 3


def test_modularity_verdicts(capsys, write_spec):
    code, out = _run(capsys, ["modularity", "--spec", write_spec(MODULAR_SPEC)])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["verdict"] == "Modular"
    assert result["degrees"] == [2, 4]
    code, out = _run(capsys, ["modularity", "--spec", write_spec(MODULAR_SPEC), "--budget", "1"])
    assert code == 4
    assert json.loads(out)["result"]["verdict"] == "Inconclusive"


def test_analyze_is_byte_stable(capsys, write_spec):
    spec = write_spec(FROBENIUS_SPEC)
    first = _run(capsys, ["analyze", "--spec", spec, "--seed", "7"])
    second = _run(capsys, ["analyze", "--spec", spec, "--seed", "7"])
    assert first == second
    assert first[0] == 0
    result = json.loads(first[1])["result"]
    assert result["degree"] == 4
    assert result["simplicity"]["simple"] is True


def test_timing_is_opt_in(capsys):
    code, out = _run(capsys, ["version", "--timing"])
    assert code == 0
    assert "timing_seconds" in json.loads(out)


@pytest.mark.parametrize(
    "changes",
    [{"p": 4}, {"variables": ["x", "x"]}, {"F": {"generators": ["x +"]}}, {"F": {"generators": ["w"]}}],
)
def test_bad_spec_exit_code(capsys, write_spec, changes):
    code, out = _run(capsys, ["analyze", "--spec", write_spec(EXPONENT_ONE_SPEC, **changes)])
    assert code == 2
    assert out == ""


def test_unknown_command_and_suite(capsys, write_spec):
    assert main(["frobnicate", "--spec", write_spec(EXPONENT_ONE_SPEC)]) == 2
    assert main(["selftest", "--suite", "nonsense"]) == 2


def test_bad_config_exit_code(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"runtime": {"budget": 0}}), encoding="utf-8")
    assert main(["version", "--config", str(config)]) == 2


def test_math_precondition_exit_code(capsys, write_spec):
    spec = write_spec(EXPONENT_ONE_SPEC, F={"generators": ["y"], "includes_K": False}, K={"generators": ["x"]})
    code, out = _run(capsys, ["analyze", "--spec", spec])
    assert code == 3
    assert out == ""


def test_selftest_suite(capsys):
    code, out = _run(capsys, ["selftest", "--suite", "simplicity", "--seed", "3"])
    assert code == 0
    report = json.loads(out)
    assert report["result"]["ok"] is True
    assert list(report["result"]["suites"]) == ["simplicity"]


@pytest.mark.slow
def test_sweedler_analysis_is_deterministic(capsys, write_spec):
    spec = write_spec(SWEEDLER_SPEC)
    first = _run(capsys, ["analyze", "--spec", spec])
    second = _run(capsys, ["analyze", "--spec", spec])
    assert first == second
    result = json.loads(first[1])["result"]
    assert result["degree"] == 8
    assert result["modularity"]["verdict"] == "NotModular"
    assert result["modularity"]["power"] == 1
