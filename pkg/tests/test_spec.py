import io
import json

import pytest
from helpers import EXPONENT_ONE_SPEC, FROBENIUS_SPEC, SWEEDLER_SPEC

from pigalois.config import LimitsSection, PigaloisConfig, load_config
from pigalois.errors import ConfigError, NotASubfield, NotATower, SchemaError, SpecError, UnknownVariable
from pigalois.fields.tower import degree_over
from pigalois.io.spec import build_problem, load_spec, read_spec


def _spec(data, **changes):
    merged = dict(data)
    merged.update(changes)
    return read_spec(io.StringIO(json.dumps(merged)))


# ---------------------------------------------------------------------------
# 问题描述
# ---------------------------------------------------------------------------


def test_sweedler_problem():
    problem = build_problem(_spec(SWEEDLER_SPEC))
    assert problem.ambient.dimension == 64
    assert degree_over(problem.F, problem.K) == 8
    assert problem.E is None
    assert problem.parse("x*z+y") == problem.ambient.var(0) * problem.ambient.var(2) + problem.ambient.var(1)


def test_frobenius_problem_with_tower():
    problem = build_problem(_spec(FROBENIUS_SPEC, E={"generators": ["x^2"]}))
    assert degree_over(problem.F, problem.K) == 4
    assert degree_over(problem.E, problem.K) == 2
    assert problem.K == problem.ambient.base()


def test_f_includes_k_by_default():
    problem = build_problem(_spec(EXPONENT_ONE_SPEC, F={"generators": ["x"]}, K={"generators": ["y"]}))
    assert problem.F == problem.ambient.full()


LONE_X_SPEC = {"p": 2, "variables": ["x"], "exponent_bound": 1, "K": {"generators": ["x"]}}


def test_strict_f_must_contain_k():
    spec = _spec(LONE_X_SPEC, F={"generators": [], "includes_K": False})
    with pytest.raises(NotASubfield) as info:
        build_problem(spec)
    assert info.value.generator == "x"


def test_empty_f_generators_default_to_k():
    problem = build_problem(_spec(LONE_X_SPEC, F={"generators": []}))
    assert problem.F == problem.K == problem.ambient.full()


def test_e_must_lie_in_f():
    spec = _spec(EXPONENT_ONE_SPEC, F={"generators": ["x"]}, E={"generators": ["y"]})
    with pytest.raises(NotATower):
        build_problem(spec)


def test_unknown_variable_in_generator():
    with pytest.raises(UnknownVariable):
        build_problem(_spec(EXPONENT_ONE_SPEC, F={"generators": ["w"]}))


@pytest.mark.parametrize(
    "changes",
    [
        {"p": 4},
        {"p": 1},
        {"exponent_bound": 0},
        {"variables": []},
        {"variables": ["x", "x"]},
        {"variables": ["1x"]},
        {"colour": "red"},
        {"F": {"generators": ["x"], "extra": 1}},
        {"schema_version": "2"},
    ],
)
def test_schema_violations(changes):
    with pytest.raises(SchemaError):
        _spec(EXPONENT_ONE_SPEC, **changes)


def test_invalid_json():
    with pytest.raises(SpecError):
        read_spec(io.StringIO("{not json"))


def test_missing_file(tmp_path):
    with pytest.raises(SpecError):
        read_spec(tmp_path / "missing.json")


def test_ambient_dimension_limit():
    spec = _spec(EXPONENT_ONE_SPEC, variables=["a", "b", "c", "d", "e"], exponent_bound=2, F={"generators": []})
    with pytest.raises(ConfigError):
        build_problem(spec)
    with pytest.raises(ConfigError):
        build_problem(_spec(SWEEDLER_SPEC), LimitsSection(max_ambient_dimension=32))


def test_load_spec_from_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(SWEEDLER_SPEC), encoding="utf-8")
    problem = load_spec(path)
    assert problem.F.dim == 32


# ---------------------------------------------------------------------------
# 配置
# ---------------------------------------------------------------------------


def test_default_config():
    config = load_config()
    assert config.runtime.seed == 42
    assert config.runtime.budget == 200
    assert config.limits.max_ambient_dimension == 729
    assert config.limits.supported_primes_for_axioms == [2, 3, 5]
    assert config.selftest.six_term == 100
    assert config.logging.level == "WARNING"


def test_config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"runtime": {"seed": 7}, "logging": {"level": "INFO"}}), encoding="utf-8")
    config = load_config(path)
    assert config.runtime.seed == 7
    assert config.runtime.budget == 200
    assert config.logging.level == "INFO"


@pytest.mark.parametrize(
    "data",
    [
        {"runtime": {"seed": -1}},
        {"runtime": {"output": "xml"}},
        {"unknown": {}},
        {"logging": {"level": "TRACE"}},
    ],
)
def test_invalid_config(tmp_path, data):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)


def test_config_not_json(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("seed = 1", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)


def test_overrides():
    config = PigaloisConfig().with_overrides(runtime__seed=9, runtime__budget=None)
    assert config.runtime.seed == 9
    assert config.runtime.budget == 200
    with pytest.raises(ConfigError):
        PigaloisConfig().with_overrides(runtime__colour="red")
    with pytest.raises(ConfigError):
        PigaloisConfig().with_overrides(runtime__budget=0)
