import pytest
from helpers import sweedler

from pigalois.errors import DimensionMismatch, ExponentTooLarge, GeneratorsInsufficient
from pigalois.fields.tower import AmbientField
from pigalois.galois.analyze import analyze
from pigalois.galois.checkers import (
    check_essential_image,
    derivations_kill_powers,
    frobenius_chain_report,
    is_simple,
    jacobson_roundtrip,
    simple_chain_report,
)
from pigalois.galois.modularity import (
    DisjointnessStep,
    Inconclusive,
    Modular,
    NotModular,
    decomposition_search,
    disjointness_certificates,
    modularity_test,
    verify_certificate,
    verify_modular_conditions,
)
from pigalois.lie.derivations import derivation_module
from pigalois.lie.homotopy import galois_homotopy_data

# ---------------------------------------------------------------------------
# 本质像条件
# ---------------------------------------------------------------------------


@pytest.fixture
def line_data(exponent_one_pair):
    E = exponent_one_pair.K.adjoin([exponent_one_pair.var(0)])
    return galois_homotopy_data(E, exponent_one_pair.F, exponent_one_pair.K)


def test_essential_image_of_genuine_field(line_data, exponent_one_pair):
    report = check_essential_image(line_data, exponent_one_pair.F, exponent_one_pair.K)
    assert report.verdict
    assert report.dims["pi1"] == report.dims["pi0"] == 1
    assert report.dims["anchor_rank"] == 1


def test_perturbed_balance_fails_alone(line_data, exponent_one_pair):
    bad = line_data.perturbed(pi0_dim=line_data.pi0_dim + 1)
    report = check_essential_image(bad, exponent_one_pair.F, exponent_one_pair.K)
    assert report.injectivity
    assert report.vanishing
    assert not report.balance


def test_zero_anchor_fails_injectivity(line_data, exponent_one_pair):
    zero = exponent_one_pair.ambient.field.zero
    bad = line_data.perturbed(anchor_pi1=[[zero, zero]])
    report = check_essential_image(bad, exponent_one_pair.F, exponent_one_pair.K)
    assert not report.injectivity
    assert report.balance


def test_anchor_shape_is_checked(line_data, exponent_one_pair):
    one = exponent_one_pair.ambient.field.one
    bad = line_data.perturbed(anchor_pi1=[[one]])
    with pytest.raises(DimensionMismatch):
        check_essential_image(bad, exponent_one_pair.F, exponent_one_pair.K)


def test_homotopy_data_accepts_explicit_module(line_data, exponent_one_pair):
    F, K = exponent_one_pair.F, exponent_one_pair.K
    E = K.adjoin([exponent_one_pair.var(0)])
    assert galois_homotopy_data(E, F, K, derivation_module(F, K)) == line_data


# ---------------------------------------------------------------------------
# 单扩张与 Jacobson 往返
# ---------------------------------------------------------------------------


def test_simple_extensions(frobenius_pair, jacobian_pair):
    for pair in (frobenius_pair, jacobian_pair):
        report = is_simple(pair.F, pair.K)
        assert report.simple
        assert report.omega_dim == 1
        assert report.generator is not None
        assert pair.K.adjoin([report.generator]) == pair.F
        assert report.search_agrees


def test_non_simple_extension(exponent_one_pair):
    report = is_simple(exponent_one_pair.F, exponent_one_pair.K)
    assert not report.simple
    assert report.omega_dim == 2
    assert report.generator is None
    assert report.search_agrees


def test_trivial_extension_is_not_simple(exponent_one_pair):
    report = is_simple(exponent_one_pair.K, exponent_one_pair.K)
    assert report.trivial
    assert not report.simple


def test_jacobson_roundtrip(exponent_one_pair, exponent_one_pair_p3):
    for pair in (exponent_one_pair, exponent_one_pair_p3):
        report = jacobson_roundtrip(pair.F, pair.K, trials=2, seed=42)
        assert report.ok, report.failures
        assert report.field_roundtrips == report.algebroid_roundtrips == report.reversals == 2


def test_jacobson_roundtrip_needs_exponent_one(frobenius_pair):
    with pytest.raises(ExponentTooLarge):
        jacobson_roundtrip(frobenius_pair.F, frobenius_pair.K, trials=1, seed=0)


# ---------------------------------------------------------------------------
# 链
# ---------------------------------------------------------------------------


def test_frobenius_chain_single_variable():
    report = frobenius_chain_report(AmbientField(2, ("x",), 2))
    assert report.ok
    assert report.expected_dim == 1
    assert len(report.links) == 2
    assert len(report.towers) == 1


def test_frobenius_chain_two_variables():
    report = frobenius_chain_report(AmbientField(2, ("x", "y"), 2))
    assert report.ok
    assert all(link.pi1_dim == link.pi0_dim == 2 for link in report.links)
    assert report.towers[0].pi1_map_zero


def test_frobenius_chain_of_length_one():
    report = frobenius_chain_report(AmbientField(3, ("x", "y"), 1))
    assert report.ok
    assert len(report.links) == 1
    assert report.towers == []


def test_frobenius_chain_rejects_long_chain():
    with pytest.raises(ValueError):
        frobenius_chain_report(AmbientField(2, ("x",), 1), e=2)


def test_simple_chain(frobenius_pair):
    x = frobenius_pair.var(0)
    report = simple_chain_report(frobenius_pair.F, frobenius_pair.K, x)
    assert report.ok
    assert len(report.links) == 2


def test_simple_chain_needs_generator(exponent_one_pair):
    with pytest.raises(GeneratorsInsufficient):
        simple_chain_report(exponent_one_pair.F, exponent_one_pair.K, exponent_one_pair.var(0))


def test_derivations_kill_powers(exponent_one_pair, frobenius_pair):
    for pair in (exponent_one_pair, frobenius_pair):
        report = derivations_kill_powers(pair.F, pair.K, samples=3, seed=0)
        assert report.ok, report.failures
        assert report.row_spaces_equal


# ---------------------------------------------------------------------------
# 模性
# ---------------------------------------------------------------------------


def test_modular_pair(modular_pair):
    verdict = modularity_test(modular_pair.F, modular_pair.K, budget=50, seed=42)
    assert isinstance(verdict, Modular)
    assert verdict.degrees == (2, 4)
    assert verdict.conditions.ok
    product = 1
    for d in verdict.degrees:
        product *= d
    assert product == 8


def test_exponent_one_is_modular(exponent_one_pair):
    verdict = modularity_test(exponent_one_pair.F, exponent_one_pair.K, budget=50, seed=0)
    assert isinstance(verdict, Modular)
    assert verdict.degrees == (2, 2)


def test_sweedler_is_not_modular(sweedler_pair):
    verdict = modularity_test(sweedler_pair.F, sweedler_pair.K, budget=50, seed=42)
    assert isinstance(verdict, NotModular)
    assert verdict.power == 1
    step = DisjointnessStep(verdict.power, verdict.frobenius_field, verdict.base_field, verdict.certificate)
    assert verify_certificate(step)
    total = sweedler_pair.ambient.field.zero
    for b, mu in zip(verdict.certificate.elements, verdict.certificate.coefficients):
        total = total + b * mu
    assert total.is_zero()


def test_certificate_steps_stop_at_first_dependence(sweedler_pair, modular_pair):
    steps = disjointness_certificates(sweedler_pair.F, sweedler_pair.K)
    assert len(steps) == 1
    assert not steps[0].result.disjoint
    steps = disjointness_certificates(modular_pair.F, modular_pair.K)
    assert all(s.result.disjoint for s in steps)
    assert not verify_certificate(steps[0])


def test_small_budget_is_inconclusive(modular_pair):
    verdict = modularity_test(modular_pair.F, modular_pair.K, budget=1, seed=42)
    assert isinstance(verdict, Inconclusive)
    assert verdict.attempts <= 2


def test_search_on_trivial_extension(modular_pair):
    outcome = decomposition_search(modular_pair.K, modular_pair.K, budget=10, seed=0)
    assert outcome.generators == ()
    assert outcome.attempts == 0


def test_modular_conditions_detect_bad_parts(modular_pair):
    F, K = modular_pair.F, modular_pair.K
    whole = verify_modular_conditions(F, K, [F])
    assert not whole.condition2
    empty = verify_modular_conditions(F, K, [])
    assert not empty.condition3
    assert not empty.ok


# ---------------------------------------------------------------------------
# 汇总
# ---------------------------------------------------------------------------


def test_analyze_sweedler(sweedler_pair):
    report = analyze(sweedler_pair.F, sweedler_pair.K, seed=42, budget=50)
    assert report.degree == 8
    assert report.exponent == 2
    assert report.generators.count == 2
    assert (report.homology.pi0_dim, report.homology.pi1_dim) == (2, 2)
    assert report.der_dim == 2
    assert report.cartier.equal
    assert not report.simplicity.simple
    assert isinstance(report.modularity, NotModular)
    assert report.roundtrip is None


def test_analyze_simple_extension(frobenius_pair):
    report = analyze(frobenius_pair.F, frobenius_pair.K, seed=42, budget=50)
    assert report.degree == 4
    assert report.simplicity.simple
    assert isinstance(report.modularity, Modular)


def test_analyze_exponent_one_runs_roundtrip(exponent_one_pair):
    report = analyze(exponent_one_pair.F, exponent_one_pair.K, seed=1, budget=20)
    assert report.roundtrip is not None and report.roundtrip.ok


def test_analyze_trivial_extension(exponent_one_pair):
    report = analyze(exponent_one_pair.K, exponent_one_pair.K, seed=0, budget=10)
    assert report.degree == 1
    assert report.exponent == 0
    assert isinstance(report.modularity, Modular)
    assert report.modularity.degrees == ()


@pytest.mark.slow
def test_sweedler_p3_is_not_modular():
    pair = sweedler(3)
    verdict = modularity_test(pair.F, pair.K, budget=20, seed=42)
    assert isinstance(verdict, NotModular)
    assert verdict.power == 1
