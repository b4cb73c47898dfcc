"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line."""

import time
from fractions import Fraction

import mpmath
import pytest

from diffconj.cli import main
from diffconj.diffeo import DiffeoSpec
from diffconj.engine import CASE1, CONJUGATE, INVOLUTION, full_group_decide
from diffconj.expr import parse_expression
from diffconj.suites import run_suite
from diffconj.verify import check_conjugacy_numeric

TOL = mpmath.mpf("1e-30")
ALTERNATING = "[" + ", ".join(str((-1) ** k) for k in range(1, 17)) + "]"


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number:>2}] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    value = fn(*args, **kwargs)
    return value, time.perf_counter() - start


def _suite(report, number, name, cases, budget):
    result, elapsed = timed(run_suite, name, 0, cases)
    ok = result.passed and result.cases == cases and elapsed < budget
    detail = f"{result.cases - len(result.failures)}/{result.cases} cases, {elapsed:.1f}s of {budget}s"
    if result.failures:
        detail += f"; first failure: {result.failures[0]}"
    report(number, name, ok, detail)


def test_01_lemma_square(report):
    _suite(report, 1, "lemma-square", 1000, 30)


def test_02_even_index(report):
    _suite(report, 2, "even-index", 200, 30)


def test_03_involution_normalization(report):
    _suite(report, 3, "involution-normalization", 500, 10)


def test_04_sqrt_rigidity(report):
    _suite(report, 4, "sqrt-rigidity", 200, 60)


def test_05_koenigs(report):
    _suite(report, 5, "koenigs", 200, 30)


def test_06_oracle_agreement(report):
    result, elapsed = timed(run_suite, "oracle-agreement", 0)
    ok = result.passed and result.cases > 0 and elapsed < 60
    detail = f"{result.cases - len(result.failures)}/{result.cases} fixtures, {elapsed:.1f}s of 60s"
    report(6, "oracle-agreement", ok, detail + (f"; {result.failures[0]}" if result.failures else ""))


def test_07_fixture_involutions(report):
    f = DiffeoSpec(degree=-1, body=parse_expression("-x"))
    g = DiffeoSpec(degree=-1, body=parse_expression("1 - x"))
    with mpmath.workdps(50):
        v = full_group_decide(f, g, interval=(-10, 10), points=2001)
        parts = dict(v.certificate.parts) if v.certificate else {}
        check = check_conjugacy_numeric(f.body, g.body, v.certificate.expr, (-10, 10), 2001)
    psi = parts.get("psi2")
    ok = (
        v.status == CONJUGATE
        and v.case_tag == INVOLUTION
        and psi == parse_expression("x - 1/2")
        and check.tolerance == TOL
        and check.passed
    )
    report(7, "fixture A", ok, f"{v.status}/{v.case_tag}, h = {v.certificate.text()}, residual {check.max_residual}")


def test_08_fixture_case1(report):
    h = "x + x^3/3"
    f = DiffeoSpec(degree=-1, body=parse_expression("-x - x^3"))
    g = DiffeoSpec(degree=-1, body=parse_expression(f"compose({h}, compose(-x - x^3, inverse({h}, x)))"))
    with mpmath.workdps(50):
        v = full_group_decide(f, g, h1=parse_expression(h), interval=(-2, 2))
        check = check_conjugacy_numeric(f.body, g.body, v.certificate.expr, (-2, 2), 1001)
    ok = v.status == CONJUGATE and v.case_tag == CASE1 and check.tolerance == TOL and check.passed
    report(8, "fixture B", ok, f"{v.status}/{v.case_tag}, residual {mpmath.nstr(check.max_residual, 3)} on [-2, 2]")


def _decide_cli(tmp_path, capsys, f_text, g_text):
    (tmp_path / "f.spec").write_text(f_text)
    (tmp_path / "g.spec").write_text(g_text)
    code = main(["decide", str(tmp_path / "f.spec"), str(tmp_path / "g.spec")])
    return code, capsys.readouterr().out


def test_09_fixture_boundary(report, tmp_path, capsys):
    code, out = _decide_cli(
        tmp_path,
        capsys,
        "degree = -1\njet = [-1]\ntopology = boundary\n",
        f"degree = -1\njet = {ALTERNATING}\ntopology = boundary\n",
    )
    ok = code == 1 and "status: NOT_CONJUGATE" in out and "case: CASE3_BOUNDARY" in out
    report(9, "fixture C", ok, f"exit {code}")


def test_10_honesty(report, tmp_path, capsys):
    code, out = _decide_cli(
        tmp_path,
        capsys,
        "degree = -1\njet = [-1]\ntopology = unknown\n",
        f"degree = -1\njet = {ALTERNATING}\ntopology = unknown\n",
    )
    ok = code == 2 and "status: UNDETERMINED_AT_ORDER" in out
    report(10, "honesty fixture", ok, f"exit {code}")


def test_11_jet_finite_difference(report):
    result, elapsed = timed(run_suite, "jet-fd", 0, 50)
    ok = result.passed and result.cases == 50
    detail = f"{50 - len(result.failures)}/50 expressions within 1e-20 relative, {elapsed:.1f}s"
    report(11, "jet cross-check", ok, detail + (f"; {result.failures[0]}" if result.failures else ""))


def test_fixture_c_jets_share_a_square():
    # the second jet is a formal involution, so both squares are X
    from diffconj.series import TruncatedSeries, comp_power, parse_literal

    G = TruncatedSeries(parse_literal(ALTERNATING))
    assert comp_power(G, 2) == TruncatedSeries.identity(16)
    assert Fraction(G[2]) == 1
