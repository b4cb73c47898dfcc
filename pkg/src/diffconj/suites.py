"""Seeded randomized suites run by ``diffconj selftest`` and the acceptance tests.

Each suite is a pure function of ``(seed, cases)``: it builds its own
generator, so suites can run in any order or in parallel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import _kernels as K
from .dynamics import (
    comp_square_root,
    koenigs_linearize,
    random_reversible,
    square_deviation,
)
from .expr import Var
from .randgen import random_rational, random_series
from .series import (
    TruncatedSeries,
    comp_power,
    compose,
    comp_inverse,
    conjugate,
    deviation_index,
    equals_mod,
)
from .verify import family_agrees, jet_vs_finite_difference, random_expression

ORDER = 16
ROOT_MULTIPLIERS = tuple(Fraction(v) for v in ("-2", "-3", "-1/2", "2", "3"))


@dataclass
class SuiteResult:
    name: str
    seed: int
    cases: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} {self.cases - len(self.failures)}/{self.cases} seed={self.seed}"

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.cases - len(self.failures),
            "pass": self.passed,
            "failures": self.failures[:5],
        }


def suite_rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{name}:{seed}")


def lemma_square(seed: int = 0, cases: int = 1000) -> SuiteResult:
    """Squares of multiplier -1 series first deviate from ``X`` at an odd index.

    Half the cases are fully random; the other half are formal involutions
    with one random late perturbation, so the deviation lands deep in the
    series and the step "agree through 2m-1 implies agree through 2m" is
    exercised at every ``m``.
    """
    rng = suite_rng(seed, "lemma-square")
    result = SuiteResult("lemma-square", seed, cases)
    involutions = comp_square_root(TruncatedSeries.identity(ORDER), -1)
    X = TruncatedSeries.identity(ORDER)
    for i in range(cases):
        if i % 2 == 0:
            S = random_series(rng, ORDER, multiplier=-1)
        else:
            tau = involutions.member({n: random_rational(rng) for n in involutions.free_indices})
            k = rng.randint(2, ORDER)
            bump = [0] * ORDER
            bump[k - 1] = random_rational(rng, nonzero=True)
            S = tau + TruncatedSeries(bump)
        sq = comp_power(S, 2)
        dev = square_deviation(S)
        if dev is not None and dev % 2 == 0:
            result.failures.append(f"case {i}: even deviation {dev} for {S.to_literal()}")
            continue
        for m in range(1, ORDER // 2 + 1):
            if equals_mod(sq, X, 2 * m - 1) and not equals_mod(sq, X, 2 * m):
                result.failures.append(f"case {i}: agrees through {2 * m - 1} but not {2 * m}")
                break
    return result


def even_index(seed: int = 0, cases: int = 200) -> SuiteResult:
    """Products of two formal involutions deviate from ``X`` at an even index."""
    rng = suite_rng(seed, "even-index")
    result = SuiteResult("even-index", seed, cases)
    for i in range(cases):
        Q, tau1 = random_reversible(rng.getrandbits(32), ORDER, with_reverser=True)
        dev = deviation_index(Q)
        if Q[1] != 1 or (dev is not None and dev % 2):
            result.failures.append(f"case {i}: deviation {dev}")
        elif conjugate(Q, tau1) != comp_inverse(Q):
            result.failures.append(f"case {i}: tau1 does not reverse Q")
    return result


def involution_normalization(seed: int = 0, cases: int = 500) -> SuiteResult:
    """``psi = (X - S)/2`` satisfies ``psi o S = -psi`` for formal involutions ``S``."""
    rng = suite_rng(seed, "involution-normalization")
    result = SuiteResult("involution-normalization", seed, cases)
    family = comp_square_root(TruncatedSeries.identity(ORDER), -1)
    X = TruncatedSeries.identity(ORDER)
    for i in range(cases):
        S = family.member({n: random_rational(rng) for n in family.free_indices})
        psi = (X - S).scale(Fraction(1, 2))
        if compose(psi, S) != -psi:
            result.failures.append(f"case {i}: psi o S != -psi for {S.to_literal()}")
    return result


def sqrt_rigidity(seed: int = 0, cases: int = 200) -> SuiteResult:
    """A series with hyperbolic multiplier is the only square root of its square."""
    rng = suite_rng(seed, "sqrt-rigidity")
    result = SuiteResult("sqrt-rigidity", seed, cases)
    for i in range(cases):
        lam = rng.choice(ROOT_MULTIPLIERS)
        G = random_series(rng, ORDER, multiplier=lam)
        family = comp_square_root(comp_power(G, 2), lam)
        if not family.is_unique or family.witness != G:
            result.failures.append(f"case {i}: root of the square is not {G.to_literal()}")
    return result


def koenigs(seed: int = 0, cases: int = 200) -> SuiteResult:
    """``conjugate(S, W) = lambda X`` exactly for the linearizing ``W``."""
    rng = suite_rng(seed, "koenigs")
    result = SuiteResult("koenigs", seed, cases)
    for i in range(cases):
        lam = random_rational(rng, nonzero=True)
        while abs(lam) == 1:
            lam = random_rational(rng, nonzero=True)
        S = random_series(rng, ORDER, multiplier=lam)
        W = koenigs_linearize(S)
        if conjugate(S, W) != TruncatedSeries.linear(lam, ORDER) or W[1] != 1:
            result.failures.append(f"case {i}: residual nonzero for {S.to_literal()}")
    return result


def oracle_fixtures(seed: int = 0) -> list:
    """``(S, mu)`` pairs of order at most 8 covering every label kind."""
    rng = suite_rng(seed, "oracle-fixtures")
    samples = (-2, -1, Fraction(-1, 2), 0, Fraction(1, 2), 1, 2)
    fixtures = [
        (TruncatedSeries.identity(3), -1),
        (TruncatedSeries.identity(6), -1),
        (TruncatedSeries.identity(8), -1),
        (TruncatedSeries.linear(4, 3), 2),
        (TruncatedSeries.identity(3), 1),
        (TruncatedSeries([1, 0, 2], 3), -1),
        (TruncatedSeries([1, 1], 4), -1),
        (TruncatedSeries([1, 0, 1], 6), -1),
        (TruncatedSeries([Fraction(1, 4), 1, -1], 5), Fraction(-1, 2)),
        (TruncatedSeries([9, 3], 6), -3),
    ]
    for order in (4, 6, 8):
        for _ in range(3):
            F = TruncatedSeries([-1] + [rng.choice(samples) for _ in range(order - 1)], order)
            fixtures.append((comp_power(F, 2), -1))
    for _ in range(3):
        lam = rng.choice((2, -2, Fraction(1, 2)))
        G = random_series(rng, 6, multiplier=lam)
        fixtures.append((comp_power(G, 2), lam))
    return fixtures


def oracle_agreement(seed: int = 0, cases: int | None = None) -> SuiteResult:
    """The square-root solver and the brute-force oracle classify alike."""
    fixtures = oracle_fixtures(seed)
    if cases is not None:
        fixtures = fixtures[:cases]
    result = SuiteResult("oracle-agreement", seed, len(fixtures))
    for i, (S, mu) in enumerate(fixtures):
        ok, reason = family_agrees(comp_square_root(S, mu), S, mu)
        if not ok:
            result.failures.append(f"fixture {i} ({S.to_literal()}, mu={mu}): {reason}")
    return result


def _mentions_x(e) -> bool:
    if isinstance(e, Var):
        return True
    return any(_mentions_x(v) for v in vars(e).values() if hasattr(v, "text"))


def jet_finite_difference(seed: int = 0, cases: int = 50) -> SuiteResult:
    """Jets agree with central differences to ``1e-20`` relative, orders 1 to 4."""
    rng = suite_rng(seed, "jet-fd")
    result = SuiteResult("jet-fd", seed, cases)
    with mpmath.workdps(K.DEFAULT_PRECISION):
        for i in range(cases):
            e = random_expression(rng)
            while not _mentions_x(e):
                e = random_expression(rng)
            p = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
            p = max(min(p, Fraction(1)), Fraction(-1))
            order = 1 + i % 4
            report = jet_vs_finite_difference(e, p, order)
            if not report.passed:
                result.failures.append(
                    f"case {i}: {e.text()} at {p}, order {order}: {mpmath.nstr(report.max_residual, 5)}"
                )
    return result


SUITES = {
    "lemma-square": (lemma_square, 1000),
    "even-index": (even_index, 200),
    "involution-normalization": (involution_normalization, 500),
    "sqrt-rigidity": (sqrt_rigidity, 200),
    "koenigs": (koenigs, 200),
    "oracle-agreement": (oracle_agreement, None),
    "jet-fd": (jet_finite_difference, 50),
}


def run_suite(name: str, seed: int = 0, cases: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, default = SUITES[name]
    return fn(seed, default if cases is None else cases)
