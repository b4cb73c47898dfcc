"""Seeded generators for the randomized suites.

Every randomized check draws from :func:`seeded_rng`, so a suite is a pure
function of its seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .series import DEFAULT_ORDER, TruncatedSeries


def seeded_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    """Numerator in [-9, 9], denominator in [1, 9]."""
    while True:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if q or not nonzero:
            return q


def random_series(rng: random.Random, order: int = DEFAULT_ORDER, multiplier=None) -> TruncatedSeries:
    """Random series; the multiplier is drawn nonzero unless given."""
    c1 = random_rational(rng, nonzero=True) if multiplier is None else multiplier
    return TruncatedSeries([c1] + [random_rational(rng) for _ in range(order - 1)], order)
