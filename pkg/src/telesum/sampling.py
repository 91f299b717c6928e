"""Seeded random samplers for admissible parameter points.

Rationals draw numerator from +-1..64 and denominator from 1..64; q-samples
additionally exclude 0 and any root of unity (q^m = 1 for small m, which for
rationals just means +-1) because those collapse q-factorials.  All streams
are derived from (seed, labels...) through SHA-256 so results never depend
on PYTHONHASHSEED, process boundaries, or scheduling.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction

RETRY_BOUND = 100


def rng_for(seed: int, *labels: object) -> random.Random:
    """A Random stream uniquely determined by (seed, labels)."""
    material = ":".join([str(seed)] + [str(x) for x in labels])
    digest = hashlib.sha256(material.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def sample_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    num = rng.randint(1, 64) * rng.choice((-1, 1))
    if not nonzero and rng.random() < 0.05:
        num = 0
    return Fraction(num, rng.randint(1, 64))


def sample_q(rng: random.Random, unity_bound: int) -> Fraction:
    """A base q avoiding 0 and q^m = 1 for all m <= unity_bound."""
    while True:
        q = sample_rational(rng)
        if q == 0:
            continue
        if any(q**m == 1 for m in range(1, unity_bound + 1)):
            continue
        return q


def sample_int(rng: random.Random, lo: int, hi: int) -> int:
    return rng.randint(lo, hi)


def sample_sequence(rng: random.Random, length: int) -> tuple[Fraction, ...]:
    return tuple(sample_rational(rng) for _ in range(length))
