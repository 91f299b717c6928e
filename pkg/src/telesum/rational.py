"""Exact rational scalars and the extended product convention.

Every quantity in this package is a :class:`fractions.Fraction`: unbounded
integers, canonical form (gcd(num, den) = 1, den > 0) after every operation,
and exact field arithmetic.  This module adds the checked operations that
turn Python's ``ZeroDivisionError`` into a typed :class:`DivisionByZero`,
the report serialization format, and ``prod_range``, the product
``prod(f, lo, hi)`` extended to empty and inverted index ranges so that
``prod(f, lo, m-1) * f(m) == prod(f, lo, m)`` holds for *all* integers ``m``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .errors import DivisionByZero

Rational = Fraction

#: A total map from integer indices to exact rationals (u_k, v_k, a_n, ...).
SeqFn = Callable[[int], Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(num: int, den: int = 1) -> Fraction:
    """Checked rational constructor; den = 0 raises DivisionByZero."""
    if den == 0:
        raise DivisionByZero(f"rational {num}/0")
    return Fraction(num, den)


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    """a / b with a typed error instead of ZeroDivisionError."""
    if b == 0:
        raise DivisionByZero(f"division of {a} by zero")
    return a / b


def rat_pow(x: Fraction, e: int) -> Fraction:
    """x**e for integer e; negative exponents require x != 0."""
    if e < 0 and x == 0:
        raise DivisionByZero(f"0 raised to negative power {e}")
    return x ** e


def format_rational(x: Fraction) -> str:
    """Serialize as "num/den", collapsing integers to "n" (e.g. "-5/8", "3")."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def const(value: Fraction | int) -> SeqFn:
    """The constant sequence k -> value."""
    v = Fraction(value)
    return lambda _k: v


def seq(values: Iterable[Fraction | int], start: int = 0) -> SeqFn:
    """A sequence backed by a list, defined on start..start+len-1."""
    vals = [Fraction(v) for v in values]

    def fn(k: int) -> Fraction:
        return vals[k - start]

    return fn


def prod_range(f: SeqFn, lo: int, hi: int) -> Fraction:
    """Product of f(lo)..f(hi) under the extended range convention.

    - hi >= lo:      ordinary product f(lo) * f(lo+1) * ... * f(hi)
    - hi == lo - 1:  empty product, 1
    - hi <= lo - 2:  reciprocal of the forward product over hi+1..lo-1
                     (so e.g. prod(f, 1, -1) == 1 / f(0))

    The inverted case raises DivisionByZero when a touched factor is zero.
    """
    if hi >= lo:
        p = ONE
        for j in range(lo, hi + 1):
            p *= f(j)
        return p
    if hi == lo - 1:
        return ONE
    p = ONE
    for j in range(hi + 1, lo):
        p *= f(j)
    if p == 0:
        raise DivisionByZero(f"inverted product over {hi + 1}..{lo - 1} hit a zero factor")
    return 1 / p
