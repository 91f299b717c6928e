"""The telescoping kernel.

Everything here is one identity viewed four ways.  For sequences u, v and
w = u - v (always derived, never a third input):

    sum_{k=0}^{n} (w_k / w_0) * (u_0 ... u_{k-1}) / (v_1 ... v_k)
        = (u_0 / w_0) * ( (u_1 ... u_n) / (v_1 ... v_n)  -  v_0 / u_0 )

``telescoping_sum`` evaluates the left side termwise, ``telescoping_closed_form``
the right side; they must agree on every admissible input, which is the
package's core oracle.  ``raw_euler_sum`` is the unnormalized k=1..n form,
``sum_to_telescope`` embeds an arbitrary telescoping sum f(k+1) - f(k), and
``solve_linear_recurrence`` solves x_{m+1} = b_m x_m + c_m in closed form.

Sums maintain running products incrementally (O(n) multiplications); exact
bignum multiplication dominates cost, so nothing calls prod_range per term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import DivisionByZero
from .rational import ONE, SeqFn, ZERO


@dataclass(frozen=True)
class TelescopeProblem:
    """A (u, v, n) triple; w_k = u_k - v_k is always derived at use sites."""

    u: SeqFn
    v: SeqFn
    n: int


def telescoping_terms(p: TelescopeProblem) -> Iterator[Fraction]:
    """Yield the summands (w_k/w_0) * (u_0..u_{k-1})/(v_1..v_k) for k = 0..n.

    Raises DivisionByZero if w_0 = 0 or any of v_1..v_n is zero.
    """
    u, v, n = p.u, p.v, p.n
    w0 = u(0) - v(0)
    if w0 == 0:
        raise DivisionByZero("telescoping sum requires w_0 = u_0 - v_0 != 0")
    ratio = ONE  # (u_0 ... u_{k-1}) / (v_1 ... v_k)
    for k in range(n + 1):
        if k > 0:
            vk = v(k)
            if vk == 0:
                raise DivisionByZero(f"telescoping sum requires v_{k} != 0")
            ratio = ratio * u(k - 1) / vk
        yield (u(k) - v(k)) / w0 * ratio


def telescoping_sum(p: TelescopeProblem) -> Fraction:
    """Left side of the lemma, summed termwise."""
    return sum(telescoping_terms(p), ZERO)


def telescoping_closed_form(p: TelescopeProblem) -> Fraction:
    """Right side of the lemma: (u_0/w_0) * (prod u / prod v - v_0/u_0).

    The -v_0/u_0 term is skipped when v_0 = 0 (it is exactly zero then);
    otherwise u_0 = 0 raises DivisionByZero, as do w_0 = 0 and zero v's.
    """
    u, v, n = p.u, p.v, p.n
    u0, v0 = u(0), v(0)
    w0 = u0 - v0
    if w0 == 0:
        raise DivisionByZero("closed form requires w_0 != 0")
    ratio = ONE
    for j in range(1, n + 1):
        vj = v(j)
        if vj == 0:
            raise DivisionByZero(f"closed form requires v_{j} != 0")
        ratio = ratio * u(j) / vj
    if v0 == 0:
        second = ZERO
    else:
        if u0 == 0:
            raise DivisionByZero("closed form requires u_0 != 0 when v_0 != 0")
        second = v0 / u0
    return u0 / w0 * (ratio - second)


def raw_euler_sum(u: SeqFn, v: SeqFn, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of the raw k=1..n form; the caller asserts equality.

    Returns (sum_{k=1}^n w_k (u_1..u_{k-1})/(v_1..v_k),
             (u_1..u_n)/(v_1..v_n) - 1).
    """
    lhs = ZERO
    ratio = ONE  # (u_1 ... u_{k-1}) / (v_1 ... v_k)
    for k in range(1, n + 1):
        vk = v(k)
        if vk == 0:
            raise DivisionByZero(f"raw telescoping sum requires v_{k} != 0")
        if k == 1:
            ratio = ONE / vk
        else:
            ratio = ratio * u(k - 1) / vk
        lhs += (u(k) - vk) * ratio
    rhs = ONE
    for j in range(1, n + 1):
        rhs = rhs * u(j) / v(j)
    return lhs, rhs - 1


def sum_to_telescope(f: SeqFn, n: int) -> tuple[Fraction, Fraction]:
    """Embed a plain telescoping sum: returns (f(n+1) - f(0), sum of gaps).

    Setting u_k = f(k+1), v_k = f(k) reduces any telescoping sum to the
    lemma, so the two components must always be equal.
    """
    collapsed = f(n + 1) - f(0)
    gaps = sum((f(k + 1) - f(k) for k in range(n + 1)), ZERO)
    return collapsed, gaps


def solve_linear_recurrence(b: SeqFn, c: SeqFn, x0: Fraction, n: int) -> Fraction:
    """x_{n+1} for x_{m+1} = b_m x_m + c_m, given x_0.

    Closed form: x_0 b_0 b_1 ... b_n + (b_1 ... b_n) * sum_{k=0}^n c_k / (b_1 ... b_k).
    Requires b_1..b_n nonzero (b_0 may be anything, it only scales x_0).
    """
    tail = ONE  # b_1 ... b_k
    acc = ZERO
    for k in range(n + 1):
        if k >= 1:
            bk = b(k)
            if bk == 0:
                raise DivisionByZero(f"linear recurrence solution requires b_{k} != 0")
            tail *= bk
        acc += c(k) / tail
    return x0 * b(0) * tail + tail * acc
