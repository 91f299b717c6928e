"""Certificate-based verification of terminating identities.

A terminating identity sum LHS(n, k) = RHS(n), divided through by its right
side, becomes sum_k F(n, k) = 1 with F vanishing for k > n.  A certificate
is a pair of double sequences (u(n, k), v(n, k)) with u(n, n+1) = 0 and
v(n, 0) = 0 whose telescoping summand

    T(n, k) = (w(n,k) / w(n,0)) * (u(n,0) .. u(n,k-1)) / (v(n,1) .. v(n,k)),
    w = u - v,

is proportional in k to the difference row F(n+1, k) - F(n, k).  The checks:

  * difference_check    -- F(n+1,k) - F(n,k) = c(n) * T(n,k) for 0 <= k <= n+1,
                           with c(n) inferred from the k = 0 column (T(n,0) = 1).
                           Inferring c(n) absorbs any per-identity prefactor
                           without transcribing it, so a whole class of
                           transcription errors cannot occur.
  * telescope_to_zero   -- the difference row sums to zero, and the boundary
                           values u(n, n+1) and v(n, 0) are exactly zero.
  * base_case / row_sum -- sum_k F(0, k) = 1 and sum_k F(n, k) = 1.

All checks are exact; there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import Inadmissible, NoCertificate
from .rational import ONE, ZERO, format_rational
from .report import FAIL, PASS, CheckRecord

Params = Mapping[str, object]
CertFn = Callable[[int, int, Params], Fraction]


@dataclass(frozen=True)
class Certificate:
    """The (u, v) pair witnessing that the difference row telescopes."""

    u: CertFn
    v: CertFn


@dataclass(frozen=True)
class NormalizedIdentity:
    """An identity in sum_k F(n, k) = 1 form, with an optional certificate."""

    key: str
    F: Callable[[int, int, Params], Fraction]
    certificate: Certificate | None = None
    citation: str = ""


def _witness(params: Params, **extra: object) -> dict[str, str]:
    out: dict[str, str] = {}
    for name, value in params.items():
        if isinstance(value, tuple):
            out[name] = "(" + ", ".join(format_rational(x) for x in value) + ")"
        else:
            out[name] = format_rational(value)  # type: ignore[arg-type]
    for name, value in extra.items():
        out[name] = format_rational(value) if isinstance(value, Fraction) else str(value)
    return out


def telescoping_row(cert: Certificate, n: int, params: Params, k_max: int) -> list[Fraction]:
    """T(n, k) for k = 0..k_max, built with running products."""
    u0 = cert.u(n, 0, params)
    v0 = cert.v(n, 0, params)
    w0 = u0 - v0
    if w0 == 0:
        raise Inadmissible(f"certificate for n={n} has w(n,0) = 0")
    row = []
    ratio = ONE
    for k in range(k_max + 1):
        if k > 0:
            vk = cert.v(n, k, params)
            if vk == 0:
                raise Inadmissible(f"certificate for n={n} has v(n,{k}) = 0")
            ratio = ratio * cert.u(n, k - 1, params) / vk
        wk = cert.u(n, k, params) - cert.v(n, k, params)
        row.append(wk / w0 * ratio)
    return row


def difference_check(idn: NormalizedIdentity, n: int, params: Params,
                     suite: str = "ez", sample: int | None = None) -> list[CheckRecord]:
    """Verify F(n+1,k) - F(n,k) = c(n) * T(n,k) for every 0 <= k <= n+1."""
    if idn.certificate is None:
        raise NoCertificate(idn.key)
    t_row = telescoping_row(idn.certificate, n, params, n + 1)
    c = idn.F(n + 1, 0, params) - idn.F(n, 0, params)  # T(n, 0) = 1
    for k in range(n + 2):
        diff = idn.F(n + 1, k, params) - idn.F(n, k, params)
        if diff != c * t_row[k]:
            return [CheckRecord(
                suite=suite, identity=idn.key, check="difference", status=FAIL,
                n=n, sample=sample,
                witness=_witness(params, k=k, difference=diff, expected=c * t_row[k]),
                citation=idn.citation,
            )]
    return [CheckRecord(suite=suite, identity=idn.key, check="difference",
                        status=PASS, n=n, sample=sample, citation=idn.citation)]


def telescope_to_zero_check(idn: NormalizedIdentity, n: int, params: Params,
                            suite: str = "ez", sample: int | None = None) -> list[CheckRecord]:
    """Difference row sums to zero; u(n, n+1) and v(n, 0) vanish."""
    if idn.certificate is None:
        raise NoCertificate(idn.key)
    u_top = idn.certificate.u(n, n + 1, params)
    v_bot = idn.certificate.v(n, 0, params)
    if u_top != 0 or v_bot != 0:
        return [CheckRecord(
            suite=suite, identity=idn.key, check="telescope_zero", status=FAIL,
            n=n, sample=sample,
            witness=_witness(params, u_at_n_plus_1=u_top, v_at_0=v_bot),
            citation=idn.citation,
        )]
    total = sum((idn.F(n + 1, k, params) - idn.F(n, k, params) for k in range(n + 2)), ZERO)
    if total != 0:
        return [CheckRecord(
            suite=suite, identity=idn.key, check="telescope_zero", status=FAIL,
            n=n, sample=sample, witness=_witness(params, row_sum=total),
            citation=idn.citation,
        )]
    return [CheckRecord(suite=suite, identity=idn.key, check="telescope_zero",
                        status=PASS, n=n, sample=sample, citation=idn.citation)]


def row_sum_check(idn: NormalizedIdentity, n: int, params: Params,
                  suite: str = "ez", sample: int | None = None,
                  check: str = "row_sum") -> list[CheckRecord]:
    """sum_{k=0}^{n} F(n, k) = 1 (check="base_case" is the n = 0 instance)."""
    total = sum((idn.F(n, k, params) for k in range(n + 1)), ZERO)
    if total != 1:
        return [CheckRecord(
            suite=suite, identity=idn.key, check=check, status=FAIL,
            n=n, sample=sample, witness=_witness(params, row_sum=total),
            citation=idn.citation,
        )]
    return [CheckRecord(suite=suite, identity=idn.key, check=check,
                        status=PASS, n=n, sample=sample, citation=idn.citation)]


def verify_sample(idn: NormalizedIdentity, n_max: int, params: Params,
                  suite: str = "ez", sample: int | None = None) -> list[CheckRecord]:
    """Run base case, row sums, difference and telescoping checks for n <= n_max.

    A mid-verification Inadmissible (possible only when the upfront probe
    and the checks disagree) is recorded as such, never as a failure, and
    the remaining checks still run.
    """
    records = row_sum_check(idn, 0, params, suite, sample, check="base_case")
    for n in range(n_max + 1):
        if n > 0:
            records += row_sum_check(idn, n, params, suite, sample)
        if idn.certificate is None:
            continue
        for check_name, check in (("difference", difference_check),
                                  ("telescope_zero", telescope_to_zero_check)):
            try:
                records += check(idn, n, params, suite, sample)
            except Inadmissible as exc:
                records.append(CheckRecord(
                    suite=suite, identity=idn.key, check=check_name,
                    status="inadmissible", n=n, sample=sample,
                    witness=_witness(params, reason=str(exc)),
                    citation=idn.citation,
                ))
    return records


def natural_termination_check(idn: NormalizedIdentity, n: int, params: Params,
                              suite: str = "ez", sample: int | None = None,
                              overshoot: int = 3) -> list[CheckRecord]:
    """F(n, k) = 0 for n < k <= n + overshoot (the zero-factor mechanism)."""
    for k in range(n + 1, n + overshoot + 1):
        value = idn.F(n, k, params)
        if value != 0:
            return [CheckRecord(
                suite=suite, identity=idn.key, check="termination", status=FAIL,
                n=n, sample=sample, witness=_witness(params, k=k, value=value),
                citation=idn.citation,
            )]
    return [CheckRecord(suite=suite, identity=idn.key, check="termination",
                        status=PASS, n=n, sample=sample, citation=idn.citation)]
