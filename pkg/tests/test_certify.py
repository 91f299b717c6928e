from fractions import Fraction as F

import pytest

from telesum.certify import (Certificate, NormalizedIdentity, difference_check,
                             natural_termination_check, row_sum_check,
                             telescope_to_zero_check, verify_sample)
from telesum.corpus import CERTIFIED_KEYS, CORPUS, draw_admissible, normalized
from telesum.errors import NoCertificate
from telesum.report import FAIL, PASS
from telesum.sampling import rng_for


def all_pass(records):
    return all(r.status == PASS for r in records)


def test_binomial_certificate_passes():
    idn = normalized(CORPUS["binomial"])
    params = {"x": F(3)}
    assert all_pass(difference_check(idn, 4, params))
    assert all_pass(telescope_to_zero_check(idn, 4, params))
    assert all_pass(row_sum_check(idn, 0, params, check="base_case"))


def test_corrupted_certificate_reports_boundary():
    # v(n, k) = k + 1 violates v(n, 0) = 0
    base = CORPUS["binomial"]
    bad = NormalizedIdentity(
        key="binomial_bad_v",
        F=normalized(base).F,
        certificate=Certificate(u=base.certificate.u,
                                v=lambda n, k, p: F(k + 1)),
    )
    records = telescope_to_zero_check(bad, 3, {"x": F(3)})
    assert records[0].status == FAIL
    assert records[0].witness["v_at_0"] == "1"


def test_telescope_to_zero_examples():
    idn = normalized(CORPUS["binomial"])
    assert all_pass(telescope_to_zero_check(idn, 5, {"x": F(1)}))
    cv = normalized(CORPUS["chu_vandermonde"])
    assert all_pass(telescope_to_zero_check(cv, 2, {"a": F(1), "b": F(3)}))
    assert all_pass(difference_check(cv, 2, {"a": F(1), "b": F(3)}))


def test_q_dougall_certificate_at_spec_sample():
    idn = normalized(CORPUS["q_dougall"])
    params = {"q": F(2, 3), "a": F(5), "b": F(2), "c": F(3), "d": F(7)}
    records = verify_sample(idn, 3, params)
    assert all_pass(records)


def test_no_certificate_error():
    idn = normalized(CORPUS["geometric"])
    with pytest.raises(NoCertificate):
        difference_check(idn, 2, {"x": F(2)})


def test_full_sweep_small_samples_every_certified_identity():
    for key in CERTIFIED_KEYS:
        idef = CORPUS[key]
        idn = normalized(idef)
        for i in range(2):
            rng = rng_for(41, "sweep", key, i)
            params = draw_admissible(idef, rng, 6)
            records = verify_sample(idn, 6, params, sample=i)
            bad = [r for r in records if r.status != PASS]
            assert not bad, (key, bad[:2])


def test_natural_termination_all_terminating():
    for key in CERTIFIED_KEYS:
        idef = CORPUS[key]
        rng = rng_for(42, "termination", key)
        params = draw_admissible(idef, rng, 6)
        assert all_pass(natural_termination_check(normalized(idef), 6, params))


def _scaled(cert: Certificate, side: str) -> Certificate:
    if side == "u":
        return Certificate(u=lambda n, k, p: cert.u(n, k, p) * (k + 2), v=cert.v)
    return Certificate(u=cert.u, v=lambda n, k, p: cert.v(n, k, p) * (k + 2))


def _shifted(cert: Certificate, side: str) -> Certificate:
    if side == "u":
        return Certificate(u=lambda n, k, p: cert.u(n, k, p) + 1, v=cert.v)
    return Certificate(u=cert.u, v=lambda n, k, p: cert.v(n, k, p) + 1)


def test_mutation_sensitivity_every_certificate():
    # a seeded single-factor corruption must produce at least one failure
    mutations = (("scale_u", _scaled, "u"), ("scale_v", _scaled, "v"),
                 ("shift_u", _shifted, "u"), ("shift_v", _shifted, "v"))
    for key in CERTIFIED_KEYS:
        idef = CORPUS[key]
        rng = rng_for(2024, "mutate", key)
        name, wrap, side = mutations[rng.randrange(len(mutations))]
        params = draw_admissible(idef, rng, 5)
        bad = NormalizedIdentity(key=f"{key}+{name}", F=normalized(idef).F,
                                 certificate=wrap(idef.certificate, side))
        records = verify_sample(bad, 5, params)
        assert any(r.status == FAIL for r in records), (key, name)


def test_mutated_rhs_fails_base_row():
    # off by a nonconstant factor: every certified identity must notice
    for key in CERTIFIED_KEYS:
        idef = CORPUS[key]
        rng = rng_for(77, "rhs-mutate", key)
        params = draw_admissible(idef, rng, 4)
        skew = NormalizedIdentity(
            key=f"{key}+rhs",
            F=lambda n, k, p, idef=idef: idef.term(n, k, p) / (idef.rhs(n, p) * (n + 2)),
            certificate=idef.certificate,
        )
        records = verify_sample(skew, 4, params)
        assert any(r.status == FAIL for r in records), key


def test_rhs_off_by_one_plus_q_fails_base_row():
    idef = CORPUS["q_binomial"]
    rng = rng_for(78, "qmut")
    params = draw_admissible(idef, rng, 3)
    skew = NormalizedIdentity(
        key="q_binomial+factor",
        F=lambda n, k, p: idef.term(n, k, p) / (idef.rhs(n, p) * (1 + p["q"])),
        certificate=idef.certificate,
    )
    records = verify_sample(skew, 3, params)
    rows = [r for r in records if r.check in ("base_case", "row_sum")]
    assert any(r.status == FAIL for r in rows)


def test_proportionality_constant_consistent_across_k():
    # the difference check IS the statement that c(n) from k = 0 fits all k
    idef = CORPUS["q_pfaff_saalschutz"]
    rng = rng_for(9, "cn")
    params = draw_admissible(idef, rng, 5)
    for n in range(6):
        assert all_pass(difference_check(normalized(idef), n, params))
