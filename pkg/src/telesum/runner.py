"""Suite orchestration: deterministic, optionally parallel verification runs.

Work is partitioned per identity/family/operation.  Each item derives its
random stream from (seed, suite, item, sample index) alone, and the merged
report is sorted by a stable key, so output is identical for any worker
count.  Items are small picklable tuples, safe for a process pool.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import elementary as elementary_mod
from . import genhyp as genhyp_mod
from . import sequences as sequences_mod
from .certify import natural_termination_check, verify_sample
from .corpus import (CERTIFIED_KEYS, CORPUS, draw_admissible, evaluate_identity,
                     normalized, specialization_d_zero_checks)
from .errors import Inadmissible, PoleExhausted, SampleExhausted
from .rational import format_rational
from .report import FAIL, PASS, CheckRecord, Report, merge_reports
from .sampling import RETRY_BOUND, rng_for, sample_q, sample_rational

SUITES = ("corpus", "ez", "sequences", "genhyp", "elementary")

DEFAULT_SEED = 1729
DEFAULT_SAMPLES = {"corpus": 32, "ez": 16, "sequences": 8, "genhyp": 32, "elementary": 200}
EZ_DEFAULT_N_MAX = 10
SEQUENCES_DEFAULT_N_MAX = 12

SPECIALIZATION_KEY = "q_dougall_n1_link"


def suite_items(suite: str) -> list[str]:
    if suite == "corpus":
        return list(CORPUS) + [SPECIALIZATION_KEY]
    if suite == "ez":
        return list(CERTIFIED_KEYS)
    if suite == "sequences":
        return [key for key, fam in sequences_mod.FAMILIES.items() if fam.printed]
    if suite == "genhyp":
        return list(genhyp_mod.PROBLEM_BUILDERS)
    if suite == "elementary":
        return list(elementary_mod.ELEMENTARY)
    raise ValueError(f"unknown suite {suite!r}")


def _witness_params(params) -> dict[str, str]:
    out = {}
    for name, value in params.items():
        if isinstance(value, tuple):
            out[name] = "(" + ", ".join(format_rational(v) for v in value) + ")"
        elif isinstance(value, Fraction):
            out[name] = format_rational(value)
        else:
            out[name] = str(value)
    return out


def run_corpus_item(key: str, n_max: int | None, samples: int, seed: int) -> list[CheckRecord]:
    if key == SPECIALIZATION_KEY:
        return _run_specialization(samples, seed)
    idef = CORPUS[key]
    eff_n = idef.n_max if n_max is None else n_max
    records: list[CheckRecord] = []
    count = samples if idef.params else 1
    for i in range(count):
        rng = rng_for(seed, "corpus", key, i)
        sample = i if idef.params else None
        try:
            params = draw_admissible(idef, rng, eff_n)
        except SampleExhausted as exc:
            records.append(CheckRecord(suite="corpus", identity=key, check="sampling",
                                       status=FAIL, sample=sample,
                                       witness={"reason": str(exc)}, citation=idef.citation))
            continue
        for n in range(eff_n + 1):
            lhs, rhs = evaluate_identity(idef, n, params)
            status = PASS if lhs == rhs else FAIL
            witness = None
            if status == FAIL:
                witness = _witness_params(params)
                witness.update(lhs=format_rational(lhs), rhs=format_rational(rhs))
            records.append(CheckRecord(suite="corpus", identity=key, check="identity",
                                       status=status, n=n, sample=sample,
                                       witness=witness, citation=idef.citation))
        if idef.terminating:
            records.extend(natural_termination_check(
                normalized(idef), eff_n, params, suite="corpus", sample=sample))
    return records


def _run_specialization(samples: int, seed: int) -> list[CheckRecord]:
    citation = "n = 1 row of the q-Dougall sum rearranged to the four-variable identity"
    records = []
    for i in range(samples):
        rng = rng_for(seed, "corpus", SPECIALIZATION_KEY, i)
        outcome = None
        for _ in range(RETRY_BOUND):
            q = sample_q(rng, 4)
            point = {name: sample_rational(rng) for name in "abcd"}
            try:
                outcome = specialization_d_zero_checks(q, point["a"], point["b"],
                                                       point["c"], point["d"])
            except Inadmissible:
                continue
            break
        if outcome is None:
            records.append(CheckRecord(suite="corpus", identity=SPECIALIZATION_KEY,
                                       check="sampling", status=FAIL, sample=i,
                                       witness={"reason": "no admissible sample"},
                                       citation=citation))
            continue
        bad = [name for name, ok in outcome.items() if not ok]
        status = PASS if not bad else FAIL
        witness = None
        if bad:
            witness = _witness_params(point)
            witness["q"] = format_rational(q)
            witness["failed"] = ",".join(bad)
        records.append(CheckRecord(suite="corpus", identity=SPECIALIZATION_KEY,
                                   check="specialization", status=status, sample=i,
                                   witness=witness, citation=citation))
    return records


def run_ez_item(key: str, n_max: int | None, samples: int, seed: int) -> list[CheckRecord]:
    idef = CORPUS[key]
    eff_n = EZ_DEFAULT_N_MAX if n_max is None else n_max
    idn = normalized(idef)
    records: list[CheckRecord] = []
    count = samples if idef.params else 1
    for i in range(count):
        rng = rng_for(seed, "ez", key, i)
        sample = i if idef.params else None
        try:
            params = draw_admissible(idef, rng, eff_n)
        except SampleExhausted as exc:
            records.append(CheckRecord(suite="ez", identity=key, check="sampling",
                                       status=FAIL, sample=sample,
                                       witness={"reason": str(exc)}, citation=idef.citation))
            continue
        records.extend(verify_sample(idn, eff_n, params, suite="ez", sample=sample))
    return records


def run_sequences_item(key: str, n_max: int | None, samples: int, seed: int) -> list[CheckRecord]:
    eff_n = SEQUENCES_DEFAULT_N_MAX if n_max is None else n_max
    return sequences_mod.verify_family_suite(key, eff_n, samples, seed, suite="sequences")


def run_genhyp_item(key: str, n_max: int | None, samples: int, seed: int) -> list[CheckRecord]:
    max_len = 10 if n_max is None else max(1, min(n_max, 10))
    fn = {
        "macdonald_cv": genhyp_mod.macdonald_cv,
        "macdonald_cv_permuted": genhyp_mod.macdonald_cv_permuted,
        "macdonald_ps": genhyp_mod.macdonald_ps,
        "macdonald_dougall": genhyp_mod.macdonald_dougall,
    }[key]
    citation = genhyp_mod.CITATIONS[key]
    records: list[CheckRecord] = []
    for i in range(samples):
        rng = rng_for(seed, "genhyp", key, i)
        length = rng.randint(1, max_len)
        try:
            p = genhyp_mod.sample_sequence_params(rng, length, key)
        except SampleExhausted as exc:
            records.append(CheckRecord(suite="genhyp", identity=key, check="sampling",
                                       status=FAIL, sample=i,
                                       witness={"reason": str(exc)}, citation=citation))
            continue
        lhs, rhs = fn(p)
        status = PASS if lhs == rhs else FAIL
        witness = None
        if status == FAIL:
            witness = {"lhs": format_rational(lhs), "rhs": format_rational(rhs),
                       "length": str(length)}
        records.append(CheckRecord(suite="genhyp", identity=key, check="identity",
                                   status=status, n=p.n, sample=i,
                                   witness=witness, citation=citation))
        if key == "macdonald_cv_permuted":
            other = genhyp_mod.macdonald_cv(genhyp_mod.relabeled_for_permutation(p))
            ok = other == (lhs, rhs)
            records.append(CheckRecord(
                suite="genhyp", identity=key, check="relabel", n=p.n, sample=i,
                status=PASS if ok else FAIL,
                witness=None if ok else {"direct": format_rational(lhs),
                                         "relabel": format_rational(other[0])},
                citation=citation))
        if key == "macdonald_dougall":
            dz = genhyp_mod.with_d_zero(p)
            ok = genhyp_mod.dougall_terms(dz) == genhyp_mod.ps_terms(dz)
            records.append(CheckRecord(
                suite="genhyp", identity=key, check="d_zero_termwise", n=p.n, sample=i,
                status=PASS if ok else FAIL,
                witness=None if ok else {"reason": "termwise mismatch"},
                citation=citation))
    return records


def run_elementary_item(key: str, samples: int, seed: int, grid: bool) -> list[CheckRecord]:
    ident = elementary_mod.ELEMENTARY[key]
    try:
        records = elementary_mod.sampled_zero_check(ident, seed, samples, suite="elementary")
    except PoleExhausted as exc:
        records = [CheckRecord(suite="elementary", identity=key, check="sampling",
                               status=FAIL, witness={"reason": str(exc)},
                               citation=ident.citation)]
    if grid:
        records = records + elementary_mod.grid_zero_check(ident, suite="elementary")
    return records


def _execute_item(task: tuple) -> list[CheckRecord]:
    suite, key, n_max, samples, seed, grid = task
    if suite == "corpus":
        return run_corpus_item(key, n_max, samples, seed)
    if suite == "ez":
        return run_ez_item(key, n_max, samples, seed)
    if suite == "sequences":
        return run_sequences_item(key, n_max, samples, seed)
    if suite == "genhyp":
        return run_genhyp_item(key, n_max, samples, seed)
    if suite == "elementary":
        return run_elementary_item(key, samples, seed, grid)
    raise ValueError(f"unknown suite {suite!r}")


def run_suite(suite: str, ids: list[str] | None = None, n_max: int | None = None,
              samples: int | None = None, seed: int = DEFAULT_SEED,
              grid: bool = False, jobs: int = 1) -> Report:
    """Run one suite (or "all"); the report is identical for any job count."""
    started = time.perf_counter()
    suites = list(SUITES) if suite == "all" else [suite]
    tasks = []
    for s in suites:
        keys = suite_items(s)
        if ids:
            keys = [k for k in keys if k in ids]
        per_suite_samples = DEFAULT_SAMPLES[s] if samples is None else samples
        tasks.extend((s, key, n_max, per_suite_samples, seed, grid) for key in keys)
    if suite != "all" and ids:
        known = {t[1] for t in tasks}
        for missing in set(ids) - known:
            raise KeyError(f"unknown id {missing!r} in suite {suite!r}")

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_execute_item, tasks))
    else:
        chunks = [_execute_item(task) for task in tasks]

    report = Report(suite=suite, seed=seed)
    for chunk in chunks:
        report.extend(chunk)
    report.records = report.sorted_records()
    report.wall_time = time.perf_counter() - started
    return report


def run_config_identity(idef, n_max: int | None = None, samples: int | None = None,
                        seed: int = DEFAULT_SEED) -> Report:
    """Corpus-style identity checks plus the certificate sweep for one
    config-loaded identity."""
    started = time.perf_counter()
    eff_n = idef.n_max if n_max is None else n_max
    eff_samples = 16 if samples is None else samples
    records: list[CheckRecord] = []
    count = eff_samples if idef.params else 1
    for i in range(count):
        rng = rng_for(seed, "check", idef.key, i)
        sample = i if idef.params else None
        try:
            params = draw_admissible(idef, rng, eff_n)
        except SampleExhausted as exc:
            records.append(CheckRecord(suite="check", identity=idef.key, check="sampling",
                                       status=FAIL, sample=sample,
                                       witness={"reason": str(exc)}, citation=idef.citation))
            continue
        for n in range(eff_n + 1):
            try:
                lhs, rhs = evaluate_identity(idef, n, params)
            except Inadmissible as exc:
                records.append(CheckRecord(suite="check", identity=idef.key, check="identity",
                                           status="inadmissible", n=n, sample=sample,
                                           witness={"reason": str(exc)},
                                           citation=idef.citation))
                continue
            status = PASS if lhs == rhs else FAIL
            witness = None
            if status == FAIL:
                witness = _witness_params(params)
                witness.update(lhs=format_rational(lhs), rhs=format_rational(rhs))
            records.append(CheckRecord(suite="check", identity=idef.key, check="identity",
                                       status=status, n=n, sample=sample,
                                       witness=witness, citation=idef.citation))
        if idef.certificate is not None:
            records.extend(verify_sample(normalized(idef), eff_n, params,
                                         suite="check", sample=sample))
    report = Report(suite="check", seed=seed, records=[])
    report.extend(records)
    report.records = report.sorted_records()
    report.wall_time = time.perf_counter() - started
    return report


def merge(suite: str, seed: int, parts: list[Report]) -> Report:
    return merge_reports(suite, seed, parts)
