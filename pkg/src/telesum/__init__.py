"""Exact-arithmetic verification of telescoping identities.

The telescoping kernel evaluates both sides of the closed form for sums
sum (w_k/w_0) (u_0..u_{k-1})/(v_1..v_k) with w = u - v; on top of it sit a
certificate verifier for terminating (q-)hypergeometric summations, a
corpus of classical identities with their certificates, a three-term
recurrence engine with the classical combinatorial families, sums with
sequence parameters, a deterministic rational-identity tester, and a small
expression language for user-defined identities.  Every computation is in
exact rational arithmetic; every check is exact equality.
"""

from .certify import Certificate, NormalizedIdentity, verify_sample
from .corpus import (CORPUS, IdentityDef, Param, evaluate_identity, normalized,
                     q_rising_factorial, rising_factorial)
from .elementary import ELEMENTARY, check_rational_identity
from .errors import (DivisionByZero, Inadmissible, NoCertificate, PoleExhausted,
                     SampleExhausted, VerifyError)
from .exprlang import evaluate as eval_expr, load_identity_config, parse, to_source
from .genhyp import (SequenceParams, macdonald_cv, macdonald_cv_permuted,
                     macdonald_dougall, macdonald_ps)
from .rational import Rational, SeqFn, format_rational, prod_range
from .report import CheckRecord, Report
from .runner import run_suite
from .sequences import (FAMILIES, RecurrenceSpec, generate, lucas_gen_sides,
                        verify_family_suite, verify_lucas_gen)
from .telescope import (TelescopeProblem, raw_euler_sum, solve_linear_recurrence,
                        sum_to_telescope, telescoping_closed_form, telescoping_sum)

__version__ = "0.1.0"

__all__ = [
    "CORPUS", "ELEMENTARY", "FAMILIES", "Certificate", "CheckRecord",
    "DivisionByZero", "IdentityDef", "Inadmissible", "NoCertificate",
    "NormalizedIdentity", "Param", "PoleExhausted", "Rational", "RecurrenceSpec",
    "Report", "SampleExhausted", "SeqFn", "SequenceParams", "TelescopeProblem",
    "VerifyError", "check_rational_identity", "eval_expr", "evaluate_identity",
    "format_rational", "generate", "load_identity_config", "lucas_gen_sides",
    "macdonald_cv", "macdonald_cv_permuted", "macdonald_dougall", "macdonald_ps",
    "normalized", "parse", "prod_range", "q_rising_factorial", "raw_euler_sum",
    "rising_factorial", "run_suite", "solve_linear_recurrence", "sum_to_telescope",
    "telescoping_closed_form", "telescoping_sum", "to_source", "verify_family_suite",
    "verify_lucas_gen", "verify_sample",
]
