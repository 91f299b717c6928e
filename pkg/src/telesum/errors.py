"""Typed errors shared across the verification engine.

Zero denominators at an evaluation point are error *values* that suite
runners convert into a resample, never a crash.
"""


class VerifyError(Exception):
    """Base class for all engine errors."""


class Inadmissible(VerifyError):
    """The evaluation point violates an identity's admissibility constraints."""


class DivisionByZero(Inadmissible):
    """A denominator vanished while evaluating an expression exactly."""


class NoCertificate(VerifyError):
    """A certificate-based check was requested for an identity without one."""


class SampleExhausted(VerifyError):
    """The admissible-parameter sampler ran out of retries."""


class PoleExhausted(VerifyError):
    """Random evaluation could not find a pole-free point within budget."""
