"""Exception types shared by the verifiers."""


class SkipPrime(Exception):
    """The computation is not defined at this prime; sweeps skip it."""


class CharacterUndefined(SkipPrime, ValueError):
    """A character exponent's denominator does not divide p - 1."""


class PrimeNotQualified(SkipPrime, ValueError):
    """p is not congruent to 1 modulo the level of the parameters."""


class SkipSample(Exception):
    """A sample point is degenerate (zero or pole of a twist character)."""


class NoClosedForm(ValueError):
    """Neither special-value branch applies to the parameters."""


class HypothesisError(ValueError):
    """A relation's hypotheses fail for the chosen free parameters."""


class MonodromyMismatch(Exception):
    """Twisted pullback monodromy does not reproduce the source monodromy."""
