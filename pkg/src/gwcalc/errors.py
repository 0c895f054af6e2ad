"""Typed failures shared across the engine.

The oracles refuse rather than guess: a query outside the supported
reductions raises ``UnsupportedQuery``, and a computation whose standing
hypotheses fail raises ``HypothesisViolated`` or ``Inapplicable`` instead
of returning a number.
"""


class GWError(Exception):
    """Base class for engine-specific failures."""


class UnsupportedQuery(GWError):
    """The oracle cannot reduce this query; it never invents a value."""


class HypothesisViolated(GWError):
    """A required hypothesis (divisor positivity, V >= l) does not hold."""


class Inapplicable(GWError):
    """The inputs are outside the range where the procedure is justified."""
