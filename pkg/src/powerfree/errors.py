"""Error types shared across the package.

Two failure modes get their own classes so the CLI can map them to exit
codes: resource limits (exit 3) and violated mathematical preconditions
(exit 4). Plain ValueError/TypeError remain usage errors.
"""


class CapacityError(RuntimeError):
    """A configured resource limit would be exceeded (range, cap, memory)."""


class HypothesisViolation(ValueError):
    """Input violates a mathematical precondition of the requested quantity.

    The message names the violated hypothesis, e.g. a repeated polynomial
    factor or a fixed k-th power divisor at a named prime.
    """
