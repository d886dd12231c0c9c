"""Exception hierarchy.

Every error carries a ``status`` label that the CLI maps onto its exit codes:
``invalid_input`` (2), ``no_solution`` (3) and ``degenerate`` (4).
"""


class SphaericaError(Exception):
    status = "invalid_input"


class InvalidInput(SphaericaError, ValueError):
    status = "invalid_input"


class InvalidTriangle(InvalidInput):
    pass


class InvalidConfig(InvalidInput):
    pass


class QuarterSphereViolation(InvalidConfig):
    pass


class IdentityViolated(InvalidInput):
    pass


class NoSolution(SphaericaError):
    status = "no_solution"


class InfeasibleCone(NoSolution):
    pass


class UnattainableArea(NoSolution):
    pass


class NoRealization(NoSolution):
    pass


class DegenerateInput(SphaericaError, ValueError):
    status = "degenerate"


class DegenerateConfiguration(DegenerateInput):
    pass


class DegenerateChain(DegenerateInput):
    pass


class IoFailure(SphaericaError, OSError):
    status = "invalid_input"
