"""Exception hierarchy.

Every error carries a machine-readable ``code`` and the process exit code the
CLI maps it to: 1 for malformed input, 2 for violated hypotheses, 3 for
internal inconsistencies.
"""


class ImplicitError(Exception):
    code = "error"
    exit_code = 3


class InputError(ImplicitError):
    code = "malformed-input"
    exit_code = 1


class MalformedScalar(InputError):
    code = "malformed-scalar"


class ParseError(InputError):
    code = "parse-error"


class DimensionMismatch(InputError):
    code = "dimension-mismatch"


class PreconditionError(InputError):
    code = "precondition-violation"


class ShapeError(InputError):
    code = "shape-error"


class DivisibilityError(ImplicitError):
    """Raised by exact division when the divisor does not divide."""

    code = "divisibility-failure"


class HypothesisViolation(ImplicitError):
    code = "hypothesis-violation"
    exit_code = 2


class InfiniteBaseLocus(HypothesisViolation):
    code = "infinite-base-locus"


class NotLocallyNGenerated(HypothesisViolation):
    code = "point-needs-n+1-generators"


class DecompositionFailure(HypothesisViolation):
    code = "decomposition-failure"


class NotProjectiveDimensionOne(HypothesisViolation):
    code = "not-projective-dimension-one"


class NotTorsion(HypothesisViolation):
    code = "strand-not-torsion"


class MultiplicityOverflow(ImplicitError):
    code = "multiplicity-overflow"


class InconsistentLinearForms(ImplicitError):
    code = "internal-inconsistency"


class DegenerateMacaulay(ImplicitError):
    code = "degenerate-macaulay"
