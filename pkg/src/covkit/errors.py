"""Exception hierarchy for covkit.

Every error carries a kebab-case ``code`` used by the CLI to emit
machine-parsable one-line reasons.
"""


class CovkitError(Exception):
    code = "covkit-error"


class IndexOutOfRange(CovkitError):
    code = "index-out-of-range"


class NonSquare(CovkitError):
    code = "non-square"


class UnsupportedSmoothness(CovkitError):
    code = "unsupported-smoothness"


class InvalidSpec(CovkitError):
    code = "invalid-spec"


class NotPD(CovkitError):
    code = "not-positive-definite"


class ClosedFormUnavailable(CovkitError):
    code = "closed-form-unavailable"


class QuadratureDiverged(CovkitError):
    code = "quadrature-diverged"


class NotValidModel(CovkitError):
    code = "not-valid-model"


class SymmetryConditionViolated(CovkitError):
    code = "symmetry-condition-violated"

    def __init__(self, message, pair=None, residual=None):
        super().__init__(message)
        self.pair = pair
        self.residual = residual


class UnsupportedP(CovkitError):
    code = "unsupported-p"


class ZeroVariance(CovkitError):
    code = "zero-variance"


class InsufficientReplicates(CovkitError):
    code = "insufficient-replicates"


class SingularSystem(CovkitError):
    code = "singular-system"


class EmptyObservations(CovkitError):
    code = "empty-observations"


class LengthMismatch(CovkitError):
    code = "length-mismatch"


class ParseError(CovkitError):
    code = "parse-error"
