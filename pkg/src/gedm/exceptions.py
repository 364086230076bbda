"""Exception hierarchy for the gedm package."""


class GedmError(Exception):
    """Base class for every error raised by this package."""


class NotSymmetric(GedmError, ValueError):
    def __init__(self, max_asymmetry, threshold):
        self.max_asymmetry = float(max_asymmetry)
        self.threshold = float(threshold)
        super().__init__(
            f"matrix is not symmetric: max |m_ij - m_ji| = {self.max_asymmetry:.3e}"
            f" > {self.threshold:.3e}"
        )


class NotSquare(GedmError, ValueError):
    pass


class NoConvergence(GedmError, ArithmeticError):
    pass


class NotInColumnSpace(GedmError, ValueError):
    pass


class LengthMismatch(GedmError, ValueError):
    pass


class DimensionMismatch(GedmError, ValueError):
    pass


class NotPsd(GedmError, ValueError):
    def __init__(self, min_eigenvalue, threshold):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(
            f"matrix is not positive semidefinite: min eigenvalue {self.min_eigenvalue:.6g}"
            f" < -{threshold:.3e}"
        )


class RowSumsNonzero(GedmError, ValueError):
    def __init__(self, max_row_sum, threshold):
        self.max_row_sum = float(max_row_sum)
        super().__init__(
            f"row sums are not zero: max |row sum| = {self.max_row_sum:.6g} > {threshold:.3e}"
        )


class NegativeWeight(GedmError, ValueError):
    pass


class NegativeEntry(GedmError, ValueError):
    pass


class NonzeroDiagonal(GedmError, ValueError):
    pass


class RankUnreachable(GedmError, RuntimeError):
    pass


class NonpositiveScale(GedmError, ValueError):
    pass


class NotAGedm(GedmError, ValueError):
    """Raised when a matrix cannot be explained as a GEDM for the given scales.

    ``reason`` is one of ``"asymmetric-L"``, ``"not-PSD"``,
    ``"nonzero-row-sum"`` or ``"diagonal-mismatch"``.
    """

    REASONS = ("asymmetric-L", "not-PSD", "nonzero-row-sum", "diagonal-mismatch")

    def __init__(self, reason, detail=""):
        if reason not in self.REASONS:
            raise ValueError(f"unknown NotAGedm reason {reason!r}")
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class StructureViolation(GedmError, ArithmeticError):
    def __init__(self, max_deviation, threshold):
        self.max_deviation = float(max_deviation)
        super().__init__(
            f"symmetric form deviates from the arrow template by {self.max_deviation:.3e}"
            f" (threshold {threshold:.3e})"
        )


class NegativeInvariantViolated(GedmError, ArithmeticError):
    pass


class NotCircum(GedmError, ValueError):
    pass


class ZeroGedm(GedmError, ValueError):
    """The operation requires a nonzero GEDM."""


class RankHypothesisViolated(GedmError, ValueError):
    pass


class NonpositiveEntry(GedmError, ValueError):
    pass


class ConsistencyError(GedmError, ArithmeticError):
    """Two routes that must agree in exact arithmetic disagree numerically."""


class ComplexRootsDetected(GedmError, ArithmeticError):
    pass
