"""Exception hierarchy shared by every module of the package."""


class FlatQQFError(Exception):
    """Base class for all errors raised by flat_qqf."""


class BasisError(FlatQQFError):
    """Raised when a basis is malformed (duplicate labels, bad parity, wrong order)."""


class HomogeneityError(FlatQQFError):
    """Raised when an operation needs a homogeneous object and gets a mixed one."""


class DimensionMismatch(FlatQQFError):
    """Raised when objects living on different superspaces are combined."""


class SingularFormError(FlatQQFError):
    """Raised when a bilinear form that must be nondegenerate is degenerate."""


class SingularEndomorphism(FlatQQFError):
    """Raised when an endomorphism that must be invertible is not."""


class DuplicateEntryError(FlatQQFError):
    """Raised when structure constants or form values are given twice with different values."""


class IncompatibleProduct(FlatQQFError):
    """Raised when the graded commutator of a product differs from the Lie bracket."""


class HypothesisError(FlatQQFError):
    """Raised by constructors whose hypotheses fail; carries the validation report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report

    def __str__(self) -> str:
        base = super().__str__()
        if self.report is None or self.report.ok:
            return base
        return base + "\n" + "\n".join(self.report.lines())


class NoCenterError(FlatQQFError):
    """Raised when a reduction needs a nontrivial center and the center is zero."""


class NoRationalEigenvalueError(FlatQQFError):
    """Raised when rho restricted to the center has no usable rational eigenvalue."""


class DegeneratePairError(FlatQQFError):
    """Raised when no homogeneous partner vector with the required pairing exists."""


class UnknownEntry(FlatQQFError):
    """Raised when a catalog name is not known."""


class DocumentError(FlatQQFError):
    """Raised when an on-disk document cannot be parsed."""
