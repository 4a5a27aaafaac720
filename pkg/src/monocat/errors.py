"""Exception types shared across the library."""


class MonocatError(Exception):
    """Base class for all library-specific errors."""


class ParseError(MonocatError):
    """Malformed scalar, matrix, or input file."""


class DivisionLeavesRing(MonocatError):
    """Exact division whose quotient falls outside the base ring."""


class SingularMatrix(MonocatError):
    """Inverse requested for a matrix with zero determinant."""


class ContextMismatch(MonocatError):
    """Operands built over different ring contexts."""


class NonSquare(MonocatError):
    """Object matrices must be square: a non-square injective matrix
    cannot have a cokernel killed by omega."""


class NotMono(MonocatError):
    """The matrix has zero determinant, so it is not injective."""


class CokernelNotOmegaTorsion(MonocatError):
    """Some elementary divisor exponent exceeds t."""


class SquareNotCommuting(MonocatError):
    """Candidate morphism pair fails psi0 . f = f' . psi1."""


class InvalidWitness(MonocatError):
    """Homotopy witness does not satisfy its defining identity."""


class NotExactTriangle(MonocatError):
    """Triangle fails the null-composite invariants."""


class SquaresNotHomotopyCommuting(MonocatError):
    """Square completion requested for a square that does not commute
    even up to homotopy."""


class NotComposable(MonocatError):
    """Morphism endpoints do not line up for composition."""


class NotIndecomposable(MonocatError):
    """Operation requires an indecomposable input."""


class ProjectiveObject(MonocatError):
    """Operation is undefined for projective objects."""


class InfiniteResidueField(MonocatError):
    """Enumeration needs a finite residue field (int-local, or a
    polynomial ring over a prime field)."""


class ParametersTooLarge(MonocatError):
    """Guardrail: requested enumeration exceeds the desk-scale budget."""
