"""Exception hierarchy for the workbench.

Every domain failure raises a subclass of LeavittError so callers (and the
command line front end) can distinguish bad mathematical input from bugs.
"""


class LeavittError(Exception):
    """Base class for all domain errors."""


# ---------------------------------------------------------------- graphs


class GraphError(LeavittError):
    pass


class DanglingEndpoint(GraphError):
    pass


class DuplicateName(GraphError):
    pass


class ZeroMultiplicity(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class TooLarge(GraphError):
    pass


class NotHereditary(GraphError):
    pass


class NotHereditarySaturated(GraphError):
    pass


class NotAdmissible(GraphError):
    pass


class NotAPath(GraphError):
    pass


class NotClosed(GraphError):
    pass


class NotACycle(GraphError):
    pass


class NotASource(GraphError):
    pass


class IsASink(GraphError):
    pass


class HasEntry(GraphError):
    pass


class InfiniteCount(GraphError):
    pass


class NotPrimitivePeriod(GraphError):
    pass


# ---------------------------------------------------------------- scalars


class FieldError(LeavittError):
    pass


class FieldMismatch(FieldError):
    pass


class NotInvertible(FieldError):
    pass


class ReduciblePolynomial(FieldError):
    pass


class IrreducibilityUndecided(FieldError):
    """Rational irreducibility is only decided up to degree 3; higher
    degrees need an explicit assertion from the caller."""


class DisallowedPolynomial(FieldError):
    pass


# ---------------------------------------------------------------- algebra


class AlgebraError(LeavittError):
    pass


class GraphMismatch(AlgebraError):
    pass


class HomViolation(AlgebraError):
    pass


# ---------------------------------------------------------------- modules


class ModuleError(LeavittError):
    pass


class NotASink(ModuleError):
    pass


class NotExclusive(ModuleError):
    pass


class WrongEmitterShape(ModuleError):
    pass


class DatumEscapesH(ModuleError):
    pass


class LazyDepthExceeded(ModuleError):
    pass


class UndecidableLazyTail(ModuleError):
    pass


# ---------------------------------------------------------------- spectrum


class SpectrumError(LeavittError):
    pass


class MismatchedDescriptor(SpectrumError):
    pass


class NoIrreduciblePolynomial(SpectrumError):
    pass


class SearchBoundExceeded(SpectrumError):
    """Raised when the cofinal-path search exhausts its bounds; under the
    stated preconditions this indicates an implementation bug."""


# ---------------------------------------------------------------- structure


class StructureError(LeavittError):
    pass


class NotALoop(StructureError):
    pass


class NotMaximal(StructureError):
    pass


class NoWitness(StructureError):
    pass


class NotBothBasedAtV(StructureError):
    pass


class TooLargeForExhaustive(StructureError):
    pass


# ---------------------------------------------------------------- parsing


class ExprError(LeavittError):
    pass


class ExprSyntaxError(ExprError):
    pass


class UnknownSymbol(ExprError):
    pass
