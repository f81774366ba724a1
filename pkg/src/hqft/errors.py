"""Exception hierarchy.

Validation errors carry an ``axiom`` tag (e.g. ``"3.2.4"``) and a ``witness``
tuple so that callers and the CLI can report exactly which identity failed.
"""


class HQFTError(Exception):
    """Base class for every error raised by this package."""

    axiom = None

    def __init__(self, message, witness=None, axiom=None):
        super().__init__(message)
        self.witness = witness
        if axiom is not None:
            self.axiom = axiom

    def __str__(self):
        msg = super().__str__()
        if self.axiom:
            msg = f"({self.axiom}) {msg}"
        if self.witness is not None:
            msg = f"{msg} [witness: {self.witness}]"
        return msg


class InternalError(HQFTError):
    """A construction produced output that fails validation (a bug, not bad input)."""


# linear algebra
class LinearAlgebraError(HQFTError):
    pass


class InconsistentSystem(LinearAlgebraError):
    pass


class NotSquare(LinearAlgebraError):
    pass


class DegeneratePairing(LinearAlgebraError):
    pass


# groups
class GroupError(HQFTError):
    pass


class NotAGroup(GroupError):
    pass


class CocycleViolation(GroupError):
    axiom = "cocycle"


class NotNormalized(GroupError):
    axiom = "cocycle"


class NotClosed(GroupError):
    pass


class NotAHomomorphism(GroupError):
    pass


class BadEmbedding(GroupError):
    pass


# algebras
class AlgebraError(HQFTError):
    pass


class AxiomViolation(AlgebraError):
    """A Frobenius or crossed-algebra axiom fails; ``axiom`` names which one."""


class AlgebraMismatch(AlgebraError):
    pass


class GroupMismatch(AlgebraError):
    pass


class ZeroScale(AlgebraError):
    pass


class NotSurjective(AlgebraError):
    pass


class KernelNotCentral(AlgebraError):
    pass


class KernelActsNontrivially(AlgebraError):
    pass


class NotTraceless(AlgebraError):
    axiom = "3.2.4"


class NotCommutative(AlgebraError):
    pass


class NotAutomorphism(AlgebraError):
    pass


class NotAnAction(AlgebraError):
    pass


class NotSplitSemisimple(AlgebraError):
    pass


class NotSimple(AlgebraError):
    pass


class DimensionAnomaly(AlgebraError):
    axiom = "dimension pattern"


class TraceCondition(AlgebraError):
    axiom = "trace condition"


class DegenerateForm(AlgebraError):
    pass


# surfaces
class SurfaceError(HQFTError):
    pass


class NotInvolution(SurfaceError):
    pass


class FixedPoint(SurfaceError):
    pass


class EmptyVertex(SurfaceError):
    pass


class RelationViolated(SurfaceError):
    pass


class EdgeMismatch(SurfaceError):
    axiom = "edge inverse"


class VertexRelation(SurfaceError):
    axiom = "vertex relation"


class NotApplicable(SurfaceError):
    pass


class TooLarge(SurfaceError):
    pass


class DegreeNotOne(SurfaceError):
    pass


# io
class IOFormatError(HQFTError):
    pass


class ParseError(IOFormatError):
    pass


class SchemaError(IOFormatError):
    pass


class UnknownCommand(IOFormatError):
    pass
