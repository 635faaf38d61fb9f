"""Exception hierarchy for shockscan."""


class ShockScanError(Exception):
    """Base class for all shockscan errors."""


class DomainError(ShockScanError):
    """A state vector lies outside the admissible domain of its system."""


class HyperbolicityError(ShockScanError):
    """The directional symbol failed to be real-diagonalizable within tolerance."""


class MultiplicityError(ShockScanError):
    """An operation requiring a simple characteristic mode hit a multiple one."""


class CharacteristicBoundaryError(ShockScanError):
    """The normal flux Jacobian is singular or near-singular at the queried state."""


class ContinuationError(ShockScanError):
    """Newton continuation for the jump conditions failed to produce a shock."""


class ClassificationError(ShockScanError):
    """A discontinuity does not satisfy the Lax inequalities for any family."""


class MarginalShockError(ClassificationError):
    """A characteristic speed coincides with the shock speed within tolerance."""


class StructuralError(ShockScanError):
    """Subspace dimensions do not match the hyperbolic mode counts."""


class DegenerateShockError(ShockScanError):
    """The jump column vanishes (identical states or degenerate frequency)."""


class TuningError(ShockScanError):
    """The auxiliary wave speed fails the supersonic requirement."""


class BracketError(ShockScanError):
    """A refinement bracket does not enclose a local minimum."""
