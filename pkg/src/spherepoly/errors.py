"""Exception types raised across the package.

All input/validation problems derive from ``ValueError`` so callers (and the
CLI) can treat them uniformly as bad input.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class DegreeOverflowError(ValueError):
    """Polynomial has a term whose weight exceeds the index basis degree."""


class ParseError(ValueError):
    """Malformed JSON document or rational literal."""


class RankDeficiencyError(ValueError):
    """Basis vectors are not linearly independent."""


class DegenerateFormError(ValueError):
    """A linear functional that should be nonzero vanished identically."""


class OffSphereError(ValueError):
    """Point fails the unit-sphere check."""

    def __init__(self, index: int, defect):
        super().__init__(f"point {index} is off the unit sphere (|x|^2 - 1 = {defect})")
        self.index = index
        self.defect = defect


class SizeCapExceeded(ValueError):
    """Problem size exceeds a configured cap."""


class SearchCapExceeded(RuntimeError):
    """Lattice enumeration visited more nodes than allowed."""
