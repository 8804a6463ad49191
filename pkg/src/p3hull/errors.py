"""Exception types shared across the package."""


class P3HullError(Exception):
    """Base class for all p3hull errors."""


class InvalidParams(P3HullError):
    """Family parameters violate their constraints (e.g. k outside 1 <= k < n/2)."""


class InvalidPermutation(P3HullError):
    """Permutation is not a fixed-point-free bijection with all cycles of length >= 3."""


class ParseError(P3HullError):
    """Cycle-notation text is syntactically malformed."""


class ExceedsCapacity(P3HullError):
    """Instance is larger than the configured capacity cap."""


class NotInfecting(P3HullError):
    """The set does not infect the whole vertex set (its hull is proper)."""


class NotAForest(P3HullError):
    """The complement of the given set induces a cycle."""


class PathConditionUnmet(P3HullError):
    """No exterior path attaches to all odd interior cycles at the given start."""


class ConstructionFailed(P3HullError):
    """A closed-form construction did not validate against the closure oracle."""
