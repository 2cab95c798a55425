"""Exception hierarchy for pitree."""


class PitreeError(Exception):
    """Base class for all pitree errors."""


class SpaceMismatch(PitreeError):
    """Point and set (or two sets) live in different spaces."""


class OutsideAlgebra(PitreeError):
    """A symbolic operation left the decidable algebra."""


class OverlapError(PitreeError):
    """Members of a finite union are not pairwise disjoint."""


class ArityZero(PitreeError):
    """A box decomposition was requested with no coordinates."""


class PointOutsideRoot(PitreeError):
    """Point is not in the root leaf of the tree."""


class PartitionViolation(PitreeError):
    """A point lies in no son or in two sons of a node."""


class NotOmegaBranching(PitreeError):
    """A son family is finite."""


class ComponentNotVerified(PitreeError):
    """A product component failed its foliage checks."""


class LambdaTooSmall(PitreeError):
    """Products need at least two coordinates."""


class FIPViolation(PitreeError):
    """A required finite intersection is empty."""


class NotRefining(PitreeError):
    """A filter certificate does not refine the target family."""


class AlphaNotIncreasing(PitreeError):
    """A rescaling map is not strictly increasing."""


class DuplicatePoint(PitreeError):
    """The removed point list repeats a point."""


class InconsistentFamily(PitreeError):
    """A graft family violates the consistency conditions."""


class ConfigError(PitreeError):
    """A construction term or input file is invalid."""


class SerializationError(PitreeError):
    """A set or tree cannot be (de)serialized."""
