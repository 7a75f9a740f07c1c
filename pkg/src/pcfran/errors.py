"""Exception types shared across the package."""


class SchemeError(Exception):
    """Base class for all scheme-level failures."""


class InvalidConnectivity(SchemeError):
    """Receiver connectivity r outside 1 <= r < H."""


class OutOfRange(SchemeError):
    """A parameter or id falls outside its admissible range."""


class SizeError(SchemeError):
    """Byte lengths do not divide as required and padding is unavailable."""


class InsufficientChunks(SchemeError):
    """Fewer (or more) than r distinct coded chunks supplied to the decoder."""


class IndexOutOfRange(SchemeError):
    """A chunk index is not a valid 1-based id in [H]."""


class NonIntegerT(SchemeError):
    """Operation requires an integer cache parameter t; apply memory sharing first."""


class UnboundedNdt(SchemeError):
    """Fronthaul rate is zero while fronthaul traffic is nonzero."""


class UnsupportedRegime(SchemeError):
    """No alignment construction is available for this (r, t) combination."""


class IncompatiblePair(SchemeError):
    """Connectivity pair does not satisfy rA + rB = H with rA >= rB."""


class MissingMessage(SchemeError):
    """A coded message required for decoding was not delivered."""


class CacheMismatch(SchemeError):
    """A piece the placement rule promises is absent; the stored state is corrupt."""


class NotRelevant(SchemeError):
    """The message is neither desired by nor interfering at the given user."""
