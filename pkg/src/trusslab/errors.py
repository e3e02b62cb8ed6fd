"""Exception hierarchy shared by all modules."""


class TrussLabError(Exception):
    """Base class; every error carries an optional machine-readable kind and witness."""

    def __init__(self, message, kind=None, witness=None):
        super().__init__(message)
        self.kind = kind
        self.witness = witness

    def to_json(self):
        return {
            "error": type(self).__name__,
            "kind": self.kind,
            "message": str(self),
            "witness": None if self.witness is None else list(self.witness),
        }


class TableError(TrussLabError, ValueError):
    """A table is malformed (wrong shape, non-integer or out-of-range entry)."""


class AxiomError(TrussLabError, ValueError):
    """A group or semigroup axiom fails; kind names the axiom."""


class TrussError(TrussLabError, ValueError):
    """The data does not form a truss of the requested side."""


class MorphismError(TrussLabError, ValueError):
    """A map is not a morphism of the required kind."""


class BoundExceeded(TrussLabError, ValueError):
    """A search was refused because the carrier is too large."""


class TheoremViolation(TrussLabError, RuntimeError):
    """A property that must hold for valid inputs failed. Indicates a bug."""
