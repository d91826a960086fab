"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    pass


class DegenerateSteering(ArithmeticError):
    """A steering vector vanished identically and cannot be normalized."""


class CannotCalibrateSNR(ValueError):
    pass


class EmptyNoiseSubspace(ValueError):
    pass


class ScenarioError(ValueError):
    """Invalid scenario document; ``field`` is a dotted path into it."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
