"""Exception types shared across the package."""


class WindcurveError(Exception):
    """Base class for all windcurve errors."""


class NonFiniteResult(WindcurveError):
    """The power-coefficient expression degenerated (tip-speed ratio outside
    the range where the parameterisation is meaningful)."""


class NoPositiveCp(WindcurveError):
    """A parameterisation never reaches a positive power coefficient on the
    searched tip-speed-ratio interval, so it cannot drive a turbine model."""


class UnknownParameterisation(WindcurveError, KeyError):
    """Requested power-coefficient parameterisation is not in the registry."""


class MissingMandatoryField(WindcurveError):
    """Rotor diameter or rated power is absent; neither can be defaulted."""


class MissingDiameter(WindcurveError):
    """Power-coefficient extraction needs the rotor diameter."""


class GroundStrike(WindcurveError):
    """Hub height does not clear the rotor radius."""


class UnknownParameter(WindcurveError):
    """Sweep parameter name is not recognised."""


class ModelExtrapolationWarning(UserWarning):
    """A fitted default was evaluated outside the range where it behaves
    sensibly (for example rotation-speed fits crossing at tiny rotors)."""
