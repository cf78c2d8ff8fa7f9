"""Exception hierarchy shared by every module."""


class AutospecError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(AutospecError, ValueError):
    pass


class PoleError(AutospecError, ZeroDivisionError):
    pass


class IdentityError(AutospecError):
    """The automorphism is the identity map, which has no fixed-point type."""


class NumericallyAmbiguous(AutospecError):
    """Classification could not be decided at the configured tolerances."""


class WrongKind(AutospecError, TypeError):
    pass


class NotTranslation(AutospecError):
    """A map that should be a translation in the half-plane chart is not."""


class OrientationError(AutospecError):
    pass


class ConjugacyFailure(AutospecError):
    pass


class SingularResolvent(AutospecError):
    """mu lies in the spectrum, so the resolvent equation has no unique solution."""


class PairingError(AutospecError):
    pass


class ConvergenceError(AutospecError):
    pass


class NoConvergence(AutospecError):
    pass


class OverflowGuard(AutospecError, OverflowError):
    pass
