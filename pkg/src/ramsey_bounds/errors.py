"""Exception types raised on invalid inputs."""


class RamseyBoundsError(ValueError):
    """Base class for every input error raised by this package."""


class EmptyInput(RamseyBoundsError):
    pass


class EntryBelowTwo(RamseyBoundsError):
    pass


class EntryBelowThree(RamseyBoundsError):
    pass


class SignatureTooShort(RamseyBoundsError):
    pass


class FewerThanTwoEntries(RamseyBoundsError):
    pass


class RTooSmall(RamseyBoundsError):
    pass


class KTooSmall(RamseyBoundsError):
    pass


class LengthMismatch(RamseyBoundsError):
    pass


class InvalidPartList(RamseyBoundsError):
    pass
