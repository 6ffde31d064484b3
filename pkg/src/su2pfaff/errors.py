"""Exception types raised by the verification engine."""


class VerificationError(Exception):
    """Base class for all errors raised by this package."""


class ChartDegenerate(VerificationError):
    """The Euler-angle chart is singular at the requested point (sin theta ~ 0)."""


class SingularCoframe(VerificationError):
    pass


class SingularMetric(VerificationError):
    pass


class BranchRestriction(VerificationError):
    """Fractional powers were requested outside the real positive branch."""


class DegenerateParams(VerificationError):
    pass


class InvalidParams(VerificationError):
    pass


class UnsupportedCase(VerificationError):
    pass
