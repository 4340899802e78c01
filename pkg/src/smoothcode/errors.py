"""Exception types and parameter checks shared across the package."""


class SmoothcodeError(Exception):
    """Base class for every error raised by this package."""


class NotNormalized(SmoothcodeError):
    """Probabilities are negative or do not sum to 1 within tolerance."""


class EmptyDistribution(SmoothcodeError):
    """No strictly positive probability mass was supplied."""


class TooLarge(SmoothcodeError):
    """A requested expansion or search exceeds the configured size cap."""


class BadEpsilon(SmoothcodeError):
    """Error budget outside its allowed range."""


class BadAlpha(SmoothcodeError):
    """Entropy order outside the open interval (0, 1)."""


class BadLambda(SmoothcodeError):
    """Moment tilt must be strictly positive."""


class KraftViolated(SmoothcodeError):
    """Requested codeword lengths do not fit in a binary prefix code."""


class Misaligned(SmoothcodeError):
    """Code and distribution disagree on the symbol set."""


class SandwichViolated(SmoothcodeError):
    """An exactly computed moment escaped its bounds; indicates a bug."""


class Infeasible(SmoothcodeError):
    """No code within the search limits meets the error budget."""


class BadMixture(SmoothcodeError):
    """Mixture weights or components fail validation."""


def check_eps(eps: float) -> None:
    if not 0.0 <= eps < 1.0:
        raise BadEpsilon("eps must be in [0, 1)")


def check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise BadAlpha("alpha must be in (0, 1)")


def check_lambda(lam: float) -> None:
    if not lam > 0.0:
        raise BadLambda("lambda must be > 0")
