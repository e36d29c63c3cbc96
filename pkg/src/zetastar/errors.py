"""Exception hierarchy shared by all modules."""


class ZetaStarError(ValueError):
    pass


class InvalidCompositionError(ZetaStarError):
    pass


class InvalidWordError(ZetaStarError):
    pass


class NotInH1Error(ZetaStarError):
    """A word that does not end with ``y`` was given where H^1 is required."""


class NotInH0Error(ZetaStarError):
    """A word outside H^0 (must start with ``x`` and end with ``y``)."""


class DivergentEvaluationError(NotInH0Error):
    """Evaluation of a non-admissible index was requested."""


class UndefinedWeightError(ZetaStarError):
    pass


class PrecisionInsufficientError(ZetaStarError):
    pass


class InvalidJVectorError(ZetaStarError):
    pass


class CapExceededError(ZetaStarError):
    pass
