"""Exception types. Input problems subclass ``ValueError`` so callers can catch broadly."""


class EdgetexError(Exception):
    pass


class DegenerateRoiError(EdgetexError, ValueError):
    """ROI leaves the image or is smaller than the 3x3 gradient kernel."""


class RangeError(EdgetexError, ValueError):
    pass


class SpecError(EdgetexError, ValueError):
    pass


class IngestionError(EdgetexError, OSError):
    pass


class ParseError(EdgetexError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StatisticsError(EdgetexError, ValueError):
    """Moments that no Beta distribution can match."""


class ConstantSampleError(StatisticsError):
    pass


class InfeasibleMomentsError(StatisticsError):
    pass


class PoleError(StatisticsError):
    pass
