class FrameError(Exception):
    """Base class for computational refusals raised by nstFrames."""


class UnderResolvedQuadrature(FrameError):
    """The phase of an inner product oscillates faster than the quadrature grid."""

    def __init__(self, required, available, frequency):
        self.required = required
        self.available = available
        self.frequency = frequency
        super().__init__(
            "under-resolved quadrature: need %d samples per axis, have %d (phase frequency %.6g)"
            % (required, available, frequency))


class GridMismatch(FrameError, ValueError):
    pass


class CartoonRejected(FrameError):
    def __init__(self, seed, attempts, worst_curvature, nu):
        self.seed = seed
        self.attempts = attempts
        self.worst_curvature = worst_curvature
        self.nu = nu
        super().__init__(
            "no cartoon with |curvature| <= %g after %d attempts (seed %s, best max |curvature| %.6g)"
            % (nu, attempts, seed, worst_curvature))


class SliceError(FrameError, ValueError):
    pass
