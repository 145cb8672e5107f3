"""Exception types raised by the generation pipeline."""


class ForgeError(Exception):
    """Base class for all errors raised by digraph_forge."""


class MeanMismatch(ForgeError, ValueError):
    """In- and out-degree distributions do not share a common mean."""

    def __init__(self, mean_in, mean_out, tolerance):
        self.mean_in = mean_in
        self.mean_out = mean_out
        self.tolerance = tolerance
        super().__init__(
            f"in-degree mean {mean_in!r} and out-degree mean {mean_out!r} "
            f"differ by more than {tolerance!r}"
        )


class RetryExhausted(ForgeError, RuntimeError):
    """The |delta| gate rejected every draw; delta0 or n is likely misconfigured."""

    def __init__(self, attempts, threshold, last_delta):
        self.attempts = attempts
        self.threshold = threshold
        self.last_delta = last_delta
        super().__init__(
            f"degree sums failed to balance after {attempts} draws "
            f"(last |delta|={abs(last_delta)}, threshold={threshold:.6g}); "
            "increase n or delta0"
        )


class SizeGuard(ForgeError, ValueError):
    """Input too large for an exponential-time oracle."""


class AttemptsExhausted(ForgeError, RuntimeError):
    """The repeated model never produced a simple graph.

    ``graphical`` is filled in by the caller once the sequence has been
    checked, so the message can say whether retrying could ever help.
    """

    def __init__(self, failures, graphical=None):
        self.failures = failures
        self.graphical = graphical
        super().__init__(self._message())

    def _message(self):
        msg = f"no simple graph after {self.failures} pairings"
        if self.graphical is False:
            msg += "; the bi-degree sequence is not graphical"
        elif self.graphical is True:
            msg += "; the sequence is graphical, so this was bad luck or lambda1+lambda2 is large"
        return msg

    def __str__(self):
        return self._message()
