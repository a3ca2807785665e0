"""Exception hierarchy shared across the package."""


class RobotGameError(ValueError):
    """Base class for every error raised by robotgame."""


class EmptyOrZeroSet(RobotGameError):
    pass


class NotCoprime(RobotGameError):
    pass


class MixedSigns(RobotGameError):
    pass


class EmptyMoveSet(RobotGameError):
    def __init__(self, side: str):
        super().__init__(f"move set {side} is empty")
        self.side = side


class DegenerateX(RobotGameError):
    pass


class InvalidBound(RobotGameError):
    pass


class InvariantViolation(RobotGameError):
    pass


class StrategyExhausted(RobotGameError):
    """No strategy rule applies; on a winning input this is a bug."""


class CertificationFailed(RobotGameError):
    def __init__(self, x, adversary: str, seed, trace=None, reason: str = ""):
        msg = f"certification failed at x={x} against {adversary} (seed={seed})"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.x = x
        self.adversary = adversary
        self.seed = seed
        self.trace = trace or []
