"""Exception types raised by the solvers and the experiment harness."""


class PicardError(Exception):
    """Base class for all errors raised by numpicard."""


class InvalidNodesError(PicardError, ValueError):
    """Interpolation nodes are duplicated or not strictly increasing."""


class ConfigError(PicardError, ValueError):
    """A configuration value is missing, out of range or inconsistent.

    ``key`` names the offending setting so that callers (the CLI in
    particular) can report it.
    """

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


class DivergenceError(PicardError, ArithmeticError):
    """An iterate became non-finite on mesh interval ``interval``."""

    def __init__(self, interval, message="non-finite value in iterate"):
        where = "?" if interval is None else interval
        super().__init__(f"divergence on mesh interval {where}: {message}")
        self.interval = interval
