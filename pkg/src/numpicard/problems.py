"""Benchmark initial value problems with known solutions.

``ex1`` .. ``ex5`` are the classical test cases used for the comparison
tables; the synthetic problems exercise exactness and trivial cases.
"""

import math

import numpy as np

from .core import OdeProblem
from .errors import ConfigError

KEPLER_TOL = 1e-14
KEPLER_MAX_STEPS = 100


def _ex1(params):
    def rhs(x, y):
        if x < 0:
            raise ValueError(f"ex1 is defined for x >= 0, got {x}")
        s = x + 2.0
        return y * (4.0 * s**3 - y) / (s**4 - 1.0)

    def exact(x):
        s = x + 2.0
        return np.array([1.0 + s + s**2 + s**3])

    return OdeProblem("ex1", rhs, [15.0], 0.0, 1.0, exact)


def _orbit_rhs(x, y):
    r3 = math.hypot(y[0], y[2]) ** 3
    return np.array([y[1], -y[0] / r3, y[3], -y[2] / r3])


def _ex2(params):
    xf = params.pop("xf", 2 * math.pi)

    def exact(x):
        c, s = math.cos(x), math.sin(x)
        return np.array([c, -s, s, c])

    return OdeProblem("ex2", _orbit_rhs, [1.0, 0.0, 0.0, 1.0], 0.0, xf, exact)


def kepler_anomaly(x, e=0.6):
    """Solve ``u - e sin u = x`` for ``u`` by Newton's method from ``u = x``."""
    u = float(x)
    for _ in range(KEPLER_MAX_STEPS):
        du = (u - e * math.sin(u) - x) / (1.0 - e * math.cos(u))
        u -= du
        if abs(du) < KEPLER_TOL:
            break
    return u


def _ex3(params):
    xf = params.pop("xf", 2 * math.pi)

    def exact(x):
        u = kepler_anomaly(x)
        c, s = math.cos(u), math.sin(u)
        d = 1.0 - 0.6 * c
        return np.array([c - 0.6, -s / d, 0.8 * s, 0.8 * c / d])

    return OdeProblem("ex3", _orbit_rhs, [0.4, 0.0, 0.0, 2.0], 0.0, xf, exact)


def _ex4(params):
    def rhs(x, y):
        return np.array([998.0 * y[0] + 1998.0 * y[1], -999.0 * y[0] - 1999.0 * y[1]])

    def exact(x):
        slow, fast = math.exp(-x), math.exp(-1000.0 * x)
        return np.array([2.0 * slow - fast, -slow + fast])

    return OdeProblem("ex4", rhs, [1.0, 0.0], 0.0, 1.0, exact)


def _ex5(params):
    return OdeProblem("ex5", lambda x, y: -20.0 * y, [1.0], 0.0, 1.0,
                      lambda x: np.array([math.exp(-20.0 * x)]))


def _zero_rhs(params):
    dim = int(params.pop("dim", 1))
    xf = params.pop("xf", 1.0)
    y0 = np.asarray(params.pop("y0", np.ones(dim)), dtype=float)
    zeros = np.zeros(y0.size)
    return OdeProblem("zero-rhs", lambda x, y: zeros, y0, 0.0, xf, lambda x: y0.copy())


def _constant_rhs(params):
    c = np.atleast_1d(np.asarray(params.pop("c", 1.0), dtype=float))
    xf = params.pop("xf", 1.0)
    y0 = np.asarray(params.pop("y0", np.zeros(c.size)), dtype=float)
    return OdeProblem("constant-rhs", lambda x, y: c, y0, 0.0, xf, lambda x: y0 + c * x)


def _poly_rhs(params):
    # y' = sum_{k<=d} (k+1) x^k, y(0) = 1  =>  y = 1 + sum_{k<=d} x^{k+1}
    d = int(params.pop("degree", 2))
    if d < 0:
        raise ConfigError("degree", f"need degree >= 0, got {d}")
    xf = params.pop("xf", 1.0)
    powers = np.arange(d + 1)

    def rhs(x, y):
        return np.array([np.sum((powers + 1) * x**powers)])

    def exact(x):
        return np.array([1.0 + np.sum(x ** (powers + 1))])

    return OdeProblem(f"poly-rhs({d})", rhs, [1.0], 0.0, xf, exact)


def _linear_decay(params):
    lam = float(params.pop("lam", -1.0))
    xf = params.pop("xf", 1.0)
    return OdeProblem(f"linear-decay({lam:g})", lambda x, y: lam * y, [1.0], 0.0, xf,
                      lambda x: np.array([math.exp(lam * x)]))


CATALOG = {
    "ex1": _ex1,
    "ex2": _ex2,
    "ex3": _ex3,
    "ex4": _ex4,
    "ex5": _ex5,
    "zero-rhs": _zero_rhs,
    "constant-rhs": _constant_rhs,
    "poly-rhs": _poly_rhs,
    "linear-decay": _linear_decay,
}

BENCHMARKS = ("ex1", "ex2", "ex3", "ex4", "ex5")


def get_problem(name, **params):
    """Build catalog problem ``name``.

    ``xf`` may be overridden for ex2, ex3 and the synthetic problems; ex1, ex4
    and ex5 live on [0, 1] only. Unknown names or parameters raise
    :class:`ConfigError`.
    """
    try:
        factory = CATALOG[name]
    except KeyError:
        raise ConfigError("problem", f"unknown problem {name!r} (known: {', '.join(CATALOG)})") from None
    params = {k: v for k, v in params.items() if v is not None}
    if name in ("ex1", "ex4", "ex5") and "xf" in params:
        if float(params.pop("xf")) != 1.0:
            raise ConfigError("xf", f"{name} is only defined on [0, 1]")
    problem = factory(params)
    if params:
        raise ConfigError(next(iter(params)), f"not a parameter of problem {name!r}")
    return problem
