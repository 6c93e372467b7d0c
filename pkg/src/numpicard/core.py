"""Problem, configuration and result types shared by the three solvers."""

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError, DivergenceError
from .families import ENDPOINT_FAMILIES, ORTHOGONAL_FAMILIES, Family

DEFAULT_MAX_ITER = 50
DEFAULT_M_MAX = 30


class Method(str, enum.Enum):
    FIXED = "fixed"
    VARIABLE = "variable"
    STIFF = "stiff"

    def __str__(self):
        return self.value


class EndpointVariant(str, enum.Enum):
    LAST_NODE = "last-node"
    END_INTEGRAL = "end-integral"

    def __str__(self):
        return self.value


def _parse_enum(cls, value, key):
    if isinstance(value, cls):
        return value
    tag = str(value).strip().lower().replace("_", "-")
    for item in cls:
        if item.value == tag:
            return item
    choices = ", ".join(item.value for item in cls)
    raise ConfigError(key, f"unknown value {value!r} (expected one of {choices})")


@dataclass(frozen=True)
class OdeProblem:
    """``y' = rhs(x, y)``, ``y(x0) = y0`` on ``[x0, xf]``."""

    name: str
    rhs: Callable
    y0: np.ndarray
    x0: float
    xf: float
    exact: Optional[Callable] = None

    def __post_init__(self):
        y0 = np.array(np.atleast_1d(self.y0), dtype=float)
        y0.setflags(write=False)
        object.__setattr__(self, "y0", y0)
        if not self.xf > self.x0:
            raise ConfigError("xf", f"need xf > x0, got [{self.x0}, {self.xf}]")

    @property
    def dim(self):
        return self.y0.size


class EvalCounter:
    """Counts full vector evaluations of a right-hand side."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def __call__(self, rhs, x, y):
        self.count += 1
        return np.asarray(rhs(x, y), dtype=float)

    def __repr__(self):
        return f"EvalCounter(count={self.count})"


def evaluate_nodes(rhs, xs, Y, counter, interval=None):
    """Stack ``rhs(xs[j], Y[j])`` into an ``(m, N)`` array, one counted call per node."""
    F = np.empty_like(Y)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for j in range(len(xs)):
            try:
                F[j] = counter(rhs, float(xs[j]), Y[j])
            except (OverflowError, ZeroDivisionError) as exc:
                raise DivergenceError(interval, f"rhs raised {exc!r}") from exc
    if not np.all(np.isfinite(F)):
        raise DivergenceError(interval, "rhs returned a non-finite value")
    return F


def check_finite(arr, interval):
    if not np.all(np.isfinite(arr)):
        raise DivergenceError(interval)


@dataclass(frozen=True)
class SolverConfig:
    """Settings for one solve.

    ``family`` and ``endpoint_variant`` default per method: equidistant nodes
    for the fixed and stiff solvers, legendre-shifted roots for the variable
    one; the last-node variant whenever the family contains ``b``.
    ``lipschitz`` is an optional estimate of L used only for the contraction
    diagnostic. ``streak`` is the number of consecutive endpoint differences
    below ``eps`` the variable method needs before it stops growing.
    """

    method: Method = Method.FIXED
    M: int = 10
    eps: float = 1e-9
    max_iter: int = DEFAULT_MAX_ITER
    family: Optional[Family] = None
    m: Optional[int] = None
    m_max: int = DEFAULT_M_MAX
    tau: Optional[float] = None
    endpoint_variant: Optional[EndpointVariant] = None
    lipschitz: Optional[float] = None
    streak: int = 2

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)
        method = _parse_enum(Method, self.method, "method")
        set_("method", method)
        set_("M", _positive_int(self.M, "M"))
        set_("max_iter", _positive_int(self.max_iter, "max_iter"))
        if not (isinstance(self.eps, (int, float)) and np.isfinite(self.eps) and self.eps > 0):
            raise ConfigError("eps", f"tolerance must be a positive number, got {self.eps!r}")

        if self.family is None:
            family = Family.LEGENDRE_SHIFTED if method is Method.VARIABLE else Family.EQUIDISTANT
        else:
            try:
                family = Family.parse(self.family)
            except ValueError as exc:
                raise ConfigError("family", str(exc)) from None
        set_("family", family)

        if method is Method.VARIABLE:
            if family not in ORTHOGONAL_FAMILIES:
                raise ConfigError("family", f"variable method needs orthogonal-root nodes, got {family}")
            m_max = _positive_int(self.m_max, "m_max")
            if m_max < 2:
                raise ConfigError("m_max", f"need m_max >= 2, got {m_max}")
            set_("m_max", m_max)
            set_("streak", _positive_int(self.streak, "streak"))
        else:
            if self.m is None:
                raise ConfigError("m", f"{method} method needs the node count m")
            set_("m", _positive_int(self.m, "m"))

        if method is Method.STIFF:
            if self.tau is None or not self.tau > 0:
                raise ConfigError("tau", f"stiff method needs tau > 0, got {self.tau!r}")
            if family not in ENDPOINT_FAMILIES:
                raise ConfigError("family", f"stiff method needs xi_1 = a and xi_m = b, {family} has neither")

        if method is Method.FIXED:
            if self.endpoint_variant is None:
                variant = (EndpointVariant.LAST_NODE if family in ENDPOINT_FAMILIES
                           else EndpointVariant.END_INTEGRAL)
            else:
                variant = _parse_enum(EndpointVariant, self.endpoint_variant, "endpoint_variant")
            if variant is EndpointVariant.LAST_NODE and family not in ENDPOINT_FAMILIES:
                raise ConfigError("endpoint_variant", f"last-node needs xi_m = b, which {family} lacks")
            set_("endpoint_variant", variant)

        if self.lipschitz is not None and not self.lipschitz > 0:
            raise ConfigError("lipschitz", f"must be positive, got {self.lipschitz!r}")


def _positive_int(value, key):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise ConfigError(key, f"need a positive integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class SolutionTrace:
    mesh: np.ndarray
    u: np.ndarray
    iters: list
    nf: int
    warnings: list = field(default_factory=list)

    @property
    def h(self):
        return (self.mesh[-1] - self.mesh[0]) / (self.mesh.size - 1)


def uniform_mesh(problem, M):
    return np.linspace(problem.x0, problem.xf, M + 1)


NORMS = {
    "max": lambda v: float(np.max(np.abs(v))),
    "sum": lambda v: float(np.sum(np.abs(v))),
}


def max_error(trace, problem, norm="max"):
    """``max_i ||y(x_i) - u_i||`` over the mesh.

    ``norm="max"`` is the componentwise max-norm used everywhere else in the
    package. ``norm="sum"`` (the 1-norm) is what the published comparison
    tables report for systems.
    """
    if problem.exact is None:
        raise ConfigError("exact", f"problem {problem.name!r} has no exact solution")
    try:
        vec_norm = NORMS[norm]
    except KeyError:
        raise ConfigError("norm", f"unknown norm {norm!r} (expected max or sum)") from None
    err = 0.0
    for x, u in zip(trace.mesh, trace.u):
        err = max(err, vec_norm(np.asarray(problem.exact(x), dtype=float) - u))
    return err


def contraction_factor(omega, h, lipschitz, dim):
    """``h * omega * N * L``; the collocation map contracts when this is below 1."""
    return h * omega * dim * lipschitz


def march(problem, cfg, step):
    """Run ``step(interval, x_i, h, u_i, counter, warnings) -> (u_next, iters)`` over the mesh."""
    mesh = uniform_mesh(problem, cfg.M)
    h = (problem.xf - problem.x0) / cfg.M
    u = np.empty((cfg.M + 1, problem.dim))
    u[0] = problem.y0
    counter = EvalCounter()
    iters = []
    warnings = []
    for i in range(cfg.M):
        u[i + 1], n = step(i, mesh[i], h, u[i], counter, warnings)
        iters.append(n)
    u.setflags(write=False)
    mesh.setflags(write=False)
    return SolutionTrace(mesh=mesh, u=u, iters=iters, nf=counter.count, warnings=warnings)
