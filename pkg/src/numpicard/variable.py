"""Picard iteration with a growing reference set.

On a mesh interval the node count starts at one and increases by one per
level. The values at the ``m + 1`` roots of the next orthogonal polynomial,
and the endpoint value, are obtained by integrating the interpolant of the
level-``m`` data; there is no inner fixed-point loop.
"""

import functools
from dataclasses import dataclass

import numpy as np

from .core import Method, check_finite, evaluate_nodes, march
from .errors import ConfigError
from .families import INTERVALS, ORTHOGONAL_FAMILIES, Family
from .refset import basis_integrals, reference_nodes


@dataclass(frozen=True, eq=False)
class LevelTransfer:
    """Lift level-``m`` node data to level ``m + 1``.

    ``W`` has ``m + 2`` rows and ``m`` columns: row ``k < m + 1`` holds
    ``integral_a^{target_k} l_j`` and the last row ``integral_a^b l_j``. The
    factor ``h/(b - a)`` is applied by the caller.
    """

    family: Family
    m: int
    a: float
    b: float
    source_nodes: np.ndarray
    target_nodes: np.ndarray
    W: np.ndarray


def build_transfer(family, m, m_max=None):
    try:
        family = Family.parse(family)
    except ValueError as exc:
        raise ConfigError("family", str(exc)) from None
    if family not in ORTHOGONAL_FAMILIES:
        raise ConfigError("family", f"variable reference sets need orthogonal-root nodes, got {family}")
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ConfigError("m", f"need a positive integer level, got {m!r}")
    if m_max is not None and m >= m_max:
        raise ConfigError("m", f"level {m} must be below m_max={m_max}")
    return _transfer_cached(family, int(m))


@functools.lru_cache(maxsize=None)
def _transfer_cached(family, m):
    a, b = INTERVALS[family]
    src, _, _ = reference_nodes(family, m)
    dst, _, _ = reference_nodes(family, m + 1)
    W = basis_integrals(src, a, b, np.append(dst, b)).T
    for arr in (src, dst, W):
        arr.setflags(write=False)
    return LevelTransfer(family, m, a, b, src, dst, W)


def variable_step(problem, x_i, h, u_i, cfg, counter, interval=None, warnings=None):
    """Advance one interval by growing the node count.

    Returns ``(u_next, final_m, levels)`` where ``levels`` lists the endpoint
    approximations ``u^1_{i+1} = u_i, u^2_{i+1}, ...`` and ``final_m`` is the
    level of the returned one. The growth stops once ``cfg.streak``
    consecutive endpoint differences are below ``cfg.eps``.
    """
    family = cfg.family
    a, b = INTERVALS[family]
    u_i = np.asarray(u_i, dtype=float)
    values = u_i[np.newaxis, :].copy()
    endpoint = u_i.copy()
    levels = [endpoint]
    m = 1
    below = 0
    while True:
        T = build_transfer(family, m, cfg.m_max)
        xs = x_i + h * (T.source_nodes - a) / (b - a)
        F = evaluate_nodes(problem.rhs, xs, values, counter, interval)
        with np.errstate(over="ignore", invalid="ignore"):
            lifted = u_i + (h / (b - a)) * (T.W @ F)
        check_finite(lifted, interval)
        values, new_endpoint = lifted[:-1], lifted[-1]
        diff = float(np.max(np.abs(new_endpoint - endpoint)))
        endpoint = new_endpoint
        levels.append(endpoint)
        m += 1
        below = below + 1 if diff < cfg.eps else 0
        if below >= cfg.streak:
            break
        if m >= cfg.m_max:
            if warnings is not None:
                warnings.append(f"interval {interval}: m_max={cfg.m_max} reached before eps={cfg.eps:g}")
            break
    return endpoint, m, levels


def solve_variable(problem, cfg):
    if cfg.method is not Method.VARIABLE:
        raise ConfigError("method", f"solve_variable needs method=variable, got {cfg.method}")

    def step(i, x_i, h, u_i, counter, warnings):
        u_next, final_m, _ = variable_step(problem, x_i, h, u_i, cfg, counter, interval=i, warnings=warnings)
        return u_next, final_m

    return march(problem, cfg, step)
