"""Picard iteration with a fixed reference set (collocation by successive substitution).

On each mesh interval the node values solve

    U_k = u_i + h * sum_j W[j, k] f(x_{i,j}, U_j),    k = 1..m,

and the system is solved by plain fixed-point iteration started from
``U_k = u_i``.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    EndpointVariant,
    Method,
    check_finite,
    contraction_factor,
    evaluate_nodes,
    march,
)
from .errors import ConfigError
from .refset import build_reference_set, map_to_interval


@dataclass(frozen=True)
class FixedStepState:
    stages: np.ndarray  # (m, N), node values u^{(n)}_{i,j}
    n: int = 0

    @classmethod
    def initial(cls, u_i, m):
        return cls(np.tile(np.asarray(u_i, dtype=float), (m, 1)), 0)


def fixed_iterate(rs, problem, x_i, h, u_i, state, counter, interval=None):
    """One substitution sweep; costs exactly ``m`` right-hand-side evaluations."""
    xs = map_to_interval(rs, x_i, h)
    F = evaluate_nodes(problem.rhs, xs, state.stages, counter, interval)
    with np.errstate(over="ignore", invalid="ignore"):
        stages = u_i + h * (rs.W.T @ F)
    check_finite(stages, interval)
    return FixedStepState(stages, state.n + 1)


def fixed_collocate(rs, problem, x_i, h, u_i, cfg, counter, interval=None, history=None):
    """Iterate until successive node values differ by less than ``cfg.eps``.

    Returns ``(state, capped)``; ``capped`` is true when ``cfg.max_iter``
    sweeps ran without meeting the tolerance. If ``history`` is a list, the
    stopping differences are appended to it.
    """
    state = FixedStepState.initial(u_i, rs.m)
    for _ in range(cfg.max_iter):
        new = fixed_iterate(rs, problem, x_i, h, u_i, state, counter, interval)
        diff = float(np.max(np.abs(new.stages - state.stages)))
        state = new
        if history is not None:
            history.append(diff)
        if diff < cfg.eps:
            return state, False
    return state, True


def fixed_step(rs, problem, x_i, h, u_i, cfg, counter, interval=None, warnings=None):
    """Advance one mesh interval; returns ``(u_next, iterations)``."""
    state, capped = fixed_collocate(rs, problem, x_i, h, u_i, cfg, counter, interval)
    if capped and warnings is not None:
        warnings.append(f"interval {interval}: max_iter={cfg.max_iter} reached before eps={cfg.eps:g}")
    if cfg.endpoint_variant is EndpointVariant.LAST_NODE:
        if rs.nodes[-1] != rs.b:
            raise ConfigError("endpoint_variant", f"last-node needs xi_m = b, which {rs.family} lacks")
        return state.stages[-1].copy(), state.n
    xs = map_to_interval(rs, x_i, h)
    F = evaluate_nodes(problem.rhs, xs, state.stages, counter, interval)
    with np.errstate(over="ignore", invalid="ignore"):
        u_next = u_i + h * (rs.end_weights @ F)
    check_finite(u_next, interval)
    return u_next, state.n


def solve_fixed(problem, cfg):
    if cfg.method is not Method.FIXED:
        raise ConfigError("method", f"solve_fixed needs method=fixed, got {cfg.method}")
    rs = build_reference_set(cfg.family, cfg.m)
    pre_warnings = []
    if cfg.lipschitz is not None:
        h = (problem.xf - problem.x0) / cfg.M
        q = contraction_factor(rs.omega, h, cfg.lipschitz, problem.dim)
        if q >= 1.0:
            pre_warnings.append(f"contraction condition violated: h*omega*N*L = {q:.3g} >= 1")

    def step(i, x_i, h, u_i, counter, warnings):
        return fixed_step(rs, problem, x_i, h, u_i, cfg, counter, interval=i, warnings=warnings)

    trace = march(problem, cfg, step)
    trace.warnings[:0] = pre_warnings
    return trace
