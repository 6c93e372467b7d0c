"""Stabilization-principle Picard iteration for stiff problems.

On ``[x_lo, x_lo + h]`` write ``y(x_lo + h s) = u_lo + h w(s)``. The node
values of ``w`` are relaxed towards the collocation solution by

    w_k <- e^{-tau} w_k + (1 - e^{-tau}) sum_j f(x_lo + h s_j, u_lo + h w_j) W[j, k]

starting from ``w = 0``, and the step ends with ``u_lo + h w_m``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import Method, check_finite, evaluate_nodes, march
from .errors import ConfigError
from .refset import build_reference_set


@dataclass(frozen=True)
class StiffState:
    w: np.ndarray  # (m, N)
    damping: float  # e^{-tau}
    n: int = 0

    @classmethod
    def initial(cls, m, dim, tau):
        return cls(np.zeros((m, dim)), math.exp(-tau), 0)


def _require_endpoints(rs):
    if not rs.has_endpoints:
        raise ConfigError("family", f"stiff iteration needs xi_1 = a and xi_m = b, {rs.family} has not")


def stiff_iterate(rs, problem, x_lo, h, u_lo, state, counter, interval=None):
    """One damped sweep; ``m`` right-hand-side evaluations shared by all nodes."""
    s = rs.unit_nodes
    with np.errstate(over="ignore", invalid="ignore"):
        Y = u_lo + h * state.w
    F = evaluate_nodes(problem.rhs, x_lo + h * s, Y, counter, interval)
    d = state.damping
    with np.errstate(over="ignore", invalid="ignore"):
        w = d * state.w + (1.0 - d) * (rs.W.T @ F)
    check_finite(w, interval)
    return StiffState(w, d, state.n + 1)


def stiff_relax(rs, problem, x_lo, h, u_lo, cfg, counter, interval=None, history=None):
    """Iterate from ``w = 0`` until ``max_j ||w^{n+1}_j - w^n_j|| < eps``; returns ``(state, capped)``."""
    _require_endpoints(rs)
    state = StiffState.initial(rs.m, problem.dim, cfg.tau)
    for _ in range(cfg.max_iter):
        new = stiff_iterate(rs, problem, x_lo, h, u_lo, state, counter, interval)
        diff = float(np.max(np.abs(new.w - state.w)))
        state = new
        if history is not None:
            history.append(diff)
        if diff < cfg.eps:
            return state, False
    return state, True


def stiff_step(rs, problem, x_lo, h, u_lo, cfg, counter, interval=None, warnings=None):
    if not (cfg.tau is not None and cfg.tau > 0):
        raise ConfigError("tau", f"need tau > 0, got {cfg.tau!r}")
    state, capped = stiff_relax(rs, problem, x_lo, h, u_lo, cfg, counter, interval)
    if capped and warnings is not None:
        warnings.append(f"interval {interval}: max_iter={cfg.max_iter} reached before eps={cfg.eps:g}")
    return u_lo + h * state.w[-1], state.n


def solve_stiff(problem, cfg):
    if cfg.method is not Method.STIFF:
        raise ConfigError("method", f"solve_stiff needs method=stiff, got {cfg.method}")
    rs = build_reference_set(cfg.family, cfg.m)
    _require_endpoints(rs)

    def step(i, x_i, h, u_i, counter, warnings):
        return stiff_step(rs, problem, x_i, h, u_i, cfg, counter, interval=i, warnings=warnings)

    return march(problem, cfg, step)
