"""Reference node sets on [a, b] and their interpolatory quadrature weights.

A reference set fixes nodes ``xi_1 < ... < xi_m`` on ``[a, b]``. Every mesh
interval ``[x_i, x_i + h]`` receives the affine image of these nodes, and the
integrals of the cardinal polynomials are computed once here, so the solvers
only ever multiply by precomputed matrices.

Weight convention: ``W[j, k] = (1/(b-a)) * integral_a^{xi_k} l_j``, i.e. the
row index is the basis polynomial and the column index the upper limit. The
matrix the way it is usually displayed (one row per node) is ``W.T``.
"""

import functools
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .families import ENDPOINT_FAMILIES, INTERVALS, Family
from .polyops import lagrange_integrals, orth_poly_roots

MAX_FIXED_NODES = 12


@dataclass(frozen=True, eq=False)
class ReferenceSet:
    family: Family
    a: float
    b: float
    nodes: np.ndarray
    W: np.ndarray
    end_weights: np.ndarray
    omega: float

    @property
    def m(self):
        return self.nodes.size

    @property
    def stage_matrix(self):
        """Weights with one row per node ``k`` and one column per basis index ``j``."""
        return self.W.T

    @property
    def has_endpoints(self):
        return self.nodes[0] == self.a and self.nodes[-1] == self.b

    @property
    def unit_nodes(self):
        """Nodes rescaled to [0, 1]."""
        return (self.nodes - self.a) / (self.b - self.a)


def _readonly(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def basis_integrals(nodes, a, b, limits):
    """``I[j, k] = integral_a^{limits[k]} l_j(xi) dxi`` for the cardinal basis on ``nodes``.

    Computed in ``t = (2 xi - a - b)/(b - a)`` on ``[-1, 1]`` and rescaled.
    """
    to_t = lambda xi: (2.0 * np.asarray(xi, dtype=float) - a - b) / (b - a)
    return (b - a) / 2.0 * lagrange_integrals(to_t(nodes), -1.0, to_t(limits))


def reference_nodes(family, m):
    """Ascending nodes of ``family`` with ``m`` points, and the interval ``(a, b)``."""
    family = Family.parse(family)
    a, b = INTERVALS[family]
    j = np.arange(m)
    if family is Family.EQUIDISTANT:
        nodes = j / (m - 1)
    elif family is Family.CHEBYSHEV2:
        # -cos(j pi/(m-1)) written as a sine so the set is exactly symmetric.
        nodes = np.sin(np.pi * (2 * j - (m - 1)) / (2 * (m - 1)))
    else:
        nodes = orth_poly_roots(family, m)
    return np.asarray(nodes, dtype=float), a, b


def _check_m(family, m, cap):
    if isinstance(m, bool) or int(m) != m:
        raise ConfigError("m", f"node count must be an integer, got {m!r}")
    m = int(m)
    low = 2 if family in ENDPOINT_FAMILIES else 1
    if m < low:
        raise ConfigError("m", f"{family} needs m >= {low}, got {m}")
    if cap is not None and m > cap:
        raise ConfigError("m", f"m must be <= {cap}, got {m}")
    return m


def build_reference_set(family, m):
    """Nodes and weights for ``m`` points of ``family``.

    Results are cached per ``(family, m)``; the returned object and its arrays
    are read-only.
    """
    try:
        family = Family.parse(family)
    except ValueError as exc:
        raise ConfigError("family", str(exc)) from None
    m = _check_m(family, m, MAX_FIXED_NODES)
    return _build_cached(family, m)


@functools.lru_cache(maxsize=None)
def _build_cached(family, m):
    return _build(family, m)


def _build(family, m):
    nodes, a, b = reference_nodes(family, m)
    scale = 1.0 / (b - a)
    W = basis_integrals(nodes, a, b, nodes) * scale
    end = basis_integrals(nodes, a, b, [b])[:, 0] * scale
    # Exact zeros / exact end column where a node coincides with an endpoint.
    if nodes[0] == a:
        W[:, 0] = 0.0
    if nodes[-1] == b:
        W[:, -1] = end
    omega = float(np.max(np.sum(np.abs(W), axis=1)))
    return ReferenceSet(
        family=family,
        a=a,
        b=b,
        nodes=_readonly(nodes),
        W=_readonly(W),
        end_weights=_readonly(end),
        omega=omega,
    )


def map_to_interval(rs, x_lo, h):
    """Images ``x_lo + h (xi_j - a)/(b - a)`` of the reference nodes."""
    return x_lo + h * rs.unit_nodes
