"""Dense monomial polynomials, Lagrange cardinal bases and orthogonal-polynomial roots.

Only what the quadrature weights need is implemented: products, scaling,
evaluation and exact antidifferentiation. A polynomial may carry an affine
map ``s = (x - center)/scale`` and store its coefficients in ``s``; the
cardinal basis uses the midpoint and half-width of its nodes, which keeps
the coefficients well conditioned wherever the nodes sit.
"""

import math

import numpy as np

from .errors import ConfigError, InvalidNodesError
from .families import Family, INTERVALS, ORTHOGONAL_FAMILIES

NEWTON_TOL = 1e-14
NEWTON_MAX_STEPS = 100


class Poly:
    """Polynomial ``c_0 + c_1 s + ... + c_d s^d`` in ``s = (x - center)/scale``.

    The default map is the identity, giving the plain monomial form.
    Trailing zero coefficients are dropped, so ``degree`` is exact; the zero
    polynomial is stored as ``[0.0]`` and has degree 0. Operands with
    different maps are combined in the plain form.
    """

    __slots__ = ("_coeffs", "center", "scale")

    def __init__(self, coeffs, center=0.0, scale=1.0):
        c = np.array(np.atleast_1d(coeffs), dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not (math.isfinite(center) and math.isfinite(scale) and scale > 0):
            raise ValueError(f"need finite center and positive scale, got {center!r}, {scale!r}")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        c.setflags(write=False)
        self._coeffs = c
        self.center = float(center)
        self.scale = float(scale)

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return self._coeffs.size - 1

    def _same_map(self, other):
        return self.center == other.center and self.scale == other.scale

    def _new(self, coeffs):
        return Poly(coeffs, self.center, self.scale)

    def standard(self):
        """The same polynomial with the identity map."""
        if self.center == 0.0 and self.scale == 1.0:
            return self
        s = Poly([-self.center / self.scale, 1.0 / self.scale])
        acc = Poly([self._coeffs[-1]])
        for c in self._coeffs[-2::-1]:
            acc = acc * s + c
        return acc

    def __call__(self, x):
        # Horner in the mapped variable
        x = (np.asarray(x, dtype=float) - self.center) / self.scale
        acc = np.full(x.shape, self._coeffs[-1])
        for c in self._coeffs[-2::-1]:
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self._new([float(other)])
        if not self._same_map(other):
            return self.standard() + other.standard()
        n = max(self._coeffs.size, other._coeffs.size)
        out = np.zeros(n)
        out[: self._coeffs.size] += self._coeffs
        out[: other._coeffs.size] += other._coeffs
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self._coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self._same_map(other):
                return self.standard() * other.standard()
            return self._new(np.convolve(self._coeffs, other._coeffs))
        return self._new(self._coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._new(self._coeffs / float(scalar))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if self._same_map(other):
            return np.array_equal(self._coeffs, other._coeffs)
        return np.array_equal(self.standard()._coeffs, other.standard()._coeffs)

    def __hash__(self):
        return hash(self.standard()._coeffs.tobytes())

    def __repr__(self):
        if self.center == 0.0 and self.scale == 1.0:
            return f"Poly({self._coeffs.tolist()})"
        return f"Poly({self._coeffs.tolist()}, center={self.center!r}, scale={self.scale!r})"

    def antiderivative(self):
        """Antiderivative vanishing at 0."""
        k = np.arange(1, self._coeffs.size + 1, dtype=float)
        P = self._new(np.concatenate(([0.0], self.scale * self._coeffs / k)))
        at_zero = P(0.0)
        if at_zero == 0.0:
            return P
        return self._new(np.concatenate(([-at_zero], P._coeffs[1:])))


def _as_poly(p):
    return p if isinstance(p, Poly) else Poly([float(p)])


def _check_nodes(nodes):
    x = np.asarray(nodes, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise InvalidNodesError("need at least one node")
    if not np.all(np.isfinite(x)):
        raise InvalidNodesError("nodes must be finite")
    if np.any(np.diff(x) <= 0):
        raise InvalidNodesError(f"nodes must be strictly increasing, got {x.tolist()}")
    return x


def lagrange_basis(nodes):
    """Return the cardinal polynomials ``l_j`` with ``l_j(nodes[k]) == delta_jk``.

    Each basis polynomial is the expanded numerator product divided by the
    scalar denominator ``prod_{k != j} (x_j - x_k)``, formed in the variable
    that maps the node span onto ``[-1, 1]``.
    """
    x = _check_nodes(nodes)
    center = 0.5 * (x[0] + x[-1])
    scale = 0.5 * (x[-1] - x[0]) if x.size > 1 else 1.0
    t = (x - center) / scale
    basis = []
    for j, tj in enumerate(t):
        num = Poly([1.0], center, scale)
        denom = 1.0
        for k, tk in enumerate(t):
            if k == j:
                continue
            num = num * Poly([-tk, 1.0], center, scale)
            denom *= tj - tk
        basis.append(num / denom)
    return basis


def integrate(p, lo, hi):
    """Exact integral of ``p`` over ``[lo, hi]`` via its antiderivative."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integration bounds must be finite")
    if lo == hi:
        return 0.0
    P = p.antiderivative()
    return float(P(hi) - P(lo))


def lagrange_eval(nodes, x):
    """``L[j, q] = l_j(x[q])`` evaluated in product form, without expanding coefficients."""
    nodes = _check_nodes(nodes)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    diff = x[np.newaxis, :] - nodes[:, np.newaxis]  # (m, Q)
    gaps = nodes[:, np.newaxis] - nodes[np.newaxis, :]
    np.fill_diagonal(gaps, 1.0)
    out = np.empty((nodes.size, x.size))
    for j in range(nodes.size):
        others = np.delete(diff, j, axis=0)
        out[j] = np.prod(others / np.delete(gaps[j], j)[:, np.newaxis], axis=0)
    return out


def lagrange_integrals(nodes, lo, uppers):
    """``I[j, k] = integral_lo^{uppers[k]} l_j``.

    Uses a Gauss-Legendre rule that is exact for degree ``len(nodes) - 1``
    and evaluates the basis in product form, so the result stays accurate for
    node counts where expanded monomial coefficients would cancel badly.
    """
    nodes = _check_nodes(nodes)
    uppers = np.atleast_1d(np.asarray(uppers, dtype=float))
    if not (math.isfinite(lo) and np.all(np.isfinite(uppers))):
        raise ValueError("integration bounds must be finite")
    gx, gw = np.polynomial.legendre.leggauss(nodes.size // 2 + 1)
    out = np.empty((nodes.size, uppers.size))
    for k, hi in enumerate(uppers):
        half = (hi - lo) / 2.0
        pts = lo + half * (gx + 1.0)
        out[:, k] = half * (lagrange_eval(nodes, pts) @ gw)
    return out


def orth_poly_eval(family, m, x):
    """Value and derivative of the degree-``m`` family polynomial at ``x``.

    The normalisation is the classical one (Legendre ``P_m(2x-1)`` for the
    shifted family, ``T_m`` for Chebyshev of the first kind), not monic; only
    roots are consumed downstream.
    """
    family = Family.parse(family)
    if family not in ORTHOGONAL_FAMILIES:
        raise ConfigError("family", f"{family} is not an orthogonal-polynomial family")
    if family is Family.LEGENDRE_SHIFTED:
        t = 2.0 * x - 1.0
        p, dp = _legendre(m, t)
        return p, 2.0 * dp
    return _chebyshev_t(m, x)


def _legendre(m, t):
    # (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1};  P'_{k+1} = P'_{k-1} + (2k+1) P_k
    p_prev, p = 1.0, t
    dp_prev, dp = 0.0, 1.0
    if m == 0:
        return 1.0, 0.0
    for k in range(1, m):
        p_next = ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
        dp_next = dp_prev + (2 * k + 1) * p
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
    return p, dp


def _chebyshev_t(m, x):
    # T_{k+1} = 2x T_k - T_{k-1};  T'_{k+1} = 2 T_k + 2x T'_k - T'_{k-1}
    if m == 0:
        return 1.0, 0.0
    t_prev, t = 1.0, x
    dt_prev, dt = 0.0, 1.0
    for _ in range(1, m):
        t_next = 2.0 * x * t - t_prev
        dt_next = 2.0 * t + 2.0 * x * dt - dt_prev
        t_prev, t = t, t_next
        dt_prev, dt = dt, dt_next
    return t, dt


def orth_poly_roots(family, m):
    """Roots of the degree-``m`` orthogonal polynomial of ``family``, ascending.

    Newton's method on the three-term recurrence, started from
    Chebyshev-angle guesses, which already separate the roots well enough
    that no deflation is required. Legendre-shifted roots lie in (0, 1),
    Chebyshev first-kind roots in (-1, 1).
    """
    family = Family.parse(family)
    if family not in ORTHOGONAL_FAMILIES:
        raise ConfigError("family", f"{family} is not an orthogonal-polynomial family")
    if int(m) != m or m < 1:
        raise ConfigError("m", f"need a positive integer, got {m!r}")
    m = int(m)

    j = np.arange(1, m + 1)
    if family is Family.CHEBYSHEV1:
        guesses = np.cos((2 * j - 1) * np.pi / (2 * m))
        evaluate = lambda x: _chebyshev_t(m, x)
    else:
        # Newton runs on the standard interval [-1, 1] and is mapped at the end.
        guesses = np.cos(np.pi * (j - 0.25) / (m + 0.5))
        evaluate = lambda x: _legendre(m, x)

    roots = []
    for x in guesses:
        x = float(x)
        for _ in range(NEWTON_MAX_STEPS):
            p, dp = evaluate(x)
            dx = p / dp
            x -= dx
            if abs(dx) < NEWTON_TOL:
                break
        roots.append(x)
    roots = np.sort(np.array(roots))

    if family is Family.LEGENDRE_SHIFTED:
        a, b = INTERVALS[family]
        roots = a + (b - a) * (roots + 1.0) / 2.0
    return roots
