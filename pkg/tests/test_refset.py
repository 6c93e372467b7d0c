import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from numpicard.errors import ConfigError
from numpicard.families import Family
from numpicard.refset import MAX_FIXED_NODES, build_reference_set, map_to_interval, reference_nodes

F = Fraction
EQUI_2 = [[F(0), F(0)], [F(1, 2), F(1, 2)]]
EQUI_3 = [[F(0), F(0), F(0)], [F(5, 24), F(1, 3), F(-1, 24)], [F(1, 6), F(2, 3), F(1, 6)]]


def _family_cases(max_m=10):
    for fam in Family:
        low = 2 if fam in (Family.EQUIDISTANT, Family.CHEBYSHEV2) else 1
        for m in range(low, max_m + 1):
            yield fam, m


ALL = list(_family_cases())


@pytest.mark.parametrize("m, expected", [(2, EQUI_2), (3, EQUI_3)])
def test_equidistant_golden_matrices(m, expected):
    rs = build_reference_set("equidistant", m)
    assert np.max(np.abs(rs.stage_matrix - np.array(expected, dtype=float))) <= 1e-14


def test_legendre_single_node():
    rs = build_reference_set("legendre-shifted", 1)
    assert rs.nodes.tolist() == [0.5]
    assert rs.W.tolist() == [[0.5]]
    assert rs.end_weights.tolist() == pytest.approx([1.0], abs=1e-15)


@pytest.mark.parametrize("family, m", ALL)
def test_weight_invariants(family, m):
    rs = build_reference_set(family, m)
    a, b = rs.a, rs.b
    assert np.all(np.diff(rs.nodes) > 0)
    assert np.max(np.abs(rs.W.sum(axis=0) - (rs.nodes - a) / (b - a))) <= 1e-12
    assert abs(rs.end_weights.sum() - 1.0) <= 1e-12
    if rs.nodes[0] == a:
        assert np.all(rs.W[:, 0] == 0.0)
    if rs.nodes[-1] == b:
        assert np.array_equal(rs.W[:, -1], rs.end_weights)
    assert rs.omega == pytest.approx(np.max(np.abs(rs.W).sum(axis=1)))


@pytest.mark.parametrize("family, m", ALL)
def test_stage_exactness(family, m):
    rs = build_reference_set(family, m)
    x_i, h = 0.7, 0.3
    xs = map_to_interval(rs, x_i, h)
    rng = np.random.default_rng(m)
    coeffs = rng.normal(size=m)  # degree m-1
    p = np.polynomial.Polynomial(coeffs)
    P = p.integ()
    quad_vals = h * (rs.W.T @ p(xs))
    exact = P(xs) - P(x_i)
    assert np.allclose(quad_vals, exact, rtol=1e-11, atol=1e-11 * np.max(np.abs(exact)))


def _cheb1_closed_form(m, j, k):
    """Weight for descending node indices j, k (1-based), integrated numerically."""
    theta = lambda i: (2 * i - 1) * math.pi / (2 * m)
    others = [math.cos(theta(mu)) for mu in range(1, m + 1) if mu != j]
    integrand = lambda x: math.prod(x - c for c in others)
    val, _ = quad(integrand, -1.0, math.cos(theta(k)), epsabs=1e-13, epsrel=1e-12)
    return 2 ** (m - 2) / m * (-1) ** (j - 1) * math.sin(theta(j)) * val


def _cheb2_closed_form(m, j, k):
    nodes = [math.cos((i - 1) * math.pi / (m - 1)) for i in range(1, m + 1)]
    gamma = 0.5 if j in (1, m) else 1.0
    others = [nodes[i] for i in range(m) if i != j - 1]
    integrand = lambda x: math.prod(x - c for c in others)
    val, _ = quad(integrand, -1.0, nodes[k - 1], epsabs=1e-13, epsrel=1e-12)
    return (-1) ** (j - 1) * 2 ** (m - 3) * gamma / (m - 1) * val


@pytest.mark.parametrize("m", range(1, 7))
def test_chebyshev1_closed_form_agrees(m):
    rs = build_reference_set("chebyshev1", m)
    for j in range(1, m + 1):
        for k in range(1, m + 1):
            # descending index i corresponds to ascending index m - i
            assert abs(rs.W[m - j, m - k] - _cheb1_closed_form(m, j, k)) <= 1e-10


@pytest.mark.parametrize("m", range(2, 7))
def test_chebyshev2_closed_form_agrees(m):
    rs = build_reference_set("chebyshev2", m)
    for j in range(1, m + 1):
        for k in range(1, m + 1):
            assert abs(rs.W[m - j, m - k] - _cheb2_closed_form(m, j, k)) <= 1e-10


def test_chebyshev2_nodes():
    nodes, a, b = reference_nodes("chebyshev2", 5)
    assert (a, b) == (-1.0, 1.0)
    expected = -np.cos(np.arange(5) * np.pi / 4)
    assert np.max(np.abs(nodes - expected)) < 1e-15
    assert nodes[0] == -1.0 and nodes[2] == 0.0 and nodes[-1] == 1.0


def test_map_to_interval_examples():
    rs = build_reference_set("equidistant", 3)
    assert map_to_interval(rs, 0.0, 1.0).tolist() == [0.0, 0.5, 1.0]
    assert map_to_interval(rs, 2.0, 0.2) == pytest.approx([2.0, 2.1, 2.2], abs=1e-15)
    mid = build_reference_set("legendre-shifted", 1)
    assert map_to_interval(mid, 3.0, 0.4) == pytest.approx([3.2])


@pytest.mark.parametrize("family, m", ALL)
def test_map_to_interval_range(family, m):
    rs = build_reference_set(family, m)
    xs = map_to_interval(rs, -1.5, 0.25)
    assert np.all(np.diff(xs) > 0)
    assert xs[0] >= -1.5 and xs[-1] <= -1.25


def test_cached_and_immutable():
    a = build_reference_set("chebyshev2", 4)
    assert build_reference_set(Family.CHEBYSHEV2, 4) is a
    with pytest.raises(ValueError):
        a.W[0, 0] = 1.0


@pytest.mark.parametrize("family, m", [("equidistant", 1), ("chebyshev2", 1), ("chebyshev1", 0),
                                       ("legendre-shifted", MAX_FIXED_NODES + 1), ("equidistant", 2.5)])
def test_rejects_out_of_range_m(family, m):
    with pytest.raises(ConfigError) as exc:
        build_reference_set(family, m)
    assert exc.value.key == "m"


def test_rejects_unknown_family():
    with pytest.raises(ConfigError) as exc:
        build_reference_set("hermite", 3)
    assert exc.value.key == "family"
