import numpy as np
import pytest

from numpicard.core import (
    EndpointVariant,
    EvalCounter,
    Method,
    OdeProblem,
    SolutionTrace,
    SolverConfig,
    contraction_factor,
    max_error,
)
from numpicard.errors import ConfigError
from numpicard.families import Family


def _trace(mesh, u):
    return SolutionTrace(mesh=np.asarray(mesh, float), u=np.asarray(u, float).reshape(len(mesh), -1),
                         iters=[1] * (len(mesh) - 1), nf=0)


def test_max_error_zero_when_exact():
    p = OdeProblem("lin", lambda x, y: np.ones(1), [0.0], 0.0, 1.0, lambda x: np.array([x]))
    mesh = np.linspace(0, 1, 5)
    assert max_error(_trace(mesh, mesh), p) == 0.0


def test_max_error_single_deviation():
    p = OdeProblem("s", lambda x, y: y, [1.0], 0.0, 1.0, lambda x: np.array([1.0 + 0.5 * x]))
    assert max_error(_trace([0.0, 1.0], [1.0, 1.0]), p) == 0.5


def test_max_error_norms_and_permutation():
    exact = lambda x: np.array([1.0, 2.0, 3.0])
    p = OdeProblem("v", lambda x, y: 0 * y, [1, 2, 3], 0.0, 1.0, exact)
    q = OdeProblem("v", lambda x, y: 0 * y, [3, 1, 2], 0.0, 1.0, lambda x: exact(x)[[2, 0, 1]])
    u = np.array([[1.0, 2.0, 3.0], [1.1, 1.7, 3.2]])
    assert max_error(_trace([0, 1], u), p) == pytest.approx(0.3)
    assert max_error(_trace([0, 1], u), p, norm="sum") == pytest.approx(0.6)
    assert max_error(_trace([0, 1], u[:, [2, 0, 1]]), q) == max_error(_trace([0, 1], u), p)


def test_max_error_requires_exact():
    p = OdeProblem("noexact", lambda x, y: y, [1.0], 0.0, 1.0)
    with pytest.raises(ConfigError):
        max_error(_trace([0, 1], [1, 1]), p)
    with pytest.raises(ConfigError):
        max_error(_trace([0, 1], [1, 1]), OdeProblem("e", lambda x, y: y, [1.0], 0.0, 1.0, lambda x: [1.0]), norm="l2")


def test_eval_counter_counts_each_call():
    c = EvalCounter()
    calls = []
    rhs = lambda x, y: calls.append(x) or y
    for k in range(7):
        c(rhs, k, np.zeros(2))
    assert c.count == len(calls) == 7


def test_problem_validation():
    with pytest.raises(ConfigError):
        OdeProblem("bad", lambda x, y: y, [1.0], 1.0, 1.0)
    p = OdeProblem("ok", lambda x, y: y, [1.0, 2.0], 0.0, 1.0)
    assert p.dim == 2


def test_config_defaults():
    fixed = SolverConfig(method="fixed", m=3)
    assert fixed.family is Family.EQUIDISTANT
    assert fixed.endpoint_variant is EndpointVariant.LAST_NODE
    assert fixed.max_iter == 50
    cheb = SolverConfig(method="fixed", m=4, family="chebyshev1")
    assert cheb.endpoint_variant is EndpointVariant.END_INTEGRAL
    var = SolverConfig(method="variable")
    assert var.family is Family.LEGENDRE_SHIFTED and var.m_max == 30
    stiff = SolverConfig(method=Method.STIFF, m=5, tau=10.0)
    assert stiff.family is Family.EQUIDISTANT


@pytest.mark.parametrize("kwargs, key", [
    (dict(method="fixed"), "m"),
    (dict(method="fixed", m=0), "m"),
    (dict(method="fixed", m=3, M=0), "M"),
    (dict(method="fixed", m=3, eps=0.0), "eps"),
    (dict(method="fixed", m=3, max_iter=0), "max_iter"),
    (dict(method="fixed", m=3, family="chebyshev1", endpoint_variant="last-node"), "endpoint_variant"),
    (dict(method="variable", family="equidistant"), "family"),
    (dict(method="variable", m_max=1), "m_max"),
    (dict(method="stiff", m=5), "tau"),
    (dict(method="stiff", m=5, tau=10.0, family="legendre-shifted"), "family"),
    (dict(method="implicit", m=3), "method"),
    (dict(method="fixed", m=3, family="hermite"), "family"),
    (dict(method="fixed", m=3, lipschitz=-1.0), "lipschitz"),
])
def test_config_validation_names_key(kwargs, key):
    with pytest.raises(ConfigError) as exc:
        SolverConfig(**kwargs)
    assert exc.value.key == key
    assert key in str(exc.value)


def test_contraction_factor():
    assert contraction_factor(omega=1.0, h=0.1, lipschitz=2.0, dim=3) == pytest.approx(0.6)
