import math

import numpy as np
import pytest

from numpicard.errors import ConfigError
from numpicard.problems import BENCHMARKS, CATALOG, get_problem, kepler_anomaly

STEP = 1e-6


def _derivative(fun, x):
    # five-point central stencil
    return (-fun(x + 2 * STEP) + 8 * fun(x + STEP) - 8 * fun(x - STEP) + fun(x - 2 * STEP)) / (12 * STEP)


def _catalog_problems():
    for name in CATALOG:
        yield get_problem(name)
    yield get_problem("poly-rhs", degree=5)
    yield get_problem("linear-decay", lam=-7.0)
    yield get_problem("ex2", xf=6 * math.pi)
    yield get_problem("constant-rhs", c=[1.0, -2.0, 0.5])


@pytest.mark.parametrize("problem", list(_catalog_problems()), ids=lambda p: p.name)
def test_exact_solution_consistency(problem):
    assert np.max(np.abs(problem.exact(problem.x0) - problem.y0)) <= 1e-12
    # stay clear of x0 so the stencil never leaves the domain
    xs = np.linspace(problem.x0 + 4 * STEP, problem.xf, 32)
    for x in xs:
        residual = _derivative(problem.exact, x) - problem.rhs(x, problem.exact(x))
        assert np.max(np.abs(residual)) <= 1e-6, (problem.name, x)


def test_examples():
    assert get_problem("ex1").y0.tolist() == [15.0]
    assert get_problem("ex1").exact(0.0).tolist() == [15.0]
    assert get_problem("ex2").exact(math.pi / 2) == pytest.approx([0, -1, 1, 0], abs=1e-15)
    assert get_problem("ex4").exact(0.0).tolist() == [1.0, 0.0]
    assert get_problem("ex3").y0.tolist() == [0.4, 0.0, 0.0, 2.0]
    assert get_problem("ex5").exact(1.0)[0] == pytest.approx(math.exp(-20))


def test_kepler_inversion():
    rng = np.random.default_rng(3)
    for x in rng.uniform(0, 2 * math.pi, 100):
        u = kepler_anomaly(x)
        assert abs(u - 0.6 * math.sin(u) - x) <= 1e-12


@pytest.mark.parametrize("name", ["ex2", "ex3"])
def test_orbit_radius_stays_away_from_singularity(name):
    p = get_problem(name, xf=6 * math.pi)
    for x in np.linspace(p.x0, p.xf, 400):
        y = p.exact(x)
        assert math.hypot(y[0], y[2]) >= 0.4 - 1e-9


def test_ex1_domain_guard():
    with pytest.raises(ValueError):
        get_problem("ex1").rhs(-0.1, np.array([15.0]))


def test_benchmark_names():
    assert BENCHMARKS == ("ex1", "ex2", "ex3", "ex4", "ex5")
    assert get_problem("ex2", xf=4 * math.pi).xf == pytest.approx(4 * math.pi)
    assert get_problem("ex3").dim == 4


@pytest.mark.parametrize("kwargs, key", [
    ({"name": "ex9"}, "problem"),
    ({"name": "ex1", "xf": 2.0}, "xf"),
    ({"name": "ex2", "lam": 3.0}, "lam"),
])
def test_rejects_bad_requests(kwargs, key):
    with pytest.raises(ConfigError) as exc:
        get_problem(**kwargs)
    assert exc.value.key == key
