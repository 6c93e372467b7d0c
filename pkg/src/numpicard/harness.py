"""Experiment runner: configure a solve, run it, and tabulate error and N_f.

Run files are plain text, one experiment per block of ``key=value`` lines,
blocks separated by blank lines; ``#`` starts a comment::

    problem=ex2
    method=fixed
    m=3
    M=10
    eps=1e-5
    xf=2pi
"""

import csv
import io
import math
import re
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional

from .core import DEFAULT_M_MAX, DEFAULT_MAX_ITER, Method, SolverConfig, max_error
from .errors import ConfigError
from .fixed import solve_fixed
from .problems import get_problem
from .stiff import solve_stiff
from .variable import solve_variable

SOLVERS = {
    Method.FIXED: solve_fixed,
    Method.VARIABLE: solve_variable,
    Method.STIFF: solve_stiff,
}

COLUMNS = ("problem", "method", "family", "m", "M", "eps", "xf", "tau", "error", "nf")


def solve(problem, cfg):
    """Dispatch to the solver selected by ``cfg.method``."""
    return SOLVERS[cfg.method](problem, cfg)


_PI_RE = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*$")


def parse_real(text, key):
    """Parse a float; ``2pi``, ``2*pi`` and ``pi`` are accepted as multiples of pi."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower()
    match = _PI_RE.match(s)
    try:
        if match:
            coeff = match.group(1)
            return (float(coeff) if coeff else 1.0) * math.pi
        return float(s)
    except ValueError:
        raise ConfigError(key, f"not a number: {text!r}") from None


def _parse_int(text, key):
    if isinstance(text, int) and not isinstance(text, bool):
        return text
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError(key, f"not an integer: {text!r}") from None


@dataclass(frozen=True)
class ExperimentSpec:
    problem: str
    method: str
    M: int
    eps: float
    family: Optional[str] = None
    m: Optional[int] = None
    m_max: int = DEFAULT_M_MAX
    xf: Optional[float] = None
    tau: Optional[float] = None
    endpoint_variant: Optional[str] = None
    max_iter: int = DEFAULT_MAX_ITER

    _INTS = ("M", "m", "m_max", "max_iter")
    _REALS = ("eps", "xf", "tau")

    @classmethod
    def keys(cls):
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_mapping(cls, mapping):
        """Build a spec from string (or already typed) values, rejecting unknown keys."""
        known = cls.keys()
        values = {}
        for key, raw in mapping.items():
            if key not in known:
                raise ConfigError(key, f"unknown key (expected one of {', '.join(known)})")
            if raw is None:
                continue
            if key in cls._INTS:
                values[key] = _parse_int(raw, key)
            elif key in cls._REALS:
                values[key] = parse_real(raw, key)
            else:
                values[key] = str(raw).strip()
        for key in ("problem", "method", "M", "eps"):
            if key not in values:
                raise ConfigError(key, "required key is missing")
        spec = cls(**values)
        spec.config()  # validate eagerly
        return spec

    def config(self):
        return SolverConfig(
            method=self.method,
            M=self.M,
            eps=self.eps,
            max_iter=self.max_iter,
            family=self.family,
            m=self.m,
            m_max=self.m_max,
            tau=self.tau,
            endpoint_variant=self.endpoint_variant,
        )


def parse_run_config(text):
    """Parse a run file into a list of :class:`ExperimentSpec`."""
    specs = []
    block = {}
    lineno_start = None

    def flush():
        if block:
            try:
                specs.append(ExperimentSpec.from_mapping(block))
            except ConfigError as exc:
                raise ConfigError(exc.key, f"{exc} (block starting at line {lineno_start})") from None
            block.clear()

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            flush()
            continue
        if "=" not in line:
            raise ConfigError("syntax", f"line {lineno}: expected key=value, got {line!r}")
        if not block:
            lineno_start = lineno
        key, value = (part.strip() for part in line.split("=", 1))
        if key in block:
            raise ConfigError(key, f"line {lineno}: duplicate key")
        block[key] = value
    flush()
    return specs


@dataclass(frozen=True)
class ExperimentRow:
    problem: str
    method: str
    family: str
    m: int  # node count, or m_max for the variable method
    M: int
    eps: float
    xf: float
    tau: Optional[float]
    error: Optional[float]
    nf: int
    iters_min: int
    iters_mean: float
    iters_max: int
    warnings: int

    def cells(self):
        return {
            "problem": self.problem,
            "method": self.method,
            "family": self.family,
            "m": str(self.m),
            "M": str(self.M),
            "eps": f"{self.eps:g}",
            "xf": f"{self.xf:.6g}",
            "tau": "" if self.tau is None else f"{self.tau:g}",
            "error": "" if self.error is None else f"{self.error:.6g}",
            "nf": str(self.nf),
        }


def run_experiment(spec, norm="max"):
    """Solve one configured experiment and summarise it."""
    if not isinstance(spec, ExperimentSpec):
        spec = ExperimentSpec.from_mapping(spec)
    cfg = spec.config()
    problem = get_problem(spec.problem, xf=spec.xf)
    trace = solve(problem, cfg)
    error = max_error(trace, problem, norm) if problem.exact is not None else None
    return ExperimentRow(
        problem=spec.problem,
        method=str(cfg.method),
        family=str(cfg.family),
        m=cfg.m_max if cfg.method is Method.VARIABLE else cfg.m,
        M=cfg.M,
        eps=cfg.eps,
        xf=problem.xf,
        tau=cfg.tau,
        error=error,
        nf=trace.nf,
        iters_min=min(trace.iters),
        iters_mean=statistics.fmean(trace.iters),
        iters_max=max(trace.iters),
        warnings=len(trace.warnings),
    )


def _run_one(args):
    spec, norm = args
    return run_experiment(spec, norm)


def run_all(specs, norm="max", jobs=1):
    """Run experiments, possibly in worker processes; rows come back in input order."""
    if jobs <= 1 or len(specs) <= 1:
        return [run_experiment(s, norm) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, [(s, norm) for s in specs]))


def _render(header, body, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(row) + " |" for row in body]
        return "\n".join(lines) + "\n"
    raise ConfigError("format", f"unknown format {fmt!r} (expected csv or markdown)")


def emit_table(rows, fmt="markdown"):
    """One line per experiment, columns in :data:`COLUMNS` order."""
    if not rows:
        raise ConfigError("rows", "nothing to tabulate")
    body = [[row.cells()[c] for c in COLUMNS] for row in rows]
    return _render(COLUMNS, body, fmt)


@dataclass(frozen=True)
class Comparison:
    """Side-by-side runs of two or more variants over a list of settings."""

    title: str
    base: dict
    keys: tuple  # setting names shown as leading columns
    settings: tuple  # one dict per table line
    variants: tuple  # (label, overrides) pairs

    def specs(self):
        out = []
        for setting in self.settings:
            for _, overrides in self.variants:
                out.append(ExperimentSpec.from_mapping({**self.base, **setting, **overrides}))
        return out


def emit_comparison(table, rows, fmt="markdown"):
    """Pivot rows produced from ``table.specs()`` into one line per setting."""
    if not rows:
        raise ConfigError("rows", "nothing to tabulate")
    nv = len(table.variants)
    header = list(table.keys)
    for label, _ in table.variants:
        header += [f"{label} error", f"{label} N_f"]
    body = []
    for i, setting in enumerate(table.settings):
        chunk = rows[i * nv:(i + 1) * nv]
        cells = chunk[0].cells()
        line = [cells[k] for k in table.keys]
        for row in chunk:
            c = row.cells()
            line += [c["error"], c["nf"]]
        body.append(line)
    return _render(header, body, fmt)


_ORBIT_SETTINGS = tuple(
    {"xf": f"{k}pi", "M": M, "eps": eps}
    for k, M, eps in [(2, 10, 1e-5), (2, 10, 1e-9), (4, 10, 1e-5), (4, 20, 1e-9), (6, 10, 1e-5), (6, 40, 1e-9)]
)

TABLES = {
    1: Comparison(
        title="Example 1: fixed equidistant m=3 vs variable reference set",
        base={"problem": "ex1"},
        keys=("M", "eps"),
        settings=({"M": 5, "eps": 1e-5},),
        variants=(("fixed equidistant m=3", {"method": "fixed", "m": 3}),
                  ("variable", {"method": "variable"})),
    ),
    2: Comparison(
        title="Example 2: fixed equidistant m=3 vs variable reference set",
        base={"problem": "ex2"},
        keys=("xf", "M", "eps"),
        settings=_ORBIT_SETTINGS,
        variants=(("fixed equidistant m=3", {"method": "fixed", "m": 3}),
                  ("variable", {"method": "variable"})),
    ),
    3: Comparison(
        title="Example 2: fixed m=5, equidistant vs Chebyshev second kind",
        base={"problem": "ex2", "method": "fixed", "m": 5},
        keys=("xf", "M", "eps"),
        settings=_ORBIT_SETTINGS,
        variants=(("equidistant", {"family": "equidistant"}),
                  ("chebyshev2", {"family": "chebyshev2"})),
    ),
    4: Comparison(
        title="Example 4: stiff method, tau=10, m=5",
        base={"problem": "ex4", "method": "stiff", "m": 5, "tau": 10},
        keys=("M", "eps"),
        settings=({"M": 300, "eps": 1e-5}, {"M": 500, "eps": 1e-7}),
        variants=(("equidistant", {"family": "equidistant"}),
                  ("chebyshev2", {"family": "chebyshev2"})),
    ),
    5: Comparison(
        title="Example 5: stiff method, tau=10, m=5",
        base={"problem": "ex5", "method": "stiff", "m": 5, "tau": 10},
        keys=("M", "eps"),
        settings=({"M": 20, "eps": 1e-7},),
        variants=(("equidistant", {"family": "equidistant"}),
                  ("chebyshev2", {"family": "chebyshev2"})),
    ),
}


def replicate(which, norm="max", fmt="markdown", jobs=1):
    """Run built-in comparison ``which`` and render it."""
    table = TABLES[which]
    rows = run_all(table.specs(), norm=norm, jobs=jobs)
    return emit_comparison(table, rows, fmt)
