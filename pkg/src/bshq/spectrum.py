"""Bohr-Sommerfeld levels of 1-DOF (or radially reduced) librations.

The action of the orbit at energy ``E`` is

    A(E) = (1/2pi) oint p dq = (1/pi) int_{q-}^{q+} sqrt(p^2(q, E)) dq

and the levels solve ``A(E) = (m + maslov/2) hbar``. The integral is taken
after substituting ``q = mid + half * sin(u)``, which cancels the square-root
behaviour at both turning points, so plain Gauss-Legendre converges
geometrically.
"""

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from bshq.config import QuantizationConfig
from bshq.errors import EnergyNotAdmissibleError, MultiWellError

DEFAULT_NODES = 512


@dataclass(frozen=True)
class PhaseProblem:
    """``momentum_squared(q, E)`` must accept an array of ``q``."""

    momentum_squared: Callable
    search_interval: tuple
    energy_bracket: tuple
    kind: str = "libration"
    name: str = ""
    grid_points: int = 20001

    def __post_init__(self):
        if self.kind != "libration":
            raise ValueError(f"only librations are supported, got kind={self.kind!r}")
        lo, hi = self.search_interval
        if not lo < hi:
            raise ValueError(f"empty search interval {self.search_interval}")

    def grid(self):
        lo, hi = self.search_interval
        if lo > 0 and hi / lo > 100:
            return np.geomspace(lo, hi, self.grid_points)
        return np.linspace(lo, hi, self.grid_points)


class _Forbidden(EnergyNotAdmissibleError):
    """No classically allowed region at this energy."""


class _Unbounded(EnergyNotAdmissibleError):
    """The allowed region reaches the edge of the search interval."""


def oscillator_problem(omega=1.0, q_max=100.0):
    """``H = (p^2 + omega^2 q^2) / 2``; ``A(E) = E / omega``."""
    return PhaseProblem(
        lambda q, E: 2 * E - (omega * q) ** 2,
        (-q_max, q_max),
        (0.0, 0.5 * (omega * q_max) ** 2 * 0.999),
        name="oscillator",
    )


def coulomb_problem(k=1.0, ell=1.0, search_interval=(1e-9, 1e10)):
    """Radial Kepler, unit mass: ``p^2 = 2E + 2k/q - ell^2/q^2``."""
    if not (k > 0 and ell > 0):
        raise ValueError("coulomb problem needs k > 0 and ell > 0")
    e_min = -(k**2) / (2 * ell**2)
    return PhaseProblem(
        lambda q, E: 2 * E + 2 * k / q - ell**2 / q**2,
        search_interval,
        (e_min, -1e-8),
        name="coulomb",
    )


def relativistic_kepler_problem(k=-0.5, ell=1.0, mass=1.0, search_interval=(1e-9, 1e10)):
    """Radial reduction of ``H = sqrt(p^2 + mass^2) + k/r``.

    ``p_r^2 = (E - k/r)^2 - mass^2 - ell^2/r^2``; bound states need ``k < 0``
    (attraction) and ``ell > |k|``.
    """
    if not (k < 0 and ell > abs(k) and mass > 0):
        raise ValueError("relativistic Kepler needs k < 0, ell > |k| and mass > 0")
    return PhaseProblem(
        lambda q, E: (E - k / q) ** 2 - mass**2 - ell**2 / q**2,
        search_interval,
        (0.0, mass * (1 - 1e-9)),
        name="relativistic-kepler",
    )


def turning_points(prob, E):
    qs = prob.grid()
    allowed = prob.momentum_squared(qs, E) > 0
    if not allowed.any():
        raise _Forbidden(f"E={E!r}: no classically allowed region in {prob.search_interval}")
    if allowed[0] or allowed[-1]:
        raise _Unbounded(f"E={E!r}: allowed region reaches the search interval edge")
    edges = np.flatnonzero(np.diff(allowed.astype(np.int8)))
    if edges.size != 2:
        raise MultiWellError(f"E={E!r}: {edges.size} turning points; only single wells are supported")

    def f(q):
        return float(prob.momentum_squared(np.asarray(q), E))

    lo, hi = (brentq(f, qs[i], qs[i + 1], xtol=1e-300, rtol=1e-15) for i in edges)
    return lo, hi


@functools.lru_cache(maxsize=8)
def _gauss_nodes(nodes):
    x, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * np.pi * x
    x.flags.writeable = w.flags.writeable = u.flags.writeable = False
    return u, w


def action_integral(prob, E, nodes=DEFAULT_NODES):
    lo, hi = turning_points(prob, E)
    mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    u, w = _gauss_nodes(nodes)
    q = mid + half * np.sin(u)
    p = np.sqrt(np.clip(prob.momentum_squared(q, E), 0.0, None))
    # (1/pi) * (pi/2) from du = (pi/2) dx
    return float(0.5 * np.dot(w, p * half * np.cos(u)))


@dataclass(frozen=True)
class LevelRow:
    m: int
    energy: float
    residual: float
    error: str | None = None


@dataclass
class LevelTable:
    rows: list = field(default_factory=list)

    @property
    def energies(self):
        return np.array([r.energy for r in self.rows])

    def to_csv(self):
        lines = ["m,energy,residual"]
        for r in self.rows:
            lines.append(f"{r.m},{_fmt(r.energy)},{_fmt(r.residual)}")
        return "\n".join(lines) + "\n"


def _fmt(x):
    return repr(float(x))


def bs_levels(prob, m_range, config=None, maslov=0, nodes=DEFAULT_NODES, tol=1e-10):
    """Solve ``A(E) = (m + maslov/2) hbar`` for every ``m`` in ``m_range``.

    A row whose bracket fails carries ``nan`` energy and an error message; the
    other rows are still produced.
    """
    hbar = (config or QuantizationConfig()).hbar
    e_lo, e_hi = prob.energy_bracket
    rows = []
    for m in m_range:
        target = (m + 0.5 * maslov) * hbar

        def g(E):
            try:
                return action_integral(prob, E, nodes) - target
            except _Forbidden:
                return -target
            except _Unbounded:
                # any positive value: A is monotone, only the sign matters to the bracket
                return abs(target) + 1.0

        try:
            g_lo, g_hi = g(e_lo), g(e_hi)
            if not g_lo <= 0 < g_hi:
                raise EnergyNotAdmissibleError(
                    f"m={m}: action target {target} not bracketed by energies {prob.energy_bracket}"
                )
            energy = brentq(g, e_lo, e_hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
            residual = action_integral(prob, energy, nodes) - target
            error = None if abs(residual) <= tol else f"residual {residual:.3g} above {tol}"
        except (EnergyNotAdmissibleError, MultiWellError, RuntimeError) as exc:
            energy, residual, error = math.nan, math.nan, str(exc)
        rows.append(LevelRow(int(m), float(energy), float(residual), error))
    return LevelTable(rows)
