"""The quantization dictionary on a global Bohr-Sommerfeld lattice.

Actions act diagonally (``Q_{A_i} e_m = m_i hbar e_m``), angle exponentials
act as lattice shifts (``Q_{e^{i phi_i}} = a_i`` lowers ``m_i`` by one), and
products that are linear in one action are symmetrized. Nothing outside that
class is quantized.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from bshq.errors import DomainError, OutOfRangeError, UnquantizableExpressionError
from bshq.opalg import BandedOperator, column_norms, op_adjoint, op_commutator, op_compose, op_scale
from bshq.report import VerificationReport


@dataclass(frozen=True)
class LinearAction:
    axis: int


@dataclass(frozen=True)
class PureActionFunction:
    """``F(A_1, ..., A_n)`` evaluated on the action vector; analyticity is the caller's problem."""

    fn: Callable
    label: str = "F"


@dataclass(frozen=True)
class Term:
    coeff: complex = 1.0
    action: object = None
    angle: tuple = ()

    def describe(self):
        parts = [repr(complex(self.coeff))]
        if isinstance(self.action, LinearAction):
            parts.append(f"A{self.action.axis + 1}")
        elif isinstance(self.action, PureActionFunction):
            parts.append(self.action.label)
        if any(self.angle):
            parts.append(f"exp(i*{list(self.angle)}.phi)")
        return "*".join(parts)


@dataclass(frozen=True)
class ObservableExpr:
    terms: tuple

    def __add__(self, other):
        return ObservableExpr(tuple(self.terms) + tuple(other.terms))

    def scaled(self, c):
        return ObservableExpr(
            tuple(Term(c * t.coeff, t.action, t.angle) for t in self.terms)
        )


def _check_axis(lat, i):
    if not 0 <= i < lat.n:
        raise OutOfRangeError(f"axis {i} out of range for n={lat.n}")


def _unit(lat, i, sign=1):
    k = [0] * lat.n
    k[i] = sign
    return tuple(k)


def q_action(lat, i):
    _check_axis(lat, i)
    return BandedOperator.diagonal(lat, lat.actions()[:, i])


def q_action_function(lat, fn):
    acts = lat.actions()
    vals = np.empty(lat.dim, dtype=complex)
    for j, a in enumerate(acts):
        v = complex(fn(*a))
        if not np.isfinite(v):
            raise DomainError(f"non-finite value {v} at m={lat.index_of(j)}")
        vals[j] = v
    return BandedOperator.diagonal(lat, vals)


def q_shift(lat, i):
    """The shifting operator ``a_i``: ``e_m -> e_{m - delta_i}``."""
    _check_axis(lat, i)
    return BandedOperator.shift(lat, _unit(lat, i, -1))


def q_angle_exponential(lat, k):
    """Quantization of ``e^{i k.phi}``: unit shift of every basis vector by ``-k``."""
    k = tuple(int(x) for x in k)
    if len(k) != lat.n:
        raise OutOfRangeError(f"angle vector {k} has wrong length for n={lat.n}")
    return BandedOperator.shift(lat, tuple(-x for x in k))


def q_trig(lat, i, kind):
    a = q_shift(lat, i)
    ad = op_adjoint(a)
    if kind == "cos":
        return op_scale(0.5, a + ad)
    if kind == "sin":
        return op_scale(1 / 2j, a - ad)
    raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")


def symmetrize(x, y):
    return op_scale(0.5, op_compose(x, y) + op_compose(y, x))


def q_mixed_linear(lat, i, kind):
    return symmetrize(q_action(lat, i), q_trig(lat, i, kind))


def quantize_term(lat, term):
    k = tuple(term.angle) or (0,) * lat.n
    angled = any(k)
    if isinstance(term.action, PureActionFunction):
        if angled:
            raise UnquantizableExpressionError(
                f"term {term.describe()}: nonlinear action factor with an angle factor"
            )
        op = q_action_function(lat, term.action.fn)
    elif isinstance(term.action, LinearAction):
        qa = q_action(lat, term.action.axis)
        op = symmetrize(qa, q_angle_exponential(lat, k)) if angled else qa
    elif term.action is None:
        op = q_angle_exponential(lat, k)
    else:
        raise UnquantizableExpressionError(
            f"term {term.describe()}: unsupported action part {term.action!r}"
        )
    return op_scale(term.coeff, op)


def quantize_expr(lat, expr):
    out = BandedOperator.zero(lat)
    for term in expr.terms:
        out = out + quantize_term(lat, term)
    return out


def verify_shift_commutation(lat, tol=1e-12):
    """Check ``[a_i, Q_{A_j}] = delta_ij hbar a_i`` on interior basis vectors."""
    hbar = lat.config.hbar
    interior = lat.interior_mask()
    cols = np.flatnonzero(interior)
    residuals = {}
    for i in range(lat.n):
        a = q_shift(lat, i)
        for j in range(lat.n):
            r = op_commutator(a, q_action(lat, j))
            if i == j:
                r = r - op_scale(hbar, a)
            norms = column_norms(r)[cols]
            residuals[f"[a{i + 1},QA{j + 1}]"] = float(norms.max()) if cols.size else 0.0
    return VerificationReport.from_residuals(
        residuals,
        tol,
        checked_rows=int(cols.size),
        boundary_rows_excluded=int(lat.dim - cols.size),
    )

