"""1-D harmonic oscillator on the Bohr-Sommerfeld basis.

With ``z = p + i q`` and ``H = |z|^2 / 2`` the quantized tori are ``H = m hbar``.
The operators are

    b e_m  = sqrt(2 m hbar)     e_{m-1}
    b+ e_m = sqrt(2 (m+1) hbar) e_{m+1}
    Q_H    = diag(m hbar)
    Q_p    = (b + b+) / 2
    Q_q    = (b - b+) / 2i = (i/2)(b+ - b)

on the truncated basis ``ground_index <= m <= top``. ``ground_index=1``
starts the basis at ``e_1`` so ``Q_p e_1`` has no lower term;
``ground_index=0`` gives ``b+ b = 2 Q_H`` on every row.

``Q_q`` follows from ``q = (z - conj(z)) / 2i`` and matches ``Q_{sin phi}``
on the shift operators, so ``[Q_p, Q_q] = i hbar`` away from the edges, as
required by ``{p, q} = -1`` in the bracket convention where ``{z, H} = i z``.
"""

from dataclasses import dataclass, field

import numpy as np

from bshq.config import QuantizationConfig
from bshq.lattice import AxisBounds, build_lattice
from bshq.opalg import BandedOperator, column_norms, op_adjoint, op_commutator, op_compose, op_scale
from bshq.report import VerificationReport


@dataclass(frozen=True)
class OscillatorBasis:
    ground_index: int = 1
    top: int = 10
    config: QuantizationConfig = field(default_factory=QuantizationConfig)

    def __post_init__(self):
        if self.ground_index not in (0, 1):
            raise ValueError(f"ground_index must be 0 or 1, got {self.ground_index}")
        if self.top < self.ground_index:
            raise ValueError(f"top={self.top} below ground_index={self.ground_index}")

    @property
    def dim(self):
        return self.top - self.ground_index + 1

    @property
    def lattice(self):
        ax = AxisBounds(self.ground_index, np.inf, self.ground_index, self.top)
        return build_lattice(1, [ax], self.config)


def build_b(basis):
    lat = basis.lattice
    m = lat.coords[:, 0].astype(float)
    hbar = basis.config.hbar
    b = BandedOperator.shift(lat, (-1,), np.sqrt(2 * m * hbar))
    bdag = BandedOperator.shift(lat, (1,), np.sqrt(2 * (m + 1) * hbar))
    return b, bdag


def build_q_h(basis):
    lat = basis.lattice
    return BandedOperator.diagonal(lat, lat.actions()[:, 0])


def build_q_p(basis):
    b, bdag = build_b(basis)
    return op_scale(0.5, b + bdag)


def build_q_q(basis):
    b, bdag = build_b(basis)
    return op_scale(1 / 2j, b - bdag)


def verify_oscillator(basis, tol=None):
    """Ladder identities on interior rows, plus ``b+ b = 2 Q_H`` on all rows for ground 0.

    Interior rows exclude the bottom (where ``b`` leaves the basis when
    ``ground_index=1``) and the top (where ``b+`` is truncated).
    """
    hbar = basis.config.hbar
    if tol is None:
        tol = 1e-12 * basis.top * hbar
    lat = basis.lattice
    b, bdag = build_b(basis)
    qh = build_q_h(basis)
    interior = lat.interior_mask()
    cols = np.flatnonzero(interior)

    def worst(op, rows=cols):
        return float(column_norms(op)[rows].max()) if rows.size else 0.0

    m = lat.coords[:, 0].astype(float)
    b_norm_sq = column_norms(b) ** 2
    bdb = op_compose(bdag, b)
    residuals = {
        "[b,QH]-hbar*b": worst(op_commutator(b, qh) - op_scale(hbar, b)),
        "[b+,QH]+hbar*b+": worst(op_commutator(bdag, qh) + op_scale(hbar, bdag)),
        "[b+b,QH]": worst(op_commutator(bdb, qh)),
        "|b e_m|^2-2m*hbar": float(np.abs(b_norm_sq - 2 * m * hbar)[cols].max()) if cols.size else 0.0,
        "b+ - adjoint(b)": worst(bdag - op_adjoint(b), np.arange(lat.dim)),
    }
    if basis.ground_index == 0:
        residuals["b+b-2QH (all rows)"] = worst(bdb - op_scale(2, qh), np.arange(lat.dim))
    return VerificationReport.from_residuals(
        residuals,
        tol,
        checked_rows=int(cols.size),
        boundary_rows_excluded=int(lat.dim - cols.size),
    )
