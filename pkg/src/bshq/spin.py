"""Quantization of the SO(3) coadjoint orbit of radius ``r``.

The orbit is prequantizable when ``r = (n/2) hbar`` for a positive integer
``n``; only integer ``s = n/2`` is built by default. The Bohr-Sommerfeld
circles sit at ``cos(theta_m) = m/s`` and the basis ``e_{-s}, ..., e_s`` is
ordered by ascending ``m``. Ladder coefficients are the non-negative roots

    a_m = hbar * sqrt(s(s+1) + m(1 - m)),   m = -s, ..., s+1

and ``Q_{J-} e_m = a_m e_{m-1}``, ``Q_{J+} e_m = a_{m+1} e_{m+1}``.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from bshq.errors import HalfIntegerSpinError, NotPrequantizableError
from bshq.opalg import dense_commutator, frobenius_norm
from bshq.report import VerificationReport


class DegenerateSpinWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SpinRep:
    s: float
    hbar: float
    a: np.ndarray
    Jplus: np.ndarray
    Jminus: np.ndarray
    J1: np.ndarray
    J2: np.ndarray
    J3: np.ndarray

    @property
    def dim(self):
        return self.J3.shape[0]

    @property
    def ms(self):
        return _m_values(self.s)

    @property
    def generators(self):
        return (self.J1, self.J2, self.J3)

    def matrices(self):
        return {"J1": self.J1, "J2": self.J2, "J3": self.J3, "Jplus": self.Jplus, "Jminus": self.Jminus}


def _m_values(s):
    return -s + np.arange(int(round(2 * s)) + 1)


def _spin_value(s, allow_half_integer):
    twice = 2 * s
    if s < 0 or abs(twice - round(twice)) > 1e-12:
        raise ValueError(f"spin must be a non-negative integer, got {s!r}")
    if round(twice) % 2:
        if not allow_half_integer:
            raise HalfIntegerSpinError(
                f"s={s} is half-integer; only integer s = n/2 is supported "
                "(the construction assumes s is an integer)"
            )
        return round(twice) / 2
    return int(round(twice)) // 2


def check_integrality(r, hbar=1.0, rtol=1e-10):
    """Integrality of the orbit area: ``4 pi r = n h``, i.e. ``r = (n/2) hbar``.

    Returns ``(n, s)``; raises if ``n`` is not a positive integer or is odd.
    """
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    n_real = 2 * r / hbar
    n = round(n_real)
    if n < 1 or abs(n_real - n) > rtol * max(1.0, abs(n_real)):
        raise NotPrequantizableError(
            f"2r/hbar = {n_real:.12g} is not a positive integer; orbit of radius {r} is not prequantizable"
        )
    if n % 2:
        raise HalfIntegerSpinError(
            f"n = {n} gives s = {n}/2, which is not an integer; "
            "only integer s = n/2 is supported"
        )
    return n, n // 2


def bs_angles(s):
    """``cos(theta_m) = m/s`` for ``m = -s..s``; the endpoints are the poles."""
    s = _spin_value(s, allow_half_integer=True)
    if s == 0:
        warnings.warn("s = 0: the orbit is a point and has no angle family", DegenerateSpinWarning)
        return np.array([])
    return _m_values(s) / s


def ladder_coeffs(s, hbar=1.0, allow_half_integer=False):
    s = _spin_value(s, allow_half_integer)
    ms = -s + np.arange(int(round(2 * s)) + 2)
    radicand = s * (s + 1) + ms * (1 - ms)
    assert np.all(radicand > -1e-9), radicand
    a = hbar * np.sqrt(np.clip(radicand, 0.0, None))
    # the end coefficients vanish identically; clear rounding noise
    a[0] = a[-1] = 0.0
    return a


def build_spin_matrices(s, hbar=1.0, allow_half_integer=False):
    """The five spin-s matrices in the basis ``e_{-s}, ..., e_s``.

    ``allow_half_integer=True`` applies the same formulas to half-integer
    ``s``; those representations do not come from a prequantizable integer
    orbit label in the construction above.
    """
    s = _spin_value(s, allow_half_integer)
    a = ladder_coeffs(s, hbar, allow_half_integer=True)
    ms = _m_values(s)
    dim = ms.size
    jminus = np.zeros((dim, dim), dtype=complex)
    # column j is e_{m_j}; Q_{J-} e_m = a_m e_{m-1}
    jminus[np.arange(dim - 1), np.arange(1, dim)] = a[1:dim]
    jplus = jminus.conj().T.copy()
    j3 = np.diag(ms * hbar).astype(complex)
    j1 = 0.5 * (jplus + jminus)
    j2 = (jplus - jminus) / 2j
    return SpinRep(s, hbar, a, jplus, jminus, j1, j2, j3)


def commutant_dimension(mats, tol=1e-9):
    """Dimension of ``{X : [X, M] = 0 for all M in mats}``."""
    dim = mats[0].shape[0]
    eye = np.eye(dim)
    # row-major vec: vec(M X - X M) = (M kron I - I kron M^T) vec(X)
    system = np.vstack([np.kron(m, eye) - np.kron(eye, m.T) for m in mats])
    sv = scipy.linalg.svdvals(system)
    scale = max(1.0, sv[0]) if sv.size else 1.0
    return int(dim * dim - np.sum(sv > tol * scale))


def verify_so3(rep, tol=1e-10, commutant_max_dim=11):
    hbar = rep.hbar
    q1, q2, q3 = rep.generators
    eye = np.eye(rep.dim)
    casimir = q1 @ q1 + q2 @ q2 + q3 @ q3
    residuals = {
        "[J+,J-]-2hbar*J3": frobenius_norm(dense_commutator(rep.Jplus, rep.Jminus) - 2 * hbar * q3),
        "[J1,J2]-i*hbar*J3": frobenius_norm(dense_commutator(q1, q2) - 1j * hbar * q3),
        "[J2,J3]-i*hbar*J1": frobenius_norm(dense_commutator(q2, q3) - 1j * hbar * q1),
        "[J3,J1]-i*hbar*J2": frobenius_norm(dense_commutator(q3, q1) - 1j * hbar * q2),
        "casimir-hbar^2*s(s+1)": frobenius_norm(casimir - hbar**2 * rep.s * (rep.s + 1) * eye),
        "J+ - adjoint(J-)": frobenius_norm(rep.Jplus - rep.Jminus.conj().T),
        "a_(-s)": abs(rep.a[0]),
        "a_(s+1)": abs(rep.a[-1]),
    }
    for name, q in zip(("J1", "J2", "J3"), rep.generators):
        residuals[f"hermitian {name}"] = frobenius_norm(q - q.conj().T)
        g = q / (1j * hbar)
        residuals[f"skew (1/i hbar){name}"] = frobenius_norm(g + g.conj().T)
    if rep.dim <= commutant_max_dim:
        # integer-valued: any reducibility shows up as a residual >= 1
        residuals["commutant_dim-1"] = commutant_dimension(list(rep.generators)) - 1
    return VerificationReport.from_residuals(residuals, tol, checked_rows=rep.dim)


def symplectic_volume(r, grid_size=64):
    """Integrate ``r sin(theta) dphi dtheta`` over the sphere by tensor Gauss-Legendre."""
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    x, w = np.polynomial.legendre.leggauss(grid_size)
    theta, w_theta = 0.5 * np.pi * (x + 1), 0.5 * np.pi * w
    phi, w_phi = np.pi * (x + 1), np.pi * w
    _, th = np.meshgrid(phi, theta, indexing="ij")
    integrand = r * np.sin(th)
    return float(w_phi @ integrand @ w_theta)

