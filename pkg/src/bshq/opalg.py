"""Complex operator algebra on the lattice basis.

Every operator in this package is a finite sum of lattice shifts with
diagonal coefficients, so :class:`BandedOperator` stores exactly that: a map
``shift -> coefficients``, where ``coeffs[j]`` is the amplitude sent from basis
point ``j`` to ``j + shift``. Amplitude that would leave the window is dropped.

Dense helpers (``matrix_exp``, ``matrix_log``, hermiticity checks) operate on
plain ``numpy`` arrays.
"""

import numpy as np
import scipy.linalg

from bshq.errors import DomainError, LatticeMismatchError


class BandedOperator:
    def __init__(self, lattice, bands=None):
        self.lattice = lattice
        self.bands = {}
        for shift, coeffs in (bands or {}).items():
            shift = tuple(int(s) for s in shift)
            if len(shift) != lattice.n:
                raise ValueError(f"shift {shift} has wrong length for n={lattice.n}")
            coeffs = np.array(coeffs, dtype=complex).reshape(lattice.dim)
            coeffs[lattice.shift_targets(shift) < 0] = 0.0
            if shift in self.bands:
                self.bands[shift] = self.bands[shift] + coeffs
            else:
                self.bands[shift] = coeffs

    @classmethod
    def zero(cls, lattice):
        return cls(lattice)

    @classmethod
    def identity(cls, lattice):
        return cls.diagonal(lattice, np.ones(lattice.dim))

    @classmethod
    def diagonal(cls, lattice, values):
        return cls(lattice, {(0,) * lattice.n: values})

    @classmethod
    def shift(cls, lattice, shift, coeffs=None):
        if coeffs is None:
            coeffs = np.ones(lattice.dim)
        return cls(lattice, {tuple(shift): coeffs})

    @property
    def dim(self):
        return self.lattice.dim

    def __add__(self, other):
        return op_add(self, other)

    def __sub__(self, other):
        return op_add(self, op_scale(-1.0, other))

    def __neg__(self):
        return op_scale(-1.0, self)

    def __mul__(self, c):
        return op_scale(c, self)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return op_compose(self, other)

    def apply(self, vec):
        vec = np.asarray(vec, dtype=complex)
        out = np.zeros(self.dim, dtype=complex)
        for shift, coeffs in self.bands.items():
            tgt = self.lattice.shift_targets(shift)
            ok = tgt >= 0
            np.add.at(out, tgt[ok], coeffs[ok] * vec[ok])
        return out

    def pruned(self, atol=0.0):
        """Copy without bands whose coefficients are all within ``atol`` of zero."""
        keep = {s: c for s, c in self.bands.items() if np.any(np.abs(c) > atol)}
        return BandedOperator(self.lattice, keep)

    def __repr__(self):
        shifts = sorted(self.bands)
        return f"BandedOperator(dim={self.dim}, shifts={shifts})"


def _check_same(a, b):
    if a.lattice != b.lattice:
        raise LatticeMismatchError("operators live on different lattices")


def op_add(a, b):
    _check_same(a, b)
    bands = {s: c.copy() for s, c in a.bands.items()}
    for s, c in b.bands.items():
        bands[s] = bands[s] + c if s in bands else c.copy()
    return BandedOperator(a.lattice, bands)


def op_scale(c, a):
    c = complex(c)
    return BandedOperator(a.lattice, {s: c * v for s, v in a.bands.items()})


def op_compose(a, b):
    """``a @ b``: apply ``b`` first, then ``a``."""
    _check_same(a, b)
    lat = a.lattice
    out = {}
    for sb, cb in b.bands.items():
        mid = lat.shift_targets(sb)
        ok = mid >= 0
        for sa, ca in a.bands.items():
            coeffs = np.zeros(lat.dim, dtype=complex)
            coeffs[ok] = cb[ok] * ca[mid[ok]]
            s = tuple(x + y for x, y in zip(sa, sb))
            out[s] = out[s] + coeffs if s in out else coeffs
    return BandedOperator(lat, out)


def op_adjoint(a):
    """Conjugate transpose with respect to the orthonormal basis ``e_m``."""
    lat = a.lattice
    out = {}
    for s, c in a.bands.items():
        tgt = lat.shift_targets(s)
        ok = tgt >= 0
        d = np.zeros(lat.dim, dtype=complex)
        d[tgt[ok]] = np.conj(c[ok])
        out[tuple(-x for x in s)] = d
    return BandedOperator(lat, out)


def op_commutator(a, b):
    return op_compose(a, b) - op_compose(b, a)


def to_dense(a):
    lat = a.lattice
    m = np.zeros((lat.dim, lat.dim), dtype=complex)
    src = np.arange(lat.dim)
    for s, c in a.bands.items():
        tgt = lat.shift_targets(s)
        ok = tgt >= 0
        m[tgt[ok], src[ok]] += c[ok]
    return m


def column_norms(a):
    """``||a e_j||`` for every basis vector; bands with distinct shifts never overlap."""
    sq = np.zeros(a.dim)
    for c in a.bands.values():
        sq += np.abs(c) ** 2
    return np.sqrt(sq)


def frobenius_norm(m):
    if isinstance(m, BandedOperator):
        return float(np.sqrt(sum(np.sum(np.abs(c) ** 2) for c in m.bands.values())))
    return float(np.linalg.norm(m, "fro"))


def is_hermitian(m, tol=1e-12):
    m = np.asarray(m)
    return frobenius_norm(m - m.conj().T) <= tol


def is_skew_hermitian(m, tol=1e-12):
    m = np.asarray(m)
    return frobenius_norm(m + m.conj().T) <= tol


def dense_commutator(x, y):
    return x @ y - y @ x


def matrix_exp(m, tol=None):
    """Matrix exponential.

    Skew-Hermitian input ``S = iH`` goes through ``eigh(H)`` so the result is
    unitary to machine precision; anything else falls back to scaling and
    squaring with a Pade approximant.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix_exp: non-finite entries")
    scale = max(1.0, frobenius_norm(m))
    if tol is None:
        tol = 1e-12 * scale
    if is_skew_hermitian(m, tol):
        h = -1j * m
        h = 0.5 * (h + h.conj().T)
        w, v = np.linalg.eigh(h)
        return (v * np.exp(1j * w)) @ v.conj().T
    return scipy.linalg.expm(m)


def matrix_log(m, tol=None):
    """Principal matrix logarithm.

    Unitary input is diagonalized by a complex Schur decomposition (which is
    diagonal for normal matrices) so the result is skew-Hermitian.
    """
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix_log: non-finite entries")
    n = m.shape[0]
    if tol is None:
        tol = 1e-10 * n
    if frobenius_norm(m.conj().T @ m - np.eye(n)) <= tol:
        t, z = scipy.linalg.schur(m, output="complex")
        lam = np.diag(t)
        return (z * (1j * np.angle(lam))) @ z.conj().T
    return scipy.linalg.logm(m)
