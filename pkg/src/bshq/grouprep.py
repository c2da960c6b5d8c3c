"""From the spin-s representation of so(3) to a representation of SO(3).

``rho`` sends ``hat(x)`` to the skew-Hermitian generator
``sum_i x_i Q_{J^i} / (i hbar)``; these satisfy the real so(3) brackets
``[rho(e1), rho(e2)] = rho(e3)`` (cyclic). The group element ``g`` acts by
``U(g) = exp(rho(log g))`` with ``log`` on the principal branch.

The truncated Baker-Campbell-Hausdorff series is only a verification oracle.
"""

from dataclasses import dataclass

import numpy as np

from bshq.errors import BranchCutError
from bshq.opalg import dense_commutator, frobenius_norm, matrix_exp
from bshq.report import VerificationReport

BRANCH_GUARD = 1e-6


def hat(x):
    x1, x2, x3 = np.asarray(x, dtype=float)
    return np.array([[0.0, -x3, x2], [x3, 0.0, -x1], [-x2, x1, 0.0]])


def unhat(X, atol=1e-12):
    X = np.asarray(X, dtype=float)
    if X.shape != (3, 3) or np.linalg.norm(X + X.T) > atol:
        raise ValueError("unhat expects a 3x3 skew-symmetric matrix")
    return np.array([X[2, 1], X[0, 2], X[1, 0]])


def killing_form(X, Y, atol=1e-12):
    """``tr(X Y^T) / 2``; equals the dot product of the unhatted vectors."""
    unhat(X, atol), unhat(Y, atol)
    return 0.5 * float(np.trace(np.asarray(X) @ np.asarray(Y).T))


@dataclass(frozen=True)
class Rotation:
    matrix: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.matrix, dtype=float)
        if r.shape != (3, 3):
            raise ValueError("rotation must be 3x3")
        if np.linalg.norm(r.T @ r - np.eye(3)) > 1e-9 or abs(np.linalg.det(r) - 1) > 1e-9:
            raise ValueError("matrix is not in SO(3)")
        object.__setattr__(self, "matrix", r)

    def __matmul__(self, other):
        return Rotation(self.matrix @ other.matrix)

    def inverse(self):
        return Rotation(self.matrix.T)

    @property
    def angle(self):
        return _angle(self.matrix)[0]


def _angle(R):
    """Rotation angle via atan2 of the (sin, cos) parts; stays accurate near 0 and pi."""
    W = 0.5 * (R - R.T)
    w = np.array([W[2, 1], W[0, 2], W[1, 0]])
    c = 0.5 * (np.trace(R) - 1)
    return float(np.arctan2(np.linalg.norm(w), c)), c, w


def so3_exp(x):
    """Rodrigues: ``exp(hat(x))``."""
    x = np.asarray(x, dtype=float)
    theta = np.linalg.norm(x)
    K = hat(x)
    if theta < 1e-8:
        # series to second order
        return Rotation(np.eye(3) + K + 0.5 * K @ K)
    a = np.sin(theta) / theta
    b = (1 - np.cos(theta)) / theta**2
    return Rotation(np.eye(3) + a * K + b * K @ K)


def so3_log(g, guard=BRANCH_GUARD):
    """Principal-branch inverse of :func:`so3_exp` for rotation angles below ``pi - guard``."""
    R = g.matrix if isinstance(g, Rotation) else np.asarray(g, dtype=float)
    theta, c, w = _angle(R)
    if theta >= np.pi - guard:
        raise BranchCutError(f"rotation angle {theta:.9f} is within {guard} of pi")
    if theta < 1e-8:
        return w
    if theta < 0.5 * np.pi:
        return w * (theta / np.sin(theta))
    # near pi the antisymmetric part is small; take the axis from n n^T instead
    nn = (0.5 * (R + R.T) - c * np.eye(3)) / (1 - c)
    k = int(np.argmax(np.diag(nn)))
    n = nn[:, k] / np.sqrt(nn[k, k])
    if n @ w < 0:
        n = -n
    return theta * n


def rho(rep, x):
    """``sum_i x_i Q_{J^i} / (i hbar)``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for xi, q in zip(x, rep.generators):
        out += xi * q
    return out / (1j * rep.hbar)


def group_rep(rep, g):
    return matrix_exp(rho(rep, so3_log(g)))


def bch_truncated(X, Y, order=4):
    """``log(exp X exp Y)`` through the given total degree (1..4)."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape or X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    if not 1 <= order <= 4:
        raise ValueError("order must be between 1 and 4")
    Z = X + Y
    if order >= 2:
        XY = dense_commutator(X, Y)
        Z = Z + 0.5 * XY
    if order >= 3:
        Z = Z + (dense_commutator(X, XY) - dense_commutator(Y, XY)) / 12
    if order >= 4:
        Z = Z - dense_commutator(Y, dense_commutator(X, XY)) / 24
    return Z


def random_rotation_vector(rng, max_angle=np.pi - BRANCH_GUARD):
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    return axis * rng.uniform(0.0, max_angle)


def sample_branch_pairs(rng, count, guard=BRANCH_GUARD):
    """``count`` pairs ``(g, h)`` with ``g``, ``h`` and ``gh`` all off the branch cut."""
    pairs = []
    while len(pairs) < count:
        g = so3_exp(random_rotation_vector(rng))
        h = so3_exp(random_rotation_vector(rng))
        if max(g.angle, h.angle, (g @ h).angle) < np.pi - guard:
            pairs.append((g, h))
    return pairs


def verify_homomorphism(rep, sample_count=200, tol=1e-8, seed=0):
    """Sample ``U(gh) - U(g) U(h)`` and ``U^dagger U - I`` on the principal branch."""
    rng = np.random.default_rng(seed)
    eye = np.eye(rep.dim)
    hom = unit = 0.0
    for g, h in sample_branch_pairs(rng, sample_count):
        ug, uh, ugh = group_rep(rep, g), group_rep(rep, h), group_rep(rep, g @ h)
        hom = max(hom, frobenius_norm(ugh - ug @ uh))
        unit = max(unit, *(frobenius_norm(u.conj().T @ u - eye) for u in (ug, uh, ugh)))
    residuals = {"homomorphism": hom, "unitarity": unit}
    return VerificationReport.from_residuals(
        residuals, tol, checked_rows=rep.dim, samples=sample_count, seed=seed
    )
