"""The Bohr-Sommerfeld set as a windowed integer lattice.

In the global-lattice case the quantized tori are labelled by integer tuples
``m = (m_1, ..., m_n)`` and carry actions ``A_i = m_i * hbar``. Unbounded
directions are materialized through a finite window; everything downstream
acts on the windowed basis, enumerated row-major with axis 0 slowest.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from bshq.config import QuantizationConfig
from bshq.errors import InvalidBoundsError, OutOfRangeError


@dataclass(frozen=True)
class AxisBounds:
    """Physical bounds ``[lo, hi]`` (possibly infinite) and the materialized window."""

    lo: float
    hi: float
    window_lo: int
    window_hi: int

    def __post_init__(self):
        if self.window_lo > self.window_hi:
            raise InvalidBoundsError(
                f"empty window [{self.window_lo}, {self.window_hi}]"
            )
        if not (self.lo <= self.window_lo and self.window_hi <= self.hi):
            raise InvalidBoundsError(
                f"window [{self.window_lo}, {self.window_hi}] exceeds "
                f"physical bounds [{self.lo}, {self.hi}]"
            )

    @classmethod
    def window(cls, lo, hi):
        """An unbounded axis materialized on ``[lo, hi]``."""
        return cls(-math.inf, math.inf, int(lo), int(hi))

    @classmethod
    def clipped(cls, lo, hi, window_lo, window_hi):
        """Intersect a requested window with the physical bounds."""
        wlo = int(window_lo) if window_lo >= lo else int(math.ceil(lo))
        whi = int(window_hi) if window_hi <= hi else int(math.floor(hi))
        return cls(lo, hi, wlo, whi)

    @property
    def size(self):
        return self.window_hi - self.window_lo + 1


@dataclass(frozen=True)
class BohrSommerfeldLattice:
    n: int
    axes: tuple
    config: QuantizationConfig = field(default_factory=QuantizationConfig)

    @property
    def shape(self):
        return tuple(ax.size for ax in self.axes)

    @property
    def dim(self):
        return int(np.prod(self.shape))

    @property
    def lows(self):
        return np.array([ax.window_lo for ax in self.axes], dtype=np.int64)

    @property
    def highs(self):
        return np.array([ax.window_hi for ax in self.axes], dtype=np.int64)

    @cached_property
    def coords(self):
        """``(dim, n)`` integer array of lattice points in flat order."""
        grids = np.indices(self.shape).reshape(self.n, -1).T
        coords = grids + self.lows
        coords.setflags(write=False)
        return coords

    def contains(self, idx):
        idx = np.asarray(idx)
        return bool(np.all(idx >= self.lows) and np.all(idx <= self.highs))

    def flat_index(self, idx):
        idx = tuple(int(v) for v in idx)
        if len(idx) != self.n:
            raise OutOfRangeError(f"index {idx} has length {len(idx)}, lattice has n={self.n}")
        if not self.contains(idx):
            raise OutOfRangeError(f"index {idx} outside window")
        return int(np.ravel_multi_index(np.subtract(idx, self.lows), self.shape))

    def index_of(self, flat):
        if not 0 <= flat < self.dim:
            raise OutOfRangeError(f"flat index {flat} outside 0..{self.dim - 1}")
        return tuple(int(v) for v in self.coords[flat])

    def shift_targets(self, shift):
        """Flat index of ``m + shift`` for every basis point ``m``; -1 where it leaves the window."""
        shift = np.asarray(shift, dtype=np.int64)
        target = self.coords + shift
        inside = np.all((target >= self.lows) & (target <= self.highs), axis=1)
        flat = np.full(self.dim, -1, dtype=np.int64)
        if inside.any():
            flat[inside] = np.ravel_multi_index((target[inside] - self.lows).T, self.shape)
        return flat

    def interior_mask(self, width=1):
        """Points at least ``width`` steps from every window edge."""
        c = self.coords
        return np.all((c - self.lows >= width) & (self.highs - c >= width), axis=1)

    def actions(self):
        """``(dim, n)`` array of action values ``m * hbar``."""
        return self.coords * self.config.hbar


def build_lattice(n, axes, config=None):
    axes = tuple(axes)
    if n < 1:
        raise InvalidBoundsError(f"n must be positive, got {n}")
    if len(axes) != n:
        raise InvalidBoundsError(f"expected {n} axes, got {len(axes)}")
    for ax in axes:
        if not isinstance(ax, AxisBounds):
            raise TypeError(f"axis must be AxisBounds, got {type(ax).__name__}")
    return BohrSommerfeldLattice(n, axes, config or QuantizationConfig())


def window_lattice(windows, config=None):
    """Shorthand: a lattice over unbounded axes truncated to ``[(lo, hi), ...]``."""
    axes = [AxisBounds.window(lo, hi) for lo, hi in windows]
    return build_lattice(len(axes), axes, config)


def action_values(lat, idx):
    """Actions ``(m_1 hbar, ..., m_n hbar)`` of the torus labelled ``idx``."""
    if len(idx) != lat.n or not lat.contains(idx):
        raise OutOfRangeError(f"index {tuple(idx)} outside window")
    return [float(m) * lat.config.hbar for m in idx]


def shift_index(lat, idx, axis, delta):
    """``idx`` with component ``axis`` moved by ``delta``, or None if that leaves the window."""
    if not 0 <= axis < lat.n:
        raise OutOfRangeError(f"axis {axis} out of range for n={lat.n}")
    out = list(idx)
    out[axis] += delta
    return tuple(out) if lat.contains(out) else None
