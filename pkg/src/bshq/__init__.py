"""Bohr-Sommerfeld-Heisenberg quantization on finite lattices of quantized tori.

Operators are built as banded complex matrices over the basis ``e_m`` indexed
by the Bohr-Sommerfeld lattice. Two worked systems are provided: the 1-D
harmonic oscillator and the spin-s coadjoint orbits of SO(3), together with a
1-DOF action-integral spectrum solver.
"""

from bshq.config import QuantizationConfig
from bshq.errors import BSHQError
from bshq.lattice import AxisBounds, BohrSommerfeldLattice, build_lattice
from bshq.opalg import BandedOperator
from bshq.report import VerificationReport

__all__ = [
    "AxisBounds",
    "BSHQError",
    "BandedOperator",
    "BohrSommerfeldLattice",
    "QuantizationConfig",
    "VerificationReport",
    "build_lattice",
]

__version__ = "0.1.0"
