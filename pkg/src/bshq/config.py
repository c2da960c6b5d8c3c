from dataclasses import dataclass


@dataclass(frozen=True)
class QuantizationConfig:
    """Global scalars shared by every construction.

    ``hbar`` is the reduced Planck constant in the action units of the run;
    ``atol``/``rtol`` are the default tolerances used by verification helpers.
    """

    hbar: float = 1.0
    atol: float = 1e-12
    rtol: float = 1e-10

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")
        if self.atol < 0 or self.rtol < 0:
            raise ValueError("tolerances must be non-negative")
