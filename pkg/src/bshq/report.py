from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of an identity check over a set of basis rows or samples.

    ``passed`` is always ``max_residual <= tolerance``; per-identity residuals
    are kept in ``details`` so a failing report says which relation broke.
    """

    max_residual: float
    tolerance: float
    checked_rows: int = 0
    boundary_rows_excluded: int = 0
    details: dict = field(default_factory=dict)
    samples: int | None = None
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    @classmethod
    def from_residuals(cls, residuals, tolerance, **kwargs):
        residuals = {k: float(v) for k, v in residuals.items()}
        worst = max(residuals.values(), default=0.0)
        return cls(max_residual=worst, tolerance=float(tolerance), details=residuals, **kwargs)

    def to_dict(self):
        out = {
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "checked_rows": self.checked_rows,
            "boundary_rows_excluded": self.boundary_rows_excluded,
            "details": dict(sorted(self.details.items())),
            "pass": self.passed,
        }
        if self.samples is not None:
            out["samples"] = self.samples
            out["seed"] = self.seed
        return out
