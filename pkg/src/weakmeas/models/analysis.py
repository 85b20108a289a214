"""Weak-value tables and Fisher-information reports."""

import numpy as np
import pydantic

from weakmeas.models.common import ComplexNumber, FrozenModel


class WeakValueRecord(FrozenModel):
    """Weak value of the observable for one post-selected basis vector |f⟩."""

    label: str
    post_prob: float
    overlap: ComplexNumber
    transition: ComplexNumber
    weak_value: ComplexNumber | None
    defined: bool


class WeakValueTable(FrozenModel):
    """One `WeakValueRecord` per basis vector, in basis order."""

    records: tuple[WeakValueRecord, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        """Basis labels in table order."""
        return tuple(r.label for r in self.records)

    @property
    def post_probs(self) -> np.ndarray:
        """p(f) = |⟨f|ψ⟩|² per basis vector."""
        return np.array([r.post_prob for r in self.records])

    @property
    def weak_values(self) -> list[complex | None]:
        """Weak values per basis vector; ``None`` where undefined."""
        return [r.weak_value for r in self.records]

    @property
    def max_abs_weak_value(self) -> float:
        """Largest |A_w| over the defined entries (0 if none are defined)."""
        return max((abs(r.weak_value) for r in self.records if r.weak_value is not None), default=0.0)


class FisherReport(FrozenModel):
    """Fisher information about ε for a final-measurement strategy.

    Attributes:
        labels: Basis labels, aligned with `contributions`.
        contributions: Per-outcome terms 4·p(f)·Re[A_w]².
        total: Fisher information F = 1/δε² per measured system.
        delta_eps: Single-shot bound δε = F^(-1/2); ``None`` when F vanishes.
        basis_is_real: Whether every defined weak value is real (see `analysis.is_real_basis`).
        max_abs_weak_value: Largest |A_w| over the defined entries.
    """

    labels: tuple[str, ...]
    contributions: tuple[float, ...]
    total: float
    delta_eps: float | None
    basis_is_real: bool
    max_abs_weak_value: float = pydantic.Field(ge=0)
