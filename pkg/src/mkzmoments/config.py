"""Numeric evaluation settings shared by the series and expression evaluators."""

from dataclasses import dataclass


@dataclass(frozen=True)
class EvalConfig:
    """Tolerances and caps for the numeric tier.

    ``series_branch_threshold`` is the |x| below which the moment evaluator
    prefers the series oracle over closed forms (their x^{-n} coefficient
    poles cancel only in the full sum, which double precision cannot see).
    """

    tol: float = 1e-13
    max_terms: int = 10**7
    series_branch_threshold: float = 0.05
    pole_guard: float = 1e-300

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 < self.series_branch_threshold < 1:
            raise ValueError("series_branch_threshold must lie in (0, 1)")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_CONFIG = EvalConfig()
