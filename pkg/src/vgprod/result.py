"""Evaluation results carrying an a-posteriori error estimate and regime tag."""

from dataclasses import dataclass

#: Regime tags attached to every EvalResult.
SERIES = "series"
FINITE_SUM = "finite-sum"
ASYMPTOTIC = "asymptotic"
QUADRATURE = "quadrature"

_REGIMES = (SERIES, FINITE_SUM, ASYMPTOTIC, QUADRATURE)


@dataclass(frozen=True)
class EvalResult:
    """A numeric value together with an estimated absolute error.

    Attributes
    ----------
    value : float or complex
        The computed value.
    abs_err : float
        Estimated absolute error (finite and nonnegative).  Evaluators raise
        instead of returning when they cannot meet the requested tolerance,
        so a returned ``abs_err`` is always within the caller's request.
    regime : str
        One of ``"series"``, ``"finite-sum"``, ``"asymptotic"``,
        ``"quadrature"`` identifying the evaluation path taken.
    n_terms : int
        Number of series layers / quadrature nodes consumed (diagnostic).
    """

    value: float | complex
    abs_err: float
    regime: str
    n_terms: int = 0

    def __post_init__(self):
        if self.regime not in _REGIMES:
            raise ValueError(f"unknown regime tag {self.regime!r}")
        if not (self.abs_err >= 0.0) or self.abs_err != self.abs_err:
            raise ValueError("abs_err must be finite and >= 0")

    def __float__(self):
        return float(self.value)
