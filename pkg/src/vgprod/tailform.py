"""Stretched-exponential tail laws A x^r exp(-b x^a) and their product rule.

Products of independent variables whose survival functions follow this law
again follow it, with parameters given by a Laplace-type balance; the
combination below implements that rule exactly.  Exponential marginal
tails (a=1) combine into square-root-exponential product tails (a=1/2).
"""

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["TailForm", "tail_combine"]


@dataclass(frozen=True)
class TailForm:
    """Survival law  A * x^power * exp(-rate * x^exponent)."""

    amplitude: float
    power: float
    rate: float
    exponent: float = 1.0

    def __post_init__(self):
        if not (self.amplitude > 0.0 and self.rate > 0.0 and self.exponent > 0.0):
            raise DomainError("amplitude, rate and exponent must be positive")

    def log_survival(self, x):
        if x <= 0.0:
            raise DomainError("tail law defined for x > 0")
        return (math.log(self.amplitude) + self.power * math.log(x)
                - self.rate * x ** self.exponent)

    def survival(self, x):
        ls = self.log_survival(x)
        return math.exp(ls) if ls > -745.0 else 0.0


def tail_combine(f1, f2):
    """Tail law of the product of two independent nonnegative variables.

    Both inputs must have positive rates and exponents; the output exponent
    is the harmonic-type mean a1*a2/(a1+a2) (so 1, 1 -> 1/2).
    """
    a1, b1, r1, A1 = f1.exponent, f1.rate, f1.power, f1.amplitude
    a2, b2, r2, A2 = f2.exponent, f2.rate, f2.power, f2.amplitude
    asum = a1 + a2
    a = a1 * a2 / asum
    b = (b1 ** (a2 / asum) * b2 ** (a1 / asum)
         * ((a1 / a2) ** (a2 / asum) + (a2 / a1) ** (a1 / asum)))
    r = (a1 * a2 + 2.0 * a1 * r2 + 2.0 * a2 * r1) / (2.0 * asum)
    A = (math.sqrt(2.0 * math.pi) * A1 * A2 / math.sqrt(asum)
         * (a1 * b1) ** ((a2 - 2.0 * r1 + 2.0 * r2) / (2.0 * asum))
         * (a2 * b2) ** ((a1 - 2.0 * r2 + 2.0 * r1) / (2.0 * asum)))
    return TailForm(amplitude=A, power=r, rate=b, exponent=a)
