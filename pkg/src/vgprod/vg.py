"""The marginal variance-gamma distribution VG(m, alpha, beta, 0).

Density proportional to e^{beta x} |x|^m K_m(alpha |x|); shape m > -1/2,
rate alpha > |beta| >= 0, location fixed at zero throughout this library.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, SingularityError
from .tailform import TailForm

__all__ = ["VGParams", "vg_pdf", "vg_log_pdf", "vg_prob_nonpositive",
           "vg_tail_forms", "vg_sample"]


@dataclass(frozen=True)
class VGParams:
    """Parameter quadruple (m, alpha, beta, mu=0) with derived rates."""

    m: float
    alpha: float
    beta: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        if not self.m > -0.5:
            raise DomainError("shape must satisfy m > -1/2")
        if not (self.alpha > 0.0 and abs(self.beta) < self.alpha):
            raise DomainError("rates must satisfy 0 <= |beta| < alpha")
        if self.mu != 0.0:
            raise DomainError("nonzero location is not supported")

    @property
    def gamma2(self):
        return self.alpha ** 2 - self.beta ** 2

    @property
    def lambda_plus(self):
        return self.alpha + self.beta

    @property
    def lambda_minus(self):
        return self.alpha - self.beta

    @property
    def log_norm_const(self):
        """log of gamma^{2m+1} / (sqrt(pi) (2 alpha)^m Gamma(m+1/2))."""
        return ((self.m + 0.5) * math.log(self.gamma2)
                - 0.5 * math.log(math.pi)
                - self.m * math.log(2.0 * self.alpha)
                - math.lgamma(self.m + 0.5))


def vg_log_pdf(p, x):
    """log of the density; -inf in the far tails, +inf only at a m<=0 origin."""
    x = float(x)
    if x == 0.0:
        if p.m <= 0.0:
            raise SingularityError("density is singular at 0 for m <= 0")
        # K_m(u) u^m -> Gamma(m) 2^{m-1} as u -> 0
        return (p.log_norm_const + math.lgamma(p.m)
                + (p.m - 1.0) * math.log(2.0) - p.m * math.log(p.alpha))
    ax = p.alpha * abs(x)
    return (p.log_norm_const + p.beta * x + p.m * math.log(abs(x))
            + specfun.log_bessel_k(p.m, ax))


def vg_pdf(p, x):
    """Density of VG(m, alpha, beta, 0) at x."""
    return math.exp(vg_log_pdf(p, x))


def vg_prob_nonpositive(p):
    """P(X <= 0) in closed form through the Gauss hypergeometric series."""
    if p.beta == 0.0:
        return 0.5
    r = p.beta / p.alpha
    f = specfun.gauss_2f1(1.0, p.m + 1.0, 1.5, r * r)
    c = math.exp(math.lgamma(p.m + 1.0) - math.lgamma(p.m + 0.5)) / math.sqrt(math.pi)
    return 0.5 - c * r * (1.0 - r * r) ** (p.m + 0.5) * f


def vg_tail_forms(p):
    """Tail laws (right, left): survival ~ A x^{m-1/2} e^{-rate x}.

    The right tail decays at rate alpha - beta, the left at alpha + beta;
    amplitudes follow from the exact density prefactor.
    """
    base = ((p.m + 0.5) * math.log(p.gamma2)
            - (p.m + 0.5) * math.log(2.0 * p.alpha) - math.lgamma(p.m + 0.5))
    right = TailForm(amplitude=math.exp(base) / p.lambda_minus,
                     power=p.m - 0.5, rate=p.lambda_minus, exponent=1.0)
    left = TailForm(amplitude=math.exp(base) / p.lambda_plus,
                    power=p.m - 0.5, rate=p.lambda_plus, exponent=1.0)
    return right, left


def vg_sample(p, count, rng):
    """Draw ``count`` variates via the normal variance-mean mixture.

    X = beta*W + sqrt(W)*N with W ~ Gamma(shape m+1/2, rate gamma^2/2) and
    N standard normal.  ``rng`` is a seeded numpy Generator (or seed).
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    rng = np.random.default_rng(rng)
    w = rng.gamma(shape=p.m + 0.5, scale=2.0 / p.gamma2, size=count)
    return p.beta * w + np.sqrt(w) * rng.standard_normal(count)
