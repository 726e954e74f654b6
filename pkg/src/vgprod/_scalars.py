"""Scalar special-function kernels usable inside jitted code.

These are the only transcendental functions the residue-series and contour
kernels need: real digamma/trigamma/tetragamma (with reflection for negative
arguments) and the principal log-gamma for complex arguments with positive
real part.  Accuracy is ~1e-14 relative, validated against scipy in the test
suite.
"""

import cmath
import math

from ._jit import njit

# Bernoulli numbers B_2..B_14 (asymptotic tails are truncated here; the
# recurrence below pushes arguments past 10 first, so term_7 < 1e-16).
_B = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0)

PI = math.pi
PI2_6 = math.pi * math.pi / 6.0
LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@njit
def digamma(x):
    if x <= 0.0 and x == math.floor(x):
        return math.nan
    acc = 0.0
    if x < 0.5:
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        acc = -PI / math.tan(PI * x)
        x = 1.0 - x
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    s = 0.0
    p = inv2
    for n in range(7):
        s += _B[n] * p / (2.0 * (n + 1.0))
        p *= inv2
    return acc + math.log(x) - 0.5 / x - s


@njit
def trigamma(x):
    if x <= 0.0 and x == math.floor(x):
        return math.nan
    acc = 0.0
    sign = 1.0
    if x < 0.5:
        # psi'(x) + psi'(1-x) = pi^2 / sin^2(pi*x)
        s = math.sin(PI * x)
        acc = PI * PI / (s * s)
        sign = -1.0
        x = 1.0 - x
    tail = 0.0
    while x < 10.0:
        tail += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # psi'(x) ~ 1/x + 1/(2x^2) + sum B_{2n} / x^{2n+1}
    s = inv + 0.5 * inv2
    p = inv2 * inv
    for n in range(7):
        s += _B[n] * p
        p *= inv2
    return acc + sign * (tail + s)


@njit
def tetragamma(x):
    """psi''(x)."""
    if x <= 0.0 and x == math.floor(x):
        return math.nan
    acc = 0.0
    sign = 1.0
    if x < 0.5:
        # psi''(x) = psi''(1-x) - 2 pi^3 cos(pi x)/sin^3(pi x)
        s = math.sin(PI * x)
        acc = -2.0 * PI ** 3 * math.cos(PI * x) / (s * s * s)
        x = 1.0 - x
    tail = 0.0
    while x < 10.0:
        tail += 2.0 / (x * x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # psi''(x) ~ -1/x^2 - 1/x^3 - sum B_{2n} (2n+1)/x^{2n+2}
    s = inv2 + inv2 * inv
    p = inv2 * inv2
    for n in range(7):
        s += _B[n] * (2.0 * n + 3.0) * p
        p *= inv2
    return acc - sign * (tail + s)


@njit
def clgamma(z):
    """Principal log Gamma(z) for complex z with Re(z) > 0.

    Recurrence pushes Re(z) above 12, then Stirling.  Branch jumps from the
    accumulated complex logs are harmless for the exp(sum(...)) uses here.
    """
    shift = 0.0 + 0.0j
    while z.real < 12.0:
        shift -= cmath.log(z)
        z = z + 1.0
    zi = 1.0 / z
    zi2 = zi * zi
    s = (z - 0.5) * cmath.log(z) - z + LN_SQRT_2PI
    p = zi
    for n in range(7):
        s += _B[n] / ((2.0 * n + 1.0) * (2.0 * n + 2.0)) * p
        p *= zi2
    return s + shift


@njit
def gamma_eps_factor(w0, sgn):
    """Laurent data of Gamma(w0 + sgn*eps) truncated at eps^3.

    Returns ``(lead, logc, sign, p1, p2, p3)`` so that

        Gamma(w0 + sgn*eps) = sign * exp(logc) * eps^lead
                              * exp(p1*eps + p2*eps^2 + p3*eps^3).

    ``lead`` is -1 when w0 is a nonpositive integer (pole), else 0.
    """
    k = math.floor(w0 + 0.5)
    if abs(w0 - k) < 1e-9 and k <= 0.0:
        kk = -k
        # Gamma(-kk + e), e = sgn*eps:
        #   [(-1)^kk / (kk! e)] * exp(pi^2 e^2/6 + psi(kk+1) e
        #                             - psi'(kk+1) e^2/2 + psi''(kk+1) e^3/6)
        a1 = digamma(kk + 1.0)
        a2 = PI2_6 - 0.5 * trigamma(kk + 1.0)
        a3 = tetragamma(kk + 1.0) / 6.0
        sign = 1.0 if (int(kk) % 2 == 0) else -1.0
        if sgn < 0.0:
            sign = -sign  # 1/e = -1/eps
        return -1, -math.lgamma(kk + 1.0), sign, a1 * sgn, a2, a3 * sgn
    logc = math.lgamma(w0)
    sign = 1.0
    if w0 < 0.0:
        # Gamma alternates sign between consecutive negative integers.
        if int(math.floor(-w0)) % 2 == 0:
            sign = -1.0
    return 0, logc, sign, digamma(w0) * sgn, 0.5 * trigamma(w0), tetragamma(w0) * sgn / 6.0


@njit
def exp_poly3(p1, p2, p3):
    """Coefficients (1, e1, e2, e3) of exp(p1 x + p2 x^2 + p3 x^3) to x^3."""
    e1 = p1
    e2 = 0.5 * p1 * p1 + p2
    e3 = p1 * p1 * p1 / 6.0 + p1 * p2 + p3
    return 1.0, e1, e2, e3
