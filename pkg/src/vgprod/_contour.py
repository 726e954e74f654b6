"""Contour-quadrature kernels (Mellin-Barnes integrals on vertical lines).

Two uses:

* an independent cross-check oracle for the residue series, on a line
  strictly separating the two pole sets;
* the production mid-regime evaluator, where float64 residue summation
  loses digits to cancellation.  For integrands without left poles the
  line is moved to the real saddle point, which removes the cancellation
  entirely (integrand magnitude matches the result's scale).

Trapezoid sums on these analytic, exponentially decaying integrands
converge geometrically in 1/h; accuracy is controlled by step halving.
"""

import cmath
import math

import numpy as np

from ._jit import njit
from ._scalars import clgamma, digamma

_LOG_TINY = -745.0


@njit(cache=True)
def _g_ln_integrand(s, a_num, n_an, b_num, n_bn, a_den, n_ad, b_den, n_bd, lx):
    ln = s * lx
    for j in range(n_bn):
        ln = ln + clgamma(b_num[j] - s)
    for j in range(n_an):
        ln = ln + clgamma(1.0 - a_num[j] + s)
    for j in range(n_ad):
        ln = ln - clgamma(a_den[j] - s)
    for j in range(n_bd):
        ln = ln - clgamma(1.0 - b_den[j] + s)
    return ln


@njit(cache=True)
def g_contour_core(x, a_num, n_an, b_num, n_bn, a_den, n_ad, b_den, n_bd,
                   c, tol, max_halvings):
    """G-function via the vertical line Re(s)=c.  (value, abs_err, evals, status).

    The integrand must be analytic on the line; the caller chooses c so
    that b-poles lie right of it and a-poles (if any) left of it.  The
    result is real for real parameters; conjugate symmetry halves the line.
    """
    lx = math.log(x)
    # decay rate in Im(s): each numerator Gamma contributes ~ pi/2 per unit
    decay = 0.5 * math.pi * (n_bn + n_an - n_ad - n_bd)
    ln0 = _g_ln_integrand(complex(c, 0.0), a_num, n_an, b_num, n_bn,
                          a_den, n_ad, b_den, n_bd, lx).real
    # conservative initial height: integrand ~ exp(ln0 - decay*t)
    t_hi = (ln0 - (_LOG_TINY + 40.0)) / decay
    if t_hi < 10.0:
        t_hi = 10.0
    h = 0.25
    prev = math.nan
    val = math.nan
    evals = 0
    for it in range(max_halvings):
        acc = 0.0
        t = 0.0
        consec = 0
        while t < t_hi:
            ln = _g_ln_integrand(complex(c, t), a_num, n_an, b_num, n_bn,
                                 a_den, n_ad, b_den, n_bd, lx)
            evals += 1
            w = 0.5 if t == 0.0 else 1.0
            if ln.real > _LOG_TINY:
                term = w * (cmath.exp(ln)).real
                acc += term
                if abs(term) < 1e-18 * abs(acc) + 1e-320:
                    consec += 1
                    if consec > 8:
                        break
                else:
                    consec = 0
            else:
                consec += 1
                if consec > 8:
                    break
            t += h
        val = acc * h / math.pi
        if prev == prev:
            err = abs(val - prev) / 3.0
            if err <= tol * max(abs(val), 1e-300) or err == 0.0:
                return val, err + 1e-16 * abs(val), evals, 0
        prev = val
        h *= 0.5
    return val, abs(val - prev), evals, 1


@njit(cache=True)
def g40_saddle(x, b):
    """Optimal line position for G^{4,0}_{0,4}: solve sum psi(b_j - c) = ln x.

    The solution is unique on (-inf, min b); bisection seeded near -x^{1/4}.
    """
    bmin = min(b[0], min(b[1], min(b[2], b[3])))
    lx = math.log(x)
    lo = -x ** 0.25 - 2.0
    hi = bmin - 1e-3
    if lo >= hi:
        lo = hi - 2.0
    # f(c) = sum psi(b_j - c) - ln x, decreasing in c
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        f = -lx
        for j in range(4):
            f += digamma(b[j] - mid)
        if f > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-6 * (1.0 + abs(lo)):
            break
    return 0.5 * (lo + hi)


@njit(cache=True)
def mellin_marginal(s, m, alpha, beta, eps):
    """Mellin transform of the positive (eps=+1) or negative (eps=-1) part
    of a variance-gamma density, via its exponential-series expansion.

    Log-scaled Gamma recurrences keep intermediates in range; converges for
    all |beta| < alpha (geometrically, ratio |eps*beta/alpha|... squared per
    double step).
    """
    t = eps * 2.0 * beta / alpha
    g2 = alpha * alpha - beta * beta
    base = ((m + 0.5) * math.log(g2) - 0.5 * math.log(math.pi)
            - (2.0 * m + 1.0) * math.log(alpha) - math.lgamma(m + 0.5)
            - math.log(2.0))
    lead = base + s * (math.log(2.0) - math.log(alpha))
    fe = cmath.exp(clgamma((s + 1.0) / 2.0) + clgamma((s + 1.0) / 2.0 + m))
    tot = fe
    if t != 0.0:
        fo = cmath.exp(clgamma((s + 2.0) / 2.0) + clgamma((s + 2.0) / 2.0 + m)) * t
        tot += fo
        i = 2.0
        while i < 500.0:
            fe = fe * (t * t / ((i - 1.0) * i)) * ((s + i - 1.0) / 2.0) * ((s + i - 1.0) / 2.0 + m)
            fo = fo * (t * t / (i * (i + 1.0))) * ((s + i) / 2.0) * ((s + i) / 2.0 + m)
            tot += fe + fo
            if abs(fe) + abs(fo) < 1e-17 * abs(tot):
                break
            i += 2.0
    return cmath.exp(lead) * tot


@njit(cache=True)
def mellin_branch_integral(zabs, m, a1, b1, e1, n, a2, b2, e2, want_sf, tol):
    """One (e1,e2) branch of the inverse-Mellin pdf (or survival function).

    pdf: (1/2 pi i) int M1(s) M2(s) z^{-s-1} ds on the branch saddle line.
    sf : same with z^{-s} / s.
    Returns (value, abs_err, evals, status).
    """
    lam1 = a1 - e1 * b1
    lam2 = a2 - e2 * b2
    c = math.sqrt(lam1 * lam2 * zabs)
    if want_sf:
        if c < 0.75:
            c = 0.75
    else:
        if c < 1.0:
            c = 1.0
    lz = math.log(zabs)
    # height: Gaussian neck ~ sqrt(c), then exponential ~ exp(-pi t)
    t_hi = 6.0 * math.sqrt(c + 4.0) + 60.0
    h = 0.2
    prev = math.nan
    val = math.nan
    evals = 0
    for it in range(12):
        acc = 0.0
        t = 0.0
        consec = 0
        while t < t_hi:
            s = complex(c, t)
            v = mellin_marginal(s, m, a1, b1, e1) * mellin_marginal(s, n, a2, b2, e2)
            if want_sf:
                v = v * cmath.exp(-s * lz) / s
            else:
                v = v * cmath.exp(-(s + 1.0) * lz)
            evals += 1
            w = 0.5 if t == 0.0 else 1.0
            term = w * v.real
            acc += term
            if abs(term) < 1e-17 * (abs(acc) + 1e-320):
                consec += 1
                if consec > 10:
                    break
            else:
                consec = 0
            t += h
        val = acc * h / math.pi
        if prev == prev:
            err = abs(val - prev) / 3.0
            if err <= tol * max(abs(val), 1e-300):
                return val, err + 1e-16 * abs(val), evals, 0
        prev = val
        h *= 0.5
    return val, abs(val - prev), evals, 1
