"""Evaluators for the three Meijer G families the product distribution needs.

``G40_04`` (no upper parameters), ``G41_15`` (one upper parameter, one
denominator lower parameter) and ``G31_13`` (one upper parameter) are
computed primarily by summing residues over the poles of the Gamma(b_j - s)
factors, with exact multiple-pole handling.  In double precision the
residue sum cancels catastrophically once the natural scale 4*x^{1/4}
grows; each evaluator therefore monitors its a-posteriori error estimate
and switches to Mellin-Barnes contour quadrature (regime tag
``"quadrature"``) when the series cannot meet the requested tolerance.
``g_contour_oracle`` exposes the independent fixed-line quadrature used to
cross-check the series in tests.
"""

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from . import specfun
from ._contour import g40_saddle, g_contour_core
from ._residue import g_residue_core
from .errors import ConvergenceError, DomainError, RegimeError
from .result import QUADRATURE, SERIES, EvalResult

__all__ = [
    "MeijerOrders", "g40_04", "g41_15", "g31_13",
    "g_contour_oracle", "reduction_residuals",
]

_KINDS = {"G40_04": (4, 0, 0), "G41_15": (4, 1, 1), "G31_13": (3, 1, 0)}

_EMPTY = np.zeros(1)


@dataclass(frozen=True)
class MeijerOrders:
    """Parameter block for one of the three supported families."""

    kind: str
    a_params: tuple
    b_params: tuple

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unsupported kind {self.kind!r}")
        nb, na, nden = _KINDS[self.kind]
        if len(self.a_params) != na:
            raise DomainError(f"{self.kind} takes {na} a-parameter(s)")
        if len(self.b_params) != nb + nden:
            raise DomainError(f"{self.kind} takes {nb + nden} b-parameter(s)")
        for v in (*self.a_params, *self.b_params):
            if not math.isfinite(v):
                raise DomainError("parameters must be finite")


def _series_then_contour(x, bnum, a1, bden, tol, max_terms, allow_contour, c_line):
    b = np.asarray(bnum, dtype=np.float64)
    has_a = a1 is not None
    has_den = bden is not None
    val, err, layers, status = g_residue_core(
        x, b, len(b), has_a, a1 if has_a else 0.0,
        has_den, bden if has_den else 0.0, tol, max_terms)
    if status == 2:
        raise DomainError("upper-parameter pole collides with a lower-parameter pole")
    scale = max(abs(val), 1e-300)
    if status == 0 and err <= tol * scale:
        return EvalResult(val, err + tol * abs(val), SERIES, layers)
    if not allow_contour:
        raise ConvergenceError(
            f"residue series cannot reach tol={tol:g} at x={x:g} "
            f"(estimated error {err:.2e}, {layers} layers)")
    aa = np.array([a1]) if has_a else _EMPTY
    bd = np.array([bden]) if has_den else _EMPTY
    cval, cerr, evals, cstat = g_contour_core(
        x, aa, 1 if has_a else 0, b, len(b), _EMPTY, 0, bd, 1 if has_den else 0,
        c_line, tol, 14)
    if cstat != 0:
        raise ConvergenceError(f"contour quadrature stalled at x={x:g}")
    return EvalResult(cval, cerr, QUADRATURE, evals)


def g40_04(x, b, *, tol=1e-12, max_terms=400, big_x_threshold=35.0,
           allow_contour=True):
    """G^{4,0}_{0,4}(x | -; b1..b4) for x > 0.

    Defers to the caller's asymptotic regime (RegimeError) once the series
    scale 4*x^{1/4} exceeds ``big_x_threshold``.
    """
    if x <= 0.0:
        raise DomainError("g40_04 requires x > 0")
    if len(b) != 4:
        raise DomainError("g40_04 takes 4 b-parameters")
    if 4.0 * x ** 0.25 > big_x_threshold:
        raise RegimeError(
            f"4*x^(1/4)={4.0 * x ** 0.25:.2f} exceeds {big_x_threshold}; "
            "use the asymptotic regime")
    barr = np.asarray(b, dtype=np.float64)
    c = min(g40_saddle(x, barr), float(barr.min()) - 0.3)
    return _series_then_contour(x, b, None, None, tol, max_terms, allow_contour, c)


def _strip_line(a1, bnum):
    lo = a1 - 1.0
    hi = float(min(bnum))
    if hi - lo < 1e-9:
        raise DomainError("no contour strip separates the pole sets")
    return lo + 0.75 * (hi - lo)


def g41_15(x, a1, b, *, tol=1e-12, max_terms=400, allow_contour=True):
    """G^{4,1}_{1,5}(x | a1; b1..b5) with b5 entering the denominator."""
    if x <= 0.0:
        raise DomainError("g41_15 requires x > 0")
    if len(b) != 5:
        raise DomainError("g41_15 takes 5 b-parameters")
    c = _strip_line(a1, b[:4])
    return _series_then_contour(x, b[:4], a1, b[4], tol, max_terms, allow_contour, c)


def g31_13(x, a1, b, *, tol=1e-12, max_terms=400, allow_contour=True):
    """G^{3,1}_{1,3}(x | a1; b1..b3)."""
    if x <= 0.0:
        raise DomainError("g31_13 requires x > 0")
    if len(b) != 3:
        raise DomainError("g31_13 takes 3 b-parameters")
    c = _strip_line(a1, b)
    return _series_then_contour(x, b, a1, None, tol, max_terms, allow_contour, c)


def g_contour_oracle(orders, x, tol=1e-10):
    """Fixed vertical-line quadrature of the defining contour integral.

    The line sits strictly left of every numerator b-parameter (and right
    of the upper-parameter poles when present); used as the independent
    cross-check of the residue series.
    """
    if x <= 0.0:
        raise DomainError("g_contour_oracle requires x > 0")
    nb, na, nden = _KINDS[orders.kind]
    bnum = np.asarray(orders.b_params[:nb], dtype=np.float64)
    if na:
        a1 = orders.a_params[0]
        c = _strip_line(a1, bnum)
        aa = np.array([a1])
    else:
        c = float(bnum.min()) - 0.5
        aa = _EMPTY
    bd = np.array([orders.b_params[nb]]) if nden else _EMPTY
    val, err, evals, status = g_contour_core(
        x, aa, na, bnum, nb, _EMPTY, 0, bd, nden, c, tol, 14)
    if status != 0:
        raise ConvergenceError(f"oracle contour did not converge at x={x:g}")
    return EvalResult(val, err, QUADRATURE, evals)


# ---------------------------------------------------------------------------
# reduction identities

def _binomial_weight(a, i):
    return math.factorial(a + i) // (math.factorial(i) * math.factorial(a - i))


def _close1_rhs(x, c, a, b):
    q = x ** 0.25
    tot = 0.0
    for i in range(a + 1):
        wi = _binomial_weight(a, i)
        for j in range(b + 1):
            wj = _binomial_weight(b, j)
            tot += (wi * wj / 4.0 ** (i + j) * x ** (0.25 * (a + b - i - j))
                    * specfun.bessel_k(a - b - i + j, 4.0 * q))
    return 4.0 * math.pi * x ** c * tot


def _close2_rhs(x, c, a, b):
    q = 4.0 * x ** 0.25
    tot = 0.0
    for i in range(a + 1):
        wi = math.factorial(a + i) / math.factorial(i)
        for j in range(b + 1):
            wj = math.factorial(b + j) / math.factorial(j)
            g, _ = specfun.lommel_g(a + b + 1 - i - j, a - b - i + j, q)
            tot += wi * wj / 2.0 ** (a + b + i + j) * g
    return math.pi * x ** c * tot


def _redm_rhs(x, a, b):
    # principal quarter roots: (-x)^{1/4} = x^{1/4} e^{i pi/4}, (-1)^{-1/4} = e^{-i pi/4};
    # the two K factors are conjugate so their product is real
    order = 2.0 * (b - a)
    arg = 2.0 ** 1.5 * x ** 0.25 * complex(math.cos(math.pi / 4.0), math.sin(math.pi / 4.0))
    with mpmath.workdps(25):
        k1 = complex(mpmath.besselk(order, mpmath.mpc(arg.real, arg.imag)))
        k2 = complex(mpmath.besselk(order, mpmath.mpc(arg.real, -arg.imag)))
    val = 8.0 * math.sqrt(math.pi) * x ** a * k1 * k2
    return val


def reduction_residuals(x_grid, *, tol=1e-12):
    """Evaluate both sides of every implemented reduction identity.

    Returns ``{name: max relative residual over the grid}``; the complex
    identity additionally reports the imaginary leakage as ``"redm-imag"``.
    """
    xs = [float(x) for x in x_grid]
    if not xs or any(x <= 0.0 for x in xs):
        raise DomainError("x_grid must be nonempty with positive entries")
    out = {}

    def track(name, lhs, rhs):
        r = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        out[name] = max(out.get(name, 0.0), r)

    for x in xs:
        c0, a, b = 0.2, 1, 2
        lhs = g40_04(x, [c0, c0, c0 + a + 0.5, c0 + b + 0.5], tol=tol).value
        track("close1", lhs, _close1_rhs(x, c0, a, b))

        c0, a, b = 0.1, 1, 1
        lhs = g41_15(x, c0 + 1.0, [c0 + 0.5, c0 + 0.5, c0 + a + 1.0,
                                   c0 + b + 1.0, c0], tol=tol).value
        track("close2", lhs, _close2_rhs(x, c0, a, b))

        c0 = 0.0
        lhs = g41_15(x, c0 + 1.0, [c0 + 0.5, c0 + 0.5, c0 + 1.0, c0 + 1.0, c0],
                     tol=tol).value
        q = 4.0 * x ** 0.25
        track("close3", lhs, math.pi * x ** c0 * (1.0 - q * specfun.bessel_k(1.0, q)))

        aa, bb = 0.3, 0.1
        lhs = g40_04(x, [aa, aa + 0.5, bb, bb + 0.5], tol=tol).value
        track("redm0", lhs,
              4.0 * math.pi * x ** (0.5 * (aa + bb))
              * specfun.bessel_k(2.0 * (aa - bb), 4.0 * x ** 0.25))

        aa, bb = 0.3, 0.1
        lhs = g40_04(x, [aa, aa + 0.5, 2.0 * aa - bb, bb], tol=tol).value
        rhs = _redm_rhs(x, aa, bb)
        track("redm", lhs, rhs.real)
        out["redm-imag"] = max(out.get("redm-imag", 0.0),
                               abs(rhs.imag) / max(abs(rhs.real), 1e-300))

        aa, bb = 0.0, 0.2
        lhs = g31_13(x, aa + 0.5, [bb, 2.0 * aa - bb, aa], tol=tol).value
        jj, yy = specfun.bessel_j_y(bb - aa, math.sqrt(x))
        track("g300", lhs, math.pi ** 2.5 * x ** aa
              / (2.0 * math.cos((bb - aa) * math.pi)) * (jj * jj + yy * yy))

        aa = 0.1
        lhs = g31_13(x, aa + 0.5, [aa + 0.5, -aa, aa], tol=tol).value
        track("g30", lhs, math.pi ** 2 / math.cos(2.0 * math.pi * aa)
              * specfun.struve_k(2.0 * aa, 2.0 * math.sqrt(x)))

        aa, bb = 0.6, 0.1
        lhs = g31_13(x, aa, [bb, aa - 0.5, aa], tol=tol).value
        track("g301", lhs, math.pi ** 2 / math.sin((aa - bb) * math.pi)
              * x ** (0.25 * (2.0 * aa + 2.0 * bb - 1.0))
              * specfun.struve_k(aa - bb - 0.5, 2.0 * math.sqrt(x)))

        delta = 0.3
        blist = [0.0, 0.0, 0.7, 1.2]
        lhs = x ** delta * g40_04(x, blist, tol=tol).value
        rhs = g40_04(x, [v + delta for v in blist], tol=tol).value
        track("meijergidentity", lhs, rhs)

        # order reduction: a lower-row a equal to a b cancels,
        # G^{4,1}_{2,4}(x | a1, d; d, b2, b3, b4) = G^{3,1}_{1,3}(x | a1; b2, b3, b4)
        a1v, d = 0.5, 0.45
        b234 = [0.0, 0.6, 1.2]
        bnum = np.array([d] + b234)
        aden = np.array([d])
        cline = _strip_line(a1v, bnum)
        lhs, _, _, st = g_contour_core(x, np.array([a1v]), 1, bnum, 4,
                                       aden, 1, _EMPTY, 0, cline, 1e-12, 14)
        if st != 0:
            raise ConvergenceError("lukeformula contour stalled")
        rhs = g31_13(x, a1v, b234, tol=tol).value
        track("lukeformula", lhs, rhs)
    return out
